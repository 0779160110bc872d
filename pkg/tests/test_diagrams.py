from fractions import Fraction as F
from math import factorial
from random import Random

import pytest

from cyclecalc.diagrams import (Diagram, FreeCategory, dual_word, charge,
                                parse_morphism, parse_word, serialize_morphism,
                                word, word_str)


def cat_with(rank: int) -> FreeCategory:
    return FreeCategory({"N": rank})


def test_word_parsing_round_trip():
    w = word("N", "N*", "M")
    assert word_str(w) == "N,N*,M"
    assert parse_word("N,N*,M") == w
    assert parse_word("N N* M") == w
    assert parse_word("") == ()


def test_unknown_generator_rejected():
    cat = cat_with(-2)
    with pytest.raises(KeyError):
        cat.hom_dim(word("M"), word("M"))


def test_end_dims_are_factorials():
    cat = cat_with(-2)
    for r in range(5):
        w = word(*["N"] * r)
        assert cat.hom_dim(w, w) == factorial(r)


def test_hom_vanishes_on_charge_mismatch():
    cat = cat_with(-2)
    assert cat.hom_dim(word("N"), word("N", "N")) == 0
    assert cat.hom_dim(word("N"), word("N*")) == 0
    assert charge(word("N", "N*")) == {}
    assert charge(word("N", "N")) == {"N": 2}


def test_loop_evaluates_to_rank():
    for r in range(-4, 5):
        cat = cat_with(r)
        assert cat.identity(word("N")).trace() == r


def test_triangular_identities():
    for r in (-3, -1, 0, 2):
        cat = cat_with(r)
        x, xs = word("N"), word("N*")
        ev = cat.evaluation("N")
        coev = cat.coevaluation("N")
        lhs = ev.tensor(cat.identity(x)) @ cat.identity(x).tensor(coev)
        assert lhs == cat.identity(x)
        rhs = cat.identity(xs).tensor(ev) @ coev.tensor(cat.identity(xs))
        assert rhs == cat.identity(xs)


def test_symmetry_composition_and_involution():
    cat = cat_with(-2)
    w = word("N", "N", "N")
    s01 = cat.symmetry(w, (1, 0, 2))
    s12 = cat.symmetry(w, (0, 2, 1))
    assert s01 @ s01 == cat.identity(w)
    assert (s01 @ s12 @ s01) == (s12 @ s01 @ s12)   # braid relation


def test_composition_counts_loops():
    cat = cat_with(-3)
    ev = cat.evaluation("N")
    coev_rev = cat.coevaluation("N")
    # glue cap against cup through the swap: a single closed loop
    swap = cat.symmetry(word("N*", "N"), (1, 0))
    val = (ev @ swap @ coev_rev).terms
    assert val == {Diagram((), (), ()): F(-3)}


def test_transpose_is_antimultiplicative():
    cat = cat_with(-2)
    rng = Random(0)
    w = word("N", "N")
    basis = cat.hom_basis(w, w)
    for _ in range(10):
        f = cat.morphism(w, w, {d: F(rng.randint(-2, 2)) for d in basis})
        g = cat.morphism(w, w, {d: F(rng.randint(-2, 2)) for d in basis})
        assert (g @ f).transpose() == f.transpose() @ g.transpose()
        assert f.transpose().src == dual_word(w)


def test_trace_is_symmetric_and_transpose_invariant():
    cat = cat_with(-2)
    rng = Random(1)
    w = word("N", "N")
    basis = cat.hom_basis(w, w)
    for _ in range(10):
        f = cat.morphism(w, w, {d: F(rng.randint(-2, 2)) for d in basis})
        g = cat.morphism(w, w, {d: F(rng.randint(-2, 2)) for d in basis})
        assert (f @ g).trace() == (g @ f).trace()
        assert f.transpose().trace() == f.trace()


def test_contract_last_of_antisymmetrizer():
    # contracting the last strand of a_{n+1} gives ((r-n)/(n+1)) a_n
    for r in (-4, -2, 0, 3):
        cat = cat_with(r)
        for n in range(0, 4):
            a_next = cat.antisymmetrizer(word("N"), n + 1)
            a_n = cat.antisymmetrizer(word("N"), n)
            assert a_next.contract_last() == a_n.scale(F(r - n, n + 1))


def test_partial_trace_consistency():
    cat = cat_with(-2)
    w = word("N", "N")
    rng = Random(2)
    basis = cat.hom_basis(w, w)
    f = cat.morphism(w, w, {d: F(rng.randint(-3, 3)) for d in basis})
    assert f.contract_last(2).terms.get(Diagram((), (), ()), F(0)) == f.trace()


def test_serialization_round_trip():
    cat = cat_with(-2)
    w = word("N", "N")
    rng = Random(3)
    basis = cat.hom_basis(w, w)
    f = cat.morphism(w, w, {d: F(rng.randint(-3, 3), rng.randint(1, 4))
                            for d in basis})
    text = serialize_morphism(f)
    assert parse_morphism(cat, text) == f


def test_tensor_of_identities_is_identity():
    cat = FreeCategory({"N": -2, "L": 3})
    w1, w2 = word("N"), word("L", "L*")
    assert cat.identity(w1).tensor(cat.identity(w2)) == cat.identity(w1 + w2)
