"""The twelve end-to-end acceptance checks, one test each.

Everything is exact (Fraction arithmetic, tolerance zero); the criteria with
a runtime budget assert the elapsed wall time as well.
"""

import time
from fractions import Fraction as F
from math import factorial
from random import Random

from cyclecalc.diagrams import Diagram, FreeCategory, word
from cyclecalc.exterior import HomMatrix, Realization
from cyclecalc.karoubi import (SymHopf, alt_power, hopf_axiom_check,
                               kimura_incl_excl_check, plain_object,
                               poscontr_identity_check, quotient_hom,
                               radical_subspace, sym_power)
from cyclecalc.linalg import (Matrix, generalized_binomial, pfaffian, rank,
                              schur_weyl_dim)
from cyclecalc.chow import (ChowInstance, CycleClass, axiom_suite,
                            corr_compose, duality_check, load_instance)
from cyclecalc.symdist import (canonical_lift, is_symmetrically_distinguished,
                               stability_suite, theoretical_bound,
                               uniqueness_probe, vm_span)


def random_morphism(cat, src, dst, rng, spread=2):
    basis = cat.hom_basis(src, dst)
    return cat.morphism(src, dst,
                        {d: F(rng.randint(-spread, spread)) for d in basis})


def test_01_hom_dimensions_and_charge():
    start = time.time()
    cat = FreeCategory({"N": -2})
    for r in range(6):
        w = word(*["N"] * r)
        assert cat.hom_dim(w, w) == factorial(r)
    # charge mismatch kills hom spaces
    assert cat.hom_dim(word("N"), word("N", "N")) == 0
    assert cat.hom_dim(word("N"), word("N*")) == 0
    assert cat.hom_dim(word("N", "N*"), ()) == 1
    assert time.time() - start < 5


def test_02_composition_cases_and_triangles():
    rng = Random(0)
    for r in range(-4, 5):
        cat = FreeCategory({"N": r})
        x, xs = word("N"), word("N*")
        idx, idxs = cat.identity(x), cat.identity(xs)
        ev, coev = cat.evaluation("N"), cat.coevaluation("N")
        # (1) closed loop evaluates to the rank
        swap = cat.symmetry(word("N*", "N"), (1, 0))
        loop = ev @ swap @ coev
        assert loop.terms.get(Diagram((), (), ()), F(0)) == r
        # (2) and (3): both triangular identities
        assert ev.tensor(idx) @ idx.tensor(coev) == idx
        assert idxs.tensor(ev) @ coev.tensor(idxs) == idxs
        # (4) partial trace of the identity is rank times the identity
        two = cat.identity(word("N", "N"))
        assert two.contract_last() == idx.scale(F(r))
        # (5) interchange law on random morphisms
        w2 = word("N", "N")
        f = random_morphism(cat, w2, w2, rng)
        g = random_morphism(cat, w2, w2, rng)
        h = random_morphism(cat, w2, w2, rng)
        k = random_morphism(cat, w2, w2, rng)
        assert f.tensor(g) @ h.tensor(k) == (f @ h).tensor(g @ k)


def test_03_contraction_law():
    for r in range(-4, 5):
        cat = FreeCategory({"N": r})
        for n in range(5):
            a_next = cat.antisymmetrizer(word("N"), n + 1)
            a_n = cat.antisymmetrizer(word("N"), n)
            assert a_next.contract_last() == a_n.scale(F(r - n, n + 1))


def test_04_schur_weyl_quotients():
    start = time.time()
    for n in (1, 2, 3):
        cat = FreeCategory({"N": -2 * n})
        for r in range(1, 6):
            w = word(*["N"] * r)
            q = quotient_hom(cat, w, w, mode="ideal", sym_level=n)
            assert q.dim == schur_weyl_dim(n, r), (n, r, q.dim)
    assert time.time() - start < 60


def test_05_rank_formulas():
    for r in range(-4, 5):
        cat = FreeCategory({"N": r})
        base = plain_object(cat, word("N"))
        for k in range(6):
            assert sym_power(base, k).rank() == generalized_binomial(r + k - 1, k)
            assert alt_power(base, k).rank() == generalized_binomial(r, k)
    for g in (1, 2):
        cat = FreeCategory({"N": -2 * g})
        base = plain_object(cat, word("N"))
        assert sym_power(base, 2 * g + 1).rank() == 0


def test_06_hopf_suite():
    start = time.time()
    for g in (1, 2):
        cat = FreeCategory({"H": -2 * g})
        hopf = SymHopf(cat, "H")
        assert hopf.bound == 2 * g + 1
        res = hopf_axiom_check(hopf)
        assert all(res.values()), (g, res)
        # comultiplication carries the binomial coefficients
        for r in range(hopf.bound):
            for s in range(hopf.bound - r):
                c = F(factorial(r + s), factorial(r) * factorial(s))
                raw = (hopf.symmetrizer(r).tensor(hopf.symmetrizer(s))
                       @ hopf.symmetrizer(r + s))
                assert hopf.comult(r, s) == raw.scale(c)
    assert time.time() - start < 120


def test_07_realization_functoriality_and_kernel():
    cat = FreeCategory({"N": -2})
    R = Realization(cat, "N")
    rng = Random(42)
    words = [word(*["N"] * r) for r in range(4)]
    checked = 0
    while checked < 200:
        w1 = rng.choice(words)
        w2 = rng.choice(words)
        w3 = rng.choice(words)
        f = random_morphism(cat, w1, w2, rng)
        g = random_morphism(cat, w2, w3, rng)
        assert R.matrix(g @ f) == R.matrix(g) * R.matrix(f)
        if w1 == w2:
            assert R.supertrace(f) == f.trace()
        assert R.matrix(f.tensor(g)) is not None
        checked += 1
    # the radical of End(N^x3) is exactly the realization kernel: 6 -> 5
    w = word("N", "N", "N")
    basis = cat.hom_basis(w, w)
    assert len(basis) == 6
    mats = [R.matrix(cat.morphism(w, w, {d: F(1)})) for d in basis]
    coords = Matrix([[m.data[i][j] for m in mats]
                     for i in range(mats[0].rows)
                     for j in range(mats[0].cols)])
    assert rank(coords) == 5
    rad = radical_subspace(cat, w, w)
    assert len(rad) == 1
    assert R.is_zero(rad[0])


def test_08_chow_axiom_suite():
    start = time.time()
    for cfg in ({"g": 1, "mode": "numerical"},
                {"g": 1, "mode": "deformed", "W": "trivial", "s": 2},
                {"g": 2, "mode": "numerical"},
                {"g": 2, "mode": "deformed", "W": "trivial", "s": 2}):
        inst = load_instance(cfg)
        res = axiom_suite(inst, m_max=3, trials=25, seed=7)
        assert all(res.values()), (cfg, res)
    assert time.time() - start < 120


def test_09_identity_battery():
    # point-class pullback along the origin vanishes
    for g in (1, 2):
        inst = ChowInstance(g, "numerical")
        iota = HomMatrix(1, 0, ((),))
        assert inst.pullback(iota, inst.point_class(1)).is_zero()
        # diagonal pullback along (r, s)
        delta = inst.delta_one(1)
        pt = inst.point_class(1)
        for (r, s) in ((1, 1), (2, 1), (1, -1), (3, 2), (0, 2)):
            f = HomMatrix.of([[r], [s]])
            assert inst.pullback(f, delta) == pt.scale((r - s) ** (2 * g))
    # duality triangles
    assert duality_check(ChowInstance(1, "numerical"), 1)
    assert duality_check(ChowInstance(1, "numerical"), 2)
    assert duality_check(ChowInstance(2, "numerical"), 1)
    # correspondence associativity
    inst = ChowInstance(1, "numerical")
    rng = Random(9)
    for _ in range(5):
        gs = [inst.graph(HomMatrix.of([[rng.randint(-2, 2)]]))
              for _ in range(3)]
        ab = corr_compose(inst, 1, 1, 1, gs[0], gs[1])
        bc = corr_compose(inst, 1, 1, 1, gs[1], gs[2])
        assert (corr_compose(inst, 1, 1, 1, ab, gs[2])
                == corr_compose(inst, 1, 1, 1, gs[0], bc))
    # inclusion-exclusion polynomial identity
    for n in (1, 2, 3):
        assert kimura_incl_excl_check(n)
    # pfaffian squared is the determinant
    rng = Random(10)
    for size in (2, 4, 6, 8):
        m = [[0] * size for _ in range(size)]
        for i in range(size):
            for j in range(i + 1, size):
                m[i][j] = rng.randint(-4, 4)
                m[j][i] = -m[i][j]
        mat = Matrix(m)
        assert pfaffian(mat) ** 2 == mat.det()
    # positive-object contraction identity
    rng = Random(11)
    for d in (1, 2):
        f = Matrix([[rng.randint(-3, 3) for _ in range(2 * d)]
                    for _ in range(2 * d)])
        assert poscontr_identity_check(f, d, 2, 2)


def test_10_beauville_eigenvalues():
    inst = load_instance({"g": 1, "mode": "deformed", "W": "trivial", "s": 2})
    h = inst.h_class()
    eps = inst.eps_unit(1)
    for n in range(-2, 4):
        f = HomMatrix.mult_by(n, 1)
        assert inst.pullback(f, h) == h.scale(F(n) ** 2)        # n^{2p}, p=1
        assert inst.pullback(f, eps) == eps.scale(F(n) ** 0)    # n^{2p-s}


def test_11_symmetric_distinction():
    start = time.time()
    inst = load_instance({"g": 1, "mode": "deformed", "W": "trivial", "s": 2})
    num = inst.numerical_instance()
    h = CycleClass(inst, 1, 1, inst.h_class().numeric, None)
    eps = inst.eps_unit(1)
    m_star = theoretical_bound(1)
    assert m_star == 5
    # the canonical lift passes at the full bound
    ok, reports = is_symmetrically_distinguished(inst, h, m_star)
    assert ok
    assert all(r.injective for r in reports)
    # the perturbed lifts fail at m = 1 with explicit witnesses
    for bad in (h + eps, eps):
        rep = vm_span(inst, bad, 1)
        assert not rep.injective
        assert rep.witness is not None
        assert rep.witness.numeric.is_zero() and not rep.witness.is_zero()
    # exhaustive rational grid: no second passing lift
    hbar = num.from_numeric(1, 1, inst.h_class().numeric)
    grid = [eps.scale(c) for c in
            (F(1), F(-1), F(2), F(-2), F(1, 2), F(-1, 2))]
    probe = uniqueness_probe(hbar, inst, grid, m_max=m_star)
    assert probe["survivors"] == 0
    assert all(e["fail_at_m"] == 1 for e in probe["results"])
    assert time.time() - start < 300


def test_12_stability_of_lifts():
    inst = load_instance({"g": 1, "mode": "deformed", "W": "trivial", "s": 2})
    res = stability_suite(inst, m_max=3, trials=12, seed=5)
    assert all(res.values()), res
    # explicit closure spot checks
    num = inst.numerical_instance()
    hbar = num.from_numeric(1, 1, inst.h_class().numeric)
    lift = canonical_lift(hbar, inst, m_max=3)
    assert lift * lift == canonical_lift(num.product(hbar, hbar), inst,
                                         m_max=3, verify=False)
    f = HomMatrix.mult_by(2, 1)
    assert (inst.pullback(f, lift)
            == canonical_lift(num.pullback(f, hbar), inst, verify=False))
