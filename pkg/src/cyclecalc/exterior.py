"""Linear realizations of the diagram calculus, and exterior algebras of
symplectic spaces.

Two layers live here:

* ``Realization`` sends a one-generator diagram category to linear maps.  A
  generator of negative even rank -2g goes to an odd 2g-dimensional symplectic
  space (the rank is a supertrace); a generator of nonnegative rank r goes to
  an even r-dimensional space with the identity symmetric form.  Both plain
  and dual letters are realized on the same space via the form.

* ``ExteriorVector`` and friends model the exterior algebra of m copies of the
  standard symplectic space, with its torus weights, symplectic-invariant
  subspaces and volume pairing.  These are the coefficients of the concrete
  cycle theories built on top.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .linalg import Matrix, Q, kernel_basis, solve
from .diagrams import Diagram, FreeCategory, Morphism, _perm_sign

__all__ = [
    "Realization",
    "ExteriorVector",
    "wedge",
    "sp_span",
    "sp_invariants",
    "volume_sign",
    "poincare_pair",
    "HomMatrix",
    "pullback_vector",
    "pushforward_vector",
]


def _merge_sign(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Sign of sorting the concatenation of two sorted index tuples; 0 if they
    intersect."""
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return 0
        if a[i] < b[j]:
            i += 1
        else:
            if (len(a) - i) % 2:
                sign = -sign
            j += 1
    return sign


# ---------------------------------------------------------------------------
# realization of the one-generator diagram calculus

class Realization:
    """Realize one generator as a super vector space with a pairing.

    rank < 0 (even): odd space of dimension -rank with the standard symplectic
    form; loops evaluate to the supertrace -dim.  rank >= 0: even space of
    dimension rank with the identity form; loops evaluate to dim.
    """

    def __init__(self, cat: FreeCategory, name: str):
        self.cat = cat
        self.name = name
        r = cat.generators[name]
        if r < 0:
            if r % 2:
                raise ValueError("odd symplectic realization needs even rank")
            self.dim = -r
            self.odd = True
            self.g = self.dim // 2
        else:
            self.dim = r
            self.odd = False
            self.g = 0

    def _form(self, a: int, b: int) -> Fraction:
        """The pairing form on basis vectors: symplectic (odd) or identity."""
        if not self.odd:
            return Q(1) if a == b else Q(0)
        if b == a + self.g:
            return Q(1)
        if a == b + self.g:
            return Q(-1)
        return Q(0)

    def _form_partners(self, a: int) -> list[tuple[int, Fraction]]:
        if not self.odd:
            return [(a, Q(1))]
        if a < self.g:
            return [(a + self.g, Q(1))]
        return [(a - self.g, Q(-1))]

    @lru_cache(maxsize=None)
    def _plan(self, d: Diagram):
        p, q = len(d.src), len(d.dst)
        caps = sorted(e for e in d.edges if e[1] < p)
        cups = sorted((a - p, b - p) for a, b in d.edges if a >= p)
        throughs = sorted((a, b - p) for a, b in d.edges if a < p <= b)
        order = [a for a, _ in throughs] + [x for e in caps for x in e]
        sign1 = _perm_sign(tuple(order)) if self.odd else 1
        # current slot order after caps/cup-appends: throughs then cup pairs
        final_positions = [b for _, b in throughs] + [x for e in cups for x in e]
        sign2 = _perm_sign(tuple(final_positions)) if self.odd else 1
        return order, caps, cups, final_positions, sign1 * sign2

    def apply_diagram(self, d: Diagram, vec: dict[tuple[int, ...], Fraction]
                      ) -> dict[tuple[int, ...], Fraction]:
        order, caps, cups, final_positions, sign = self._plan(d)
        k = len(order) - 2 * len(caps)
        out: dict[tuple[int, ...], Fraction] = {}
        for x, c in vec.items():
            c = c * sign
            y = [x[i] for i in order]
            ok = True
            for t in range(len(caps)):
                a, b = y[k + 2 * t], y[k + 2 * t + 1]
                # cap value: form(second slot, first slot)
                v = self._form(b, a)
                if v == 0:
                    ok = False
                    break
                c = c * v
            if not ok:
                continue
            base = y[:k]
            stack = [(base, c)]
            for _ in cups:
                new_stack = []
                for vals, cc in stack:
                    for a in range(self.dim):
                        for b, w2 in self._form_partners(a):
                            new_stack.append((vals + [a, b], cc * w2))
                stack = new_stack
            for vals, cc in stack:
                tgt = [0] * len(final_positions)
                for slot, pos in enumerate(final_positions):
                    tgt[pos] = vals[slot]
                key = tuple(tgt)
                nc = out.get(key, Q(0)) + cc
                if nc:
                    out[key] = nc
                elif key in out:
                    del out[key]
        return out

    def apply(self, f: Morphism, vec: dict[tuple[int, ...], Fraction]
              ) -> dict[tuple[int, ...], Fraction]:
        out: dict[tuple[int, ...], Fraction] = {}
        for d, coeff in f.terms.items():
            for key, c in self.apply_diagram(d, vec).items():
                nc = out.get(key, Q(0)) + coeff * c
                if nc:
                    out[key] = nc
                elif key in out:
                    del out[key]
        return out

    def _basis_tuples(self, r: int):
        if r == 0:
            yield ()
            return
        for rest in self._basis_tuples(r - 1):
            for a in range(self.dim):
                yield rest + (a,)

    def matrix(self, f: Morphism) -> Matrix:
        """Dense matrix of the realized morphism, columns indexed by source
        basis tuples in lexicographic order."""
        p, q = len(f.src), len(f.dst)
        cols = list(self._basis_tuples(p))
        rows = list(self._basis_tuples(q))
        row_index = {t: i for i, t in enumerate(rows)}
        data = [[Q(0)] * len(cols) for _ in rows]
        for j, t in enumerate(cols):
            for key, c in self.apply(f, {t: Q(1)}).items():
                data[row_index[key]][j] = c
        return Matrix(data)

    def is_zero(self, f: Morphism) -> bool:
        for t in self._basis_tuples(len(f.src)):
            if self.apply(f, {t: Q(1)}):
                return False
        return True

    def supertrace(self, f: Morphism) -> Fraction:
        """Supertrace of the realized endomorphism; equals the categorical
        trace of f."""
        if f.src != f.dst:
            raise ValueError("supertrace of a non-endomorphism")
        r = len(f.src)
        sign = Q(-1) ** r if self.odd else Q(1)
        total = Q(0)
        for t in self._basis_tuples(r):
            total += self.apply(f, {t: Q(1)}).get(t, Q(0))
        return sign * total


# ---------------------------------------------------------------------------
# exterior algebra of m copies of the standard symplectic space

@dataclass
class ExteriorVector:
    """An element of the exterior algebra of (Q^{2g})^{+m}.

    Index i = 2g*factor + position, positions 0..g-1 the e-basis, g..2g-1 the
    f-basis, with the form pairing e_i with f_i.
    """

    g: int
    m: int
    terms: dict[tuple[int, ...], Fraction]

    def __post_init__(self):
        self.terms = {t: Q(c) for t, c in self.terms.items() if c != 0}

    @staticmethod
    def zero(g: int, m: int) -> "ExteriorVector":
        return ExteriorVector(g, m, {})

    @staticmethod
    def unit(g: int, m: int) -> "ExteriorVector":
        return ExteriorVector(g, m, {(): Q(1)})

    def __add__(self, other: "ExteriorVector") -> "ExteriorVector":
        if (self.g, self.m) != (other.g, other.m):
            raise ValueError("ambient mismatch")
        terms = dict(self.terms)
        for t, c in other.terms.items():
            terms[t] = terms.get(t, Q(0)) + c
        return ExteriorVector(self.g, self.m, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "ExteriorVector":
        c = Q(c)
        return ExteriorVector(self.g, self.m, {t: c * x for t, x in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, ExteriorVector)
                and (self.g, self.m) == (other.g, other.m)
                and self.terms == other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        return len({len(t) for t in self.terms}) <= 1

    def degree(self) -> int | None:
        degs = {len(t) for t in self.terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def serialize(self) -> str:
        parts = []
        for t in sorted(self.terms):
            parts.append("(%s):%s" % (",".join(str(i) for i in t), self.terms[t]))
        return ";".join(parts)

    @staticmethod
    def parse(g: int, m: int, text: str) -> "ExteriorVector":
        terms: dict[tuple[int, ...], Fraction] = {}
        text = text.strip()
        if not text:
            return ExteriorVector.zero(g, m)
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            lhs, _, rhs = chunk.partition(":")
            lhs = lhs.strip()
            if not (lhs.startswith("(") and lhs.endswith(")")):
                raise ValueError("bad term %r" % (chunk,))
            inner = lhs[1:-1].strip()
            idx = tuple(int(x) for x in inner.split(",")) if inner else ()
            if any(not 0 <= i < 2 * g * m for i in idx):
                raise ValueError("index out of range in %r" % (chunk,))
            if tuple(sorted(set(idx))) != idx:
                raise ValueError("indices must be strictly increasing in %r" % (chunk,))
            c = Q(rhs.strip())
            terms[idx] = terms.get(idx, Q(0)) + c
        return ExteriorVector(g, m, terms)


def wedge(x: ExteriorVector, y: ExteriorVector) -> ExteriorVector:
    if (x.g, x.m) != (y.g, y.m):
        raise ValueError("ambient mismatch")
    terms: dict[tuple[int, ...], Fraction] = {}
    for t1, c1 in x.terms.items():
        for t2, c2 in y.terms.items():
            s = _merge_sign(t1, t2)
            if s == 0:
                continue
            t = tuple(sorted(t1 + t2))
            c = terms.get(t, Q(0)) + s * c1 * c2
            if c:
                terms[t] = c
            elif t in terms:
                del terms[t]
    return ExteriorVector(x.g, x.m, terms)


def _weight(g: int, idx: int) -> tuple[int, int]:
    """Torus weight of a basis letter: (coordinate, +-1)."""
    pos = idx % (2 * g)
    if pos < g:
        return (pos, 1)
    return (pos - g, -1)


def sp_span(g: int) -> list[Matrix]:
    """A spanning set of the symplectic Lie algebra sp_2g in the basis
    e_1..e_g, f_1..f_g (block form [[A, B], [C, -A^T]], B and C symmetric)."""
    out = []
    for i in range(g):
        for j in range(g):
            mat = [[Q(0)] * (2 * g) for _ in range(2 * g)]
            mat[i][j] = Q(1)
            mat[g + j][g + i] = Q(-1)
            out.append(Matrix(mat))
    for i in range(g):
        for j in range(i, g):
            mat = [[Q(0)] * (2 * g) for _ in range(2 * g)]
            mat[i][g + j] = Q(1)
            mat[j][g + i] = Q(1)
            out.append(Matrix(mat))
            mat = [[Q(0)] * (2 * g) for _ in range(2 * g)]
            mat[g + i][j] = Q(1)
            mat[g + j][i] = Q(1)
            out.append(Matrix(mat))
    return out


def _act_derivation(g: int, mat: Matrix, t: tuple[int, ...]
                    ) -> dict[tuple[int, ...], Fraction]:
    """Action of a Lie algebra element (acting diagonally on every factor) on
    a wedge basis element, as a derivation."""
    out: dict[tuple[int, ...], Fraction] = {}
    for k, idx in enumerate(t):
        factor, pos = divmod(idx, 2 * g)
        for new_pos in range(2 * g):
            c = mat.data[new_pos][pos]
            if c == 0:
                continue
            new_idx = factor * 2 * g + new_pos
            rest = t[:k] + t[k + 1:]
            s = _merge_sign((new_idx,), rest)
            if s == 0:
                continue
            key = tuple(sorted((new_idx,) + rest))
            # the replaced letter sits in slot k of the sorted tuple
            sign = s * (-1) ** k
            val = out.get(key, Q(0)) + sign * c
            if val:
                out[key] = val
            elif key in out:
                del out[key]
    return out


@lru_cache(maxsize=None)
def sp_invariants(g: int, m: int, d: int) -> tuple[ExteriorVector, ...]:
    """Basis of the sp_2g-invariants of the degree-d part of the exterior
    algebra of m factors.

    Invariant vectors have torus weight zero, so the kernel computation is
    restricted to the weight-zero wedge basis before stacking the action of a
    spanning set of the Lie algebra.
    """
    n = 2 * g * m
    if d < 0 or d > n:
        return ()
    cols = []
    for t in combinations(range(n), d):
        w: dict[tuple[int, int], int] = {}
        for idx in t:
            coord, s = _weight(g, idx)
            w[coord] = w.get(coord, 0) + s
        if all(v == 0 for v in w.values()):
            cols.append(t)
    if not cols:
        return ()
    col_index = {t: j for j, t in enumerate(cols)}
    rows: list[list[Fraction]] = []
    for mat in sp_span(g):
        row_map: dict[tuple[int, ...], list[Fraction]] = {}
        for j, t in enumerate(cols):
            for key, c in _act_derivation(g, mat, t).items():
                if key not in row_map:
                    row_map[key] = [Q(0)] * len(cols)
                row_map[key][j] = c
        rows.extend(row_map.values())
    if not rows:
        vecs = [[Q(1) if i == j else Q(0) for j in range(len(cols))]
                for i in range(len(cols))]
    else:
        vecs = kernel_basis(rows)
    out = []
    for v in vecs:
        terms = {cols[j]: c for j, c in enumerate(v) if c}
        out.append(ExteriorVector(g, m, terms))
    return tuple(out)


def volume_sign(g: int, m: int) -> int:
    """Sign relating the normalized volume (e_1^f_1^...^e_g^f_g per factor,
    factors in order) to the fully sorted top wedge basis element."""
    perm = []
    for i in range(g):
        perm.extend((i, g + i))
    sign = _perm_sign(tuple(perm))
    return sign ** m


def poincare_pair(x: ExteriorVector, y: ExteriorVector) -> Fraction:
    """Coefficient of the normalized volume form in x ^ y."""
    if (x.g, x.m) != (y.g, y.m):
        raise ValueError("ambient mismatch")
    n = 2 * x.g * x.m
    full = tuple(range(n))
    total = Q(0)
    for t1, c1 in x.terms.items():
        comp = tuple(i for i in full if i not in set(t1))
        c2 = y.terms.get(comp)
        if c2 is None:
            continue
        s = _merge_sign(t1, comp)
        total += s * c1 * c2
    return total * volume_sign(x.g, x.m)


# ---------------------------------------------------------------------------
# group homomorphisms of powers and their pullback / pushforward

@dataclass(frozen=True)
class HomMatrix:
    """An integer matrix presenting a homomorphism A^n -> A^m of powers."""

    m: int
    n: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.m or any(len(r) != self.n for r in self.entries):
            raise ValueError("shape mismatch")
        if any(not isinstance(x, int) for r in self.entries for x in r):
            raise TypeError("entries must be integers")

    @staticmethod
    def of(rows: list[list[int]]) -> "HomMatrix":
        return HomMatrix(len(rows), len(rows[0]) if rows else 0,
                         tuple(tuple(r) for r in rows))

    @staticmethod
    def zero_map(m: int, n: int) -> "HomMatrix":
        return HomMatrix(m, n, tuple(tuple(0 for _ in range(n)) for _ in range(m)))

    @staticmethod
    def identity(m: int) -> "HomMatrix":
        return HomMatrix(m, m, tuple(tuple(1 if i == j else 0 for j in range(m))
                                     for i in range(m)))

    @staticmethod
    def mult_by(n_val: int, m: int = 1) -> "HomMatrix":
        return HomMatrix(m, m, tuple(tuple(n_val if i == j else 0 for j in range(m))
                                     for i in range(m)))

    @staticmethod
    def projection(m: int, factors: list[int]) -> "HomMatrix":
        """A^m -> A^{len(factors)} keeping the listed factors."""
        return HomMatrix(len(factors), m,
                         tuple(tuple(1 if j == f else 0 for j in range(m))
                               for f in factors))

    @staticmethod
    def diagonal(m: int, signs: list[int] | None = None) -> "HomMatrix":
        """A -> A^m, x -> (s_1 x, ..., s_m x)."""
        signs = signs or [1] * m
        return HomMatrix(m, 1, tuple((s,) for s in signs))

    def compose(self, other: "HomMatrix") -> "HomMatrix":
        if self.n != other.m:
            raise ValueError("composition mismatch")
        rows = [[sum(self.entries[i][k] * other.entries[k][j]
                     for k in range(self.n)) for j in range(other.n)]
                for i in range(self.m)]
        return HomMatrix.of(rows)

    def is_ea(self) -> bool:
        """Whether every component is plus or minus a coordinate projection."""
        for row in self.entries:
            nz = [x for x in row if x]
            if len(nz) != 1 or nz[0] not in (1, -1):
                return False
        return True

    def is_closed_immersion(self) -> bool:
        """For an is_ea morphism: injective, i.e. every source coordinate is
        used by some component."""
        if not self.is_ea():
            return False
        used = {j for row in self.entries for j, x in enumerate(row) if x}
        return used == set(range(self.n))


def pullback_vector(f: HomMatrix, x: ExteriorVector) -> ExteriorVector:
    """Pullback along f: A^n -> A^m of a vector on m factors, as the algebra
    map induced by the transpose on degree one."""
    g = x.g
    out_terms: dict[tuple[int, ...], Fraction] = {}
    for t, c in x.terms.items():
        expansion: list[tuple[tuple[int, ...], Fraction]] = [((), c)]
        for idx in t:
            factor, pos = divmod(idx, 2 * g)
            images = [(i * 2 * g + pos, Q(f.entries[factor][i]))
                      for i in range(f.n) if f.entries[factor][i]]
            new_exp = []
            for acc, cc in expansion:
                for new_idx, coeff in images:
                    s = _merge_sign(acc, (new_idx,))
                    if s == 0:
                        continue
                    new_exp.append((tuple(sorted(acc + (new_idx,))), s * cc * coeff))
            expansion = new_exp
        for acc, cc in expansion:
            # re-sorting inside the loop already accumulated the full sign
            v = out_terms.get(acc, Q(0)) + cc
            if v:
                out_terms[acc] = v
            elif acc in out_terms:
                del out_terms[acc]
    return ExteriorVector(g, f.n, out_terms)


@lru_cache(maxsize=None)
def _pairing_gram(g: int, m: int, d: int) -> tuple[Matrix, tuple, tuple]:
    """Gram matrix of the volume pairing between invariant bases in degrees d
    and 2gm - d."""
    fwd = sp_invariants(g, m, d)
    bwd = sp_invariants(g, m, 2 * g * m - d)
    gram = Matrix([[poincare_pair(x, y) for x in fwd] for y in bwd])
    return gram, fwd, bwd


def pushforward_vector(f: HomMatrix, x: ExteriorVector) -> ExteriorVector:
    """Pushforward along f: A^n -> A^m, the volume-pairing adjoint of the
    pullback.  Defined for invariant x; the result is invariant."""
    g = x.g
    if x.m != f.n:
        raise ValueError("vector does not live on the source of f")
    if x.is_zero():
        return ExteriorVector.zero(g, f.m)
    d = x.degree()
    if d is None:
        raise ValueError("pushforward needs a homogeneous vector")
    d_out = d + 2 * g * (f.m - f.n)
    if d_out < 0 or d_out > 2 * g * f.m:
        return ExteriorVector.zero(g, f.m)
    gram, fwd, bwd = _pairing_gram(g, f.m, d_out)
    if not fwd:
        return ExteriorVector.zero(g, f.m)
    rhs = [poincare_pair(x, pullback_vector(f, y)) for y in bwd]
    coeffs = solve(gram, rhs)
    if coeffs is None:
        raise ArithmeticError("volume pairing failed to determine the pushforward")
    out = ExteriorVector.zero(g, f.m)
    for c, v in zip(coeffs, fwd):
        if c:
            out = out + v.scale(c)
    return out
