"""Exact linear algebra over the rationals, plus small algebraic utilities.

Everything here works with `fractions.Fraction`; no floating point is used
anywhere.  The matrix routines are dense Gaussian elimination, which is fast
enough for the desk-scale problems the rest of the package produces.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import factorial
from typing import Iterator, Sequence

Q = Fraction

__all__ = [
    "Q",
    "Matrix",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "poly_trim",
    "poly_add",
    "poly_sub",
    "poly_scale",
    "poly_mul",
    "poly_divmod",
    "poly_monic",
    "poly_ext_gcd",
    "poly_eval",
    "crt_idempotents",
    "FiniteDimAlgebra",
    "AlgebraMap",
    "lift_idempotent",
    "pfaffian",
    "generalized_binomial",
    "partitions",
    "hook_length_count",
    "schur_weyl_dim",
]


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating point input rejected; use Fraction or int")
    return Fraction(x)


class Matrix:
    """A dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence]):
        self.data = [[_frac(x) for x in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix([[Q(0)] * cols for _ in range(rows)])

    def copy(self) -> "Matrix":
        return Matrix(self.data)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.data == other.data

    def __hash__(self):
        return hash(tuple(tuple(row) for row in self.data))

    def __repr__(self) -> str:
        return "Matrix(%r)" % (self.data,)

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in row] for row in self.data])

    def scale(self, c) -> "Matrix":
        c = _frac(c)
        return Matrix([[c * a for a in row] for row in self.data])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = list(zip(*other.data))
        return Matrix([[sum(a * b for a, b in zip(row, col)) for col in ot]
                       for row in self.data])

    def __pow__(self, n: int) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        result = Matrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.data))) if self.data else Matrix.zeros(self.cols, 0)

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.data for a in row)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        return sum((self.data[i][i] for i in range(self.rows)), Q(0))

    def apply(self, vec: Sequence) -> list[Fraction]:
        vec = [_frac(x) for x in vec]
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return [sum((a * b for a, b in zip(row, vec)), Q(0)) for row in self.data]

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        a = [row[:] for row in self.data]
        n = self.rows
        d = Q(1)
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                return Q(0)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                d = -d
            d *= a[col][col]
            inv = 1 / a[col][col]
            for r in range(col + 1, n):
                if a[r][col] != 0:
                    f = a[r][col] * inv
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return d


def rref(data: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    a = [[_frac(x) for x in row] for row in data]
    if not a:
        return [], []
    cols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(m: Matrix | Sequence[Sequence]) -> int:
    data = m.data if isinstance(m, Matrix) else m
    return len(rref(data)[0])


def kernel_basis(m: Matrix | Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right null space of ``m``."""
    data = m.data if isinstance(m, Matrix) else m
    if not data:
        return []
    cols = len(data[0])
    red, pivots = rref(data)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Q(0)] * cols
        v[f] = Q(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def solve(m: Matrix, b: Sequence) -> list[Fraction] | None:
    """One solution of ``m x = b``, or None if inconsistent."""
    b = [_frac(x) for x in b]
    aug = [row + [bi] for row, bi in zip(m.data, b)]
    red, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = [Q(0)] * m.cols
    for r, p in enumerate(pivots):
        x[p] = red[r][m.cols]
    return x


# ---------------------------------------------------------------------------
# univariate polynomials over Q, as coefficient lists (index = degree)

Poly = list


def poly_trim(p: Poly) -> Poly:
    p = [_frac(x) for x in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                      for i in range(n)])


def poly_sub(p: Poly, q: Poly) -> Poly:
    return poly_add(p, [-x for x in q])


def poly_scale(p: Poly, c) -> Poly:
    c = _frac(c)
    return poly_trim([c * x for x in p])


def poly_mul(p: Poly, q: Poly) -> Poly:
    p, q = poly_trim(p), poly_trim(q)
    if not p or not q:
        return []
    out = [Q(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    p, q = poly_trim(p), poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Q(0)] * max(len(p) - len(q) + 1, 0)
    rem = p[:]
    inv = 1 / q[-1]
    while len(rem) >= len(q):
        c = rem[-1] * inv
        d = len(rem) - len(q)
        quo[d] = c
        for i in range(len(q)):
            rem[d + i] -= c * q[i]
        rem = poly_trim(rem)
    return poly_trim(quo), rem


def poly_monic(p: Poly) -> Poly:
    p = poly_trim(p)
    return poly_scale(p, 1 / p[-1]) if p else p


def poly_ext_gcd(p: Poly, q: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, u, v) with u*p + v*q = g, g monic (or zero)."""
    r0, r1 = poly_trim(p), poly_trim(q)
    u0, u1 = [Q(1)], []
    v0, v1 = [], [Q(1)]
    while r1:
        quo, rem = poly_divmod(r0, r1)
        r0, r1 = r1, rem
        u0, u1 = u1, poly_sub(u0, poly_mul(quo, u1))
        v0, v1 = v1, poly_sub(v0, poly_mul(quo, v1))
    if r0:
        lead = r0[-1]
        r0 = poly_scale(r0, 1 / lead)
        u0 = poly_scale(u0, 1 / lead)
        v0 = poly_scale(v0, 1 / lead)
    return r0, u0, v0


def poly_eval(p: Poly, x, *, one=None, zero=None, add=None, mul=None):
    """Horner evaluation of ``p`` at ``x`` in any unital ring.

    By default works for Fractions and Matrix arguments.
    """
    p = poly_trim(p)
    if isinstance(x, Matrix):
        n = x.rows
        acc = Matrix.zeros(n, n)
        for c in reversed(p):
            acc = acc * x + Matrix.identity(n).scale(c)
        return acc
    acc = Q(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def crt_idempotents(t: Matrix, polys: Sequence[Poly]) -> list[Matrix]:
    """Orthogonal idempotents cutting out the generalized eigenspaces of ``t``.

    ``polys`` must be pairwise coprime with ``prod(polys)(t) == 0``.  Returns
    matrices e_i = r_i(t) with r_i = 1 mod polys[i] and 0 mod the others; they
    are idempotent, orthogonal, commute with t, sum to the identity, and
    polys[i](t) annihilates the image of e_i.
    """
    polys = [poly_trim(p) for p in polys]
    total = [Q(1)]
    for p in polys:
        total = poly_mul(total, p)
    if not poly_eval(total, t).is_zero():
        raise ValueError("product of the given polynomials does not annihilate t")
    idems: list[Matrix] = []
    for i, p in enumerate(polys):
        q = [Q(1)]
        for j, pj in enumerate(polys):
            if j != i:
                q = poly_mul(q, pj)
        g, u, _v = poly_ext_gcd(q, p)
        if g != [Q(1)]:
            raise ValueError("polynomials are not pairwise coprime")
        r = poly_divmod(poly_mul(u, q), total)[1]
        idems.append(poly_eval(r, t))
    n = t.rows
    s = Matrix.zeros(n, n)
    for e in idems:
        if not (e * e - e).is_zero():
            raise ArithmeticError("computed projector is not idempotent")
        if not (e * t - t * e).is_zero():
            raise ArithmeticError("computed projector does not commute with t")
        s = s + e
    if not (s - Matrix.identity(n)).is_zero():
        raise ArithmeticError("projectors do not sum to the identity")
    for i, e in enumerate(idems):
        for j in range(i):
            if not (e * idems[j]).is_zero():
                raise ArithmeticError("projectors are not orthogonal")
        if not (poly_eval(polys[i], t) * e).is_zero():
            raise ArithmeticError("factor polynomial does not annihilate its block")
    return idems


# ---------------------------------------------------------------------------
# finite dimensional algebras and idempotent lifting

class FiniteDimAlgebra:
    """A finite dimensional unital Q-algebra given by structure constants.

    ``table[i][j]`` is the coordinate vector of ``b_i * b_j``; ``unit`` the
    coordinate vector of 1.
    """

    def __init__(self, table: Sequence[Sequence[Sequence]], unit: Sequence):
        self.dim = len(table)
        self.table = [[[_frac(x) for x in vec] for vec in row] for row in table]
        self.unit = [_frac(x) for x in unit]
        for row in self.table:
            if len(row) != self.dim or any(len(v) != self.dim for v in row):
                raise ValueError("malformed structure constant table")

    def mul(self, x: Sequence, y: Sequence) -> list[Fraction]:
        out = [Q(0)] * self.dim
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        c = a * b
                        for k, s in enumerate(self.table[i][j]):
                            if s:
                                out[k] += c * s
        return out

    def check_associative(self) -> bool:
        basis = [[Q(1) if i == k else Q(0) for k in range(self.dim)]
                 for i in range(self.dim)]
        for x in basis:
            for y in basis:
                for z in basis:
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                        return False
        return True


class AlgebraMap:
    """A linear map between finite dimensional algebras, given by a matrix."""

    def __init__(self, source: FiniteDimAlgebra, target: FiniteDimAlgebra,
                 matrix: Matrix):
        if matrix.cols != source.dim or matrix.rows != target.dim:
            raise ValueError("shape mismatch")
        self.source = source
        self.target = target
        self.matrix = matrix

    def __call__(self, x: Sequence) -> list[Fraction]:
        return self.matrix.apply(x)


def lift_idempotent(ebar: Sequence, q: AlgebraMap, *, max_iter: int | None = None
                    ) -> list[Fraction]:
    """Lift an idempotent along a surjection with nilpotent kernel.

    Starting from any preimage, iterates ``e <- 3e^2 - 2e^3`` until the result
    is idempotent; raises ArithmeticError if it never stabilizes (kernel not
    nilpotent within the dimension bound).
    """
    ebar = [_frac(x) for x in ebar]
    if q.target.mul(ebar, ebar) != ebar:
        raise ValueError("input is not idempotent")
    x = solve(q.matrix, ebar)
    if x is None:
        raise ValueError("element has no preimage; the map is not surjective onto it")
    limit = max_iter if max_iter is not None else q.source.dim + 2
    alg = q.source
    for _ in range(limit):
        sq = alg.mul(x, x)
        if sq == x:
            if q(x) != ebar:
                raise ArithmeticError("lift drifted away from the given idempotent")
            return x
        cube = alg.mul(sq, x)
        x = [3 * a - 2 * b for a, b in zip(sq, cube)]
    raise ArithmeticError("idempotent lifting did not converge; kernel is not nilpotent")


# ---------------------------------------------------------------------------
# pfaffian, binomials, Schur-Weyl dimensions

def pfaffian(m: Matrix | Sequence[Sequence]) -> Fraction:
    """Pfaffian of a skew-symmetric matrix of even size, by row expansion."""
    data = m.data if isinstance(m, Matrix) else [[_frac(x) for x in r] for r in m]
    n = len(data)
    for i in range(n):
        if data[i][i] != 0:
            raise ValueError("matrix is not skew-symmetric")
        for j in range(i):
            if data[i][j] != -data[j][i]:
                raise ValueError("matrix is not skew-symmetric")
    if n % 2:
        raise ValueError("pfaffian needs even size")

    from functools import lru_cache

    @lru_cache(maxsize=None)
    def pf(active: tuple[int, ...]) -> Fraction:
        if not active:
            return Q(1)
        i = active[0]
        total = Q(0)
        for pos, j in enumerate(active[1:]):
            a = data[i][j]
            if a:
                rest = tuple(k for k in active if k != i and k != j)
                term = a * pf(rest)
                total += term if pos % 2 == 0 else -term
        return total

    return pf(tuple(range(n)))


def generalized_binomial(a, r: int) -> Fraction:
    """binom(a, r) = a(a-1)...(a-r+1)/r! for rational a."""
    if r < 0:
        raise ValueError("negative lower index")
    a = _frac(a)
    num = Q(1)
    for i in range(r):
        num *= a - i
    return num / factorial(r)


def partitions(n: int, max_rows: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n in decreasing order, optionally with a bounded row count."""
    def gen(remaining: int, largest: int, rows: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        if max_rows is not None and rows == max_rows:
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - first, first, rows + 1):
                yield (first,) + rest
    yield from gen(n, n, 0)


def hook_length_count(shape: tuple[int, ...]) -> int:
    """Number of standard Young tableaux of the given shape."""
    n = sum(shape)
    if n == 0:
        return 1
    prod = 1
    for i, row in enumerate(shape):
        for j in range(row):
            arm = row - j - 1
            leg = sum(1 for r in shape[i + 1:] if r > j)
            prod *= arm + leg + 1
    return factorial(n) // prod


@cache
def schur_weyl_dim(n: int, r: int) -> int:
    """dim End_{GL_n}((Q^n)^{tensor r}) = sum of squared irrep dimensions over
    partitions of r with at most n rows."""
    return sum(hook_length_count(lam) ** 2 for lam in partitions(r, max_rows=n))
