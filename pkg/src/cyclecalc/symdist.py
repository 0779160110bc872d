"""Symmetrically distinguished cycle classes.

A homogeneous class alpha on A is symmetrically distinguished when, for every
m, the span V_m(alpha) of all pushforwards p_*(alpha^{r_1} x ... x alpha^{r_n})
along closed immersions p: A^n -> A^m with signed-coordinate components
injects into the numerical quotient.  Over the square-zero deformed instance
this pins down a unique lift of each numerical class, namely the one with
vanishing deformation part.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random

from .linalg import Q
from .exterior import ExteriorVector, HomMatrix
from .chow import ChowInstance, CycleClass

__all__ = [
    "SpanReport",
    "theoretical_bound",
    "vm_span",
    "c_alpha_span",
    "is_symmetrically_distinguished",
    "canonical_lift",
    "uniqueness_probe",
    "beauville_split",
    "stability_suite",
]


def theoretical_bound(g: int, m0: int = 1) -> int:
    """Sufficient number of powers to test: (2d + 1) * m0 with d = 2^(2g-1)."""
    return (2 * 2 ** (2 * g - 1) + 1) * m0


def default_m_max(g: int) -> int:
    return min(theoretical_bound(g), 6)


@dataclass
class SpanReport:
    """Span data for one power A^m."""

    m: int
    generators: list[tuple[CycleClass, tuple[tuple[int, ...], ...], tuple[int, ...]]] \
        = field(default_factory=list)   # (class, blocks, exponents)
    span_dim: int = 0
    image_dim: int = 0
    injective: bool = True
    witness: CycleClass | None = None

    def to_json(self, alpha_label: str = "", bound: int | None = None) -> dict:
        return {
            "alpha": alpha_label,
            "m": self.m,
            "span_dim": self.span_dim,
            "image_dim": self.image_dim,
            "injective": self.injective,
            "witness": self.witness.serialize() if self.witness else None,
            "theoretical_bound": bound,
        }


# ---------------------------------------------------------------------------
# span machinery

def _set_partitions(items: list[int]):
    """All partitions of items into nonempty blocks (as tuples of tuples)."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i, block in enumerate(part):
            yield part[:i] + ((first,) + block,) + part[i + 1:]
        yield ((first,),) + part


def _sign_patterns(size: int, fix_first: bool):
    """Sign assignments to a block; the leading sign is pinned to +1 when a
    global flip of the block acts trivially."""
    free = size - 1 if fix_first else size
    for mask in range(1 << free):
        signs = [1] if fix_first else []
        for k in range(free):
            signs.append(1 if not (mask >> k) & 1 else -1)
        yield tuple(signs)


def _reindex(v: ExteriorVector, positions: tuple[int, ...], m: int) -> ExteriorVector:
    """Move factor k of v to factor positions[k] of A^m."""
    g = v.g
    terms: dict[tuple[int, ...], Fraction] = {}
    for t, c in v.terms.items():
        mapped = []
        for idx in t:
            factor, pos = divmod(idx, 2 * g)
            mapped.append(positions[factor] * 2 * g + pos)
        order = sorted(range(len(mapped)), key=lambda i: mapped[i])
        sign = 1
        for i in range(len(order)):
            for j in range(i + 1, len(order)):
                if order[i] > order[j]:
                    sign = -sign
        key = tuple(sorted(mapped))
        val = terms.get(key, Q(0)) + sign * c
        if val:
            terms[key] = val
        elif key in terms:
            del terms[key]
    return ExteriorVector(g, m, terms)


def _block_immersion(size: int, signs: tuple[int, ...]) -> HomMatrix:
    return HomMatrix(size, 1, tuple((s,) for s in signs))


class _SpanBuilder:
    """Accumulates generator classes and computes exact span dimensions by
    incremental row reduction on raw monomial coordinates."""

    def __init__(self):
        self.full_rows: list[dict] = []     # echelon rows: key -> coeff
        self.num_rows: list[dict] = []
        self.gens: list = []
        self.gen_vectors: list[tuple[dict, dict]] = []

    @staticmethod
    def _vectors(x: CycleClass) -> tuple[dict, dict]:
        full = {("n", t): c for t, c in x.numeric.terms.items()}
        for k, v in enumerate(x.deform_parts()):
            full.update({("d", k, t): c for t, c in v.terms.items()})
        num = {("n", t): c for t, c in x.numeric.terms.items()}
        return full, num

    @staticmethod
    def _reduce(row: dict, echelon: list[dict]) -> dict:
        row = dict(row)
        for piv in echelon:
            key = next(iter(piv))
            if key in row:
                c = row[key]
                for k, v in piv.items():
                    val = row.get(k, Q(0)) - c * v
                    if val:
                        row[k] = val
                    elif k in row:
                        del row[k]
        return row

    @staticmethod
    def _insert(row: dict, echelon: list[dict]) -> bool:
        red = _SpanBuilder._reduce(row, echelon)
        if not red:
            return False
        key = min(red)
        lead = red[key]
        norm = {key: Q(1)}
        norm.update({k: v / lead for k, v in red.items() if k != key})
        norm[key] = Q(1)
        echelon.append(norm)
        # keep leading keys first for deterministic reduction
        echelon.sort(key=lambda r: min(r))
        return True

    def add(self, x: CycleClass, provenance) -> None:
        if x.is_zero():
            return
        full, num = self._vectors(x)
        grew = self._insert(full, self.full_rows)
        self._insert(num, self.num_rows)
        if grew:
            self.gens.append((x, *provenance))
            self.gen_vectors.append((full, num))

    def report(self, m: int) -> SpanReport:
        rep = SpanReport(m)
        rep.generators = self.gens
        rep.span_dim = len(self.full_rows)
        rep.image_dim = len(self.num_rows)
        rep.injective = rep.span_dim == rep.image_dim
        if not rep.injective:
            rep.witness = self._find_witness()
        return rep

    def _find_witness(self) -> CycleClass | None:
        # a combination of independent generators whose numeric part cancels
        # but whose deformation part survives
        echelon: list[dict] = []
        combos: list[dict] = []   # generator-index -> coeff, parallel to echelon
        for i, (_, num) in enumerate(self.gen_vectors):
            row = dict(num)
            combo = {i: Q(1)}
            for piv, pc in zip(echelon, combos):
                key = next(iter(piv))
                if key in row:
                    c = row[key]
                    for k, v in piv.items():
                        val = row.get(k, Q(0)) - c * v
                        if val:
                            row[k] = val
                        elif k in row:
                            del row[k]
                    for k, v in pc.items():
                        combo[k] = combo.get(k, Q(0)) - c * v
            if row:
                key = min(row)
                lead = row[key]
                norm_row = {k: v / lead for k, v in row.items()}
                norm_combo = {k: v / lead for k, v in combo.items()}
                pair = sorted(zip(echelon, combos), key=lambda rc: min(rc[0]))
                echelon = [r for r, _ in pair] + [norm_row]
                combos = [c for _, c in pair] + [norm_combo]
                echelon, combos = map(list, zip(*sorted(
                    zip(echelon, combos), key=lambda rc: min(rc[0]))))
            else:
                # numeric part vanished: candidate witness
                cand = None
                for k, v in combo.items():
                    term = self.gens[k][0].scale(v)
                    cand = term if cand is None else cand + term
                if cand is not None and not cand.is_zero():
                    return cand
        return None


def _powers(inst: ChowInstance, alpha: CycleClass, cap: int) -> list[CycleClass]:
    """alpha^0 .. alpha^cap on A, stopping once powers vanish for good."""
    out = [inst.unit(alpha.m)]
    cur = out[0]
    for _ in range(cap):
        cur = cur * alpha
        out.append(cur)
    return out


def _block_classes(inst: ChowInstance, powers: list[CycleClass], size: int,
                   signs: tuple[int, ...], extra: list[CycleClass] | None = None
                   ) -> list[tuple[CycleClass, int]]:
    """Pushforwards of each beta along the signed diagonal A -> A^size.
    Returns (class on A^size, exponent-or-marker) pairs, zeros dropped."""
    imm = _block_immersion(size, signs)
    out = []
    for r, b in enumerate(powers):
        y = inst.pushforward(imm, b)
        if not y.is_zero():
            out.append((y, r))
    if extra:
        for j, b in enumerate(extra):
            y = inst.pushforward(imm, b)
            if not y.is_zero():
                out.append((y, -1 - j))
    return out


def _span(inst: ChowInstance, alpha: CycleClass, m: int,
          extra_betas: list[CycleClass] | None = None) -> SpanReport:
    if m == 0:
        rep = SpanReport(0)
        rep.generators = [(inst.unit(0), (), ())]
        rep.span_dim = rep.image_dim = 1
        return rep
    g = inst.g
    deg = max(alpha.p, 1)
    # largest power not forced to vanish by grading: the numeric part lives in
    # degree 2rp, the deformation part in 2rp - s
    cap = (2 * g * m + (inst.s if inst.deformed else 0)) // (2 * deg)
    powers = _powers(inst, alpha, cap)
    # when every class is fixed by -1 (all relevant degrees even), a global
    # sign flip of a block acts trivially, so the leading sign can be pinned
    fix_first = (not inst.deformed) or inst.s % 2 == 0
    builder = _SpanBuilder()
    builder.add(inst.unit(m), ((), ()))
    cache: dict = {}
    for partition in _set_partitions(list(range(m))):
        blocks = tuple(tuple(b) for b in partition)
        per_block_choices = []
        ok = True
        for b in blocks:
            size = len(b)
            choices = []
            for signs in _sign_patterns(size, fix_first):
                key = (size, signs)
                if key not in cache:
                    cache[key] = _block_classes(inst, powers, size, signs,
                                                extra_betas)
                choices.extend((v, r) for v, r in cache[key])
            if not choices:
                ok = False
                break
            per_block_choices.append(choices)
        if not ok:
            continue
        # assemble every combination of per-block classes
        stack = [(0, inst.unit(m), ())]
        while stack:
            i, acc, exps = stack.pop()
            if i == len(blocks):
                builder.add(acc, (blocks, exps))
                continue
            positions = blocks[i]
            for v, r in per_block_choices[i]:
                moved = CycleClass(
                    inst, m, v.p,
                    _reindex(v.numeric, positions, m),
                    tuple(_reindex(d, positions, m) for d in v.deform_parts())
                    if inst.deformed else None)
                prod = acc * moved
                if not prod.is_zero():
                    stack.append((i + 1, prod, exps + (r,)))
    return builder.report(m)


def vm_span(inst: ChowInstance, alpha: CycleClass, m: int) -> SpanReport:
    """The span V_m(alpha) of signed-diagonal pushforwards of tensor powers."""
    if alpha.m != 1:
        raise ValueError("alpha must live on A itself")
    if alpha.numeric.degree() not in (None, 2 * alpha.p):
        raise ValueError("alpha must be homogeneous")
    return _span(inst, alpha, m)


def c_alpha_span(inst: ChowInstance, alpha: CycleClass, m: int) -> SpanReport:
    """The span C_alpha(A^m): tensor factors drawn from powers of alpha and
    the point class."""
    if alpha.m != 1:
        raise ValueError("alpha must live on A itself")
    if not is_symmetric(inst, alpha):
        raise ValueError("alpha must be symmetric (fixed by -1 pullback)")
    return _span(inst, alpha, m, extra_betas=[inst.point_class(1)])


def is_symmetric(inst: ChowInstance, x: CycleClass) -> bool:
    return inst.pullback(HomMatrix.mult_by(-1, x.m), x) == x


def is_symmetrically_distinguished(inst: ChowInstance, alpha: CycleClass,
                                   m_max: int | None = None
                                   ) -> tuple[bool, list[SpanReport]]:
    if m_max is None:
        m_max = default_m_max(inst.g)
    reports = []
    verdict = True
    for m in range(1, m_max + 1):
        rep = vm_span(inst, alpha, m)
        reports.append(rep)
        verdict &= rep.injective
    return verdict, reports


def canonical_lift(alphabar: CycleClass, target: ChowInstance,
                   m_max: int | None = None, verify: bool = True) -> CycleClass:
    """The distinguished lift of a numerical class: deformation part zero."""
    if target.g != alphabar.inst.g:
        raise ValueError("instances must share g")
    if not target.deformed:
        raise ValueError("target must be a deformed instance")
    lift = CycleClass(target, alphabar.m, alphabar.p, alphabar.numeric, None)
    if verify and alphabar.m == 1 and not lift.is_zero():
        ok, reports = is_symmetrically_distinguished(target, lift, m_max)
        if not ok:
            raise ArithmeticError("canonical lift failed the distinction test")
    return lift


def uniqueness_probe(alphabar: CycleClass, target: ChowInstance,
                     perturbations: list[CycleClass],
                     m_max: int | None = None) -> dict:
    """Test each perturbed lift; report the least failing power and witness."""
    if m_max is None:
        m_max = default_m_max(target.g)
    base = canonical_lift(alphabar, target, m_max=m_max, verify=False)
    results = []
    survivors = 0
    for w in perturbations:
        cand = base + w if not w.is_zero() else base
        entry = {"perturbation": w.serialize(), "fail_at_m": None,
                 "witness": None}
        for m in range(1, m_max + 1):
            rep = vm_span(target, cand, m)
            if not rep.injective:
                entry["fail_at_m"] = m
                entry["witness"] = rep.witness.serialize() if rep.witness else None
                break
        if entry["fail_at_m"] is None and not w.is_zero():
            survivors += 1
        results.append(entry)
    return {"m_max": m_max, "results": results, "survivors": survivors}


def beauville_split(x: CycleClass) -> list[tuple[int, CycleClass]]:
    """Eigen-decomposition under multiplication-by-n pullbacks: the numeric
    part has weight index 0 (eigenvalue n^{2p}), the deformation part weight
    index s (eigenvalue n^{2p-s})."""
    inst = x.inst
    out = []
    numeric_part = CycleClass(inst, x.m, x.p, x.numeric, None)
    if not numeric_part.is_zero():
        out.append((0, numeric_part))
    if inst.deformed:
        eps_part = CycleClass(inst, x.m, x.p,
                              ExteriorVector.zero(inst.g, x.m), x.deform)
        if not eps_part.is_zero():
            out.append((inst.s, eps_part))
    return out


def stability_suite(inst: ChowInstance, m_max: int = 3, trials: int = 10,
                    seed: int = 0) -> dict[str, bool]:
    """Closure of canonical lifts under the Chow operations, and bijectivity
    of the numerical projection restricted to lifts."""
    if not inst.deformed:
        raise ValueError("stability suite needs a deformed instance")
    rng = Random(seed)
    num = inst.numerical_instance()
    g = inst.g
    out = {k: True for k in ("linear", "product", "pullback", "pushforward",
                             "section", "bijective")}

    def lift(v: CycleClass) -> CycleClass:
        return CycleClass(inst, v.m, v.p, v.numeric, None)

    for _ in range(trials):
        a = rng.randint(1, m_max)
        b = rng.randint(1, m_max)
        p = rng.randint(0, g * a)
        xb = num.random_class(a, p, rng)
        yb = num.random_class(a, p, rng)
        c1, c2 = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))
        out["linear"] &= (lift(xb).scale(c1) + lift(yb).scale(c2)
                          == lift(xb.scale(c1) + yb.scale(c2)))
        q = rng.randint(0, g * a)
        zb = num.random_class(a, q, rng)
        out["product"] &= lift(xb) * lift(zb) == lift(num.product(xb, zb))
        rows = [[rng.randint(-2, 2) for _ in range(b)] for _ in range(a)]
        f = HomMatrix.of(rows)      # A^b -> A^a
        if g * max(a, b) > 2:       # keep expansions small at g = 2
            f = HomMatrix.of([[rng.choice((1, -1)) if j == rng.randrange(b)
                               else 0 for j in range(b)] for _ in range(a)])
        out["pullback"] &= (inst.pullback(f, lift(xb))
                            == lift(num.pullback(f, xb)))
        wb = num.random_class(b, rng.randint(0, g * b), rng)
        out["pushforward"] &= (inst.pushforward(f, lift(wb))
                               == lift(num.pushforward(f, wb)))
        out["section"] &= inst.numerical_projection(lift(xb)) == xb
    # bijectivity: the lifts in codimension p on A^m form a space of the same
    # dimension as the numerical theory, and the projection is the inverse
    for m in range(1, m_max + 1):
        for p in range(0, g * m + 1):
            out["bijective"] &= (len(num.numeric_basis(m, p))
                                 == len(inst.numeric_basis(m, p)))
    return out


def span_report_json(inst: ChowInstance, alpha: CycleClass, alpha_label: str,
                     m_max: int | None = None) -> dict:
    verdict, reports = is_symmetrically_distinguished(inst, alpha, m_max)
    bound = theoretical_bound(inst.g)
    fail_at = next((r.m for r in reports if not r.injective), None)
    return {
        "alpha": alpha_label,
        "injective": verdict,
        "fail_at_m": fail_at,
        "theoretical_bound": bound,
        "reports": [r.to_json(alpha_label, bound) for r in reports],
    }
