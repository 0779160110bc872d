"""Free rigid symmetric tensor categories over Q, as matching diagrams.

Objects are words in formal letters ``X`` / ``X*`` (a letter per generator,
plain or dual).  A basis morphism is a perfect matching of the endpoints of
the source and target words in which every edge joins letters of the same
generator: through strands join equal letters across the two words, caps join
mutually dual letters inside the source, cups join mutually dual letters
inside the target.  General morphisms are Q-linear combinations of such
diagrams; composition glues matchings and evaluates each closed loop to the
rank of its generator.

Endpoints are numbered source first: source positions 0..p-1, target
positions p..p+q-1.  Edges are stored as sorted pairs, the edge list sorted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .linalg import Q

Letter = tuple[str, bool]          # (generator name, is_dual)
Word = tuple[Letter, ...]


def letter(name: str, dual: bool = False) -> Letter:
    return (name, dual)


def word(*letters: str) -> Word:
    """Build a word from tokens like 'n' or 'n*'."""
    out = []
    for tok in letters:
        tok = tok.strip()
        if tok.endswith("*"):
            out.append((tok[:-1], True))
        else:
            out.append((tok, False))
    return tuple(out)


def word_str(w: Word) -> str:
    return ",".join(name + ("*" if dual else "") for name, dual in w)


def parse_word(s: str) -> Word:
    """Parse comma- or whitespace-separated letters like 'N,N*' or 'N N*'."""
    toks = s.replace(",", " ").split()
    return word(*toks)


def dual_word(w: Word) -> Word:
    """The dual of a word: reversed order, each letter flipped."""
    return tuple((name, not dual) for name, dual in reversed(w))


def charge(w: Word) -> dict[str, int]:
    """Net plain-minus-dual letter count per generator."""
    out: dict[str, int] = {}
    for name, dual in w:
        out[name] = out.get(name, 0) + (-1 if dual else 1)
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class Diagram:
    """A single matching diagram between two words."""

    src: Word
    dst: Word
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges",
                           tuple(sorted(tuple(sorted(e)) for e in self.edges)))

    def letter_at(self, pos: int) -> Letter:
        p = len(self.src)
        return self.src[pos] if pos < p else self.dst[pos - p]

    def validate(self) -> None:
        p, q = len(self.src), len(self.dst)
        seen: set[int] = set()
        for a, b in self.edges:
            la, lb = self.letter_at(a), self.letter_at(b)
            if la[0] != lb[0]:
                raise ValueError("edge joins letters of different generators")
            side_a, side_b = a < p, b < p
            if side_a == side_b:
                if la[1] == lb[1]:
                    raise ValueError("cap/cup must join mutually dual letters")
            else:
                if la != lb:
                    raise ValueError("through strand must join equal letters")
            seen.update((a, b))
        if seen != set(range(p + q)) or len(self.edges) * 2 != p + q:
            raise ValueError("edges are not a perfect matching of the endpoints")

    def is_identity(self) -> bool:
        if self.src != self.dst:
            return False
        p = len(self.src)
        return all((i, p + i) in self.edges for i in range(p))


@dataclass
class Morphism:
    """A Q-linear combination of matching diagrams with common source/target."""

    cat: "FreeCategory"
    src: Word
    dst: Word
    terms: dict[Diagram, Fraction]

    def __post_init__(self):
        self.terms = {d: Q(c) for d, c in self.terms.items() if c != 0}

    # -- linear structure ---------------------------------------------------
    def __add__(self, other: "Morphism") -> "Morphism":
        if (self.src, self.dst) != (other.src, other.dst):
            raise ValueError("cannot add morphisms with different (co)domains")
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms.get(d, Q(0)) + c
        return Morphism(self.cat, self.src, self.dst, terms)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + other.scale(-1)

    def __neg__(self) -> "Morphism":
        return self.scale(-1)

    def scale(self, c) -> "Morphism":
        c = Q(c)
        return Morphism(self.cat, self.src, self.dst,
                        {d: c * x for d, x in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, Morphism)
                and (self.src, self.dst) == (other.src, other.dst)
                and self.terms == other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- categorical structure ---------------------------------------------
    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition self after other."""
        return self.cat.compose(self, other)

    def tensor(self, other: "Morphism") -> "Morphism":
        return self.cat.tensor(self, other)

    def transpose(self) -> "Morphism":
        return self.cat.transpose(self)

    def trace(self) -> Fraction:
        return self.cat.trace(self)

    def contract_last(self, k: int = 1) -> "Morphism":
        return self.cat.contract_last(self, k)

    def power(self, n: int) -> "Morphism":
        if self.src != self.dst:
            raise ValueError("power of non-endomorphism")
        out = self.cat.identity(self.src)
        for _ in range(n):
            out = out @ self
        return out

    def __repr__(self) -> str:
        return "Morphism(%s -> %s, %d terms)" % (
            word_str(self.src) or "1", word_str(self.dst) or "1", len(self.terms))


class FreeCategory:
    """The free rigid symmetric Q-linear tensor category on ranked generators.

    ``generators`` maps generator names to their integer ranks (the value of a
    closed loop of that generator).  The matching diagrams form a basis of
    every hom space; this freeness is taken as an axiom of the construction.
    """

    def __init__(self, generators: dict[str, int]):
        for name, r in generators.items():
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name):
                raise ValueError("bad generator name %r" % (name,))
            if not isinstance(r, int):
                raise TypeError("generator ranks must be integers")
        self.generators = dict(generators)

    def rank_of(self, name: str) -> int:
        return self.generators[name]

    def check_word(self, w: Word) -> Word:
        for name, _ in w:
            if name not in self.generators:
                raise KeyError("unknown generator %r" % (name,))
        return w

    # -- constructors -------------------------------------------------------
    def morphism(self, src: Word, dst: Word,
                 terms: dict[Diagram, Fraction]) -> Morphism:
        return Morphism(self, src, dst, terms)

    def zero(self, src: Word, dst: Word) -> Morphism:
        return Morphism(self, src, dst, {})

    def identity(self, w: Word) -> Morphism:
        p = len(w)
        d = Diagram(w, w, tuple((i, p + i) for i in range(p)))
        return Morphism(self, w, w, {d: Q(1)})

    def symmetry(self, w: Word, perm: tuple[int, ...]) -> Morphism:
        """The permutation morphism sending source position i to target
        position perm[i]."""
        if sorted(perm) != list(range(len(w))):
            raise ValueError("not a permutation")
        p = len(w)
        dst = list(w)
        for i, li in enumerate(w):
            dst[perm[i]] = li
        d = Diagram(w, tuple(dst), tuple((i, p + perm[i]) for i in range(p)))
        return Morphism(self, w, tuple(dst), {d: Q(1)})

    def block_symmetry(self, block: Word, perm: tuple[int, ...]) -> Morphism:
        """Permutation of the n tensor blocks of block^{tensor n}."""
        n = len(perm)
        k = len(block)
        strand = [0] * (n * k)
        for i in range(n):
            for j in range(k):
                strand[i * k + j] = perm[i] * k + j
        return self.symmetry(block * n, tuple(strand))

    def evaluation(self, name: str) -> Morphism:
        """cap: X tensor X* -> 1."""
        w = ((name, False), (name, True))
        return Morphism(self, w, (), {Diagram(w, (), ((0, 1),)): Q(1)})

    def coevaluation(self, name: str) -> Morphism:
        """cup: 1 -> X* tensor X."""
        w = ((name, True), (name, False))
        return Morphism(self, (), w, {Diagram((), w, ((0, 1),)): Q(1)})

    # -- hom spaces ----------------------------------------------------------
    def hom_basis(self, src: Word, dst: Word) -> list[Diagram]:
        self.check_word(src)
        self.check_word(dst)
        return [Diagram(src, dst, edges)
                for edges in self._matchings(src, dst)]

    def hom_dim(self, src: Word, dst: Word) -> int:
        return len(self.hom_basis(src, dst))

    def _matchings(self, src: Word, dst: Word):
        if charge(src) != charge(dst):
            return []
        p, q = len(src), len(dst)
        letters = list(src) + list(dst)

        def compatible(a: int, b: int) -> bool:
            la, lb = letters[a], letters[b]
            if la[0] != lb[0]:
                return False
            same_side = (a < p) == (b < p)
            return (la[1] != lb[1]) if same_side else (la == lb)

        out: list[tuple[tuple[int, int], ...]] = []

        def rec(free: list[int], acc: list[tuple[int, int]]):
            if not free:
                out.append(tuple(acc))
                return
            a = free[0]
            for b in free[1:]:
                if compatible(a, b):
                    acc.append((a, b))
                    rec([x for x in free[1:] if x != b], acc)
                    acc.pop()

        rec(list(range(p + q)), [])
        return out

    # -- composition ---------------------------------------------------------
    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        if f.dst != g.src:
            raise ValueError("composition mismatch: %s vs %s"
                             % (word_str(f.dst), word_str(g.src)))
        terms: dict[Diagram, Fraction] = {}
        for df, cf in f.terms.items():
            for dg, cg in g.terms.items():
                d, loops = self._glue(dg, df)
                c = cf * cg
                for name, n in loops.items():
                    c *= Q(self.generators[name]) ** n
                if c:
                    terms[d] = terms.get(d, Q(0)) + c
        return Morphism(self, f.src, g.dst, terms)

    def _glue(self, dg: Diagram, df: Diagram) -> tuple[Diagram, dict[str, int]]:
        """Glue dg after df along the middle word; count closed loops."""
        p = len(df.src)
        q = len(df.dst)
        r = len(dg.dst)
        # nodes: ('P', i) source, ('Q', j) middle, ('R', k) target
        adj_f: dict[tuple[str, int], tuple[str, int]] = {}
        for a, b in df.edges:
            na = ("P", a) if a < p else ("Q", a - p)
            nb = ("P", b) if b < p else ("Q", b - p)
            adj_f[na] = nb
            adj_f[nb] = na
        adj_g: dict[tuple[str, int], tuple[str, int]] = {}
        for a, b in dg.edges:
            na = ("Q", a) if a < q else ("R", a - q)
            nb = ("Q", b) if b < q else ("R", b - q)
            adj_g[na] = nb
            adj_g[nb] = na

        def other(node, use_f):
            return (adj_f if use_f else adj_g)[node]

        visited: set[tuple[str, int]] = set()
        edges: list[tuple[int, int]] = []
        loops: dict[str, int] = {}

        def endpoint_index(node):
            side, i = node
            return i if side == "P" else p + i

        for side, count in (("P", p), ("R", r)):
            for i in range(count):
                start = (side, i)
                if start in visited:
                    continue
                visited.add(start)
                use_f = side == "P"
                cur = other(start, use_f)
                while cur[0] == "Q":
                    visited.add(cur)
                    use_f = not use_f
                    cur = other(cur, use_f)
                visited.add(cur)
                edges.append((endpoint_index(start), endpoint_index(cur)))
        for j in range(q):
            start = ("Q", j)
            if start in visited:
                continue
            # a closed loop in the middle word
            name = df.dst[j][0]
            loops[name] = loops.get(name, 0) + 1
            cur = start
            use_f = True
            while True:
                visited.add(cur)
                cur = other(cur, use_f)
                use_f = not use_f
                if cur == start:
                    break
        return Diagram(df.src, dg.dst, tuple(edges)), loops

    # -- tensor --------------------------------------------------------------
    def tensor(self, f: Morphism, g: Morphism) -> Morphism:
        src = f.src + g.src
        dst = f.dst + g.dst
        p1, q1 = len(f.src), len(f.dst)
        p2 = len(g.src)
        p = p1 + p2

        def shift_f(i: int) -> int:
            return i if i < p1 else i - p1 + p

        def shift_g(i: int) -> int:
            return i + p1 if i < p2 else i - p2 + p + q1

        terms: dict[Diagram, Fraction] = {}
        for d1, c1 in f.terms.items():
            for d2, c2 in g.terms.items():
                edges = tuple((shift_f(a), shift_f(b)) for a, b in d1.edges) + \
                        tuple((shift_g(a), shift_g(b)) for a, b in d2.edges)
                d = Diagram(src, dst, edges)
                terms[d] = terms.get(d, Q(0)) + c1 * c2
        return Morphism(self, src, dst, terms)

    def tensor_power(self, f: Morphism, n: int) -> Morphism:
        out = self.identity(())
        for _ in range(n):
            out = self.tensor(out, f)
        return out

    # -- closing strands: trace and contraction -------------------------------
    def _close(self, d: Diagram, pairs: list[tuple[int, int]]
               ) -> tuple[Diagram, dict[str, int]]:
        """Connect source position s with target position t for each (s, t);
        the two letters must be equal.  Returns the residual diagram and loop
        counts."""
        p, q = len(d.src), len(d.dst)
        closed_src = {s for s, _ in pairs}
        closed_dst = {t for _, t in pairs}
        for s, t in pairs:
            if d.src[s] != d.dst[t]:
                raise ValueError("cannot close strands with different letters")
        all_edges = list(d.edges) + [(s, p + t) for s, t in pairs]
        adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(p + q)}
        for eid, (a, b) in enumerate(all_edges):
            adj[a].append((eid, b))
            adj[b].append((eid, a))
        free = [i for i in range(p + q)
                if (i < p and i not in closed_src)
                or (i >= p and i - p not in closed_dst)]
        free_set = set(free)
        new_src = tuple(d.src[i] for i in range(p) if i not in closed_src)
        new_dst = tuple(d.dst[j] for j in range(q) if j not in closed_dst)
        # renumber surviving endpoints, source first
        renum: dict[int, int] = {}
        k = 0
        for i in range(p):
            if i not in closed_src:
                renum[i] = k
                k += 1
        for j in range(q):
            if j not in closed_dst:
                renum[p + j] = k
                k += 1
        used_edges: set[int] = set()
        visited: set[int] = set()
        edges: list[tuple[int, int]] = []
        loops: dict[str, int] = {}
        for start in free:
            if start in visited:
                continue
            visited.add(start)
            eid, cur = adj[start][0]
            used_edges.add(eid)
            while cur not in free_set:
                visited.add(cur)
                eid, cur = next((e, x) for e, x in adj[cur] if e not in used_edges)
                used_edges.add(eid)
            visited.add(cur)
            edges.append((renum[start], renum[cur]))
        for start in range(p + q):
            if start in visited:
                continue
            name = d.letter_at(start)[0]
            loops[name] = loops.get(name, 0) + 1
            visited.add(start)
            eid, cur = adj[start][0]
            used_edges.add(eid)
            while cur != start:
                visited.add(cur)
                eid, cur = next((e, x) for e, x in adj[cur] if e not in used_edges)
                used_edges.add(eid)
        return Diagram(new_src, new_dst, tuple(edges)), loops

    def trace(self, f: Morphism) -> Fraction:
        if f.src != f.dst:
            raise ValueError("trace of a non-endomorphism")
        total = Q(0)
        pairs = [(i, i) for i in range(len(f.src))]
        for d, c in f.terms.items():
            _, loops = self._close(d, pairs)
            val = c
            for name, n in loops.items():
                val *= Q(self.generators[name]) ** n
            total += val
        return total

    def contract_last(self, f: Morphism, k: int = 1) -> Morphism:
        p, q = len(f.src), len(f.dst)
        if k > min(p, q) or f.src[p - k:] != f.dst[q - k:]:
            raise ValueError("trailing words do not match; cannot contract")
        pairs = [(p - k + i, q - k + i) for i in range(k)]
        terms: dict[Diagram, Fraction] = {}
        for d, c in f.terms.items():
            nd, loops = self._close(d, pairs)
            for name, n in loops.items():
                c = c * Q(self.generators[name]) ** n
            if c:
                terms[nd] = terms.get(nd, Q(0)) + c
        return Morphism(self, f.src[: p - k], f.dst[: q - k], terms)

    # -- duality --------------------------------------------------------------
    def transpose(self, f: Morphism) -> Morphism:
        """The dual morphism dst^v -> src^v."""
        p, q = len(f.src), len(f.dst)
        nsrc, ndst = dual_word(f.dst), dual_word(f.src)

        def relabel(i: int) -> int:
            if i < p:        # source of f -> target of transpose
                return q + (p - 1 - i)
            return q - 1 - (i - p)   # target of f -> source of transpose

        terms: dict[Diagram, Fraction] = {}
        for d, c in f.terms.items():
            edges = tuple((relabel(a), relabel(b)) for a, b in d.edges)
            nd = Diagram(nsrc, ndst, edges)
            terms[nd] = terms.get(nd, Q(0)) + c
        return Morphism(self, nsrc, ndst, terms)

    # -- group algebra elements ----------------------------------------------
    def symmetrizer(self, block: Word, n: int) -> Morphism:
        """(1/n!) sum of all block permutations of block^{tensor n}."""
        out = self.zero(block * n, block * n)
        for perm in permutations(range(n)):
            out = out + self.block_symmetry(block, perm)
        return out.scale(Q(1, _factorial(n)))

    def antisymmetrizer(self, block: Word, n: int) -> Morphism:
        """(1/n!) signed sum of all block permutations of block^{tensor n}."""
        out = self.zero(block * n, block * n)
        for perm in permutations(range(n)):
            out = out + self.block_symmetry(block, perm).scale(_perm_sign(perm))
        return out.scale(Q(1, _factorial(n)))


@lru_cache(maxsize=None)
def _factorial(n: int) -> int:
    from math import factorial
    return factorial(n)


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# serialization

def serialize_morphism(f: Morphism) -> str:
    """One line per diagram term:
    ``src=<word>; dst=<word>; edges=(i,j),...; coeff=p/q``."""
    lines = []
    for d in sorted(f.terms, key=lambda d: d.edges):
        c = f.terms[d]
        edges = ",".join("(%d,%d)" % e for e in d.edges)
        lines.append("src=%s; dst=%s; edges=%s; coeff=%s"
                     % (word_str(d.src), word_str(d.dst), edges, c))
    if not lines:
        lines = ["src=%s; dst=%s; edges=; coeff=0"
                 % (word_str(f.src), word_str(f.dst))]
    return "\n".join(lines)


def parse_morphism(cat: FreeCategory, text: str,
                   src: Word | None = None, dst: Word | None = None) -> Morphism:
    terms: dict[Diagram, Fraction] = {}
    for line in text.strip().splitlines():
        line = line.strip()
        if not line:
            continue
        m = re.fullmatch(
            r"src=([^;]*);\s*dst=([^;]*);\s*edges=([^;]*);\s*coeff=(-?\d+(?:/\d+)?)",
            line)
        if m is None:
            raise ValueError("bad morphism line: %r" % (line,))
        w_src = parse_word(m.group(1))
        w_dst = parse_word(m.group(2))
        if src is None:
            src = w_src
        if dst is None:
            dst = w_dst
        if (w_src, w_dst) != (src, dst):
            raise ValueError("mixed (co)domains in morphism text")
        c = Q(m.group(4))
        if c == 0:
            continue
        edges = tuple(tuple(int(x) for x in pair.split(","))
                      for pair in re.findall(r"\(([^)]*)\)", m.group(3)))
        d = Diagram(w_src, w_dst, edges)
        d.validate()
        terms[d] = terms.get(d, Q(0)) + c
    if src is None or dst is None:
        raise ValueError("empty morphism text without explicit (co)domains")
    return Morphism(cat, src, dst, terms)
