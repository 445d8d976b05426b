"""Walled Brauer diagram calculus with a polynomial loop parameter.

Objects are pairs [r, s] (r tensor factors of the generating object, s of
its dual).  A morphism [r, s] -> [u, v] is an integer-polynomial linear
combination of wall-respecting perfect matchings on the r+s+u+v endpoints.
Composition stacks diagrams and converts every closed loop into one factor
of t; the trace closes a diagram up and counts loops the same way.

Endpoint numbering (the normal form all comparisons use): bottom row left
to right, then top row left to right.  In each row the up-arrows come
first: bottom indices [0, r) point up and [r, r+s) point down; with
B = r + s, top indices [B, B+u) point up and [B+u, B+u+v) point down.
A pair inside one row joins an up and a down endpoint; a pair across the
rows joins two endpoints of the same direction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from .partitions import dim_sym_irrep, enumerate_in_box
from .scalars import (
    CapExceeded,
    DomainError,
    FpScalar,
    T,
    TPolynomial,
    exact_rank,
)

#: Hom spaces have d! basis diagrams where d = r + v; this cap keeps the
#: worst Gram matrix at 720 x 720.
DEGREE_CAP = 6


@dataclass(frozen=True)
class BiObject:
    """The object [r, s]: r covariant and s contravariant tensor factors."""

    r: int
    s: int

    def __post_init__(self):
        if self.r < 0 or self.s < 0:
            raise DomainError("object indices must be nonnegative")

    @property
    def total(self) -> int:
        return self.r + self.s

    def dual(self) -> "BiObject":
        return BiObject(self.s, self.r)

    def __matmul__(self, other: "BiObject") -> "BiObject":
        return BiObject(self.r + other.r, self.s + other.s)

    def __str__(self):
        return f"[{self.r},{self.s}]"


def _endpoint_kind(source: BiObject, target: BiObject, i: int) -> tuple[int, int]:
    """(row, direction) of endpoint i: row 0 = bottom, direction 0 = up."""
    bottom = source.total
    if i < bottom:
        return 0, (0 if i < source.r else 1)
    j = i - bottom
    if j >= target.total:
        raise DomainError(f"endpoint {i} out of range")
    return 1, (0 if j < target.r else 1)


@dataclass(frozen=True)
class WalledDiagram:
    """A wall-respecting perfect matching; a basis morphism source -> target."""

    source: BiObject
    target: BiObject
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted(pair)) for pair in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        k = self.source.total + self.target.total
        seen = [x for pair in pairs for x in pair]
        if sorted(seen) != list(range(k)):
            raise DomainError("pairs do not form a perfect matching of the endpoints")
        for x, y in pairs:
            row_x, dir_x = _endpoint_kind(self.source, self.target, x)
            row_y, dir_y = _endpoint_kind(self.source, self.target, y)
            if row_x == row_y:
                if dir_x == dir_y:
                    raise DomainError(f"pair {(x, y)} joins two same-direction endpoints in one row")
            elif dir_x != dir_y:
                raise DomainError(f"pair {(x, y)} changes arrow direction across the rows")

    def flip(self) -> "WalledDiagram":
        """Top-to-bottom reflection: the canonical image in Hom(target, source)."""
        bottom = self.source.total
        top = self.target.total

        def remap(i: int) -> int:
            return i - bottom if i >= bottom else top + i

        return WalledDiagram(
            self.target, self.source, tuple((remap(x), remap(y)) for x, y in self.pairs)
        )

    def to_json(self) -> dict:
        return {
            "source": [self.source.r, self.source.s],
            "target": [self.target.r, self.target.s],
            "pairs": [list(pair) for pair in self.pairs],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "WalledDiagram":
        return cls(
            BiObject(*doc["source"]),
            BiObject(*doc["target"]),
            tuple(tuple(pair) for pair in doc["pairs"]),
        )


def identity_diagram(obj: BiObject) -> WalledDiagram:
    n = obj.total
    return WalledDiagram(obj, obj, tuple((i, n + i) for i in range(n)))


def hom_basis(source: BiObject, target: BiObject, cap: int = DEGREE_CAP) -> list[WalledDiagram]:
    """All walled diagrams source -> target, in a fixed deterministic order.

    Empty unless r + v = s + u; otherwise there are exactly d! diagrams
    (d = r + v), one per bijection between the outgoing endpoints (bottom
    ups, top downs) and the incoming ones (bottom downs, top ups).
    """
    d = source.r + target.s
    if d != source.s + target.r:
        return []
    if d > cap:
        raise CapExceeded(f"hom space of degree {d} exceeds the cap {cap} ({d}! diagrams)")
    bottom = source.total
    outgoing = list(range(source.r)) + [bottom + target.r + i for i in range(target.s)]
    incoming = [source.r + i for i in range(source.s)] + [bottom + i for i in range(target.r)]
    out = []
    for perm in itertools.permutations(range(d)):
        pairs = tuple((outgoing[i], incoming[perm[i]]) for i in range(d))
        out.append(WalledDiagram(source, target, pairs))
    return out


def _stack(top: WalledDiagram, bottom: WalledDiagram) -> tuple[WalledDiagram, int]:
    """Stack `bottom` (A -> B) under `top` (B -> C); return (diagram, loops).

    Shared node ids: 0..a-1 the A endpoints, a..a+b-1 the middle row,
    a+b..a+b+c-1 the C endpoints.  Every middle node carries exactly one
    edge from each diagram, so components are boundary-to-boundary paths
    plus closed middle cycles; each cycle contributes one loop.
    """
    if bottom.target != top.source:
        raise DomainError(
            f"cannot stack: middle objects {bottom.target} and {top.source} differ"
        )
    a = bottom.source.total
    b = bottom.target.total
    c = top.target.total
    g_adj: dict[int, int] = {}
    for x, y in bottom.pairs:  # endpoints already live on ids 0..a+b-1
        g_adj[x] = y
        g_adj[y] = x
    f_adj: dict[int, int] = {}
    for x, y in top.pairs:  # shift by a: middle ids a..a+b-1, C ids a+b..
        f_adj[a + x] = a + y
        f_adj[a + y] = a + x

    def is_middle(v: int) -> bool:
        return a <= v < a + b

    pairs = []
    seen_boundary: set[int] = set()
    seen_middle: set[int] = set()
    for v in itertools.chain(range(a), range(a + b, a + b + c)):
        if v in seen_boundary:
            continue
        use_g = v < a
        cur = g_adj[v] if use_g else f_adj[v]
        while is_middle(cur):
            seen_middle.add(cur)
            use_g = not use_g
            cur = g_adj[cur] if use_g else f_adj[cur]
        seen_boundary.add(v)
        seen_boundary.add(cur)
        pairs.append((v, cur))

    loops = 0
    for m in range(a, a + b):
        if m in seen_middle:
            continue
        loops += 1
        cur, use_g = m, True
        while True:
            seen_middle.add(cur)
            cur = g_adj[cur] if use_g else f_adj[cur]
            use_g = not use_g
            if cur == m and use_g:
                break

    def final(v: int) -> int:
        return v if v < a else v - b

    diagram = WalledDiagram(
        bottom.source, top.target, tuple((final(x), final(y)) for x, y in pairs)
    )
    return diagram, loops


def _juxtapose(d1: WalledDiagram, d2: WalledDiagram) -> WalledDiagram:
    """Place d2 to the right of d1, renumbering into the [r, s] normal form."""
    r1, s1 = d1.source.r, d1.source.s
    u1, v1 = d1.target.r, d1.target.s
    r2, s2 = d2.source.r, d2.source.s
    u2, v2 = d2.target.r, d2.target.s
    R, U = r1 + r2, u1 + u2
    B = R + s1 + s2

    def m1(e: int) -> int:
        if e < r1:
            return e
        if e < r1 + s1:
            return R + (e - r1)
        e -= r1 + s1
        return B + e if e < u1 else B + U + (e - u1)

    def m2(e: int) -> int:
        if e < r2:
            return r1 + e
        if e < r2 + s2:
            return R + s1 + (e - r2)
        e -= r2 + s2
        return B + u1 + e if e < u2 else B + U + v1 + (e - u2)

    pairs = [(m1(x), m1(y)) for x, y in d1.pairs] + [(m2(x), m2(y)) for x, y in d2.pairs]
    return WalledDiagram(d1.source @ d2.source, d1.target @ d2.target, tuple(pairs))


def _closure_loops(d: WalledDiagram) -> int:
    """Loops after joining bottom endpoint i to top endpoint i for all i."""
    n = d.source.total
    match: dict[int, int] = {}
    for x, y in d.pairs:
        match[x] = y
        match[y] = x
    visited: set[int] = set()
    loops = 0
    for start in range(2 * n):
        if start in visited:
            continue
        loops += 1
        cur, use_match = start, True
        while True:
            visited.add(cur)
            if use_match:
                cur = match[cur]
            else:
                cur = cur + n if cur < n else cur - n
            use_match = not use_match
            if cur == start and use_match:
                break
    return loops


def _coerce_coeff(c) -> TPolynomial:
    if isinstance(c, TPolynomial):
        return c
    if isinstance(c, int):
        return TPolynomial((c,))
    raise DomainError(f"diagram coefficients must be integer polynomials, got {type(c).__name__}")


class DiagramMorphism:
    """A finite linear combination of walled diagrams with one source/target."""

    __slots__ = ("source", "target", "terms")

    def __init__(self, source: BiObject, target: BiObject, terms=()):
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        data: dict[WalledDiagram, TPolynomial] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for dia, coeff in items:
            if dia.source != source or dia.target != target:
                raise DomainError("term does not match the morphism's source/target")
            coeff = _coerce_coeff(coeff)
            if dia in data:
                coeff = data[dia] + coeff
            data[dia] = coeff
        pruned = {d: c for d, c in data.items() if not c.is_zero}
        object.__setattr__(self, "terms", MappingProxyType(pruned))

    def __setattr__(self, name, val):
        raise AttributeError("DiagramMorphism is immutable")

    @classmethod
    def from_diagram(cls, dia: WalledDiagram, coeff=1) -> "DiagramMorphism":
        return cls(dia.source, dia.target, [(dia, coeff)])

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "DiagramMorphism") -> "DiagramMorphism":
        if (self.source, self.target) != (other.source, other.target):
            raise DomainError("cannot add morphisms between different objects")
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, TPolynomial()) + c
        return DiagramMorphism(self.source, self.target, out)

    def __sub__(self, other: "DiagramMorphism") -> "DiagramMorphism":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "DiagramMorphism":
        c = _coerce_coeff(scalar)
        return DiagramMorphism(
            self.source, self.target, [(d, c * v) for d, v in self.terms.items()]
        )

    def __matmul__(self, other: "DiagramMorphism") -> "DiagramMorphism":
        """Composition self o other (apply `other` first)."""
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, DiagramMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.terms == other.terms
        )

    def __repr__(self):
        if self.is_zero:
            body = "0"
        else:
            body = " + ".join(f"({c})*{d.pairs}" for d, c in sorted(self.terms.items(), key=lambda t: t[0].pairs))
        return f"<{self.source} -> {self.target}: {body}>"

    def to_json(self) -> dict:
        ordered = sorted(self.terms.items(), key=lambda item: item[0].pairs)
        return {
            "source": [self.source.r, self.source.s],
            "target": [self.target.r, self.target.s],
            "terms": [
                {"pairs": [list(p) for p in d.pairs], "coeff": str(c)} for d, c in ordered
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "DiagramMorphism":
        source = BiObject(*doc["source"])
        target = BiObject(*doc["target"])
        if "terms" not in doc and "pairs" in doc:  # bare diagram: coefficient 1
            return cls.from_diagram(WalledDiagram.from_json(doc))
        terms = []
        for term in doc["terms"]:
            dia = WalledDiagram(source, target, tuple(tuple(p) for p in term["pairs"]))
            coeff = term.get("coeff", 1)
            terms.append((dia, TPolynomial.parse(coeff) if isinstance(coeff, str) else coeff))
        return cls(source, target, terms)


def identity(obj: BiObject) -> DiagramMorphism:
    return DiagramMorphism.from_diagram(identity_diagram(obj))


def compose(f: DiagramMorphism, g: DiagramMorphism) -> DiagramMorphism:
    """f o g, stacking diagram by diagram; every closed loop becomes a factor t."""
    if g.target != f.source:
        raise DomainError(f"cannot compose: {g.target} feeds into {f.source}")
    acc: dict[WalledDiagram, TPolynomial] = {}
    for dg, cg in g.terms.items():
        for df, cf in f.terms.items():
            dia, loops = _stack(df, dg)
            coeff = cf * cg * T**loops
            acc[dia] = acc.get(dia, TPolynomial()) + coeff
    return DiagramMorphism(g.source, f.target, acc)


def tensor(f: DiagramMorphism, g: DiagramMorphism) -> DiagramMorphism:
    """Side-by-side tensor product; coefficients multiply, no loops arise."""
    acc: dict[WalledDiagram, TPolynomial] = {}
    for d1, c1 in f.terms.items():
        for d2, c2 in g.terms.items():
            dia = _juxtapose(d1, d2)
            acc[dia] = acc.get(dia, TPolynomial()) + c1 * c2
    return DiagramMorphism(f.source @ g.source, f.target @ g.target, acc)


def braiding(a: BiObject, b: BiObject) -> DiagramMorphism:
    """The symmetry a (x) b -> b (x) a: every strand crosses the other block."""
    R = a.r + b.r
    S = a.s + b.s
    O = R + S
    pairs = []
    pairs += [(i, O + b.r + i) for i in range(a.r)]
    pairs += [(a.r + j, O + j) for j in range(b.r)]
    pairs += [(R + i, O + R + b.s + i) for i in range(a.s)]
    pairs += [(R + a.s + j, O + R + j) for j in range(b.s)]
    dia = WalledDiagram(BiObject(R, S), BiObject(R, S), tuple(pairs))
    return DiagramMorphism.from_diagram(dia)


def trace(f: DiagramMorphism) -> TPolynomial:
    """Diagrammatic trace of an endomorphism: close up all strands.

    Each closed loop contributes one factor of t, so a single diagram
    traces to t^(number of loops); extended linearly.
    """
    if f.source != f.target:
        raise DomainError("trace requires an endomorphism")
    out = TPolynomial()
    for dia, coeff in f.terms.items():
        out = out + coeff * T ** _closure_loops(dia)
    return out


def gram_matrix(source: BiObject, target: BiObject, t_value="symbolic", cap: int = DEGREE_CAP):
    """Gram matrix of the trace pairing on Hom(source, target).

    Entry (i, j) is the trace of d_i o flip(d_j).  With t_value="symbolic"
    the entries are integer polynomials in t; otherwise they are evaluated
    exactly at the given rational or prime-field point.
    """
    basis = hom_basis(source, target, cap=cap)
    flipped = [d.flip() for d in basis]
    rows = []
    for di in basis:
        row = []
        for fj in flipped:
            dia, loops = _stack(di, fj)
            entry = T ** (loops + _closure_loops(dia))
            row.append(entry if t_value == "symbolic" else entry.evaluate(t_value))
        rows.append(row)
    return rows


def negligible_rank(source: BiObject, target: BiObject, t_value, cap: int = DEGREE_CAP) -> tuple[int, int]:
    """Rank of the Gram matrix at an exact parameter value.

    The rank equals the dimension of the hom space once negligible
    morphisms are quotiented away, so it is returned twice: (rank,
    quotient dimension).
    """
    if t_value == "symbolic" or not isinstance(t_value, (int, Fraction, FpScalar)):
        raise DomainError("negligible rank needs an exact (rational or F_p) parameter value")
    rank = exact_rank(gram_matrix(source, target, t_value, cap=cap))
    return rank, rank


def schur_weyl_homdim(n: int, source: BiObject, target: BiObject) -> int:
    """Hom-space dimension over the rank-n classical group, via characters.

    Independent oracle for Gram ranks at t = n: after moving duals across,
    the dimension is the sum of squared symmetric-group irreducible
    dimensions over partitions of d with at most n rows.
    """
    if n < 1:
        raise DomainError("the classical-group rank n must be >= 1")
    d = source.r + target.s
    if d != source.s + target.r:
        return 0
    if d == 0:
        return 1
    return sum(dim_sym_irrep(lam) ** 2 for lam in enumerate_in_box(d, n, d))


def endomorphism_trace_form(obj: BiObject, t_value="symbolic", cap: int = DEGREE_CAP):
    """Trace form of the left regular representation of End([r, s]).

    T[i][j] is the matrix trace of left multiplication by b_i o b_j.  Over
    the rationals its rank detects the radical of the *algebra* (Dickson's
    criterion in characteristic zero), as opposed to the categorical trace
    pairing of gram_matrix, whose radical is the negligible ideal.
    """
    basis = hom_basis(obj, obj, cap=cap)
    n = len(basis)
    index = {d: i for i, d in enumerate(basis)}
    prod: list[list[tuple[int, int]]] = []  # (basis index, loop count) of b_i o b_j
    for di in basis:
        row = []
        for dj in basis:
            dia, loops = _stack(di, dj)
            row.append((index[dia], loops))
        prod.append(row)
    # trace of left multiplication by b_k
    reg_trace = []
    for k in range(n):
        tr = TPolynomial()
        for j in range(n):
            idx, loops = prod[k][j]
            if idx == j:
                tr = tr + T**loops
        reg_trace.append(tr)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            idx, loops = prod[i][j]
            entry = T**loops * reg_trace[idx]
            row.append(entry if t_value == "symbolic" else entry.evaluate(t_value))
        rows.append(row)
    return rows


def algebra_is_semisimple(obj: BiObject, t_value, cap: int = DEGREE_CAP) -> bool:
    """Whether End([r, s]) at a rational parameter value is a semisimple algebra."""
    if not isinstance(t_value, (int, Fraction)):
        raise DomainError("algebra semisimplicity is tested over the rationals")
    form = endomorphism_trace_form(obj, t_value, cap=cap)
    return exact_rank(form) == len(form)
