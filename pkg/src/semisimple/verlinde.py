"""The Verlinde fusion ring on the simple labels L_1 .. L_{p-1}.

Only Grothendieck-ring data is modeled: multiplicity vectors, the
truncated Clebsch-Gordan product, categorical dimension in F_p, and the
Frobenius-Perron dimension.  The fusion rule is cross-validated elsewhere
against prime-field linear algebra on Jordan blocks, and the closed-form
FP dimension against a numeric Perron-Frobenius eigenvalue; neither side
is trusted alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from mpmath import mp

from .scalars import WORKING_DPS, DomainError, FpScalar, check_prime, q_int


@dataclass(frozen=True)
class FusionElement:
    """A nonnegative integer combination of the simple labels L_1..L_{p-1}."""

    p: int
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        m = tuple(int(x) for x in self.multiplicities)
        object.__setattr__(self, "multiplicities", m)
        if len(m) != self.p - 1:
            raise DomainError(f"expected {self.p - 1} multiplicities, got {len(m)}")
        if any(x < 0 for x in m):
            raise DomainError("multiplicities must be nonnegative")

    @classmethod
    def zero(cls, p: int) -> "FusionElement":
        return cls(p, (0,) * (p - 1))

    @classmethod
    def unit(cls, p: int) -> "FusionElement":
        return cls.simple(p, 1)

    @classmethod
    def simple(cls, p: int, k: int) -> "FusionElement":
        check_prime(p)
        if not 1 <= k <= p - 1:
            raise DomainError(f"label {k} outside [1, {p - 1}]")
        m = [0] * (p - 1)
        m[k - 1] = 1
        return cls(p, tuple(m))

    @property
    def is_zero(self) -> bool:
        return not any(self.multiplicities)

    @property
    def length(self) -> int:
        """Total number of simple summands, counted with multiplicity."""
        return sum(self.multiplicities)

    def __add__(self, other: "FusionElement") -> "FusionElement":
        if not isinstance(other, FusionElement):
            return NotImplemented
        if other.p != self.p:
            raise DomainError("cannot add fusion elements for different primes")
        return FusionElement(
            self.p, tuple(a + b for a, b in zip(self.multiplicities, other.multiplicities))
        )

    def __rmul__(self, n: int) -> "FusionElement":
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        return FusionElement(self.p, tuple(n * a for a in self.multiplicities))

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for k, m in enumerate(self.multiplicities, start=1):
            if m == 0:
                continue
            label = "1" if k == 1 else f"L{k}"
            parts.append(label if m == 1 else f"{m}.{label}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {"p": self.p, "m": list(self.multiplicities)}

    @classmethod
    def from_json(cls, doc: dict) -> "FusionElement":
        return cls(int(doc["p"]), tuple(doc["m"]))


@lru_cache(maxsize=None)
def _fusion_multiplicities(p: int, i: int, j: int) -> tuple[int, ...]:
    m = [0] * (p - 1)
    for l in range(1, min(i, j, p - i, p - j) + 1):
        m[abs(i - j) + 2 * l - 2] += 1
    return tuple(m)


def fusion(p: int, i: int, j: int) -> FusionElement:
    """Product L_i (x) L_j by the truncated Clebsch-Gordan rule.

    The summands are L_{|i-j|+2l-1} for l = 1 .. min(i, j, p-i, p-j); all
    multiplicities are 0 or 1.
    """
    check_prime(p)
    if not (1 <= i <= p - 1 and 1 <= j <= p - 1):
        raise DomainError(f"labels ({i}, {j}) outside [1, {p - 1}]")
    return FusionElement(p, _fusion_multiplicities(p, i, j))


def product(x: FusionElement, y: FusionElement) -> FusionElement:
    """Bilinear extension of the fusion rule; commutative."""
    if x.p != y.p:
        raise DomainError("fusion product across different primes")
    p = x.p
    out = [0] * (p - 1)
    for i, a in enumerate(x.multiplicities, start=1):
        if a == 0:
            continue
        for j, b in enumerate(y.multiplicities, start=1):
            if b == 0:
                continue
            for c, n in enumerate(_fusion_multiplicities(p, i, j)):
                if n:
                    out[c] += a * b * n
    return FusionElement(p, tuple(out))


def dual(x: FusionElement) -> FusionElement:
    """Dual object; every simple label is self-dual, so this is the identity."""
    return x


def cat_dim(x: FusionElement) -> FpScalar:
    """Categorical dimension: sum of k * m_k reduced into F_p."""
    return FpScalar(sum(k * m for k, m in enumerate(x.multiplicities, start=1)), x.p)


def fp_dim(x: FusionElement):
    """Frobenius-Perron dimension: sum of m_k [k]_q at high precision."""
    with mp.workdps(WORKING_DPS):
        total = mp.mpf(0)
        for k, m in enumerate(x.multiplicities, start=1):
            if m:
                total += m * q_int(x.p, k, 1)
        return total


def perron_frobenius_dim(x: FusionElement, tol: float = 1e-12, max_iter: int = 100000) -> float:
    """Largest eigenvalue of the multiplication matrix of x, by power iteration.

    Numeric validation witness for fp_dim; iterates on M + I so periodic
    multiplication matrices (permutations) still converge.
    """
    if x.is_zero:
        raise DomainError("zero element has no Perron-Frobenius eigenvalue")
    p = x.p
    n = p - 1
    M = np.zeros((n, n))
    for j in range(1, n + 1):
        col = [0] * n
        for i, a in enumerate(x.multiplicities, start=1):
            if a == 0:
                continue
            for c, mult in enumerate(_fusion_multiplicities(p, i, j)):
                col[c] += a * mult
        M[:, j - 1] = col
    shifted = M + np.eye(n)
    v = np.ones(n)
    lam = 0.0
    for _ in range(max_iter):
        w = shifted @ v
        new_lam = float(np.max(w))
        w /= new_lam
        if abs(new_lam - lam) < tol and float(np.max(np.abs(w - v))) < tol:
            return new_lam - 1.0
        v, lam = w, new_lam
    raise RuntimeError("power iteration did not converge")


def is_invertible(x: FusionElement) -> bool:
    """True iff x is a single simple label whose square is the unit.

    Verified through the product (x (x) x* = 1 with x* = x), not by pattern
    matching on the label; concretely holds exactly for L_1 and L_{p-1}.
    """
    if x.is_zero:
        raise DomainError("zero element is not an object")
    if x.length != 1:
        return False
    return product(x, dual(x)) == FusionElement.unit(x.p)


def in_plus_subring(x: FusionElement) -> bool:
    """True iff x only involves odd labels (the index-2 subring for p > 2)."""
    return all(m == 0 for k, m in enumerate(x.multiplicities, start=1) if k % 2 == 0)


def fusion_table(p: int) -> list[tuple[int, int, FusionElement]]:
    """The full (p-1) x (p-1) fusion table, rows ordered by (i, j)."""
    check_prime(p)
    return [
        (i, j, fusion(p, i, j))
        for i in range(1, p)
        for j in range(1, p)
    ]
