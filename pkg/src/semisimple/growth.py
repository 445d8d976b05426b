"""Tensor-power growth invariants, p-adic dimension digits, and lower bounds.

The growth rate of an object of the fusion ring is carried exactly by its
multiplicity vector; the attached real number is only a high-precision
evaluation and is never used for equality decisions.  Recovery of the
multiplicities from growth data is done by exact integer linear algebra
in the cyclotomic ring Z[q] (q a primitive 2p-th root of unity), which
realizes the Galois-conjugation uniqueness argument without floating
point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp

from .modrep import JordanModule, exterior_power, sym2, ext2, to_verlinde
from .partitions import Partition, dim_schur, dim_sym_irrep, enumerate_in_box
from .scalars import (
    NUMERIC_TOL,
    WORKING_DPS,
    CapExceeded,
    DomainError,
    FpScalar,
    check_prime,
)
from .verlinde import FusionElement, fp_dim, product

#: Partition enumeration cap for the lower bounds (p(46) is ~10^5 partitions).
BOUNDS_PRIME_CAP = 47


# ---------------------------------------------------------------------------
# Growth rates
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GrowthRate:
    """An exact growth rate: a multiplicity vector plus its numeric value.

    Equality is decided on (p, m) alone; the numeric field is recomputed
    from m at construction, so it can never drift from the exact data.
    """

    p: int
    m: tuple[int, ...]
    numeric: object = None

    def __post_init__(self):
        check_prime(self.p)
        m = tuple(int(x) for x in self.m)
        object.__setattr__(self, "m", m)
        if len(m) != self.p - 1 or any(x < 0 for x in m):
            raise DomainError("invalid multiplicity vector")
        value = fp_dim(FusionElement(self.p, m))
        object.__setattr__(self, "numeric", value)
        with mp.workdps(WORKING_DPS):
            assert self.is_zero or value >= 1 - mp.mpf(NUMERIC_TOL)

    @property
    def is_zero(self) -> bool:
        return not any(self.m)

    def __eq__(self, other):
        if not isinstance(other, GrowthRate):
            return NotImplemented
        return self.p == other.p and self.m == other.m

    def __hash__(self):
        return hash((self.p, self.m))

    @property
    def exact_form(self) -> str:
        """Human-readable exact value, e.g. "[3]_q" or "2 + [2]_q"."""
        if self.is_zero:
            return "0"
        parts = []
        for k, mult in enumerate(self.m, start=1):
            if mult == 0:
                continue
            if k == 1:
                parts.append(str(mult))
            else:
                body = f"[{k}]_q"
                parts.append(body if mult == 1 else f"{mult}{body}")
        return " + ".join(parts)


def tensor_power_length(x: FusionElement, n: int) -> int:
    """Number of simple summands of the n-th power of x, with multiplicity."""
    if x.is_zero:
        raise DomainError("zero element has no tensor powers")
    if n < 1:
        raise DomainError("the power must be >= 1")
    cur = x
    for _ in range(n - 1):
        cur = product(cur, x)
    return cur.length


def growth_rate(x: FusionElement) -> GrowthRate:
    """Exponential growth rate of tensor-power lengths of x.

    Exact by construction: the length sequence is supermultiplicative, its
    n-th root converges to the Frobenius-Perron dimension, and that value
    is determined by the multiplicity vector alone.  The empirical length
    sequence is exercised in tests as a witness, never returned.
    """
    if x.is_zero:
        raise DomainError("zero element has no growth rate")
    return GrowthRate(x.p, x.multiplicities)


def module_growth_rate(v: JordanModule) -> GrowthRate:
    """Growth rate of the non-negligible summand count of tensor powers of v."""
    if v.e != 1:
        raise DomainError("growth rates are computed for order-p modules only")
    image = to_verlinde(v)
    if image.is_zero:
        raise DomainError("negligible module: all tensor powers vanish")
    return growth_rate(image)


# ---------------------------------------------------------------------------
# Exact recovery of multiplicities in the cyclotomic ring
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _qpow_vec(p: int, exp: int) -> tuple[int, ...]:
    """q^exp as an integer vector on the basis 1, q, ..., q^(p-2).

    Uses q^(2p) = 1, q^p = -1, and the minimal polynomial
    1 - q + q^2 - ... + q^(p-1) = 0 of a primitive 2p-th root of unity.
    """
    n = p - 1
    e = exp % (2 * p)
    sign = 1
    if e >= p:
        sign, e = -1, e - p
    if e < n:
        vec = [0] * n
        vec[e] = sign
        return tuple(vec)
    # e == p - 1: reduce by the minimal polynomial
    return tuple(sign * (-1) ** (j + 1) for j in range(n))


def _qint_vec(p: int, k: int, power: int) -> tuple[int, ...]:
    """[k] at q^power as an exact vector: sum of q^(power*(k-1-2i))."""
    n = p - 1
    acc = [0] * n
    for i in range(k):
        for j, c in enumerate(_qpow_vec(p, power * (k - 1 - 2 * i))):
            acc[j] += c
    return tuple(acc)


def _solve_exact(columns: list[list[int]], rhs: list[int]) -> list[Fraction]:
    """Unique exact solution of (columns) x = rhs, else DomainError."""
    nrows = len(rhs)
    ncols = len(columns)
    rows = [[Fraction(columns[c][r]) for c in range(ncols)] + [Fraction(rhs[r])] for r in range(nrows)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, nrows):
        if rows[i][ncols] != 0:
            raise DomainError("inconsistent growth data")
    if len(pivots) < ncols:
        raise DomainError("growth data does not determine the multiplicities")
    out = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        out[c] = rows[i][ncols]
    return out


def recover_multiplicities(
    p: int, growth_vec, square_diff_vec
) -> tuple[int, ...]:
    """Recover the multiplicity vector from exact growth data, for p > 2.

    growth_vec carries the growth rate of V as an integer combination of
    the q-integers [j]_q; square_diff_vec carries the growth rate of the
    symmetric square minus that of the exterior square, in the same basis
    (entries may be negative).  The two identities

        sum_k m_k [k]_q   = value(growth_vec)
        sum_k m_k [k]_q^2 = value(square_diff_vec)

    pin the m_k down: the first determines m_k + m_{p-k}, the second,
    after conjugating q^2 to -q, determines m_k - m_{p-k}.  Both are
    solved simultaneously as one integer linear system over Z[q].
    """
    check_prime(p)
    if p == 2:
        raise DomainError("multiplicity recovery needs p > 2")
    growth_vec = [int(x) for x in growth_vec]
    square_diff_vec = [int(x) for x in square_diff_vec]
    if len(growth_vec) != p - 1 or len(square_diff_vec) != p - 1:
        raise DomainError(f"expected vectors of length {p - 1}")
    n = p - 1
    columns = []
    for k in range(1, p):
        col = list(_qint_vec(p, k, 1)) + list(_qint_vec(p, k, 2))
        columns.append(col)
    rhs = [0] * (2 * n)
    for j in range(1, p):
        vec = _qint_vec(p, j, 1)
        for i, c in enumerate(vec):
            rhs[i] += growth_vec[j - 1] * c
            rhs[n + i] += square_diff_vec[j - 1] * c
    solution = _solve_exact(columns, rhs)
    if any(x.denominator != 1 or x < 0 for x in solution):
        raise DomainError("no nonnegative integral solution for the multiplicities")
    return tuple(int(x) for x in solution)


# ---------------------------------------------------------------------------
# Structural checks of a module's growth data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthReport:
    """Verdicts tying a module's dimension to its multiplicity vector.

    divisibility_mod_p: dim(V) - sum k*m_k is divisible by p (always).
    dimension_match:    dim(V) = sum k*m_k, tested only when dim <= p-1.
    growth_below_dim:   growth rate < dim(V), tested only when V is
                        faithful (has a block of size >= 2).
    """

    p: int
    dim: int
    blocks: tuple[int, ...]
    m: tuple[int, ...]
    rate: GrowthRate
    divisibility_mod_p: bool
    dimension_match: bool | None
    growth_below_dim: bool | None

    def checks(self) -> dict:
        return {
            "ii": self.divisibility_mod_p,
            "iii": self.dimension_match,
            "iv": self.growth_below_dim,
        }

    @property
    def all_passed(self) -> bool:
        return all(v is not False for v in self.checks().values())


def invariant_report(v: JordanModule) -> GrowthReport:
    """Compute the dimension/growth consistency checks for an order-p module."""
    if v.e != 1:
        raise DomainError("invariant checks apply to order-p modules only")
    m = to_verlinde(v).multiplicities
    rate = GrowthRate(v.p, m)
    weighted = sum(k * mult for k, mult in enumerate(m, start=1))
    divisibility = (v.dim - weighted) % v.p == 0
    dimension_match = (v.dim == weighted) if v.dim <= v.p - 1 else None
    faithful = any(b >= 2 for b in v.blocks)
    below = None
    if faithful:
        with mp.workdps(WORKING_DPS):
            below = bool(rate.numeric < v.dim)
    return GrowthReport(
        p=v.p,
        dim=v.dim,
        blocks=v.blocks,
        m=m,
        rate=rate,
        divisibility_mod_p=divisibility,
        dimension_match=dimension_match,
        growth_below_dim=below,
    )


def square_difference_vector(v: JordanModule) -> tuple[int, ...]:
    """Multiplicity vector of sym2(v) minus that of ext2(v) (entries may be < 0).

    This is the exact carrier of the growth data that recover_multiplicities
    consumes as its second argument.
    """
    s = to_verlinde(sym2(v)).multiplicities
    w = to_verlinde(ext2(v)).multiplicities
    return tuple(a - b for a, b in zip(s, w))


# ---------------------------------------------------------------------------
# p-adic dimension digits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PadicDigits:
    """Base-p digits t_0, t_1, ... of a p-adic dimension, least significant first."""

    p: int
    digits: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        digits = tuple(int(d) for d in self.digits)
        object.__setattr__(self, "digits", digits)
        if any(not 0 <= d < self.p for d in digits):
            raise DomainError("digits must lie in [0, p)")

    def as_integer(self) -> int:
        return sum(d * self.p**i for i, d in enumerate(self.digits))


def _divide_by_one_plus_z(series: list[int], p: int) -> list[int]:
    out = []
    prev = 0
    for c in series:
        cur = (c - prev) % p
        out.append(cur)
        prev = cur
    return out


def padic_digits(p: int, dims) -> PadicDigits:
    """Extract digits from the exterior-power dimension sequence.

    dims[n] is the categorical dimension of the n-th exterior power, as an
    F_p scalar (or plain integer), with dims[0] = 1.  The generating
    function must factor as a product of (1 + z^(p^i))^(t_i); the digits
    are peeled off greedily, and a sequence not of that form is rejected
    loudly rather than approximated.
    """
    check_prime(p)
    series = []
    for x in dims:
        if isinstance(x, FpScalar):
            if x.p != p:
                raise DomainError("mixed moduli in the dimension sequence")
            series.append(x.value)
        else:
            series.append(int(x) % p)
    if not series or series[0] != 1:
        raise DomainError("the dimension sequence must start with 1")
    digits = []
    while len(series) > 1:
        t_i = series[1]
        quotient = series
        for _ in range(t_i):
            quotient = _divide_by_one_plus_z(quotient, p)
        for idx, c in enumerate(quotient):
            if idx % p != 0 and c != 0:
                raise DomainError(
                    "dimension sequence is not a product of binomial factors"
                )
        digits.append(t_i)
        series = quotient[0::p]
    return PadicDigits(p, tuple(digits))


def exterior_dimension_sequence(v: JordanModule) -> list[FpScalar]:
    """Categorical dimensions of all exterior powers of v, computed by the
    induced-matrix route (independent of any binomial identity)."""
    return [FpScalar(exterior_power(v, k).dim, v.p) for k in range(v.dim + 1)]


# ---------------------------------------------------------------------------
# Lower bounds from partition enumeration
# ---------------------------------------------------------------------------


def _check_bounds_args(p: int, d: int, cap: int):
    check_prime(p)
    if p > cap:
        raise CapExceeded(f"bound enumeration for p={p} exceeds the cap {cap}")
    if not 1 <= d <= p - 1:
        raise DomainError(f"d={d} outside [1, {p - 1}]")


def plancherel_square_sum(p: int, d: int, cap: int = BOUNDS_PRIME_CAP) -> int:
    """Sum of squared irreducible dimensions over partitions of p-1 inside
    the d x (p-d) box: the box-confinement mass of the Plancherel measure,
    scaled by (p-1)!."""
    _check_bounds_args(p, d, cap)
    return sum(dim_sym_irrep(lam) ** 2 for lam in enumerate_in_box(p - 1, d, p - d))


def plancherel_bound(p: int, d: int, cap: int = BOUNDS_PRIME_CAP):
    """Growth lower bound (square_sum)^(1/(2(p-1))), at working precision."""
    total = plancherel_square_sum(p, d, cap)
    with mp.workdps(WORKING_DPS):
        return mp.root(mp.mpf(total), 2 * (p - 1))


@dataclass(frozen=True)
class ImprovedBound:
    """The max-Schur-dimension refinement of the growth lower bound.

    M is the largest dimension of a Schur module S^lam(K^d) over
    partitions of p-1 with at most d rows; ratio = d^(p-1) / M is then an
    exact lower bound for the sum of the corresponding symmetric-group
    dimensions (row_sum), and bound = ratio^(1/(p-1)).  box_sum restricts
    the same sum to the d x (p-d) box.  No asymptotic correction factor is
    modeled; only the exact finite-p quantities are reported.
    """

    p: int
    d: int
    bound: object
    max_schur_dim: int
    max_partition: Partition
    ratio: Fraction
    row_sum: int
    box_sum: int


def improved_bound(p: int, d: int, cap: int = BOUNDS_PRIME_CAP) -> ImprovedBound:
    _check_bounds_args(p, d, cap)
    rows_constrained = enumerate_in_box(p - 1, d, p - 1)
    best = None
    best_lam = None
    row_sum = 0
    for lam in rows_constrained:
        dim_s = dim_schur(lam, d)
        row_sum += dim_sym_irrep(lam)
        if best is None or dim_s > best:
            best, best_lam = dim_s, lam
    box_sum = sum(dim_sym_irrep(lam) for lam in enumerate_in_box(p - 1, d, p - d))
    ratio = Fraction(d ** (p - 1), best)
    with mp.workdps(WORKING_DPS):
        bound = mp.root(mp.mpf(ratio.numerator) / ratio.denominator, p - 1)
    return ImprovedBound(
        p=p,
        d=d,
        bound=bound,
        max_schur_dim=best,
        max_partition=best_lam,
        ratio=ratio,
        row_sum=row_sum,
        box_sum=box_sum,
    )
