"""Exact arithmetic kernel.

Everything downstream (diagram traces, Gram ranks, Jordan profiles, growth
rates) is built on the types here: prime-field scalars, integer polynomials
in the loop parameter t, q-integers evaluated at high precision, and exact
rank/determinant routines that never touch floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable

import numpy as np
from mpmath import mp

#: Decimal digits used for every high-precision numeric evaluation.
WORKING_DPS = 50

#: Comparison tolerance for high-precision numerics.  Exact identities are
#: always checked on integer data instead; this is only for derived reals.
NUMERIC_TOL = 1e-30

#: Largest modulus for which primality is verified (trial division).
PRIME_CAP = 2**64


class DomainError(ValueError):
    """A mathematically invalid request (non-prime modulus, bad label, ...)."""


class CapExceeded(RuntimeError):
    """A computation was refused because it exceeds a configured size cap."""


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division (intended range: n <= 97)."""
    if n < 2 or n >= PRIME_CAP:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise DomainError(f"modulus {p!r} is not a prime in the supported range")
    return p


class FpScalar:
    """An element of the prime field F_p, stored as an integer in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        check_prime(p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", int(value) % p)

    def __setattr__(self, name, val):  # immutable after construction
        raise AttributeError("FpScalar is immutable")

    def _coerce(self, other) -> "FpScalar":
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise DomainError(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return FpScalar(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpScalar(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.value == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpScalar(self.value * pow(other.value, -1, self.p), self.p)

    def __neg__(self):
        return FpScalar(-self.value, self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FpScalar):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"FpScalar({self.value}, {self.p})"

    def __str__(self):
        return f"{self.value} mod {self.p}"


_TERM_RE = re.compile(r"^(\d+)?(?:\*?t(?:\^(\d+))?)?$")


class TPolynomial:
    """Integer-coefficient polynomial in the loop parameter t.

    Coefficients are indexed by degree; the top coefficient is nonzero
    unless the polynomial is zero (empty coefficient tuple).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, val):
        raise AttributeError("TPolynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, c: int) -> "TPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "TPolynomial":
        if degree < 0:
            raise DomainError("negative degree")
        return cls((0,) * degree + (c,))

    # -- structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    def _coerce(self, other):
        if isinstance(other, TPolynomial):
            return other
        if isinstance(other, int):
            return TPolynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return TPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return TPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return TPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return TPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative power of a polynomial")
        out = TPolynomial((1,))
        for _ in range(n):
            out = out * self
        return out

    def exact_div(self, divisor: "TPolynomial") -> "TPolynomial":
        """Quotient self / divisor, valid only when the division is exact in Z[t]."""
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        lead = divisor.coeffs[-1]
        dd = divisor.degree()
        out = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - dd - 1, -1, -1):
            c = rem[k + dd]
            if c == 0:
                continue
            q, r = divmod(c, lead)
            if r != 0:
                raise DomainError("inexact polynomial division")
            out[k] = q
            for j, b in enumerate(divisor.coeffs):
                rem[k + j] -= q * b
        if any(rem):
            raise DomainError("inexact polynomial division")
        return TPolynomial(out)

    def evaluate(self, x):
        """Horner evaluation at an int, Fraction, or FpScalar."""
        if isinstance(x, FpScalar):
            acc = FpScalar(0, x.p)
            for c in reversed(self.coeffs):
                acc = acc * x + FpScalar(c, x.p)
            return acc
        acc = x - x  # zero of the right kind
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    __call__ = evaluate

    def __eq__(self, other):
        if isinstance(other, int):
            other = TPolynomial((other,))
        if not isinstance(other, TPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        return f"TPolynomial({list(self.coeffs)!r})"

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree(), -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "t" if k == 1 else f"t^{k}"
                body = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    @classmethod
    def parse(cls, text: str) -> "TPolynomial":
        """Inverse of str(): accepts e.g. "t^4 - t^2", "2t + 1", "-t", "0"."""
        s = text.replace(" ", "")
        if not s:
            raise DomainError("empty polynomial string")
        chunks = re.split(r"(?=[+-])", s)
        coeffs: dict[int, int] = {}
        for chunk in chunks:
            if not chunk:
                continue
            sign = 1
            if chunk[0] in "+-":
                sign = -1 if chunk[0] == "-" else 1
                chunk = chunk[1:]
            m = _TERM_RE.match(chunk)
            if not m or not chunk:
                raise DomainError(f"cannot parse polynomial term {chunk!r}")
            num, exp = m.groups()
            if num is None and "t" not in chunk:
                raise DomainError(f"cannot parse polynomial term {chunk!r}")
            c = int(num) if num is not None else 1
            if "t" in chunk:
                k = int(exp) if exp is not None else 1
            else:
                k = 0
            coeffs[k] = coeffs.get(k, 0) + sign * c
        if not coeffs:
            return cls()
        out = [0] * (max(coeffs) + 1)
        for k, c in coeffs.items():
            out[k] = c
        return cls(out)


#: The generator t itself, as a polynomial.
T = TPolynomial((0, 1))


def poly_eval(f: TPolynomial, x):
    """Exact evaluation of f at an integer, Fraction, or FpScalar point."""
    return f.evaluate(x)


# ---------------------------------------------------------------------------
# q-integers
# ---------------------------------------------------------------------------


def q_int(p: int, k: int, power: int = 1):
    """[k] at the 2p-th root of unity: sin(pi*k*power/p) / sin(pi*power/p).

    power=1 gives the ordinary q-integer, power=2 the q^2 variant.  Computed
    at WORKING_DPS digits; deterministic across runs.
    """
    check_prime(p)
    if not 1 <= k <= p - 1:
        raise DomainError(f"label k={k} outside [1, {p - 1}]")
    if power not in (1, 2):
        raise DomainError("power must be 1 or 2")
    with mp.workdps(WORKING_DPS):
        return mp.sinpi(mp.mpf(k * power) / p) / mp.sinpi(mp.mpf(power) / p)


@dataclass(frozen=True)
class QInteger:
    """A q-integer [k] in the cyclotomic data of the prime p."""

    p: int
    k: int
    power: int = 1

    def __post_init__(self):
        check_prime(self.p)
        if not 1 <= self.k <= self.p - 1:
            raise DomainError(f"label k={self.k} outside [1, {self.p - 1}]")
        if self.power not in (1, 2):
            raise DomainError("power must be 1 or 2")

    @property
    def value(self):
        return q_int(self.p, self.k, self.power)


# ---------------------------------------------------------------------------
# Exact linear algebra
# ---------------------------------------------------------------------------


def row_echelon_mod_p(matrix, p: int) -> np.ndarray:
    """Row echelon basis of the row space over F_p (nonzero rows only)."""
    A = np.array(matrix, dtype=np.int64)
    if A.ndim != 2:
        raise DomainError("expected a 2-d matrix")
    A %= p
    if p == 2:
        return _row_echelon_mod_2(A)
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        below = np.nonzero(A[r + 1:, c])[0]
        if below.size:
            idx = r + 1 + below
            A[idx, c:] = (A[idx, c:] - np.outer(A[idx, c], A[r, c:])) % p
        r += 1
    return A[:r]


def _row_echelon_mod_2(A: np.ndarray) -> np.ndarray:
    """Bit-packed XOR elimination; one uint64 word holds 64 matrix columns."""
    rows, cols = A.shape
    if rows == 0 or cols == 0:
        return A[:0]
    packed = np.packbits(A.astype(np.uint8), axis=1, bitorder="little")
    words = -(-packed.shape[1] // 8)
    packed = np.pad(packed, ((0, 0), (0, words * 8 - packed.shape[1])))
    W = packed.view(np.uint64).reshape(rows, words)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        w, bit = divmod(c, 64)
        mask = np.uint64(1 << bit)
        hits = np.nonzero(W[r:, w] & mask)[0]
        if hits.size == 0:
            continue
        piv = r + int(hits[0])
        if piv != r:
            W[[r, piv]] = W[[piv, r]]
        if hits.size > 1:
            idx = r + hits[1:]
            W[idx, w:] ^= W[r, w:]
        r += 1
    out = np.unpackbits(W[:r].view(np.uint8), axis=1, bitorder="little", count=cols)
    return out.astype(np.int64)


def rank_mod_p(matrix, p: int) -> int:
    check_prime(p)
    return row_echelon_mod_p(matrix, p).shape[0]


def _bareiss_rank(m: list[list[int]]) -> int:
    """Fraction-free (Bareiss) elimination rank of an integer matrix."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                num = m[r][c] * m[i][j] - m[i][c] * m[r][j]
                q, rem = divmod(num, prev)
                if rem != 0:  # cannot happen: Bareiss divisions are exact
                    raise RuntimeError("fraction-free elimination lost exactness")
                m[i][j] = q
            m[i][c] = 0
        prev = m[r][c]
        r += 1
    return r


def _as_matrix(matrix) -> list[list]:
    rows = [list(row) for row in matrix]
    if rows:
        w = len(rows[0])
        if any(len(row) != w for row in rows):
            raise DomainError("ragged matrix")
    return rows


def exact_rank(matrix) -> int:
    """Rank of a matrix of exact scalars (ints, Fractions, or FpScalars).

    No floating point is involved: prime-field input reduces mod p, rational
    input is cleared to integers row by row and eliminated fraction-free.
    """
    rows = _as_matrix(matrix)
    if not rows or not rows[0]:
        return 0
    flat = [x for row in rows for x in row]
    if any(isinstance(x, FpScalar) for x in flat):
        ps = {x.p for x in flat if isinstance(x, FpScalar)}
        if len(ps) != 1:
            raise DomainError("mixed prime-field moduli in one matrix")
        if not all(isinstance(x, (FpScalar, int)) for x in flat):
            raise DomainError("cannot mix F_p scalars with non-integer entries")
        p = ps.pop()
        ints = [[x.value if isinstance(x, FpScalar) else x % p for x in row] for row in rows]
        return rank_mod_p(ints, p)
    if not all(isinstance(x, (int, Fraction)) for x in flat):
        raise DomainError(f"unsupported entry type {type(flat[0]).__name__}")
    cleared = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        scale = lcm(*(f.denominator for f in fracs))
        cleared.append([int(f * scale) for f in fracs])
    return _bareiss_rank(cleared)


def _exact_div(a, b):
    if isinstance(a, TPolynomial):
        return a.exact_div(b)
    if isinstance(a, Fraction) or isinstance(b, Fraction):
        return Fraction(a) / Fraction(b)
    q, rem = divmod(a, b)
    if rem != 0:
        raise RuntimeError("fraction-free elimination lost exactness")
    return q


def exact_det(matrix):
    """Determinant of a square matrix over Z, Q, or Z[t], by Bareiss elimination."""
    m = _as_matrix(matrix)
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise DomainError("determinant of a non-square matrix")
    first = m[0][0]
    one: object = TPolynomial((1,)) if isinstance(first, TPolynomial) else 1
    sign = 1
    prev = one
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return m[0][0] - m[0][0]  # zero of the right kind
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = _exact_div(m[c][c] * m[i][j] - m[i][c] * m[c][j], prev)
            m[i][c] = m[i][c] - m[i][c]
        prev = m[c][c]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det
