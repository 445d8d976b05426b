"""Exact arithmetic kernel tests.

The rank routine is checked against an independent oracle that enumerates
all square submatrix determinants (cofactor expansion), so the two paths
share no code.
"""

import random
from fractions import Fraction
from itertools import combinations

import pytest
from mpmath import mp

from semisimple.scalars import (
    WORKING_DPS,
    DomainError,
    FpScalar,
    QInteger,
    T,
    TPolynomial,
    exact_det,
    exact_rank,
    is_prime,
    poly_eval,
    q_int,
)

PRIMES_TO_50 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


# -- oracles ----------------------------------------------------------------


def cofactor_det(m):
    """Recursive cofactor determinant over Fractions (independent of Bareiss)."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(m[0][0])
    total = Fraction(0)
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in m[1:]]
        total += (-1) ** j * Fraction(m[0][j]) * cofactor_det(minor)
    return total


def minor_rank(m):
    """Rank as the largest k with a nonzero k x k submatrix determinant."""
    rows, cols = len(m), len(m[0])
    for k in range(min(rows, cols), 0, -1):
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                sub = [[m[i][j] for j in ci] for i in ri]
                if cofactor_det(sub) != 0:
                    return k
    return 0


# -- polynomials ------------------------------------------------------------


def test_poly_eval_examples():
    f = TPolynomial([0, -1, 1])  # t^2 - t
    assert poly_eval(f, 1) == 0
    assert poly_eval(T, 5) == 5
    assert poly_eval(f, FpScalar(3, 5)) == FpScalar(1, 5)  # 9 - 3 = 6 = 1 mod 5


def test_poly_eval_rational():
    f = T**2 - T
    assert poly_eval(f, Fraction(7, 2)) == Fraction(35, 4)


def test_poly_product_evaluation_homomorphism():
    rng = random.Random(7)
    for _ in range(50):
        f = TPolynomial([rng.randint(-4, 4) for _ in range(rng.randint(0, 5))])
        g = TPolynomial([rng.randint(-4, 4) for _ in range(rng.randint(0, 5))])
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        assert poly_eval(f * g, x) == poly_eval(f, x) * poly_eval(g, x)


def test_poly_normal_form_and_degree():
    assert TPolynomial([1, 2, 0, 0]).coeffs == (1, 2)
    assert TPolynomial([]).is_zero
    assert TPolynomial([0]).is_zero
    assert (T**3).degree() == 3


def test_poly_str_and_parse_round_trip():
    cases = [T**4 - T**2, 2 * T + 1, -T, TPolynomial([5]), TPolynomial(), T**2 - 3 * T + 2]
    for f in cases:
        assert TPolynomial.parse(str(f)) == f
    assert str(T**4 - T**2) == "t^4 - t^2"
    assert str(TPolynomial()) == "0"


def test_poly_exact_div():
    f = (T**2 - 1) * (T + 3)
    assert f.exact_div(T + 3) == T**2 - 1
    with pytest.raises(DomainError):
        (T**2 + 1).exact_div(T + 1)


def test_poly_horner_agreement():
    # evaluation at integers agrees with an explicit power expansion
    f = TPolynomial([3, -2, 0, 5])
    for x in range(-4, 5):
        assert poly_eval(f, x) == 3 - 2 * x + 5 * x**3


# -- prime fields -----------------------------------------------------------


def test_fp_scalar_arithmetic():
    a = FpScalar(3, 5)
    assert a + a == FpScalar(1, 5)
    assert a * a == FpScalar(4, 5)
    assert a / FpScalar(2, 5) == FpScalar(4, 5)  # 3 * 3 = 9 = 4, since 2*3=6=1
    assert -a == FpScalar(2, 5)


def test_fp_scalar_requires_prime():
    with pytest.raises(DomainError):
        FpScalar(1, 6)
    with pytest.raises(DomainError):
        FpScalar(0, 1)


def test_fp_scalar_no_mixed_moduli():
    with pytest.raises(DomainError):
        FpScalar(1, 5) + FpScalar(1, 7)


def test_is_prime_small():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


# -- q-integers -------------------------------------------------------------


def test_q_int_golden_ratio():
    with mp.workdps(WORKING_DPS):
        golden = (1 + mp.sqrt(5)) / 2
        assert abs(q_int(5, 2, 1) - golden) < mp.mpf("1e-40")


def test_q_int_unit_and_frozen_value():
    for p in (3, 5, 7, 11):
        assert q_int(p, 1, 1) == 1
    # sin(3*pi/7)/sin(pi/7), evaluated directly at high precision
    with mp.workdps(WORKING_DPS):
        assert abs(q_int(7, 3, 1) - mp.mpf("2.2469796037174670610500097680")) < mp.mpf("1e-27")


def test_q_int_palindrome_symmetry():
    with mp.workdps(WORKING_DPS):
        eps = mp.mpf("1e-40")
        for p in PRIMES_TO_50:
            for k in range(1, p):
                assert abs(q_int(p, k, 1) - q_int(p, p - k, 1)) < eps


def test_q_int_rejects_bad_labels():
    with pytest.raises(DomainError):
        q_int(5, 0, 1)
    with pytest.raises(DomainError):
        q_int(5, 5, 1)
    with pytest.raises(DomainError):
        q_int(5, 2, 3)


def test_q_integer_dataclass():
    q = QInteger(5, 2)
    with mp.workdps(WORKING_DPS):
        assert abs(q.value - q_int(5, 2, 1)) == 0
    with pytest.raises(DomainError):
        QInteger(4, 2)


# -- exact rank and determinant ----------------------------------------------


def test_exact_rank_examples():
    assert exact_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert exact_rank([[0, 0, 0, 0], [0, 0, 0, 0]]) == 0
    one = FpScalar(1, 5)
    assert exact_rank([[one, one], [one, one]]) == 1


def test_exact_rank_fractions():
    m = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 5), Fraction(1, 1)]]
    assert exact_rank(m) == 2
    m[1] = [3 * x for x in m[0]]
    assert exact_rank(m) == 1


def test_exact_rank_vs_minor_oracle():
    rng = random.Random(11)
    for _ in range(120):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
        assert exact_rank(m) == minor_rank(m)


def test_exact_rank_mod_p_vs_minor_oracle():
    # the minor oracle works mod p by checking determinants against 0 mod p
    rng = random.Random(13)
    p = 5
    for _ in range(60):
        n = rng.randint(1, 4)
        raw = [[rng.randint(0, p - 1) for _ in range(n)] for _ in range(n)]
        m = [[FpScalar(x, p) for x in row] for row in raw]
        best = 0
        for k in range(n, 0, -1):
            found = False
            for ri in combinations(range(n), k):
                for ci in combinations(range(n), k):
                    sub = [[raw[i][j] for j in ci] for i in ri]
                    if cofactor_det(sub) % p != 0:
                        found = True
                        break
                if found:
                    break
            if found:
                best = k
                break
        assert exact_rank(m) == best


def test_exact_det_matches_cofactor_oracle():
    rng = random.Random(17)
    for _ in range(60):
        n = rng.randint(1, 5)
        m = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        assert exact_det([row[:] for row in m]) == cofactor_det(m)


def test_exact_det_polynomial():
    m = [[T**2, T], [T, T**2]]
    assert exact_det(m) == T**4 - T**2


def test_mod2_echelon_matches_generic_elimination():
    # the bit-packed characteristic-2 fast path against a plain elimination
    import numpy as np

    from semisimple.scalars import rank_mod_p, row_echelon_mod_p

    def plain_rank(m):
        a = m.copy() % 2
        rows, cols = a.shape
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            piv = r + int(nz[0])
            a[[r, piv]] = a[[piv, r]]
            idx = np.nonzero(a[r + 1:, c])[0]
            if idx.size:
                a[r + 1 + idx] = (a[r + 1 + idx] + a[r]) % 2
            r += 1
        return r

    rng = np.random.default_rng(17)
    for _ in range(150):
        rows = int(rng.integers(1, 40))
        cols = int(rng.integers(1, 70))
        m = rng.integers(0, 2, size=(rows, cols)).astype(np.int64)
        want = plain_rank(m)
        assert rank_mod_p(m, 2) == want
        echelon = row_echelon_mod_p(m, 2)
        assert echelon.shape[0] == want
        if echelon.size:
            # the echelon rows span the same row space
            assert rank_mod_p(np.vstack([m, echelon]), 2) == want
