import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import eratosthenes, jacobi_by_legendre, kernel_by_search, trial_factor
from trisieve.arith import (
    PrimeWindow,
    factor,
    is_prime,
    is_squarefree,
    jacobi,
    kronecker,
    omega,
    omega_ceiling,
    prime_window,
    squarefree_kernel,
)


@pytest.mark.parametrize("w, m, expected", [(1, 3, 1), (3, 9, 0), (2, 15, 1)])
def test_jacobi_examples(w, m, expected):
    assert jacobi(w, m) == expected


def test_jacobi_2_15_matches_legendre_product():
    # (2/3) = -1 and (2/5) = -1 by squaring every residue
    assert {x * x % 3 for x in range(1, 3)} == {1}
    assert {x * x % 5 for x in range(1, 5)} == {1, 4}
    assert jacobi(2, 15) == (-1) * (-1)


@pytest.mark.parametrize("m", [0, 1, 2, 4, 10, -3])
def test_jacobi_rejects_bad_modulus(m):
    with pytest.raises(ValueError):
        jacobi(1, m)


def test_jacobi_exhaustive_small_moduli():
    for m in range(3, 302, 2):
        for w in range(m):
            assert jacobi(w, m) == jacobi_by_legendre(w, m), (w, m)


def test_jacobi_sampled_up_to_10k():
    rng = random.Random(20261015)
    for m in range(3, 10_001, 2):
        for w in [0, 1, 2, m - 1] + [rng.randrange(-5 * m, 5 * m) for _ in range(6)]:
            assert jacobi(w, m) == jacobi_by_legendre(w, m), (w, m)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.integers(1, 2000))
def test_jacobi_multiplicative_in_top(w1, w2, half):
    m = 2 * half + 1
    assert jacobi(w1 * w2, m) == jacobi(w1, m) * jacobi(w2, m)


@given(st.integers(-10**4, 10**4), st.integers(1, 500), st.integers(1, 500))
def test_jacobi_multiplicative_in_bottom(w, h1, h2):
    m1, m2 = 2 * h1 + 1, 2 * h2 + 1
    assert jacobi(w, m1 * m2) == jacobi(w, m1) * jacobi(w, m2)


def test_kronecker_at_two():
    assert [kronecker(w, 2) for w in range(8)] == [0, 1, 0, -1, 0, -1, 0, 1]
    assert kronecker(10, 7) == jacobi(10, 7)


def test_factor_examples():
    assert factor(12) == {2: 2, 3: 1}
    assert factor(-7) == {7: 1}
    # frozen after trial division confirmed it
    assert trial_factor(3381) == {3: 1, 7: 2, 23: 1}
    assert factor(3381) == {3: 1, 7: 2, 23: 1}
    assert factor(1) == {}


def test_factor_zero_raises():
    with pytest.raises(ValueError):
        factor(0)
    with pytest.raises(ValueError):
        omega(0)


@pytest.mark.parametrize(
    "k",
    [2**61 - 1, (2**31 - 1) * (2**61 - 1), 1_000_003 * 1_000_033, 999_983**2 * 7,
     600_851_475_143, 2**64 + 13, 3**40],
)
def test_factor_large(k):
    fac = factor(k)
    assert math.prod(p**e for p, e in fac.items()) == k
    assert all(is_prime(p) for p in fac)


@given(st.integers(-10**7, 10**7).filter(bool))
def test_factor_matches_trial_division(k):
    assert factor(k) == trial_factor(k)


def test_is_prime_against_sieve():
    primes = set(eratosthenes(5000))
    assert {n for n in range(-5, 5001) if is_prime(n)} == primes


@pytest.mark.parametrize("k, expected", [(1, 0), (12, 2), (30, 3), (-30, 3), (-1, 0)])
def test_omega_examples(k, expected):
    assert omega(k) == expected


@given(st.integers(2, 10**12))
def test_omega_coarse_bound(k):
    assert omega(k) <= math.log2(k)


def test_omega_ceiling():
    assert omega_ceiling(1) == 0
    assert omega_ceiling(2) == 1
    assert omega_ceiling(29) == 2
    assert omega_ceiling(30) == 3
    assert omega_ceiling(2 * 3 * 5 * 7 * 11 * 13 - 1) == 5


@pytest.mark.parametrize("k, s, r", [(1, 1, 1), (12, 3, 2), (-50, -2, 5), (-1, -1, 1), (72, 2, 6)])
def test_squarefree_kernel_examples(k, s, r):
    assert kernel_by_search(k) == (s, r)
    dec = squarefree_kernel(k)
    assert (dec.kernel, dec.root) == (s, r)


def test_squarefree_kernel_zero_is_degenerate():
    dec = squarefree_kernel(0)
    assert dec.is_degenerate and dec.kernel == 0 and dec.root == 0


@given(st.integers(-10**6, 10**6))
def test_squarefree_kernel_identity(k):
    dec = squarefree_kernel(k)
    assert dec.kernel * dec.root**2 == k
    if k:
        assert (dec.kernel > 0) == (k > 0)
        assert all(e == 1 for e in trial_factor(dec.kernel).values())
        assert (dec.kernel, dec.root) == kernel_by_search(k)


def test_is_squarefree():
    assert is_squarefree(-1) and is_squarefree(30) and is_squarefree(-69)
    assert not is_squarefree(0) and not is_squarefree(12)


@pytest.mark.parametrize(
    "z, primes",
    [(3, (3, 5)), (10, (11, 13, 17, 19)), (2, (2, 3)), (2.5, (3, 5)), (13.4, (17, 19, 23))],
)
def test_prime_window_examples(z, primes):
    assert prime_window(z) == PrimeWindow(z, primes)


def test_prime_window_rejects_small_z():
    with pytest.raises(ValueError):
        prime_window(1.9)


@settings(max_examples=60)
@given(st.floats(2, 3000))
def test_prime_window_complete(z):
    window = prime_window(z)
    expected = [p for p in eratosthenes(int(2 * z)) if z <= p <= 2 * z]
    assert list(window.primes) == expected
