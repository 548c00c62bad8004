import math
import random
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    disc_closed,
    is_square_multiple,
    is_square_multiple_linear,
    kernel_by_search,
    legendre,
    trial_factor,
)
from trisieve.arith import PrimeWindow, prime_window, squarefree_kernel
from trisieve.errors import UnsupportedDegreeError
from trisieve.polyfield import find_p0, is_irreducible_over_Q
from trisieve.sieve import (
    Box,
    canonical_box,
    field_kernels,
    make_plan,
    progression_box,
    q_exact,
    q_kernels,
    s_exact,
    sieve_detect,
    t_exact,
    t_sieve_filtered,
    window_omega,
)
from trisieve.trinomial import Trinomial, dab


def brute_t(n, box, s, linear=False):
    test = is_square_multiple_linear if linear else is_square_multiple
    return sum(test(disc_closed(n, a, b), s) for a in box.a_values() for b in box.b_values())


def kernel_by_trial(d):
    s = 1
    for p, e in trial_factor(d).items():
        if e % 2:
            s *= p
    return s if d > 0 else -s


def test_box_lattice():
    box = Box(0.5, 3, 1, 2)
    assert list(box.a_values()) == [1, 2, 3]
    assert list(box.b_values()) == [1, 2, 3]
    assert len(box) == 9 and box.in_theorem_range


def test_box_validation():
    with pytest.raises(ValueError):
        Box(-1, 2, 0, 2)
    with pytest.raises(ValueError):
        Box(0, -1, 0, 2)
    assert list(Box(-2, 4, 0, 1, signed=True).a_values()) == [-2, -1, 0, 1, 2]
    assert Box.from_ranges(-3, 3, 1, 2).signed


def test_sieve_detect_examples():
    assert sieve_detect(36, prime_window(3))
    assert sieve_detect(36, prime_window(10))
    assert sieve_detect(12_345**2, prime_window(50))
    # (2/11), (2/13), (2/17), (2/19) by residue tables: -1, -1, +1, -1
    window = prime_window(10)
    assert [legendre(2, p) for p in window.primes] == [-1, -1, 1, -1]
    assert not sieve_detect(2, window)


def test_sieve_detect_errors():
    with pytest.raises(ValueError):
        sieve_detect(0, prime_window(10))
    with pytest.raises(ValueError):
        sieve_detect(4, PrimeWindow(1.0, ()))


@settings(max_examples=300)
@given(st.integers(1, 10**4), st.sampled_from([2, 3, 10, 50, 100]))
def test_sieve_never_misses_squares(r, z):
    window = prime_window(z)
    k = r * r
    assert sieve_detect(k, window)
    assert sieve_detect(k, window, window_omega(k, window))


def test_sieve_detects_squares_with_window_prime_factors():
    window = prime_window(10)
    k = (11 * 13 * 17 * 19) ** 2
    assert window_omega(k, window) == 4
    assert sieve_detect(k, window)


def test_make_plan_defaults():
    box = Box(1, 49, 1, 49)
    plan = make_plan(5, box, 69)
    assert math.isclose(plan.z, 49 ** (2 / 3))
    assert plan.window.primes == (17, 19, 23)
    assert plan.omega_budget >= 1


def test_t_exact_singletons():
    s = squarefree_kernel(3381).kernel
    assert s == 69
    box = Box(1, 0, 1, 0)
    assert t_exact(5, box, s) == 1
    assert t_exact(5, box, -1) == 0


def test_t_exact_rejects_non_squarefree():
    with pytest.raises(ValueError):
        t_exact(5, Box(1, 1, 1, 1), 12)
    with pytest.raises(ValueError):
        t_exact(5, Box(1, 1, 1, 1), 0)


@pytest.mark.parametrize("s", [69, 1, 5, -1])
def test_t_exact_linear_oracle_small_box(s):
    box = Box(1, 9, 1, 9)
    assert t_exact(5, box, s) == brute_t(5, box, s, linear=True)


@pytest.mark.parametrize("s", [1, 5, 69])
def test_t_sieve_matches_exact(s):
    box = Box(1, 49, 1, 49)
    res = t_sieve_filtered(5, box, s)
    assert res.count == t_exact(5, box, s) == brute_t(5, box, s)
    assert res.pruning_ratio > 0


def test_t_sieve_empty_window_falls_back():
    box = Box(1, 5, 1, 5)
    plan = make_plan(5, box, 1, z=1.5)
    assert not plan.window.primes
    with pytest.warns(UserWarning):
        res = t_sieve_filtered(5, box, 1, plan)
    assert res.count == t_exact(5, box, 1)
    assert res.candidates == res.pairs


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 200), st.integers(1, 15), st.integers(0, 200), st.integers(1, 15),
       st.sampled_from([1, -1, 2, 5, 69, -3]), st.sampled_from([3, 5, 9]))
def test_t_sieve_equals_exact_property(c, a_ext, d, b_ext, s, n):
    box = Box(c, a_ext, d, b_ext)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert t_sieve_filtered(n, box, s).count == t_exact(n, box, s) == brute_t(n, box, s)


def test_t_exact_shard_independent():
    box = Box(1, 30, 1, 30)
    assert t_exact(5, box, 1, threads=1) == t_exact(5, box, 1, threads=3)
    assert t_sieve_filtered(5, box, 5, threads=1) == t_sieve_filtered(5, box, 5, threads=4)


def test_s_exact_reducible_singleton():
    assert not is_irreducible_over_Q(Trinomial(5, 1, 1))
    assert s_exact(5, Box(1, 0, 1, 0)) == 0


def test_s_exact_no_irreducible():
    # t^n + a t with b = 0 always has the root 0
    assert s_exact(5, Box(1, 10, 0, 0)) == 0


def test_s_exact_order_independent():
    box = Box(1, 19, 1, 19)
    pairs = [(a, b) for a in box.a_values() for b in box.b_values()]
    random.Random(7).shuffle(pairs)
    kernels = set()
    for a, b in pairs:
        d = dab(5, a, b)
        if d and kernel_by_trial(d) != 1 and is_irreducible_over_Q(Trinomial(5, a, b)):
            kernels.add(kernel_by_trial(d))
    assert s_exact(5, box) == len(kernels)
    assert s_exact(5, box, threads=4) == len(kernels)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 30), st.integers(0, 30), st.integers(1, 6), st.integers(1, 6),
       st.integers(0, 4), st.integers(0, 4))
def test_s_exact_monotone(c, d, a_ext, b_ext, da, db):
    small = Box(c, a_ext, d, b_ext)
    big = Box(c, a_ext + da, d, b_ext + db)
    assert s_exact(5, small) <= s_exact(5, big)


def test_field_kernels_witnesses():
    for s, (a, b, d) in field_kernels(5, Box(1, 9, 1, 9)).items():
        assert d == dab(5, a, b) and squarefree_kernel(d).kernel == s and s not in (0, 1)


def test_canonical_box_literal_is_empty_at_desk_scale():
    box = canonical_box(5, 10**6, literal=True)
    assert box.a_extent < 1 and len(box) == 0
    assert q_exact(5, 10**6, literal=True) == 0


def test_canonical_box_covers_small_discriminants():
    x = 10**6
    box = canonical_box(5, x)
    # every pair whose two discriminant terms are each <= X lies inside
    a_need = max(a for a in range(100) if 256 * a**5 <= x)
    b_need = max(b for b in range(100) if 3125 * b**4 <= x)
    assert -a_need in box.a_values() and a_need in box.a_values()
    assert -b_need in box.b_values() and b_need in box.b_values()


def test_q_exact_small_x_self_check():
    for s, (a, b, d) in q_kernels(5, 3381).items():
        assert abs(d) <= 3381 and d % s == 0 and s not in (0, 1)


def test_q_exact_two_pass():
    x = 10**6
    box = canonical_box(5, x)
    pairs = [(a, b) for a in box.a_values() for b in box.b_values()]
    random.Random(3).shuffle(pairs)
    stored = []
    for a, b in pairs:
        d = dab(5, a, b)
        if d and abs(d) <= x and is_irreducible_over_Q(Trinomial(5, a, b)):
            stored.append(kernel_by_search(d)[0])
    kernels = {s for s in stored if s != 1}
    assert q_exact(5, x) == len(kernels)
    assert set(q_kernels(5, x)) == kernels


def test_q_exact_degree_check():
    with pytest.raises(UnsupportedDegreeError):
        q_exact(7, 1000)
    with pytest.raises(ValueError):
        q_exact(5, 0)


def test_q_exact_threads():
    assert q_kernels(5, 10**6, threads=1) == q_kernels(5, 10**6, threads=5)


def test_progression_box_n2():
    assert progression_box(2, Box(0, 10, 0, 10)) == ([1, 3, 5, 7, 9], [1, 3, 5, 7, 9])


@pytest.mark.parametrize("n", [3, 5, 8])
def test_progression_box_density_and_irreducibility(n):
    box = Box(0, 60, 0, 60)
    avals, bvals = progression_box(n, box)
    p0 = find_p0(n).p0
    assert len(avals) >= math.floor(60 / p0) and len(bvals) >= math.floor(60 / p0)
    rng = random.Random(n)
    for _ in range(30):
        assert is_irreducible_over_Q(Trinomial(n, rng.choice(avals), rng.choice(bvals)))
