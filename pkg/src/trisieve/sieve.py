"""Square-sieve detection and exact counting over integer boxes.

A box ``[C, C+A] x [D, D+B]`` is enumerated row by row (one row per ``a``).
Rows can be farmed out to a thread pool; results are merged in row order so
every count is independent of the number of threads.
"""

from __future__ import annotations

import math
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .arith import (
    PrimeWindow,
    is_squarefree,
    kronecker,
    omega,
    omega_ceiling,
    prime_window,
    squarefree_kernel,
)
from .errors import UnsupportedDegreeError, VerificationError
from .polyfield import find_p0, is_irreducible_over_Q
from .trinomial import Trinomial, discriminant

__all__ = [
    "Box",
    "SievePlan",
    "SieveCount",
    "make_plan",
    "sieve_detect",
    "window_omega",
    "t_exact",
    "t_sieve_filtered",
    "field_kernels",
    "s_exact",
    "canonical_box",
    "q_kernels",
    "q_exact",
    "progression_box",
    "bench",
]


@dataclass(frozen=True)
class Box:
    """The lattice points of ``[c_start, c_start + a_extent] x [d_start, d_start + b_extent]``.

    Corners must be non-negative unless ``signed`` is set.
    """

    c_start: float
    a_extent: float
    d_start: float
    b_extent: float
    signed: bool = False

    def __post_init__(self):
        if self.a_extent < 0 or self.b_extent < 0:
            raise ValueError("box extents must be non-negative")
        if not self.signed and (self.c_start < 0 or self.d_start < 0):
            raise ValueError("negative corner needs signed=True")

    @classmethod
    def from_ranges(cls, a_lo: int, a_hi: int, d_lo: int, d_hi: int) -> Box:
        """Integer box ``[a_lo, a_hi] x [d_lo, d_hi]``."""
        return cls(a_lo, a_hi - a_lo, d_lo, d_hi - d_lo, signed=min(a_lo, d_lo) < 0)

    def a_values(self) -> range:
        return range(math.ceil(self.c_start), math.floor(self.c_start + self.a_extent) + 1)

    def b_values(self) -> range:
        return range(math.ceil(self.d_start), math.floor(self.d_start + self.b_extent) + 1)

    def __len__(self) -> int:
        return len(self.a_values()) * len(self.b_values())

    @property
    def in_theorem_range(self) -> bool:
        return self.a_extent >= 1 and self.b_extent >= 1 and self.c_start >= 0 and self.d_start >= 0

    def max_abs_disc(self, n: int) -> int:
        """Upper bound for ``|Delta_n(a, b)|`` over the box."""
        a_vals, b_vals = self.a_values(), self.b_values()
        if not a_vals or not b_vals:
            return 0
        amax = max(abs(a_vals[0]), abs(a_vals[-1]))
        bmax = max(abs(b_vals[0]), abs(b_vals[-1]))
        return (n - 1) ** (n - 1) * amax**n + n**n * bmax ** (n - 1)


@dataclass(frozen=True)
class SievePlan:
    z: float
    window: PrimeWindow
    omega_budget: int


@dataclass(frozen=True)
class SieveCount:
    count: int
    pairs: int
    candidates: int
    max_omega: int

    @property
    def pruning_ratio(self) -> float:
        """Fraction of nonzero-discriminant pairs rejected before kernel confirmation."""
        return 1.0 - self.candidates / self.pairs if self.pairs else 0.0


def _disc(n: int, a: int, b: int) -> int:
    return discriminant(Trinomial(n, a, b))


def _rows(fn, values, threads: int) -> list:
    if threads <= 1:
        return [fn(v) for v in values]
    with ThreadPoolExecutor(threads) as pool:
        return list(pool.map(fn, values))


def _check_kernel(s: int) -> None:
    if s == 0 or not is_squarefree(s):
        raise ValueError(f"{s} is not a nonzero square-free integer")


def make_plan(n: int, box: Box, s: int = 1, z: float | None = None) -> SievePlan:
    """Window ``[z, 2z]`` with ``z = (AB)**(1/3)`` unless given.

    ``omega_budget`` bounds ``omega(s * Delta)`` over the whole box by the
    primorial argument, so it is a hard ceiling rather than an estimate.
    """
    if z is None:
        z = max(box.a_extent * box.b_extent, 1.0) ** (1 / 3)
    window = prime_window(z) if z >= 2 else PrimeWindow(z, ())
    budget = omega_ceiling(max(abs(s) * box.max_abs_disc(n), 1))
    return SievePlan(z, window, budget)


def window_omega(k: int, window: PrimeWindow) -> int:
    """Number of window primes dividing ``k``."""
    return sum(1 for p in window.primes if k % p == 0)


def sieve_detect(k: int, window: PrimeWindow, omega_value: int | None = None) -> bool:
    """Square-sieve test ``sum_l (k/l) >= #window - omega(k)``.

    Never false for a perfect square.  ``omega_value`` replaces ``omega(k)``
    by any upper bound for the number of window primes dividing ``k``, such as
    ``window_omega(k, window)`` or a plan's ``omega_budget``.
    """
    if k == 0:
        raise ValueError("sieve_detect needs k != 0")
    if not window.primes:
        raise ValueError("empty prime window")
    if omega_value is None:
        omega_value = omega(k)
    return sum(kronecker(k, p) for p in window.primes) >= len(window.primes) - omega_value


def t_exact(n: int, box: Box, s: int, threads: int = 1) -> int:
    """Pairs in ``box`` with ``Delta_n(a, b) = s * r**2``, ``Delta != 0``."""
    _check_kernel(s)
    b_vals = box.b_values()

    def row(a: int) -> int:
        hits = 0
        for b in b_vals:
            d = _disc(n, a, b)
            if d and squarefree_kernel(d).kernel == s:
                hits += 1
        return hits

    return sum(_rows(row, box.a_values(), threads))


def t_sieve_filtered(
    n: int, box: Box, s: int, plan: SievePlan | None = None, threads: int = 1
) -> SieveCount:
    """``t_exact`` with the square sieve applied to ``s * Delta`` before factoring.

    The detector threshold uses the window primes dividing ``s * Delta``, the
    sharpest sound choice.  Confirmed pairs are checked against the plan's
    omega budget afterwards.
    """
    _check_kernel(s)
    if plan is None:
        plan = make_plan(n, box, s)
    b_vals = box.b_values()
    window = plan.window
    if not window.primes:
        warnings.warn(f"prime window for z={plan.z:.4g} is empty; counting exactly", stacklevel=2)

    def row(a: int) -> tuple[int, int, int, int]:
        hits = pairs = candidates = max_om = 0
        for b in b_vals:
            d = _disc(n, a, b)
            if not d:
                continue
            pairs += 1
            k = s * d
            if window.primes and not sieve_detect(k, window, window_omega(k, window)):
                continue
            candidates += 1
            dec = squarefree_kernel(d)
            if dec.kernel == s:
                hits += 1
                max_om = max(max_om, omega(d))
        return hits, pairs, candidates, max_om

    parts = _rows(row, box.a_values(), threads)
    result = SieveCount(
        count=sum(p[0] for p in parts),
        pairs=sum(p[1] for p in parts),
        candidates=sum(p[2] for p in parts),
        max_omega=max((p[3] for p in parts), default=0),
    )
    if result.max_omega > plan.omega_budget:
        raise VerificationError(f"omega {result.max_omega} exceeds budget {plan.omega_budget}")
    return result


def _field_row(n: int, a: int, b_vals, x: int | None) -> dict[int, tuple[int, int, int]]:
    found: dict[int, tuple[int, int, int]] = {}
    for b in b_vals:
        d = _disc(n, a, b)
        if not d or (x is not None and abs(d) > x):
            continue
        s = squarefree_kernel(d).kernel
        if s == 1 or s in found:
            continue
        if is_irreducible_over_Q(Trinomial(n, a, b)):
            found[s] = (a, b, d)
    return found


def field_kernels(
    n: int, box: Box, threads: int = 1, x: int | None = None
) -> dict[int, tuple[int, int, int]]:
    """Square-free kernels of ``Delta`` over irreducible trinomials in ``box``.

    Maps each kernel ``s != 0, 1`` to its lexicographically first witness
    ``(a, b, Delta)``.  With ``x`` given only ``|Delta| <= x`` is admitted.
    """
    b_vals = box.b_values()
    parts = _rows(lambda a: _field_row(n, a, b_vals, x), box.a_values(), threads)
    merged: dict[int, tuple[int, int, int]] = {}
    for part in parts:
        for s, wit in part.items():
            merged.setdefault(s, wit)
    return dict(sorted(merged.items()))


def s_exact(n: int, box: Box, threads: int = 1) -> int:
    """Number of distinct quadratic fields ``Q(sqrt(Delta))`` over irreducible trinomials."""
    return len(field_kernels(n, box, threads))


def _int_root_bound(coef: int, power: int, rhs: int) -> int:
    """Largest ``v >= 0`` with ``coef * v**power <= rhs``."""
    v = int((rhs / coef) ** (1 / power)) + 2
    while v > 0 and coef * v**power > rhs:
        v -= 1
    return v


def canonical_box(n: int, x: int, literal: bool = False) -> Box:
    """The enumeration region used for ``Q_n(X)``.

    ``literal`` gives ``A = C = X**(1/n) / (4 (n-1)**(n-1))`` and
    ``B = D = X**(1/(n-1)) / (4 n**n)``, which holds no nonzero lattice point
    until ``X`` is astronomically large.  The default moves the constants under
    the root, ``A = C = (X / (4 (n-1)**(n-1)))**(1/n)`` and likewise for ``B``,
    and covers both signs: ``|a| <= C + A``, ``|b| <= D + B``.  That region
    contains every pair whose two discriminant terms are each at most ``X``.
    """
    if literal:
        a = x ** (1 / n) / (4 * (n - 1) ** (n - 1))
        b = x ** (1 / (n - 1)) / (4 * n**n)
        return Box(a, a, b, b)
    # (n-1)^(n-1) (a/2)^n <= X/4  and  n^n (b/2)^(n-1) <= X/4
    a_lim = _int_root_bound(4 * (n - 1) ** (n - 1), n, 2**n * x)
    b_lim = _int_root_bound(4 * n**n, n - 1, 2 ** (n - 1) * x)
    return Box.from_ranges(-a_lim, a_lim, -b_lim, b_lim)


def q_kernels(
    n: int, x: int, threads: int = 1, literal: bool = False
) -> dict[int, tuple[int, int, int]]:
    if n % 4 != 1:
        raise UnsupportedDegreeError(f"q_exact needs n = 1 mod 4, got n={n}")
    if x < 1:
        raise ValueError(f"X must be >= 1, got {x}")
    return field_kernels(n, canonical_box(n, x, literal), threads, x=x)


def q_exact(n: int, x: int, threads: int = 1, literal: bool = False) -> int:
    """Lower bound for ``Q_n(X)``: distinct fields from the canonical region with ``|Delta| <= X``."""
    return len(q_kernels(n, x, threads, literal))


def progression_box(n: int, box: Box) -> tuple[list[int], list[int]]:
    """``a = alpha0 (mod p0)`` and ``b = beta0 (mod p0)`` inside the box.

    Every trinomial built from the two lists reduces to the irreducible anchor
    modulo ``p0`` and is therefore irreducible over Q.
    """
    anchor = find_p0(n)
    p = anchor.p0
    avals = [a for a in box.a_values() if a % p == anchor.alpha0]
    bvals = [b for b in box.b_values() if b % p == anchor.beta0]
    return avals, bvals


def bench(n: int, box: Box, s: int, z: float | None = None, threads: int = 1) -> dict:
    """Wall time of ``t_exact`` against ``t_sieve_filtered`` on the same instance."""
    plan = make_plan(n, box, s, z)
    t0 = time.perf_counter()
    exact = t_exact(n, box, s, threads)
    t1 = time.perf_counter()
    filtered = t_sieve_filtered(n, box, s, plan, threads)
    t2 = time.perf_counter()
    if filtered.count != exact:
        raise VerificationError(f"sieve count {filtered.count} != exact count {exact}")
    return {
        "count": exact,
        "pairs": filtered.pairs,
        "candidates": filtered.candidates,
        "pruning_ratio": filtered.pruning_ratio,
        "window_size": len(plan.window),
        "omega_budget": plan.omega_budget,
        "exact_seconds": t1 - t0,
        "sieve_seconds": t2 - t1,
    }
