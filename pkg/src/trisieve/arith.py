"""Exact integer arithmetic: Jacobi symbols, factorization, square-free kernels,
prime windows.

Everything here works on Python ints and is pure.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "SquarefreeDecomposition",
    "PrimeWindow",
    "jacobi",
    "kronecker",
    "is_prime",
    "primes_up_to",
    "factor",
    "omega",
    "omega_ceiling",
    "is_squarefree",
    "squarefree_kernel",
    "prime_window",
]

_TRIAL_LIMIT = 1 << 10
# Deterministic Miller-Rabin witness set, valid for n < 3_317_044_064_679_887_385_961_981.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """``value == kernel * root**2`` with ``kernel`` square-free and signed like ``value``.

    ``value == 0`` is represented by the degenerate marker ``kernel == root == 0``.
    """

    value: int
    kernel: int
    root: int

    @property
    def is_degenerate(self) -> bool:
        return self.kernel == 0


@dataclass(frozen=True)
class PrimeWindow:
    """All primes in the closed interval ``[z, 2z]``, ascending."""

    z: float
    primes: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)


def jacobi(w: int, m: int) -> int:
    """Jacobi symbol ``(w/m)`` for odd ``m >= 3``."""
    if m < 3 or m % 2 == 0:
        raise ValueError(f"Jacobi modulus must be odd and >= 3, got {m}")
    w %= m
    result = 1
    while w:
        while w % 2 == 0:
            w //= 2
            if m % 8 in (3, 5):
                result = -result
        w, m = m, w
        if w % 4 == 3 and m % 4 == 3:
            result = -result
        w %= m
    return result if m == 1 else 0


def kronecker(w: int, p: int) -> int:
    """Legendre symbol extended to ``p == 2`` the Kronecker way.

    ``(w/2)`` is 0 for even ``w``, +1 for ``w = +-1 mod 8`` and -1 otherwise.
    """
    if p == 2:
        if w % 2 == 0:
            return 0
        return 1 if w % 8 in (1, 7) else -1
    return jacobi(w, p)


def _miller_rabin(n: int, bases) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < 43 * 43:
        return True
    if n < _MR_DETERMINISTIC_BOUND:
        return _miller_rabin(n, _MR_BASES)
    # Beyond the proven witness range: fixed extra bases keep the answer reproducible.
    return _miller_rabin(n, _MR_BASES + tuple(primes_up_to(400)[13:]))


@lru_cache(maxsize=16)
def _sieve(limit: int) -> tuple[int, ...]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return tuple(i for i, f in enumerate(flags) if f)


def primes_up_to(limit: int) -> tuple[int, ...]:
    """Primes ``<= limit`` by the sieve of Eratosthenes."""
    if limit < 2:
        return ()
    return _sieve(int(limit))


def _pollard_rho(n: int) -> int:
    # Brent's variant; n is an odd composite with no small factors.
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _factor_into(n: int, out: dict[int, int]) -> None:
    stack = [n]
    while stack:
        k = stack.pop()
        if k == 1:
            continue
        if is_prime(k):
            out[k] = out.get(k, 0) + 1
            continue
        root = math.isqrt(k)
        if root * root == k:
            stack.extend((root, root))
            continue
        d = _pollard_rho(k)
        stack.extend((d, k // d))


def factor(k: int) -> dict[int, int]:
    """Prime factorization of ``|k|`` as ``{prime: exponent}`` in ascending prime order."""
    if k == 0:
        raise ValueError("cannot factor 0")
    k = abs(k)
    out: dict[int, int] = {}
    for p in primes_up_to(_TRIAL_LIMIT):
        if p * p > k:
            break
        if k % p == 0:
            e = 0
            while k % p == 0:
                k //= p
                e += 1
            out[p] = e
    if k > 1:
        _factor_into(k, out)
    return dict(sorted(out.items()))


def omega(k: int) -> int:
    """Number of distinct primes dividing ``k``."""
    if k == 0:
        raise ValueError("omega(0) is undefined")
    return len(factor(k))


def omega_ceiling(bound: int) -> int:
    """Largest possible ``omega(k)`` over ``1 <= |k| <= bound`` (primorial argument)."""
    count, prod = 0, 1
    p = 2
    while True:
        prod *= p
        if prod > bound:
            return count
        count += 1
        p += 1
        while not is_prime(p):
            p += 1


def is_squarefree(k: int) -> bool:
    if k == 0:
        return False
    return all(e == 1 for e in factor(k).values())


def squarefree_kernel(k: int) -> SquarefreeDecomposition:
    if k == 0:
        return SquarefreeDecomposition(0, 0, 0)
    s, r = 1, 1
    for p, e in factor(k).items():
        if e % 2:
            s *= p
        r *= p ** (e // 2)
    return SquarefreeDecomposition(k, s if k > 0 else -s, r)


def prime_window(z: float) -> PrimeWindow:
    """Primes in ``[z, 2z]``; both ends included."""
    if z < 2:
        raise ValueError(f"prime window needs z >= 2, got {z}")
    lo, hi = math.ceil(z), math.floor(2 * z)
    return PrimeWindow(z, tuple(p for p in primes_up_to(hi) if p >= lo))
