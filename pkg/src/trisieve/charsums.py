"""Jacobi-symbol character sums of the trinomial discriminant.

Complete sums run over all ``(u, v)`` modulo ``m``; the character values are
exact integers and only the additive twist goes through floating point.  When
both twists vanish the sum is accumulated in integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import factor, is_prime, jacobi
from .sieve import Box
from .trinomial import dab

__all__ = [
    "CharSumSpec",
    "CharSumResult",
    "complete_sum",
    "composite_sum",
    "composite_sum_crt",
    "gauss_sum",
    "incomplete_box_sum",
    "substitution_sides",
    "float_error_bound",
]


def _odd_prime_factors(m: int) -> list[int]:
    """Prime factors of an odd ``m >= 3`` that is a prime or a product of two distinct primes."""
    if m < 3 or m % 2 == 0:
        raise ValueError(f"modulus must be odd and >= 3, got {m}")
    fac = factor(m)
    if any(e > 1 for e in fac.values()) or len(fac) > 2:
        raise ValueError(f"modulus {m} must be a prime or a product of two distinct primes")
    return list(fac)


@dataclass(frozen=True)
class CharSumSpec:
    degree: int
    modulus: int
    lam: int = 0
    mu: int = 0
    primes: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "primes", tuple(_odd_prime_factors(self.modulus)))
        object.__setattr__(self, "lam", self.lam % self.modulus)
        object.__setattr__(self, "mu", self.mu % self.modulus)

    @property
    def untwisted(self) -> bool:
        return self.lam == 0 and self.mu == 0


@dataclass(frozen=True)
class CharSumResult:
    value: complex
    term_count: int
    modulus: int
    exact: int | None = None  # integer value when the sum is untwisted

    def __post_init__(self):
        if abs(self.value) > self.term_count + 1e-6:
            raise AssertionError(f"|{self.value}| exceeds term count {self.term_count}")


def _char_table(m: int) -> np.ndarray:
    return np.array([jacobi(w, m) for w in range(m)], dtype=np.int64)


def _disc_residues(n: int, m: int) -> np.ndarray:
    """``Delta_n(u, v) mod m`` for ``u, v`` in ``0..m-1`` as an ``m x m`` array."""
    r = np.arange(m, dtype=object)
    ca = (n - 1) ** (n - 1) % m
    cb = n**n % m
    un = np.array([ca * pow(int(u), n, m) % m for u in r], dtype=np.int64)
    vn = np.array([cb * pow(int(v), n - 1, m) % m for v in r], dtype=np.int64)
    return (un[:, None] + vn[None, :]) % m


def _evaluate(spec: CharSumSpec) -> CharSumResult:
    n, m = spec.degree, spec.modulus
    chi = _char_table(m)[_disc_residues(n, m)]
    if spec.untwisted:
        total = int(chi.sum())
        return CharSumResult(complex(total), m * m, m, total)
    idx = np.arange(m)
    eu = np.exp(2j * np.pi * ((spec.lam * idx) % m) / m)
    ev = np.exp(2j * np.pi * ((spec.mu * idx) % m) / m)
    value = complex(eu @ (chi @ ev))
    return CharSumResult(value, m * m, m)


def complete_sum(spec: CharSumSpec) -> CharSumResult:
    """``sum_{u,v mod l} (Delta_n(u,v)/l) e_l(lam*u + mu*v)`` for a prime modulus."""
    if len(spec.primes) != 1:
        raise ValueError(f"modulus {spec.modulus} is composite; use composite_sum")
    return _evaluate(spec)


def composite_sum_crt(spec: CharSumSpec) -> complex:
    """The composite sum as a product of two prime-modulus sums.

    With ``m = l1*l2``, ``e_m(x) = e_l1(x * inv(l2, l1)) * e_l2(x * inv(l1, l2))``
    and the Jacobi symbol splits likewise, so the twists are rescaled per factor.
    """
    l1, l2 = spec.primes
    c1, c2 = pow(l2, -1, l1), pow(l1, -1, l2)
    s1 = _evaluate(CharSumSpec(spec.degree, l1, spec.lam * c1, spec.mu * c1))
    s2 = _evaluate(CharSumSpec(spec.degree, l2, spec.lam * c2, spec.mu * c2))
    return s1.value * s2.value


def composite_sum(spec: CharSumSpec, *, tol_factor: float = 1e-6) -> CharSumResult:
    """Direct evaluation modulo ``l1*l2``, cross-checked against the CRT product."""
    if len(spec.primes) != 2:
        raise ValueError(f"modulus {spec.modulus} is not a product of two distinct primes")
    direct = _evaluate(spec)
    crt = composite_sum_crt(spec)
    if abs(direct.value - crt) > tol_factor * spec.modulus:
        raise AssertionError(f"direct {direct.value} vs CRT {crt} for {spec}")
    return direct


def gauss_sum(l: int) -> complex:
    """``sum_{w=1}^{l} (w/l) e_l(w)`` with compensated summation."""
    if l < 3 or not is_prime(l):
        raise ValueError(f"Gauss sum needs an odd prime, got {l}")
    re, im = [], []
    for w in range(1, l + 1):
        c = jacobi(w, l)
        if c:
            re.append(c * math.cos(2 * math.pi * w / l))
            im.append(c * math.sin(2 * math.pi * w / l))
    return complex(math.fsum(re), math.fsum(im))


def incomplete_box_sum(n: int, m: int, box: Box) -> int:
    """Exact ``sum_{(a,b) in box} (Delta_n(a,b)/m)``."""
    _odd_prime_factors(m)
    chi = _char_table(m)
    ca = (n - 1) ** (n - 1) % m
    cb = n**n % m
    a_res = [ca * pow(a, n, m) % m for a in box.a_values()]
    b_res = [cb * pow(b, n - 1, m) % m for b in box.b_values()]
    if not a_res or not b_res:
        return 0
    grid = (np.array(a_res, dtype=np.int64)[:, None] + np.array(b_res, dtype=np.int64)[None, :]) % m
    return int(chi[grid].sum())


def substitution_sides(n: int, l: int) -> tuple[int, int]:
    """Both sides of the ``u -> u*v`` substitution over ``u, v in 1..l-1``.

    Left: ``sum (Delta_n(u,v)/l)``. Right: ``sum (((n-1)**(n-1) u**n v + n**n) v**(n-1) / l)``.
    Each side is a plain double loop of Jacobi symbols.
    """
    left = sum(jacobi(dab(n, u, v), l) for u in range(1, l) for v in range(1, l))
    right = sum(
        jacobi(((n - 1) ** (n - 1) * u**n * v + n**n) * v ** (n - 1), l)
        for u in range(1, l)
        for v in range(1, l)
    )
    return left, right


def float_error_bound(m: int) -> float:
    """Accumulated rounding bound for ``m**2`` unit-magnitude terms."""
    return m * m * 2.0**-50
