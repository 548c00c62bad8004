"""Polynomials over prime fields and irreducibility of trinomials over F_p and Q.

Internally polynomials are little-endian coefficient lists (index = degree);
``ModPoly`` exposes the most-significant-first view.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .arith import factor, is_prime, primes_up_to
from .errors import NotFoundError
from .trinomial import Trinomial, discriminant

__all__ = [
    "ModPoly",
    "IrreducibleAnchor",
    "is_irreducible_mod_p",
    "degree_pattern",
    "is_irreducible_over_Q",
    "irreducibility_verdict",
    "integer_factor_search",
    "find_p0",
    "cohen_count",
]

log = logging.getLogger(__name__)

_TIER_PRIMES = primes_up_to(97)  # the first 25 primes
assert len(_TIER_PRIMES) == 25


# -- little-endian helpers over F_p ------------------------------------------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _sub(x: list[int], y: list[int], p: int) -> list[int]:
    out = [0] * max(len(x), len(y))
    for i, v in enumerate(x):
        out[i] = v
    for i, v in enumerate(y):
        out[i] = (out[i] - v) % p
    return _trim(out)


def _mul(x: list[int], y: list[int], p: int) -> list[int]:
    if not x or not y:
        return []
    out = [0] * (len(x) + len(y) - 1)
    for i, xi in enumerate(x):
        if xi:
            for j, yj in enumerate(y):
                out[i + j] += xi * yj
    return _trim([v % p for v in out])


def _divmod(x: list[int], y: list[int], p: int) -> tuple[list[int], list[int]]:
    if not y:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(x)
    dy = len(y) - 1
    inv = pow(y[-1], -1, p)
    q = [0] * max(len(r) - dy, 0)
    for k in range(len(r) - 1 - dy, -1, -1):
        c = r[k + dy] * inv % p
        q[k] = c
        if c:
            for j in range(dy + 1):
                r[k + j] = (r[k + j] - c * y[j]) % p
    return _trim(q), _trim(r[:dy] if dy else [])


def _gcd(x: list[int], y: list[int], p: int) -> list[int]:
    while y:
        x, y = y, _divmod(x, y, p)[1]
    if not x:
        return x
    inv = pow(x[-1], -1, p)
    return [v * inv % p for v in x]


def _mulmod(x: list[int], y: list[int], f: list[int], p: int) -> list[int]:
    """``x*y mod f`` for monic ``f`` and ``deg x, deg y < deg f``."""
    n = len(f) - 1
    prod = [0] * (2 * n)
    for i, xi in enumerate(x):
        if xi:
            for j, yj in enumerate(y):
                prod[i + j] += xi * yj
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k] % p
        if c:
            base = k - n
            for j in range(n):
                prod[base + j] -= c * f[j]
    return _trim([v % p for v in prod[:n]])


def _x_pow_mod(e: int, f: list[int], p: int) -> list[int]:
    """``t**e mod f`` by left-to-right square and shift."""
    n = len(f) - 1
    result = [1]
    for bit in bin(e)[2:]:
        result = _mulmod(result, result, f, p)
        if bit == "1":
            result = [0] + result
            if len(result) > n:
                c = result[n]
                result = _trim([(result[j] - c * f[j]) % p for j in range(n)])
    return result


class _Frobenius:
    """The p-power map on ``F_p[t]/(f)`` as a matrix acting on residues."""

    def __init__(self, f: list[int], p: int):
        self.f, self.p = f, p
        n = len(f) - 1
        h = _x_pow_mod(p, f, p)
        cols = [[1]]
        for _ in range(1, n):
            cols.append(_mulmod(cols[-1], h, f, p))
        self.cols = cols
        self.h = h

    def __call__(self, g: list[int]) -> list[int]:
        out = [0] * (len(self.f) - 1)
        for gi, col in zip(g, self.cols):
            if gi:
                for j, cj in enumerate(col):
                    out[j] += gi * cj
        return _trim([v % self.p for v in out])

    def orbit(self, steps: int) -> list[list[int]]:
        """``[t**(p**k) mod f for k in 1..steps]``."""
        out = [self.h]
        for _ in range(steps - 1):
            out.append(self(out[-1]))
        return out


def _trinomial_mod(n: int, a: int, b: int, p: int) -> list[int]:
    f = [0] * (n + 1)
    f[n] = 1
    f[1] = (f[1] + a) % p
    f[0] = (f[0] + b) % p
    return f


def _prime_divisors(n: int) -> list[int]:
    return list(factor(n)) if n > 1 else []


def _rabin(f: list[int], p: int) -> bool:
    n = len(f) - 1
    if n <= 1:
        return n == 1
    if f[0] == 0:
        return False
    frob = _Frobenius(f, p)
    powers = frob.orbit(n)
    if powers[-1] != [0, 1]:
        return False
    for q in _prime_divisors(n):
        g = _gcd(f, _sub(powers[n // q - 1], [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


# -- public types ------------------------------------------------------------------


@dataclass(frozen=True)
class ModPoly:
    """A polynomial over F_p, coefficients most significant first (``()`` is zero)."""

    modulus: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        p = self.modulus
        c = [v % p for v in self.coefficients]
        while c and c[0] == 0:
            c.pop(0)
        object.__setattr__(self, "coefficients", tuple(c))

    @classmethod
    def _from_little(cls, p: int, c: list[int]) -> ModPoly:
        return cls(p, tuple(reversed(c)))

    @property
    def _little(self) -> list[int]:
        return list(reversed(self.coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def _check(self, other: ModPoly) -> None:
        if other.modulus != self.modulus:
            raise ValueError("moduli differ")

    def __add__(self, other: ModPoly) -> ModPoly:
        self._check(other)
        neg = [-v % self.modulus for v in other._little]
        return ModPoly._from_little(self.modulus, _sub(self._little, neg, self.modulus))

    def __sub__(self, other: ModPoly) -> ModPoly:
        self._check(other)
        return ModPoly._from_little(self.modulus, _sub(self._little, other._little, self.modulus))

    def __mul__(self, other: ModPoly) -> ModPoly:
        self._check(other)
        return ModPoly._from_little(self.modulus, _mul(self._little, other._little, self.modulus))

    def __divmod__(self, other: ModPoly) -> tuple[ModPoly, ModPoly]:
        self._check(other)
        q, r = _divmod(self._little, other._little, self.modulus)
        return ModPoly._from_little(self.modulus, q), ModPoly._from_little(self.modulus, r)

    def __mod__(self, other: ModPoly) -> ModPoly:
        return divmod(self, other)[1]

    def gcd(self, other: ModPoly) -> ModPoly:
        self._check(other)
        return ModPoly._from_little(self.modulus, _gcd(self._little, other._little, self.modulus))

    def is_irreducible(self) -> bool:
        """Rabin's test; the polynomial is made monic first."""
        c = self._little
        if not c:
            return False
        inv = pow(c[-1], -1, self.modulus)
        return _rabin([v * inv % self.modulus for v in c], self.modulus)


@dataclass(frozen=True)
class IrreducibleAnchor:
    """A prime ``p0`` with ``t**degree + alpha0*t + beta0`` irreducible over F_p0."""

    degree: int
    p0: int
    alpha0: int
    beta0: int

    def __post_init__(self):
        if not is_irreducible_mod_p(self.degree, self.alpha0, self.beta0, self.p0):
            raise ValueError(f"{self} is not irreducible")


# -- over F_p ----------------------------------------------------------------------


def is_irreducible_mod_p(n: int, a: int, b: int, p: int) -> bool:
    """Is ``t**n + (a mod p) t + (b mod p)`` irreducible over F_p?"""
    if n < 2:
        raise ValueError(f"degree must be >= 2, got {n}")
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    return _rabin(_trinomial_mod(n, a, b, p), p)


def degree_pattern(n: int, a: int, b: int, p: int) -> list[int]:
    """Degrees of the irreducible factors of the trinomial mod ``p``, ascending.

    Distinct-degree factorization; only meaningful when the reduction is
    square-free, e.g. when ``p`` does not divide the discriminant.
    """
    f = _trinomial_mod(n, a, b, p)
    frob = _Frobenius(f, p)
    g, h = f, [0, 1]
    pattern: list[int] = []
    d = 0
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        h = frob(h)
        common = _gcd(g, _sub(h, [0, 1], p), p)
        k = len(common) - 1
        if k:
            pattern += [d] * (k // d)
            g = _divmod(g, common, p)[0]
    if len(g) > 1:
        pattern.append(len(g) - 1)
    return sorted(pattern)


# -- over Q ------------------------------------------------------------------------


def _subset_sums(parts: list[int]) -> set[int]:
    sums = {0}
    for d in parts:
        sums |= {s + d for s in sums}
    return sums


def _divisors(k: int) -> list[int]:
    divs = [1]
    for prime, e in factor(k).items():
        divs = [d * prime**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def _int_divides(f: list[int], g: list[int]) -> bool:
    """Does monic ``g`` divide ``f`` in Z[t]? Little-endian integer lists."""
    r = list(f)
    dg = len(g) - 1
    for k in range(len(r) - 1 - dg, -1, -1):
        c = r[k + dg]
        if c:
            for j in range(dg + 1):
                r[k + j] -= c * g[j]
    return not any(r[:dg])


def _newton_to_coeffs(nodes: list[int], newton: list[int]) -> list[int]:
    coeffs = [0]
    for c, k in zip(reversed(newton), reversed(nodes[: len(newton)])):
        # coeffs = coeffs * (t - k) + c
        shifted = [0] + coeffs
        for i, v in enumerate(coeffs):
            shifted[i] -= k * v
        shifted[0] += c
        coeffs = shifted
    return _trim_int(coeffs)


def _trim_int(c: list[int]) -> list[int]:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def integer_factor_search(tri: Trinomial) -> list[int] | None:
    """Exhaustive search for a monic integer factor of degree ``1..n//2``.

    Kronecker's method: a factor ``g`` must satisfy ``g(k) | f(k)`` at every
    integer node ``k``, so ``g`` is enumerated through its values at ``d``
    nodes, with integrality of Newton divided differences pruning the tree.
    Candidates whose coefficients exceed ``2**n * (1 + max|coeff|)`` are
    discarded.  Returns the factor most significant first, or ``None``.
    """
    n = tri.degree
    f = list(reversed(tri.coefficients))
    bound = 2**n * (1 + max(abs(tri.linear_coeff), abs(tri.constant_coeff)))
    radius = n + 4
    nodes: list[tuple[int, int]] = []
    for k in sorted(range(-radius, radius + 1), key=lambda v: (abs(v), v)):
        val = tri(k)
        if val == 0:
            return [1, -k]
        nodes.append((len(_divisors(val)), k))
    nodes.sort()
    for d in range(1, n // 2 + 1):
        ks = [k for _, k in nodes[:d]]
        choices = []
        for k in ks:
            divs = _divisors(tri(k))
            choices.append([s * v - k**d for v in divs for s in (1, -1)])
        found = _kronecker_dfs(f, d, ks, choices, bound)
        if found is not None:
            return list(reversed(found))
    return None


def _kronecker_dfs(f, d, ks, choices, bound):
    # Each frame carries the last row of the divided-difference table.
    def extend(j, row, newton):
        if j == d:
            h = _newton_to_coeffs(ks, newton)
            g = h + [0] * (d + 1 - len(h))
            g[d] += 1
            if max(abs(v) for v in g) > bound:
                return None
            return g if _int_divides(f, g) else None
        for y in choices[j]:
            new_row = [y]
            ok = True
            for i in range(1, j + 1):
                num = new_row[i - 1] - row[i - 1]
                den = ks[j] - ks[j - i]
                if num % den:
                    ok = False
                    break
                new_row.append(num // den)
            if not ok:
                continue
            hit = extend(j + 1, new_row, newton + [new_row[-1]])
            if hit is not None:
                return hit
        return None

    return extend(0, [], [])


def irreducibility_verdict(tri: Trinomial, *, max_tier: int = 3) -> tuple[bool | None, int]:
    """``(verdict, tier)`` where ``tier`` says which test was conclusive.

    Tier 0: zero discriminant. Tier 1: irreducible reduction modulo one of the
    first 25 primes not dividing the discriminant. Tier 2: the factor degree
    patterns at those primes admit no common proper factor degree. Tier 3:
    exhaustive integer factor search. With ``max_tier < 3`` an inconclusive
    result comes back as ``(None, max_tier)``.
    """
    n, a, b = tri.degree, tri.linear_coeff, tri.constant_coeff
    disc = discriminant(tri)
    if disc == 0:
        return False, 0
    good = [p for p in _TIER_PRIMES if disc % p]
    for p in good:
        if is_irreducible_mod_p(n, a, b, p):
            return True, 1
    if max_tier < 2:
        return None, 1
    feasible = set(range(1, n))
    for p in good:
        feasible &= _subset_sums(degree_pattern(n, a, b, p))
        if not feasible:
            return True, 2
    if max_tier < 3:
        return None, 2
    return integer_factor_search(tri) is None, 3


def is_irreducible_over_Q(tri: Trinomial) -> bool:
    return irreducibility_verdict(tri)[0]


def find_p0(n: int, max_prime: int = 10_000) -> IrreducibleAnchor:
    """Smallest prime admitting an irreducible ``t**n + alpha*t + beta``.

    Among the pairs for that prime, the lexicographically smallest
    ``(alpha, beta)`` with both in ``[0, p)`` is returned.
    """
    if n < 2:
        raise ValueError(f"degree must be >= 2, got {n}")
    for p in primes_up_to(max_prime):
        for alpha in range(p):
            for beta in range(p):
                if _rabin(_trinomial_mod(n, alpha, beta, p), p):
                    return IrreducibleAnchor(n, p, alpha, beta)
    raise NotFoundError(f"no irreducible degree-{n} trinomial over F_p for p <= {max_prime}")


def _count_alpha(n: int, p: int, alpha: int) -> int:
    return sum(_rabin(_trinomial_mod(n, alpha, beta, p), p) for beta in range(p))


def cohen_count(n: int, p: int, threads: int = 1) -> int:
    """Number of ``(alpha, beta)`` in F_p**2 with ``t**n + alpha*t + beta`` irreducible."""
    if n < 2:
        raise ValueError(f"degree must be >= 2, got {n}")
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if threads <= 1:
        return sum(_count_alpha(n, p, alpha) for alpha in range(p))
    with ThreadPoolExecutor(threads) as pool:
        return sum(pool.map(lambda alpha: _count_alpha(n, p, alpha), range(p)))
