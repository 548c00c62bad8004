"""Discriminants of ``t**n + a*t + b``.

Two independent routes are provided: the closed form and a Sylvester-matrix
resultant evaluated with fraction-free elimination.  The second one exists only
to check the first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Trinomial",
    "discriminant",
    "discriminant_resultant",
    "poly_discriminant",
    "dab",
    "disc_unit_general",
    "kappa",
    "bareiss_determinant",
    "sylvester_matrix",
]


@dataclass(frozen=True)
class Trinomial:
    degree: int
    linear_coeff: int
    constant_coeff: int

    def __post_init__(self):
        if self.degree < 2:
            raise ValueError(f"trinomial degree must be >= 2, got {self.degree}")

    @property
    def coefficients(self) -> list[int]:
        """Integer coefficients, most significant first."""
        c = [1] + [0] * self.degree
        c[-2] += self.linear_coeff
        c[-1] += self.constant_coeff
        return c

    def __call__(self, t: int) -> int:
        return t**self.degree + self.linear_coeff * t + self.constant_coeff

    def __str__(self) -> str:
        return f"t^{self.degree} + {self.linear_coeff}*t + {self.constant_coeff}"


def _sign(n: int) -> int:
    return -1 if (n * (n - 1) // 2) % 2 else 1


def discriminant(tri: Trinomial) -> int:
    n, a, b = tri.degree, tri.linear_coeff, tri.constant_coeff
    inner = n**n * b ** (n - 1) + (-1) ** (n - 1) * (n - 1) ** (n - 1) * a**n
    return _sign(n) * inner


def dab(n: int, a: int, b: int) -> int:
    """``(n-1)**(n-1) * a**n + n**n * b**(n-1)``; the discriminant when ``n = 1 mod 4``."""
    return (n - 1) ** (n - 1) * a**n + n**n * b ** (n - 1)


def bareiss_determinant(matrix: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by Bareiss fraction-free elimination."""
    m = [list(row) for row in matrix]
    size = len(m)
    if size == 0:
        return 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for i in range(k + 1, size):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[-1][-1]


def sylvester_matrix(f: list[int], g: list[int]) -> list[list[int]]:
    """Sylvester matrix of two coefficient lists (most significant first)."""
    df, dg = len(f) - 1, len(g) - 1
    size = df + dg
    rows = []
    for i in range(dg):
        rows.append([0] * i + list(f) + [0] * (size - df - 1 - i))
    for i in range(df):
        rows.append([0] * i + list(g) + [0] * (size - dg - 1 - i))
    return rows


def poly_discriminant(coeffs: list[int]) -> int:
    """Discriminant of a monic integer polynomial as ``(-1)**(n(n-1)/2) * Res(f, f')``."""
    n = len(coeffs) - 1
    if n < 1 or coeffs[0] != 1:
        raise ValueError("expected a monic polynomial of degree >= 1")
    if n == 1:
        return 1
    deriv = [c * (n - i) for i, c in enumerate(coeffs[:-1])]
    return _sign(n) * bareiss_determinant(sylvester_matrix(coeffs, deriv))


def discriminant_resultant(tri: Trinomial) -> int:
    return poly_discriminant(tri.coefficients)


def disc_unit_general(n: int, m: int) -> int:
    """Discriminant of ``t**n + t**m + 1``.

    For coprime ``n, m`` this is ``(-1)**(n(n-1)/2) * (n**n - (-1)**n * m**m * (n-m)**(n-m))``.
    With ``d = gcd(n, m) > 1`` the bracket is taken over ``N = n/d, M = m/d`` and
    raised to the ``d``-th power; the plain expression is wrong there (e.g. n=4, m=2).
    """
    if not n > m >= 1:
        raise ValueError(f"need n > m >= 1, got n={n}, m={m}")
    d = math.gcd(n, m)
    big_n, big_m = n // d, m // d
    bracket = n**big_n - (-1) ** big_n * (n - m) ** (big_n - big_m) * m**big_m
    return _sign(n) * bracket**d


def kappa(n: int) -> Fraction:
    """``1/n + 1/(n-1)``, the exponent counting pairs with ``|disc| <= X``."""
    if n < 2:
        raise ValueError(f"kappa needs n >= 2, got {n}")
    return Fraction(1, n) + Fraction(1, n - 1)
