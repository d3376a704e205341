"""Exact integer arithmetic for the quantities that enter bounds.

Ceilings of rational powers and multiples of log2 are computed with integer
comparisons so that an off-by-one from floating point can never change a
generated family or a certificate check.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["ceil_pow", "ceil_log2_mul", "le_log2_mul"]


def ceil_pow(m: int, exponent: Fraction) -> int:
    """Smallest integer k with k >= m**exponent, for m >= 1 and exponent >= 0.

    The float estimate is only a starting point; the answer is pinned by the
    exact test k**q >= m**p where exponent = p/q.
    """
    if m < 1:
        raise ValueError(f"base must be >= 1, got {m}")
    exponent = Fraction(exponent)
    if exponent < 0:
        raise ValueError(f"exponent must be >= 0, got {exponent}")
    p, q = exponent.numerator, exponent.denominator
    if p == 0 or m == 1:
        return 1
    target = m**p
    try:
        k = max(1, round(float(m) ** (p / q)))
    except OverflowError:
        k = 1
    while k > 1 and (k - 1) ** q >= target:
        k -= 1
    while k**q < target:
        k += 1
    return k


def ceil_log2_mul(c: int, n: int) -> int:
    """ceil(c * log2(n)) for integers c >= 0, n >= 1, computed exactly."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if c < 0:
        raise ValueError(f"multiplier must be >= 0, got {c}")
    if c == 0 or n == 1:
        return 0
    # smallest d with 2**d >= n**c
    return (n**c - 1).bit_length()


def le_log2_mul(a: int, c: int, n: int) -> bool:
    """Exact test for a <= c * log2(n), with integers a, c >= 0, n >= 1."""
    if n < 1 or c < 0:
        raise ValueError("need n >= 1 and c >= 0")
    if a <= 0:
        return True
    return 2**a <= n**c
