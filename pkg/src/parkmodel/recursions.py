"""Exact evaluation of the counting recursions behind both models.

Everything here is big-integer or Fraction arithmetic; no floats enter or
leave. The three families share one convolution skeleton: condition on the
spot where the last car ends up, split the lot into the i spots left of it
and the n-i-1 spots right of it, and multiply the ways each side fills.

The right side is a classic forward-only lot of n-i-1 cars on n-i-1 spots,
contributing (n-i)**(n-i-2) preference tuples; at i = n-1 that expression
reads 1**(-1) and is defined to be 1 (the empty right side fills in exactly
one way), which needs its own code path because a negative integer exponent
would otherwise produce a float.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb


def _cluster_factor(m: int) -> int:
    """Ways m-1 cars fill m-1 spots forward-only on an m-spot window: m**(m-2)."""
    if m == 1:
        return 1
    return m ** (m - 2)


def _check_n(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"car count n must be a positive integer, got {n!r}")


def _check_k(k: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise ValueError(f"backward allowance k must be a nonnegative integer, got {k!r}")


def as_fraction(p) -> Fraction:
    """Coerce an exact rational input to Fraction, rejecting floats."""
    if isinstance(p, float):
        raise TypeError(
            "p must be exact (Fraction or int); floats would silently round"
        )
    if isinstance(p, int) and not isinstance(p, bool):
        return Fraction(p)
    if isinstance(p, Fraction):
        return p
    raise TypeError(f"p must be a Fraction or int, got {p!r}")


@lru_cache(maxsize=None)
def _parking_count_rec(n: int) -> int:
    if n == 0:
        return 1
    return sum(
        comb(n - 1, i)
        * _parking_count_rec(i)
        * _cluster_factor(n - i)
        * (i + 1)
        for i in range(n)
    )


def parking_count(n: int) -> int:
    """Number of classic parking functions of length n, (n+1)**(n-1).

    The convolution recursion is evaluated too and asserted equal, so the
    closed form and the recursion cross-check each other on every call.
    """
    _check_n(n)
    closed = (n + 1) ** (n - 1)
    recursed = _parking_count_rec(n)
    assert recursed == closed, f"parking recursion disagrees at n={n}"
    return closed


@lru_cache(maxsize=None)
def _naples_count_rec(n: int, k: int) -> int:
    if n == 0:
        return 1
    return sum(
        comb(n - 1, i)
        * _naples_count_rec(i, k)
        * _cluster_factor(n - i)
        * (i + 1 + min(k, n - i - 1))
        for i in range(n)
    )


def naples_count(n: int, k: int = 1) -> int:
    """Number of k-Naples parking functions of length n, by recursion."""
    _check_n(n)
    _check_k(k)
    return _naples_count_rec(n, k)


@lru_cache(maxsize=None)
def _expected_naples_rec(n: int, k: int, p: Fraction) -> Fraction:
    if n == 0:
        return Fraction(1)
    return sum(
        comb(n - 1, i)
        * _expected_naples_rec(i, k, p)
        * _cluster_factor(n - i)
        * (i + 1 + p * min(k, n - i - 1))
        for i in range(n)
    )


def expected_random_naples(n: int, k: int, p) -> Fraction:
    """Expected number of n-tuples that park under the random k-Naples rule.

    Exact rational for exact rational p; p = 0 collapses to parking_count
    and p = 1 to naples_count.
    """
    _check_n(n)
    _check_k(k)
    p = as_fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return _expected_naples_rec(n, k, p)


def expected_random_direction(n: int) -> int:
    """Expected number of n-tuples that park under the random-direction rule.

    Equal to the classic parking-function count for every choice of p, so
    this takes no p argument; the polynomial identity behind that fact is
    checked tuple-by-tuple in census.verify_direction_total.
    """
    _check_n(n)
    return (n + 1) ** (n - 1)
