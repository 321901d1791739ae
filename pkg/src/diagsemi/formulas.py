"""Exact combinatorial counts and the closed-form monoid orders.

Everything is arbitrary-precision integer arithmetic; values like 2^144
must come out exact.
"""

import math
from functools import lru_cache


def factorial(n: int) -> int:
    _check_nonneg(n)
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    _check_nonneg(n)
    if k < 0 or k > n:
        raise ValueError(f"binomial requires 0 <= k <= n, got k={k}, n={n}")
    return math.comb(n, k)


def catalan(n: int) -> int:
    _check_nonneg(n)
    return math.comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind, S(n, k) = k S(n-1, k) + S(n-1, k-1).

    S(0, 0) = 1 (the empty partition); S(n, k) = 0 for k > n."""
    _check_nonneg(n)
    _check_nonneg(k)
    if k > n:
        return 0
    if n == 0:
        return 1
    if k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def bell(n: int) -> int:
    _check_nonneg(n)
    return sum(stirling2(n, k) for k in range(n + 1))


def double_factorial_odd(n: int) -> int:
    """(2n-1)!! = 1 * 3 * 5 * ... * (2n-1)."""
    _check_nonneg(n)
    out = 1
    for k in range(1, 2 * n, 2):
        out *= k
    return out


def _check_nonneg(n):
    if n < 0:
        raise ValueError(f"argument must be nonnegative, got {n}")


def family_order(family: str, n: int) -> int:
    """Closed-form order of the degree-n monoid of the given family."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    if family == "PB":
        return 1 << ((2 * n) ** 2)
    if family == "B":
        return 1 << (n * n)
    if family == "P":
        return bell(2 * n)
    if family == "PT":
        return (n + 1) ** n
    if family == "IS":
        return sum(factorial(k) * stirling2(n, k) ** 2 for k in range(1, n + 1))
    if family == "T":
        return n**n
    if family == "I":
        return sum(factorial(k) * binomial(n, k) ** 2 for k in range(0, n + 1))
    if family == "Br":
        return double_factorial_odd(n)
    if family == "S":
        return factorial(n)
    if family == "TL":
        return catalan(n)
    raise ValueError(f"unknown family {family!r}")
