"""Cyclotomic polynomials, q-integers, q-binomials and quotient generators.

The cyclotomic memo is a plain dict.  Entries are computed outside any lock
and published with ``dict.setdefault``, which is atomic in CPython: two
threads racing on the same n may both compute it, but both store the same
immutable value and readers never observe a partial entry.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import IndexOutOfRange, NotADivisor, NotDivisible
from .numtheory import FactoredInt, divisors, euler_phi, factorize
from .polycore import ONE, IntPoly, exact_div, product, q_power_minus_one, shift, sub

__all__ = [
    "FactoredInt",
    "cyclotomic",
    "cyclotomic_mobius",
    "euler_phi",
    "factorize",
    "q_binomial",
    "q_binomial_row",
    "q_integer",
    "q_pascal_row",
    "quotient_generator",
]

_CYCLOTOMIC: dict[int, IntPoly] = {}


def cyclotomic(n: int) -> IntPoly:
    """Phi_n as (q^n - 1) divided by the product of Phi_d over proper divisors d."""
    if n < 1:
        raise ValueError(f"cyclotomic needs n >= 1, got {n}")
    hit = _CYCLOTOMIC.get(n)
    if hit is not None:
        return hit
    if n == 1:
        phi = IntPoly((-1, 1))
    else:
        proper = product(cyclotomic(d) for d in divisors(n)[:-1])
        try:
            phi = exact_div(q_power_minus_one(n), proper)
        except NotDivisible as exc:  # pragma: no cover - would mean a broken kernel
            raise AssertionError(f"q^{n} - 1 not divisible by its proper cyclotomic factors") from exc
    return _CYCLOTOMIC.setdefault(n, phi)


def clear_cyclotomic_cache() -> None:
    _CYCLOTOMIC.clear()


def q_integer(m: int) -> IntPoly:
    """[m]_q = 1 + q + ... + q^(m-1)."""
    if m < 1:
        raise ValueError(f"q_integer needs m >= 1, got {m}")
    return IntPoly((1,) * m)


def _times_q_power_minus_one(a: IntPoly, k: int) -> IntPoly:
    return sub(shift(a, k), a)


def _div_q_power_minus_one(a: IntPoly, k: int) -> IntPoly:
    """Exact quotient a / (q^k - 1), checking the remainder."""
    c = a.coeffs
    n = len(c)
    if n == 0:
        return a
    if n <= k:
        raise NotDivisible(f"not divisible by q^{k} - 1")
    m = n - k
    quot = [0] * m
    # Coefficientwise a[i] = quot[i-k] - quot[i]; solve from the top.
    for j in range(m - 1, -1, -1):
        quot[j] = c[j + k] + (quot[j + k] if j + k < m else 0)
    for j in range(k):
        expected = -quot[j] if j < m else 0
        if c[j] != expected:
            raise NotDivisible(f"not divisible by q^{k} - 1")
    return IntPoly(quot)


@lru_cache(maxsize=256)
def q_binomial_row(n: int) -> tuple[IntPoly, ...]:
    """All (n, i)_q for 0 <= i <= n via the product formula.

    Each step multiplies by q^(n-j) - 1 and divides exactly by q^(j+1) - 1;
    the partial result is (n, j+1)_q, so it never leaves Z[q].
    """
    if n < 0:
        raise ValueError(f"q_binomial_row needs n >= 0, got {n}")
    row = [ONE]
    cur = ONE
    for j in range(n):
        cur = _div_q_power_minus_one(_times_q_power_minus_one(cur, n - j), j + 1)
        row.append(cur)
    return tuple(row)


def q_binomial(n: int, i: int) -> IntPoly:
    if n < 0:
        raise ValueError(f"q_binomial needs n >= 0, got {n}")
    if i < 0 or i > n:
        raise IndexOutOfRange(f"index {i} outside [0, {n}]")
    return q_binomial_row(n)[i]


def q_pascal_row(n: int) -> list[IntPoly]:
    """(n, i)_q via (n,i) = (n-1,i-1) + q^i (n-1,i); kept as an independent oracle."""
    row = [ONE]
    for m in range(1, n + 1):
        prev = row
        row = [ONE]
        for i in range(1, m):
            row.append(prev[i - 1] + shift(prev[i], i))
        row.append(ONE)
    return row


def quotient_generator(n: int, pk: int) -> IntPoly:
    """[n]_q / [n/pk]_q = (q^n - 1)/(q^(n/pk) - 1).

    Cross-checked against the product of Phi_d over divisors d of n that
    do not divide n/pk.
    """
    if pk < 2 or n % pk:
        raise NotADivisor(f"{pk} does not divide {n}")
    gen = _div_q_power_minus_one(q_power_minus_one(n), n // pk)
    m = n // pk
    via_phi = product(cyclotomic(d) for d in divisors(n) if m % d)
    if gen != via_phi:  # pragma: no cover
        raise AssertionError(f"quotient generator routes disagree for n={n}, p={pk}")
    return gen


def cyclotomic_product_check(n: int) -> bool:
    """prod_{d | n} Phi_d == q^n - 1."""
    return product(cyclotomic(d) for d in divisors(n)) == q_power_minus_one(n)


def mobius(n: int) -> int:
    f = factorize(n)
    if not f.is_squarefree():
        return 0
    return -1 if len(f.factors) % 2 else 1


def cyclotomic_mobius(n: int) -> IntPoly:
    """Phi_n = prod (q^d - 1)^mu(n/d), assembled independently of the memo."""
    num, den = [], []
    for d in divisors(n):
        mu = mobius(n // d)
        if mu == 1:
            num.append(q_power_minus_one(d))
        elif mu == -1:
            den.append(q_power_minus_one(d))
    result = product(num)
    for k in sorted(x.degree for x in den):
        result = _div_q_power_minus_one(result, k)
    return result

