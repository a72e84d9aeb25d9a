"""Integer helpers: primality, factorization, totient, divisors.

Factoring is trial division followed by Brent's variant of Pollard rho.
Rho is driven by a ``random.Random`` seeded from the caller (or from
``CYCLOCERT_SEED``), so results and timings are reproducible.
"""

from __future__ import annotations

import math
import os
import random
import time
from dataclasses import dataclass

from .errors import CannotFactor

DEFAULT_SEED = 20101017
TRIAL_LIMIT = 10**6
RHO_BUDGET_SECONDS = 20.0

# Deterministic Miller-Rabin bases; exact for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981
# Fixed extra bases used above that bound (reproducible, not a proof).
_MR_EXTRA_BASES = (43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

_SMALL_PRIMES: list[int] = []


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, f in enumerate(flags) if f]


def small_primes() -> list[int]:
    """Primes below ``TRIAL_LIMIT``, computed once."""
    if not _SMALL_PRIMES:
        _SMALL_PRIMES.extend(_sieve(TRIAL_LIMIT))
    return _SMALL_PRIMES


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    return _sieve(limit)


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases.

    Deterministic below 3.3e24, which covers every modulus the polynomial
    layer accepts (p < 2**62). Above the bound extra fixed bases are used.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES if n < _MR_DETERMINISTIC_BOUND else _MR_BASES + _MR_EXTRA_BASES
    return all(_strong_probable_prime(n, a, d, s) for a in bases)


def resolve_seed(seed: int | None = None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("CYCLOCERT_SEED")
    if env:
        return int(env)
    return DEFAULT_SEED


def pollard_rho(n: int, rng: random.Random, deadline: float | None = None) -> int:
    """Return a nontrivial factor of the odd composite ``n`` (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    while True:
        if deadline is not None and time.monotonic() > deadline:
            raise CannotFactor(n)
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
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
            if deadline is not None and time.monotonic() > deadline:
                raise CannotFactor(n)
        if g == n:
            # Backtrack one step at a time.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@dataclass(frozen=True)
class FactoredInt:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        for p, e in self.factors:
            if e < 1 or not is_prime(p):
                raise ValueError(f"bad factor {p}^{e}")
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factors do not multiply to {self.n}")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)


def factorize(n: int, seed: int | None = None, budget: float = RHO_BUDGET_SECONDS) -> FactoredInt:
    """Complete prime factorization of ``n >= 1``.

    Raises CannotFactor if rho exceeds ``budget`` seconds on some composite
    cofactor.
    """
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    counts: dict[int, int] = {}
    m = n
    for p in small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            counts[p] = e
    if m > 1:
        rng = random.Random(resolve_seed(seed))
        deadline = time.monotonic() + budget
        stack = [m]
        while stack:
            x = stack.pop()
            if is_prime(x):
                counts[x] = counts.get(x, 0) + 1
                continue
            f = pollard_rho(x, rng, deadline)
            stack.extend((f, x // f))
    return FactoredInt(n, tuple(sorted(counts.items())))


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n).factors:
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list[int]:
    """Ascending list of positive divisors of ``n``."""
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def is_squarefree(n: int) -> bool:
    return n >= 1 and factorize(n).is_squarefree()


def p_valuation(m: int, p: int) -> int:
    """Exponent of ``p`` in ``m`` (m > 0)."""
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v
