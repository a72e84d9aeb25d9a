"""Polynomials over F_p for word-sized primes p.

Coefficient lists are ascending, fully reduced into [0, p), with the zero
polynomial as the empty tuple.  Every gcd is normalized to be monic.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import (
    AllZero,
    BothZero,
    DivisionByZeroPoly,
    InvalidDivisor,
    ModulusMismatch,
    ModulusTooLarge,
    NotAPrime,
)
from .numtheory import is_prime
from .polycore import IntPoly

MODULUS_CAP = 1 << 62
KRONECKER_THRESHOLD = 32


class Prime(int):
    """An int known to be prime and below 2**62."""

    def __new__(cls, p):
        if isinstance(p, Prime):
            return p
        value = int(p)
        if value >= MODULUS_CAP:
            raise ModulusTooLarge(f"modulus {value} exceeds the 2^62 cap")
        if not is_prime(value):
            raise NotAPrime(f"{value} is not prime")
        return super().__new__(cls, value)

    def __repr__(self) -> str:
        return f"Prime({int(self)})"


class ModPoly:
    """Immutable element of F_p[q]."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs: Iterable[int] = ()):
        p = Prime(p)
        c = [int(x) % p for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def _raw(cls, p: Prime, coeffs: tuple[int, ...]) -> ModPoly:
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("ModPoly is immutable")

    def __reduce__(self):
        return (ModPoly, (int(self.p), self.coeffs))

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("degree of the zero polynomial is undefined")
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModPoly):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((int(self.p), self.coeffs))

    def __repr__(self) -> str:
        return f"ModPoly(p={int(self.p)}, {list(self.coeffs)})"

    def __add__(self, other: ModPoly) -> ModPoly:
        return mod_add(self, other)

    def __sub__(self, other: ModPoly) -> ModPoly:
        return mod_sub(self, other)

    def __mul__(self, other: ModPoly) -> ModPoly:
        return mod_mul(self, other)

    def __pow__(self, e: int) -> ModPoly:
        return mod_pow(self, e)


def _trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _same_modulus(a: ModPoly, b: ModPoly) -> Prime:
    if a.p != b.p:
        raise ModulusMismatch(f"moduli {int(a.p)} and {int(b.p)} differ")
    return a.p


def zero(p) -> ModPoly:
    return ModPoly._raw(Prime(p), ())


def one(p) -> ModPoly:
    return ModPoly._raw(Prime(p), (1,))


def reduce_mod(a: IntPoly, p) -> ModPoly:
    p = Prime(p)
    return ModPoly._raw(p, _trim([c % p for c in a.coeffs]))


def lift_symmetric(a: ModPoly) -> IntPoly:
    """Representatives in (-p/2, p/2]."""
    p = a.p
    half = p // 2
    return IntPoly._raw(tuple(c - p if c > half else c for c in a.coeffs))


def mod_add(a: ModPoly, b: ModPoly) -> ModPoly:
    p = _same_modulus(a, b)
    x, y = a.coeffs, b.coeffs
    if len(x) < len(y):
        x, y = y, x
    res = list(x)
    for i, c in enumerate(y):
        res[i] = (res[i] + c) % p
    return ModPoly._raw(p, _trim(res))


def mod_sub(a: ModPoly, b: ModPoly) -> ModPoly:
    p = _same_modulus(a, b)
    res = list(a.coeffs) + [0] * (len(b.coeffs) - len(a.coeffs))
    for i, c in enumerate(b.coeffs):
        res[i] = (res[i] - c) % p
    return ModPoly._raw(p, _trim(res))


def mod_scale(a: ModPoly, c: int) -> ModPoly:
    p = a.p
    c %= p
    if c == 0:
        return ModPoly._raw(p, ())
    if c == 1:
        return a
    return ModPoly._raw(p, tuple(x * c % p for x in a.coeffs))


def _mul_lists(x: Sequence[int], y: Sequence[int], p: int) -> list[int]:
    if not x or not y:
        return []
    if len(x) < len(y):
        x, y = y, x
    if len(y) >= KRONECKER_THRESHOLD:
        return _mul_kronecker(x, y, p)
    res = [0] * (len(x) + len(y) - 1)
    for j, c in enumerate(y):
        if c:
            for i, d in enumerate(x):
                res[i + j] += c * d
    return [v % p for v in res]


def _mul_kronecker(x: Sequence[int], y: Sequence[int], p: int) -> list[int]:
    # Residues are nonnegative, so slots never borrow.
    nbytes = ((p - 1) ** 2 * len(y)).bit_length() // 8 + 1
    px = int.from_bytes(b"".join(c.to_bytes(nbytes, "little") for c in x), "little")
    py = int.from_bytes(b"".join(c.to_bytes(nbytes, "little") for c in y), "little")
    count = len(x) + len(y) - 1
    raw = (px * py).to_bytes(count * nbytes, "little")
    return [int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") % p for i in range(count)]


def mod_mul(a: ModPoly, b: ModPoly) -> ModPoly:
    p = _same_modulus(a, b)
    return ModPoly._raw(p, _trim(_mul_lists(a.coeffs, b.coeffs, p)))


def mod_pow(a: ModPoly, e: int) -> ModPoly:
    if e < 0:
        raise ValueError("negative power")
    result = one(a.p)
    base = a
    while e:
        if e & 1:
            result = mod_mul(result, base)
        e >>= 1
        if e:
            base = mod_mul(base, base)
    return result


def _divrem_lists(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    db = len(b) - 1
    rem = list(a)
    if len(rem) <= db:
        return [], rem
    inv = pow(b[-1], -1, p)
    terms = [(j, c) for j, c in enumerate(b[:-1]) if c]
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] % p
        if not c:
            continue
        qc = c * inv % p
        pos = k - db
        quot[pos] = qc
        for j, bc in terms:
            rem[pos + j] -= qc * bc
    # Entries below the divisor degree were never reduced inside the loop.
    return quot, [v % p for v in rem[:db]]


def mod_divrem(a: ModPoly, b: ModPoly) -> tuple[ModPoly, ModPoly]:
    p = _same_modulus(a, b)
    if not b.coeffs:
        raise DivisionByZeroPoly("division by the zero polynomial")
    quot, rem = _divrem_lists(a.coeffs, b.coeffs, p)
    return ModPoly._raw(p, _trim(quot)), ModPoly._raw(p, _trim(rem))


def mod_rem(a: ModPoly, b: ModPoly) -> ModPoly:
    return mod_divrem(a, b)[1]


def monic(a: ModPoly) -> ModPoly:
    if not a.coeffs:
        return a
    return mod_scale(a, pow(a.coeffs[-1], -1, a.p))


def ext_gcd(a: ModPoly, b: ModPoly) -> tuple[ModPoly, ModPoly, ModPoly]:
    """(g, s, t) with g monic and s*a + t*b == g."""
    p = _same_modulus(a, b)
    if not a.coeffs and not b.coeffs:
        raise BothZero("ext_gcd of two zero polynomials")
    r0, r1 = list(a.coeffs), list(b.coeffs)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        quot, rem = _divrem_lists(r0, r1, p)
        quot = list(_trim(quot))
        rem = list(_trim(rem))
        r0, r1 = r1, rem
        s0, s1 = s1, _sub_lists(s0, _mul_lists(quot, s1, p), p)
        t0, t1 = t1, _sub_lists(t0, _mul_lists(quot, t1, p), p)
    inv = pow(r0[-1], -1, p)
    g = ModPoly._raw(p, tuple(c * inv % p for c in r0))
    s = ModPoly._raw(p, _trim([c * inv % p for c in s0]))
    t = ModPoly._raw(p, _trim([c * inv % p for c in t0]))
    return g, s, t


def _sub_lists(x: Sequence[int], y: Sequence[int], p: int) -> list[int]:
    res = list(x) + [0] * (len(y) - len(x))
    for i, c in enumerate(y):
        res[i] = (res[i] - c) % p
    return list(_trim(res))


def mod_gcd(a: ModPoly, b: ModPoly) -> ModPoly:
    """Monic gcd without cofactors."""
    p = _same_modulus(a, b)
    if not a.coeffs and not b.coeffs:
        raise BothZero("gcd of two zero polynomials")
    r0, r1 = list(a.coeffs), list(b.coeffs)
    while r1:
        _, rem = _divrem_lists(r0, r1, p)
        r0, r1 = r1, list(_trim(rem))
    return monic(ModPoly._raw(p, tuple(r0)))


def multi_bezout(hs: Sequence[ModPoly]) -> tuple[ModPoly, list[ModPoly]]:
    """Monic gcd of all ``hs`` and cofactors c with sum(c[i]*hs[i]) == g.

    The fold starts from the lowest-degree nonzero input h_j; once the
    running gcd is 1 the remaining inputs get zero cofactors.  Afterwards
    every other cofactor is reduced below deg(h_j / g).
    """
    p, order = _fold_order(hs)
    first = order[0]
    inv = pow(hs[first].coeffs[-1], -1, p)
    g = monic(hs[first])
    cof: dict[int, ModPoly] = {first: ModPoly._raw(p, (inv,))}
    for i in order[1:]:
        if len(g.coeffs) == 1:
            break
        h = hs[i]
        # Reduce h against g first; the gcd sees only the remainder.
        quot, rem = mod_divrem(h, g)
        if not rem.coeffs:
            continue
        g2, s, t = ext_gcd(g, rem)
        # g2 = s*g + t*(h - quot*g) = (s - t*quot)*g + t*h
        s_eff = mod_sub(s, mod_mul(t, quot))
        cof = {j: mod_mul(s_eff, c) for j, c in cof.items()}
        cof[i] = t
        g = g2
    zero_poly = ModPoly._raw(p, ())
    cofactors = [cof.get(i, zero_poly) for i in range(len(hs))]
    return g, _reduce_cofactors(hs, cofactors, g, first)


def _reduce_cofactors(hs, cof: list[ModPoly], g: ModPoly, j: int) -> list[ModPoly]:
    # c_i = Q_i (h_j/g) + r_i  gives  c_i h_i = r_i h_i + Q_i (h_i/g) h_j.
    pivot, _ = mod_divrem(hs[j], g)
    if len(pivot.coeffs) <= 1:
        return cof
    out = list(cof)
    extra = ModPoly._raw(g.p, ())
    for i, c in enumerate(cof):
        if i == j or len(c.coeffs) < len(pivot.coeffs):
            continue
        quot, rem = mod_divrem(c, pivot)
        out[i] = rem
        h_over_g, _ = mod_divrem(hs[i], g)
        extra = mod_add(extra, mod_mul(quot, h_over_g))
    out[j] = mod_add(out[j], extra)
    return out


def _fold_order(hs: Sequence[ModPoly]) -> tuple[Prime, list[int]]:
    if not hs:
        raise AllZero("empty list of polynomials")
    for h in hs:
        _same_modulus(hs[0], h)
    nonzero = [i for i, h in enumerate(hs) if h.coeffs]
    if not nonzero:
        raise AllZero("all inputs are zero")
    return hs[0].p, sorted(nonzero, key=lambda i: len(hs[i].coeffs))


def gcd_many(hs: Sequence[ModPoly]) -> ModPoly:
    """Monic gcd of all ``hs`` (the multi_bezout gcd without cofactors)."""
    p, order = _fold_order(hs)
    g = hs[order[0]]
    for i in order[1:]:
        if len(g.coeffs) == 1:
            break
        g = mod_gcd(g, hs[i])
    return monic(g)


def multiplicity(f: ModPoly, g: ModPoly) -> int:
    """Largest k with g**k dividing f."""
    _same_modulus(f, g)
    if not f.coeffs:
        raise ValueError("multiplicity in the zero polynomial is unbounded")
    if len(g.coeffs) <= 1:
        raise InvalidDivisor("multiplicity needs a nonconstant divisor")
    k = 0
    cur = f
    while len(cur.coeffs) >= len(g.coeffs):
        quot, rem = mod_divrem(cur, g)
        if rem.coeffs:
            break
        cur = quot
        k += 1
    return k


def to_json(a: ModPoly) -> dict:
    return {"p": str(int(a.p)), "coeffs": [str(c) for c in a.coeffs]}


def from_json(obj) -> ModPoly:
    if not isinstance(obj, dict) or set(obj) != {"p", "coeffs"}:
        raise ValueError("ModPoly JSON needs exactly the keys p and coeffs")
    p = Prime(int(obj["p"]))
    coeffs = [int(c) for c in obj["coeffs"]]
    if any(not 0 <= c < p for c in coeffs) or (coeffs and coeffs[-1] == 0):
        raise ValueError("ModPoly coefficients must be reduced and trimmed")
    return ModPoly._raw(p, tuple(coeffs))
