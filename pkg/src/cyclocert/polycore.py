"""Dense univariate polynomials over the integers.

Coefficients are Python ints stored in ascending order of degree, so
``IntPoly([-1, 0, 1])`` is q^2 - 1.  The zero polynomial is the empty
tuple; asking for its degree is an error.

Large products go through Kronecker substitution: both operands are packed
into one big integer each, multiplied with CPython's Karatsuba, and
unpacked.  That is markedly faster than the schoolbook loop once degrees
reach the few hundreds that q-binomials of moderate n have.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .errors import DivisionByZeroPoly, NotDivisible, ZeroPolynomial

VARIABLE = "q"

# Below this many coefficients (in the shorter operand) schoolbook wins.
KRONECKER_THRESHOLD = 24


class IntPoly:
    """Immutable element of Z[q]."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def _raw(cls, coeffs: tuple[int, ...]) -> IntPoly:
        # Caller guarantees canonical form.
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @classmethod
    def constant(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> IntPoly:
        return cls([0] * e + [c])

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    def __reduce__(self):
        return (IntPoly, (self.coeffs,))

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomial("degree of the zero polynomial is undefined")
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return to_human(self)

    def __neg__(self) -> IntPoly:
        return IntPoly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return sub(self, other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return sub(other, self)

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        if isinstance(other, IntPoly):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e: int) -> IntPoly:
        if e < 0:
            raise ValueError("negative power")
        result = ONE
        base = self
        while e:
            if e & 1:
                result = mul(result, base)
            e >>= 1
            if e:
                base = mul(base, base)
        return result

    def __call__(self, m: int) -> int:
        return eval_at_int(self, m)


def _coerce(x):
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly((x,))
    return NotImplemented


ZERO = IntPoly()
ONE = IntPoly((1,))
Q = IntPoly((0, 1))


def q_power_minus_one(m: int) -> IntPoly:
    """q^m - 1."""
    return IntPoly._raw((-1,) + (0,) * (m - 1) + (1,)) if m > 0 else ZERO


# -- ring operations ---------------------------------------------------------


def _trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def add(a: IntPoly, b: IntPoly) -> IntPoly:
    x, y = a.coeffs, b.coeffs
    if len(x) < len(y):
        x, y = y, x
    res = list(x)
    for i, c in enumerate(y):
        res[i] += c
    return IntPoly._raw(_trim(res))


def sub(a: IntPoly, b: IntPoly) -> IntPoly:
    x, y = a.coeffs, b.coeffs
    res = list(x) + [0] * (len(y) - len(x))
    for i, c in enumerate(y):
        res[i] -= c
    return IntPoly._raw(_trim(res))


def scale(a: IntPoly, c: int) -> IntPoly:
    if c == 0:
        return ZERO
    if c == 1:
        return a
    return IntPoly._raw(tuple(c * x for x in a.coeffs))


def shift(a: IntPoly, k: int) -> IntPoly:
    """Multiply by q^k."""
    if not a.coeffs or k == 0:
        return a
    return IntPoly._raw((0,) * k + a.coeffs)


def _mul_schoolbook(x: Sequence[int], y: Sequence[int]) -> list[int]:
    if len(x) < len(y):
        x, y = y, x
    res = [0] * (len(x) + len(y) - 1)
    for j, c in enumerate(y):
        if c:
            for i, d in enumerate(x):
                res[i + j] += c * d
    return res


def _pack(coeffs: Sequence[int], nbytes: int) -> int:
    """Evaluate at 2**(8*nbytes); coefficients must fit in nbytes*8 - 1 bits."""
    pos = bytearray(len(coeffs) * nbytes)
    neg = bytearray(len(coeffs) * nbytes)
    for i, c in enumerate(coeffs):
        if c > 0:
            pos[i * nbytes : (i + 1) * nbytes] = c.to_bytes(nbytes, "little")
        elif c < 0:
            neg[i * nbytes : (i + 1) * nbytes] = (-c).to_bytes(nbytes, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(value: int, count: int, nbytes: int) -> list[int]:
    # Adding half-range to every slot makes all slots nonnegative without borrows.
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * count, "little")
    raw = (value + offset).to_bytes(count * nbytes, "little")
    return [int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") - half for i in range(count)]


def _mul_kronecker(x: Sequence[int], y: Sequence[int]) -> list[int]:
    bx = max(abs(c) for c in x).bit_length()
    by = max(abs(c) for c in y).bit_length()
    bound_bits = bx + by + min(len(x), len(y)).bit_length() + 1
    nbytes = bound_bits // 8 + 1
    prod = _pack(x, nbytes) * _pack(y, nbytes)
    return _unpack(prod, len(x) + len(y) - 1, nbytes)


def mul(a: IntPoly, b: IntPoly) -> IntPoly:
    x, y = a.coeffs, b.coeffs
    if not x or not y:
        return ZERO
    if len(y) == 1:
        return scale(a, y[0])
    if len(x) == 1:
        return scale(b, x[0])
    if min(len(x), len(y)) < KRONECKER_THRESHOLD:
        res = _mul_schoolbook(x, y)
    else:
        res = _mul_kronecker(x, y)
    return IntPoly._raw(_trim(res))


def arith(a: IntPoly, b: IntPoly, kind: str) -> IntPoly:
    ops = {"add": add, "sub": sub, "mul": mul}
    try:
        return ops[kind](a, b)
    except KeyError:
        raise ValueError(f"unknown operation {kind!r}") from None


def product(polys: Iterable[IntPoly]) -> IntPoly:
    """Balanced product tree (keeps Kronecker operands of similar size)."""
    items = list(polys)
    if not items:
        return ONE
    while len(items) > 1:
        nxt = [mul(items[i], items[i + 1]) for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


# -- division ----------------------------------------------------------------


def divmod_by_unit_lc(a: IntPoly, b: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Euclidean division by ``b`` whose leading coefficient is +1 or -1."""
    if not b.coeffs:
        raise DivisionByZeroPoly("division by the zero polynomial")
    lc = b.coeffs[-1]
    if lc not in (1, -1):
        raise ValueError("divisor leading coefficient must be a unit")
    quot, rem = _long_division(a.coeffs, b.coeffs)
    return IntPoly._raw(_trim(quot)), IntPoly._raw(_trim(rem))


def _long_division(a: Sequence[int], b: Sequence[int]):
    """Schoolbook division walking only the nonzero terms of ``b``.

    Returns (quot, rem) lists.  If a leading coefficient does not divide,
    raises NotDivisible.
    """
    db = len(b) - 1
    lc = b[-1]
    rem = list(a)
    if len(rem) <= db:
        return [], rem
    terms = [(j, c) for j, c in enumerate(b[:-1]) if c]
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if not c:
            continue
        if lc == 1:
            qc = c
        elif lc == -1:
            qc = -c
        else:
            qc, r = divmod(c, lc)
            if r:
                raise NotDivisible(f"leading coefficient {lc} does not divide {c}")
        pos = k - db
        quot[pos] = qc
        rem[k] = 0
        for j, bc in terms:
            rem[pos + j] -= qc * bc
    return quot, rem[:db]


def exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    """Return c with b*c == a, or raise NotDivisible."""
    if not b.coeffs:
        raise DivisionByZeroPoly("division by the zero polynomial")
    if not a.coeffs:
        return ZERO
    if len(b.coeffs) == 1:
        d = b.coeffs[0]
        out = []
        for c in a.coeffs:
            qc, r = divmod(c, d)
            if r:
                raise NotDivisible(f"{a!r} is not divisible by {d}")
            out.append(qc)
        return IntPoly._raw(tuple(out))
    if len(a.coeffs) < len(b.coeffs):
        raise NotDivisible(f"degree {a.degree} < degree {b.degree}")
    quot, rem = _long_division(a.coeffs, b.coeffs)
    if any(rem):
        raise NotDivisible(f"nonzero remainder dividing by {b!r}")
    return IntPoly._raw(_trim(quot))


def divides(b: IntPoly, a: IntPoly) -> bool:
    try:
        exact_div(a, b)
    except NotDivisible:
        return False
    return True


def pseudo_divmod(a: IntPoly, b: IntPoly) -> tuple[int, IntPoly, IntPoly]:
    """Return (m, Q, R) with m*a == Q*b + R, deg R < deg b, m = lc(b)**(deg a - deg b + 1)."""
    x, y = a.coeffs, b.coeffs
    db = len(y) - 1
    if len(x) <= db:
        return 1, ZERO, a
    e = len(x) - db
    lc = y[-1]
    if lc in (1, -1):
        quot, rem = _long_division(x, y)
        m = lc**e
        if m == -1:
            quot = [-c for c in quot]
            rem = [-c for c in rem]
        return m, IntPoly._raw(_trim(quot)), IntPoly._raw(_trim(rem))
    rem = list(x)
    quot = [0] * e
    terms = [(j, c) for j, c in enumerate(y[:-1]) if c]
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        # Scale everything accumulated so far by lc, then cancel the top term.
        for i in range(k):
            rem[i] *= lc
        for i in range(len(quot)):
            quot[i] *= lc
        pos = k - db
        quot[pos] = c
        rem[k] = 0
        if c:
            for j, bc in terms:
                rem[pos + j] -= c * bc
    return lc**e, IntPoly._raw(_trim(quot)), IntPoly._raw(_trim(rem[:db]))


# -- content and primitive part ---------------------------------------------


def content(a: IntPoly) -> int:
    """Nonnegative gcd of the coefficients (0 for the zero polynomial)."""
    return math.gcd(*a.coeffs) if a.coeffs else 0


def content_primitive(a: IntPoly) -> tuple[int, IntPoly]:
    if not a.coeffs:
        raise ZeroPolynomial("content of the zero polynomial")
    c = math.gcd(*a.coeffs)
    if c == 1:
        return 1, a
    return c, IntPoly._raw(tuple(x // c for x in a.coeffs))


def _positive_primitive(a: IntPoly) -> tuple[int, IntPoly]:
    """Signed c and primitive g with positive leading coefficient, a == c*g."""
    c, g = content_primitive(a)
    if g.coeffs[-1] < 0:
        return -c, -g
    return c, g


def _div_int(a: IntPoly, d: int) -> IntPoly:
    if d == 1:
        return a
    out = []
    for c in a.coeffs:
        qc, r = divmod(c, d)
        if r:
            raise ArithmeticError(f"internal: {d} does not divide {c}")
        out.append(qc)
    return IntPoly._raw(tuple(out))


# -- fraction-free extended gcd ---------------------------------------------


def ext_bezout_over_Q(a: IntPoly, b: IntPoly) -> tuple[IntPoly, IntPoly, IntPoly, int]:
    """Fraction-free Bezout relation.

    Returns (g, s, t, delta) with g the primitive gcd of ``a`` and ``b`` over
    Q (positive leading coefficient), delta > 0 and s*a + t*b == delta*g.
    The remainder sequence is the subresultant one, with the cofactors
    carried through the same exact divisions, so coefficient growth stays
    polynomial.  delta is reduced against the contents of s and t, so for
    coprime inputs it is the least positive integer in (a, b) reachable
    with these cofactor degrees.
    """
    if not a.coeffs and not b.coeffs:
        raise ZeroPolynomial("ext_bezout_over_Q of two zero polynomials")
    if not b.coeffs:
        c, g = _positive_primitive(a)
        return g, IntPoly.constant(1 if c > 0 else -1), ZERO, abs(c)
    if not a.coeffs:
        c, g = _positive_primitive(b)
        return g, ZERO, IntPoly.constant(1 if c > 0 else -1), abs(c)

    swapped = len(a.coeffs) < len(b.coeffs)
    if swapped:
        a, b = b, a
    ca, A = content_primitive(a)
    cb, B = content_primitive(b)

    s_a, t_a = ONE, ZERO
    s_b, t_b = ZERO, ONE
    g_sr, h_sr = 1, 1
    while B.degree > 0:
        delta = A.degree - B.degree
        m, quot, rem = pseudo_divmod(A, B)
        if not rem.coeffs:
            break
        s_r = sub(scale(s_a, m), mul(quot, s_b))
        t_r = sub(scale(t_a, m), mul(quot, t_b))
        A, s_a, t_a = B, s_b, t_b
        divisor = g_sr * h_sr**delta
        B = _div_int(rem, divisor)
        s_b = _div_int(s_r, divisor)
        t_b = _div_int(t_r, divisor)
        g_sr = A.coeffs[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h_sr = g_sr
        else:
            num, den = g_sr**delta, h_sr ** (delta - 1)
            h_sr, r = divmod(num, den)
            if r:
                raise ArithmeticError("internal: subresultant h not exact")

    # s_b*A0 + t_b*B0 == B with A0, B0 the primitive inputs.
    c, g = _positive_primitive(B)
    s = scale(s_b, cb)
    t = scale(t_b, ca)
    delta_out = ca * cb * c
    if delta_out < 0:
        s, t, delta_out = -s, -t, -delta_out
    k = math.gcd(delta_out, content(s), content(t))
    if k > 1:
        s, t, delta_out = _div_int(s, k), _div_int(t, k), delta_out // k
    if swapped:
        s, t = t, s
    return g, s, t, delta_out


# -- evaluation and substitution --------------------------------------------


def eval_at_int(a: IntPoly, m: int) -> int:
    acc = 0
    for c in reversed(a.coeffs):
        acc = acc * m + c
    return acc


def substitute_power(a: IntPoly, e: int) -> IntPoly:
    """a(q**e)."""
    if e < 1:
        raise ValueError("exponent must be >= 1")
    if e == 1 or not a.coeffs:
        return a
    out = [0] * ((len(a.coeffs) - 1) * e + 1)
    for i, c in enumerate(a.coeffs):
        out[i * e] = c
    return IntPoly._raw(tuple(out))


# -- text forms --------------------------------------------------------------


def to_json(a: IntPoly) -> list[str]:
    return [str(c) for c in a.coeffs]


def from_json(items) -> IntPoly:
    """Parse the decimal-string array form.  Raises ValueError on malformed input."""
    if not isinstance(items, list):
        raise ValueError("polynomial must be a JSON array")
    coeffs = []
    for x in items:
        if not isinstance(x, str):
            raise ValueError(f"coefficient {x!r} is not a decimal string")
        s = x[1:] if x.startswith("-") else x
        if not s.isdigit() or not s.isascii():
            raise ValueError(f"coefficient {x!r} is not a decimal string")
        coeffs.append(int(x))
    if coeffs and coeffs[-1] == 0:
        raise ValueError("polynomial has a trailing zero coefficient")
    return IntPoly._raw(tuple(coeffs))


def to_human(a: IntPoly, var: str = VARIABLE) -> str:
    """Descending powers with explicit signs, e.g. ``q^2 - q + 1``."""
    if not a.coeffs:
        return "0"
    parts = []
    for e in range(len(a.coeffs) - 1, -1, -1):
        c = a.coeffs[e]
        if not c:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{mag}{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)
