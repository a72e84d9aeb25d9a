from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclocert.errors import DivisionByZeroPoly, NotDivisible, ZeroPolynomial
from cyclocert.polycore import (
    ONE,
    Q,
    ZERO,
    IntPoly,
    _mul_kronecker,
    _mul_schoolbook,
    add,
    arith,
    content,
    content_primitive,
    divides,
    eval_at_int,
    exact_div,
    ext_bezout_over_Q,
    from_json,
    mul,
    product,
    pseudo_divmod,
    q_power_minus_one,
    scale,
    sub,
    substitute_power,
    to_human,
    to_json,
)

from strategies import big_ints, nonzero_polys, polys


def test_normal_form_strips_trailing_zeros():
    assert IntPoly([1, 2, 0, 0]) == IntPoly([1, 2])
    assert IntPoly([0, 0]) == ZERO
    with pytest.raises(ZeroPolynomial):
        ZERO.degree
    assert IntPoly([3, 0, 5]).degree == 2


def test_worked_examples():
    assert mul(IntPoly([1, 1]), IntPoly([-1, 1])) == IntPoly([-1, 0, 1])
    assert exact_div(q_power_minus_one(6), q_power_minus_one(2)) == IntPoly([1, 0, 1, 0, 1])
    assert add(Q, scale(Q, -1)) == ZERO
    assert to_human(IntPoly([1, -1, 1])) == "q^2 - q + 1"
    assert to_human(IntPoly([0, 0, 0, 2])) == "2q^3"


def test_exact_div_rejects_non_multiple():
    with pytest.raises(NotDivisible):
        exact_div(IntPoly([1, 0, 1]), IntPoly([1, 1]))
    with pytest.raises(DivisionByZeroPoly):
        exact_div(ONE, ZERO)
    # q + 1 does not divide 2q + 1 over Z even though degrees allow it
    with pytest.raises(NotDivisible):
        exact_div(IntPoly([1, 2]), IntPoly([1, 1]))


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert add(a, b) == add(b, a)
    assert mul(a, b) == mul(b, a)
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert sub(a, a) == ZERO
    assert mul(a, ONE) == a


@given(polys(), nonzero_polys())
def test_exact_div_round_trip(a, b):
    assert exact_div(mul(a, b), b) == a
    assert divides(b, mul(a, b))


@given(st.lists(big_ints, min_size=1, max_size=60), st.lists(big_ints, min_size=1, max_size=60))
def test_kronecker_matches_schoolbook(x, y):
    assert _mul_kronecker(x, y) == _mul_schoolbook(x, y)


@given(polys(40), polys(40), st.integers(-7, 7))
def test_evaluation_is_a_homomorphism(a, b, m):
    assert eval_at_int(mul(a, b), m) == eval_at_int(a, m) * eval_at_int(b, m)
    assert eval_at_int(add(a, b), m) == eval_at_int(a, m) + eval_at_int(b, m)


@given(polys(), nonzero_polys())
def test_pseudo_division_identity(a, b):
    m, quo, rem = pseudo_divmod(a, b)
    assert mul(IntPoly.constant(m), a) == add(mul(quo, b), rem)
    assert not rem or rem.degree < b.degree


@given(nonzero_polys())
def test_content_primitive(a):
    c, prim = content_primitive(a)
    assert scale(prim, c) == a
    assert content(prim) == 1


@given(nonzero_polys(6), nonzero_polys(6))
def test_bezout_over_Q(a, b):
    g, s, t, delta = ext_bezout_over_Q(a, b)
    assert delta > 0
    assert add(mul(s, a), mul(t, b)) == scale(g, delta)
    # g is a common divisor over Q: its primitive part divides both
    _, prim = content_primitive(g)
    for h in (a, b):
        _, hp = content_primitive(h)
        if not prim.is_constant():
            assert divides(prim, hp)


def test_bezout_over_Q_shared_factor():
    f = IntPoly([1, 1, 1])
    a, b = mul(f, IntPoly([2, 3])), mul(f, IntPoly([-1, 0, 5]))
    g, s, t, delta = ext_bezout_over_Q(a, b)
    assert content_primitive(g)[1] == f
    assert add(mul(s, a), mul(t, b)) == scale(g, delta)


@given(polys(), st.integers(1, 5))
def test_substitute_power(a, e):
    assert eval_at_int(substitute_power(a, e), 2) == eval_at_int(a, 2**e)


@given(polys(ints=big_ints))
def test_json_round_trip(a):
    assert from_json(to_json(a)) == a
    assert all(isinstance(x, str) for x in to_json(a))


def test_json_rejects_non_normal():
    with pytest.raises(ValueError):
        from_json(["1", "0"])
    with pytest.raises(ValueError):
        from_json([1, 2])


def test_product_and_arith():
    assert product([]) == ONE
    assert product([IntPoly([1, 1])] * 3) == IntPoly([1, 3, 3, 1])
    assert arith(IntPoly([1, 1]), IntPoly([1, 1]), "mul") == IntPoly([1, 2, 1])


def test_operators_and_immutability():
    a = IntPoly([1, 1])
    assert a * a - 1 == IntPoly([0, 2, 1])
    assert a**3 == IntPoly([1, 3, 3, 1])
    assert a(2) == 3
    with pytest.raises(AttributeError):
        a.coeffs = (2,)
