from __future__ import annotations

from hypothesis import strategies as st

from cyclocert.polycore import IntPoly

small_ints = st.integers(min_value=-50, max_value=50)
big_ints = st.integers(min_value=-(10**30), max_value=10**30)


def polys(max_len: int = 12, ints=small_ints):
    return st.lists(ints, max_size=max_len).map(IntPoly)


def nonzero_polys(max_len: int = 8, ints=small_ints):
    return polys(max_len, ints).filter(bool)
