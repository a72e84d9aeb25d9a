from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclocert.errors import NotSquarefree, PreconditionViolated
from cyclocert.modpoly import ModPoly, multiplicity, reduce_mod
from cyclocert.prooftrace import (
    charp_power_check,
    coprime_cyclotomics_check,
    expected_min_multiplicity,
    gcd_from_profile,
    gcd_modp,
    gcd_modp_check,
    multiplicity_profile,
    nagell_identity_check,
    profile_explains_gcd,
    qm_minus1_multiplicity,
    theorem_generators,
)
from cyclocert.qobjects import cyclotomic

small_primes = st.sampled_from([2, 3, 5, 7, 11, 13])


def test_gcd_examples():
    assert gcd_modp_check(6, 2, "squarefree")
    assert gcd_modp_check(4, 2, "qbinomial")
    assert gcd_modp(4, 2, "qbinom") == ModPoly(2, [1, 0, 1])


@given(st.integers(2, 30), small_primes)
def test_gcd_modp_qbinomial(n, p):
    assert gcd_modp_check(n, p, "qbinomial")
    assert gcd_modp(n, p, "qbinomial") == gcd_modp(n, p, "qbinomial", cofactors=False)


def test_gcd_modp_preconditions():
    with pytest.raises(NotSquarefree):
        gcd_modp_check(12, 5, "squarefree")
    with pytest.raises(PreconditionViolated):
        theorem_generators(1, "qbinomial")


def test_lemma_examples():
    assert coprime_cyclotomics_check(3, 5, 2)
    assert nagell_identity_check(6, 3)
    assert nagell_identity_check(5, 3)
    assert charp_power_check(3, 2, 2).details["exponent"] == 2
    with pytest.raises(PreconditionViolated):
        coprime_cyclotomics_check(2, 3, 2)
    with pytest.raises(PreconditionViolated):
        charp_power_check(6, 2, 1)


@given(st.integers(1, 40), st.integers(1, 40), small_primes)
def test_coprime(n, m, p):
    if n == m or n % p == 0 or m % p == 0:
        return
    assert coprime_cyclotomics_check(n, m, p)


@given(st.integers(1, 60), small_primes, st.integers(1, 2))
def test_nagell_and_charp(n, p, k):
    assert nagell_identity_check(n, p)
    if n % p:
        assert charp_power_check(n, p, k)


def test_qm1_formula_and_psi_reading():
    r = qm_minus1_multiplicity(3, 6, 2)
    assert r.computed == 2 and r.matches_expected
    assert r.psi_reading == 3 and not r.matches_psi_reading
    r = qm_minus1_multiplicity(5, 6, 2)
    assert r.computed == 0 and r.expected == 0 and r.psi_reading == 1


@given(st.integers(1, 20), st.integers(1, 40), small_primes)
def test_qm1_matches_formula(d, m, p):
    if d % p:
        assert qm_minus1_multiplicity(d, m, p).matches_expected


def test_profile_examples():
    prof = multiplicity_profile(6, 2, "squarefree")
    assert prof.rows[3] == [1, 2]
    assert prof.min_row[3] == 1 and prof.min_row[1] == 0
    prof = multiplicity_profile(6, 5, "squarefree")
    assert prof.min_row == {1: 0, 2: 0, 3: 0, 6: 1}
    # n=4, p=2: the only row is d=1, and its minimum is (p-1) p^(k-1) = 2
    prof = multiplicity_profile(4, 2, "qbinomial")
    assert prof.rows == {1: [3, 2, 3]} and prof.min_row == {1: 2}
    assert prof.claims_hold


@pytest.mark.parametrize("mode,ns", [("qbinomial", range(2, 19)), ("squarefree", [6, 10, 15, 30, 42])])
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_direct_and_additive_profiles_agree(mode, ns, p):
    for n in ns:
        fast = multiplicity_profile(n, p, mode)
        slow = multiplicity_profile(n, p, mode, direct=True)
        assert fast.rows == slow.rows
        assert gcd_from_profile(fast) == gcd_modp(n, p, mode)
        assert profile_explains_gcd(n, p, mode)


def test_expected_min_multiplicity():
    assert expected_min_multiplicity(12, 2, 3) == 2
    assert expected_min_multiplicity(12, 5, 12) == 1
    assert expected_min_multiplicity(12, 5, 6) == 0
    assert expected_min_multiplicity(9, 3, 1) == 6


def test_profile_rows_are_multiplicities():
    for h in theorem_generators(10, "squarefree"):
        assert multiplicity(reduce_mod(h, 3), reduce_mod(cyclotomic(10), 3)) == 1
