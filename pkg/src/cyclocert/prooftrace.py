"""Executable checks of the identities and counting arguments behind the theorems.

Everything here is computed, never assumed: gcds come from ``multi_bezout``,
multiplicities from repeated division.

Multiplicity profiles use additivity.  Each generator is a ratio of
products of factors q^j - 1.  Mod p (p not dividing d) every irreducible
factor of Phi_d has the same valuation in a given q^j - 1, since
q^j - 1 = (q^j' - 1)^(p^v) and the Phi_e dividing q^j' - 1 are squarefree and
pairwise coprime.  So the multiplicity of Phi_d in a generator is the
signed sum of its measured multiplicities in those factors.
``multiplicity_profile(..., direct=True)`` divides the generators
themselves instead, and the two routes are compared in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import NotSquarefree, PreconditionViolated
from .modpoly import ModPoly, Prime, ext_gcd, gcd_many, mod_pow, multi_bezout, multiplicity, one, reduce_mod, zero
from .numtheory import divisors, factorize, p_valuation
from .polycore import IntPoly, mul, q_power_minus_one, substitute_power
from .qobjects import cyclotomic, q_binomial_row, quotient_generator

QBINOMIAL = "qbinomial"
SQUAREFREE = "squarefree"
MODES = (QBINOMIAL, SQUAREFREE)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    name: str
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def _mode(mode: str) -> str:
    if mode == "qbinom":
        return QBINOMIAL
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    return mode


def _check_n(n: int, mode: str) -> None:
    if n < 2:
        raise PreconditionViolated(f"n must be >= 2, got {n}")
    if mode == SQUAREFREE and not factorize(n).is_squarefree():
        raise NotSquarefree(n)


def theorem_generators(n: int, mode: str) -> list[IntPoly]:
    """Generators of the theorem ideal for ``n``: all (n, i)_q, or all [n]_q/[n/p]_q."""
    mode = _mode(mode)
    _check_n(n, mode)
    if mode == QBINOMIAL:
        return list(q_binomial_row(n)[1:n])
    return [quotient_generator(n, p) for p in factorize(n).primes]


def _signatures(n: int, mode: str) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Each generator as (numerator exponents j, denominator exponents j) of q^j - 1 factors."""
    if mode == QBINOMIAL:
        return [(tuple(range(n - i + 1, n + 1)), tuple(range(1, i + 1))) for i in range(1, n)]
    return [((n,), (n // p,)) for p in factorize(n).primes]


# -- gcd mod p ---------------------------------------------------------------


def gcd_modp(n: int, p: int, mode: str, cofactors: bool = True) -> ModPoly:
    """Monic gcd of the reduced theorem generators.

    By default this is the multi_bezout gcd, with its Bezout identity
    rechecked.  ``cofactors=False`` takes the cheaper gcd-only fold.
    """
    prime = Prime(p)
    reduced = [reduce_mod(h, prime) for h in theorem_generators(n, mode)]
    if not cofactors:
        return gcd_many(reduced)
    g, cof = multi_bezout(reduced)
    total = zero(prime)
    for c, h in zip(cof, reduced):
        total = total + c * h
    if total != g:  # pragma: no cover
        raise AssertionError("multi_bezout identity failed")
    return g


def gcd_modp_check(n: int, p: int, mode: str) -> CheckResult:
    """gcd of the generators mod p equals Phi_n mod p (made monic)."""
    mode = _mode(mode)
    prime = Prime(p)
    g = gcd_modp(n, prime, mode)
    expected = reduce_mod(cyclotomic(n), prime)
    return CheckResult(
        g == expected,
        "gcdmodp",
        {"n": n, "p": int(p), "mode": mode, "gcd": list(g.coeffs), "phi_n_mod_p": list(expected.coeffs)},
    )


# -- lemma-level identities --------------------------------------------------


def coprime_cyclotomics_check(n: int, m: int, p: int) -> CheckResult:
    """gcd(Phi_n, Phi_m) = 1 in F_p[q] for distinct n, m prime to p."""
    prime = Prime(p)
    if n == m:
        raise PreconditionViolated("n and m must be distinct")
    if n < 1 or m < 1:
        raise PreconditionViolated("n and m must be positive")
    if n % prime == 0 or m % prime == 0:
        raise PreconditionViolated(f"p={int(p)} divides n={n} or m={m}")
    g, _, _ = ext_gcd(reduce_mod(cyclotomic(n), prime), reduce_mod(cyclotomic(m), prime))
    return CheckResult(g == one(prime), "coprime", {"n": n, "m": m, "p": int(p), "gcd": list(g.coeffs)})


def nagell_identity_check(n: int, p: int) -> CheckResult:
    """Phi_np = Phi_n(q^p) if p | n, and Phi_np * Phi_n = Phi_n(q^p) otherwise, over Z."""
    prime = Prime(p)
    if n < 1:
        raise PreconditionViolated("n must be positive")
    lifted = substitute_power(cyclotomic(n), prime)
    if n % prime == 0:
        ok = cyclotomic(n * prime) == lifted
        form = "Phi_np = Phi_n(q^p)"
    else:
        ok = mul(cyclotomic(n * prime), cyclotomic(n)) == lifted
        form = "Phi_np * Phi_n = Phi_n(q^p)"
    return CheckResult(ok, "nagell", {"n": n, "p": int(p), "identity": form})


def charp_power_check(n: int, p: int, k: int) -> CheckResult:
    """Phi_{n p^k} = Phi_n^((p-1) p^(k-1)) in F_p[q] when p does not divide n."""
    prime = Prime(p)
    if n < 1 or k < 1:
        raise PreconditionViolated("need n >= 1 and k >= 1")
    if n % prime == 0:
        raise PreconditionViolated(f"p={int(p)} divides n={n}")
    e = (prime - 1) * prime ** (k - 1)
    lhs = reduce_mod(cyclotomic(n * prime**k), prime)
    rhs = mod_pow(reduce_mod(cyclotomic(n), prime), e)
    return CheckResult(lhs == rhs, "charp", {"n": n, "p": int(p), "k": k, "exponent": e})


@dataclass(frozen=True)
class QmMultiplicity:
    d: int
    m: int
    p: int
    computed: int
    expected: int
    psi_reading: int

    @property
    def matches_expected(self) -> bool:
        return self.computed == self.expected

    @property
    def matches_psi_reading(self) -> bool:
        return self.computed == self.psi_reading


@lru_cache(maxsize=None)
def _qm1_mult(d: int, j: int, p: int) -> int:
    return multiplicity(reduce_mod(q_power_minus_one(j), p), reduce_mod(cyclotomic(d), p))


def qm_minus1_multiplicity(d: int, m: int, p: int) -> QmMultiplicity:
    """Multiplicity of Phi_d in q^m - 1 over F_p, with two candidate closed forms.

    ``expected`` is p^v when d divides m / p^v (v = v_p(m)) and 0 otherwise,
    from q^m - 1 = (q^(m/p^v) - 1)^(p^v).  ``psi_reading`` is the other
    reading, 1 when d does not divide m and p^v + ... + p + 1 when it does.
    """
    prime = Prime(p)
    if d < 1 or m < 1:
        raise PreconditionViolated("need d, m >= 1")
    if d % prime == 0:
        raise PreconditionViolated(f"p={int(p)} divides d={d}")
    computed = _qm1_mult(d, m, int(prime))
    v = p_valuation(m, prime)
    expected = prime**v if (m // prime**v) % d == 0 else 0
    psi = sum(prime**j for j in range(v + 1)) if m % d == 0 else 1
    return QmMultiplicity(d, m, int(p), computed, expected, psi)


# -- multiplicity profiles ---------------------------------------------------


def expected_min_multiplicity(n: int, p: int, d: int) -> int:
    """Exponent of Phi_d in Phi_n mod p, for d | n with p not dividing d."""
    v = p_valuation(n, p)
    if d != n // p**v:
        return 0
    return 1 if v == 0 else (p - 1) * p ** (v - 1)


@dataclass(frozen=True)
class MultiplicityProfile:
    n: int
    p: int
    mode: str
    rows: dict[int, list[int]]
    min_row: dict[int, int]
    claims_hold: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "mode": self.mode,
            "rows": {str(d): list(r) for d, r in sorted(self.rows.items())},
            "min": {str(d): v for d, v in sorted(self.min_row.items())},
            "claims_hold": self.claims_hold,
        }


def multiplicity_profile(n: int, p: int, mode: str, direct: bool = False) -> MultiplicityProfile:
    """Multiplicity of each Phi_d (d | n, p not dividing d) mod p in every generator."""
    mode = _mode(mode)
    prime = Prime(p)
    _check_n(n, mode)
    ds = [d for d in divisors(n) if d % prime]
    rows: dict[int, list[int]] = {}
    if direct:
        reduced = [reduce_mod(h, prime) for h in theorem_generators(n, mode)]
        for d in ds:
            phi_d = reduce_mod(cyclotomic(d), prime)
            rows[d] = [multiplicity(h, phi_d) for h in reduced]
    else:
        sigs = _signatures(n, mode)
        for d in ds:
            rows[d] = [
                sum(_qm1_mult(d, j, int(prime)) for j in num) - sum(_qm1_mult(d, j, int(prime)) for j in den)
                for num, den in sigs
            ]
    min_row = {d: min(r) for d, r in rows.items()}
    claims = all(min_row[d] == expected_min_multiplicity(n, prime, d) for d in ds)
    return MultiplicityProfile(n, int(p), mode, rows, min_row, claims)


def gcd_from_profile(profile: MultiplicityProfile) -> ModPoly:
    """prod_d Phi_d^min_row[d] mod p."""
    prime = Prime(profile.p)
    acc = one(prime)
    for d, e in sorted(profile.min_row.items()):
        if e:
            acc = acc * mod_pow(reduce_mod(cyclotomic(d), prime), e)
    return acc


def profile_explains_gcd(n: int, p: int, mode: str) -> CheckResult:
    """The profile minima rebuild exactly the gcd that multi_bezout finds."""
    mode = _mode(mode)
    profile = multiplicity_profile(n, p, mode)
    rebuilt = gcd_from_profile(profile)
    g = gcd_modp(n, p, mode)
    return CheckResult(
        rebuilt == g and profile.claims_hold,
        "multprofile",
        {"profile": profile.to_json(), "gcd_matches": rebuilt == g},
    )
