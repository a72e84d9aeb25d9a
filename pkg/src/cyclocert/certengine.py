"""Bezout certificates for ideals of Z[q].

An ideal (h_1, ..., h_k) is the unit ideal exactly when 1 = sum c_i h_i for
some c_i in Z[q].  ``unit_certificate`` finds such c_i constructively:

1. Fold the fraction-free extended gcd over Q across the h_i to get a
   positive integer N and u_i with sum u_i h_i = N.  A nonconstant gcd over
   Q means the ideal is proper.
2. Peel the prime factors p of N, smallest first.  Modulo p the ring is a
   PID, so either the reductions have a nonconstant common divisor (the
   ideal is proper, and that divisor together with p is the witness) or
   they have Bezout cofactors v_i mod p.  Lifting those gives
   sum v_i h_i = 1 + p w, and u_i <- (N/p) v_i - w u_i turns the relation
   into sum u_i h_i = N/p.
3. At N = 1 the u_i are the certificate.

Principal certificates reduce to this: if every generator is a multiple of
the target t, then (g_1, ..., g_k) = (t) iff the quotients g_i / t generate
the unit ideal, and the same cofactors work.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

from .errors import EmptyInput, NotSquarefree, TheoremViolation, ZeroPolynomial
from .modpoly import ModPoly, Prime, lift_symmetric, mod_rem, multi_bezout, reduce_mod
from .numtheory import divisors, factorize
from .polycore import (
    ONE,
    ZERO,
    IntPoly,
    add,
    content,
    content_primitive,
    divmod_by_unit_lc,
    exact_div,
    ext_bezout_over_Q,
    mul,
    scale,
    sub,
)
from .qobjects import cyclotomic, q_binomial, quotient_generator

log = logging.getLogger(__name__)

QBINOMIAL = "qbinomial"
SQUAREFREE = "squarefree"
STRATEGIES = ("subset", "full")


def _linear_combination(cofactors: Sequence[IntPoly], generators: Sequence[IntPoly]) -> IntPoly:
    total = ZERO
    for c, g in zip(cofactors, generators):
        if c and g:
            total = add(total, mul(c, g))
    return total


def _div_exact_int(a: IntPoly, d: int) -> IntPoly:
    out = []
    for c in a.coeffs:
        qc, r = divmod(c, d)
        if r:
            raise ArithmeticError(f"internal: {d} does not divide {c}")
        out.append(qc)
    return IntPoly(out)


# -- result types ------------------------------------------------------------


@dataclass(frozen=True)
class IntegerRelation:
    """sum(cofactors[i] * generators[i]) == N with N > 0."""

    N: int
    cofactors: tuple[IntPoly, ...]


@dataclass(frozen=True)
class RationalObstruction:
    common_factor: IntPoly


@dataclass(frozen=True)
class UnitCertificate:
    generators: tuple[IntPoly, ...]
    cofactors: tuple[IntPoly, ...]

    def __post_init__(self):
        if len(self.generators) != len(self.cofactors):
            raise ValueError("generator and cofactor counts differ")
        if _linear_combination(self.cofactors, self.generators) != ONE:
            raise ValueError("cofactors do not combine to 1")


@dataclass(frozen=True)
class PrincipalCertificate:
    n: int
    mode: str
    target: IntPoly
    generators: tuple[IntPoly, ...]
    quotients: tuple[IntPoly, ...]
    cofactors: tuple[IntPoly, ...]
    generator_indices: tuple[int, ...]

    def __post_init__(self):
        k = len(self.generators)
        if not (len(self.quotients) == len(self.cofactors) == len(self.generator_indices) == k):
            raise ValueError("certificate field lengths differ")
        for i, (g, qt) in enumerate(zip(self.generators, self.quotients)):
            if mul(qt, self.target) != g:
                raise ValueError(f"generator {i} is not quotient times target")
        if _linear_combination(self.cofactors, self.generators) != self.target:
            raise ValueError("cofactors do not combine to the target")

    @property
    def max_cofactor_degree(self) -> int:
        return max((c.degree for c in self.cofactors if c), default=-1)

    @property
    def max_cofactor_bits(self) -> int:
        return max((abs(x).bit_length() for c in self.cofactors for x in c.coeffs), default=0)


@dataclass(frozen=True)
class NonUnitWitness:
    """Evidence that an ideal is proper.

    ``over == "Q"``: ``common_factor`` is a nonconstant IntPoly dividing every
    generator over Q.  ``over == "Fp"``: it is a nonconstant ModPoly dividing
    every generator modulo ``p``; then (p, common_factor) lies in a maximal
    ideal containing all generators.
    """

    over: str
    common_factor: Union[IntPoly, ModPoly]
    generators: tuple[IntPoly, ...] = field(default=())
    p: int | None = None

    def __post_init__(self):
        if not check_witness(self):
            raise ValueError("witness common factor does not divide every generator")


def check_witness(w: NonUnitWitness) -> bool:
    f = w.common_factor
    if w.over == "Q":
        if not isinstance(f, IntPoly) or f.is_constant():
            return False
        _, prim = content_primitive(f)
        for h in w.generators:
            if h and not _divides_over_Q(prim, h):
                return False
        return True
    if w.over == "Fp":
        if not isinstance(f, ModPoly) or f.is_constant() or w.p is None or f.p != w.p:
            return False
        return all(not mod_rem(reduce_mod(h, f.p), f) for h in w.generators)
    return False


def _divides_over_Q(prim: IntPoly, h: IntPoly) -> bool:
    # Gauss: a primitive polynomial divides h over Q iff it divides pp(h) over Z.
    _, hp = content_primitive(h)
    try:
        exact_div(hp, prim)
    except ArithmeticError:
        return False
    return True


# -- the algorithm -----------------------------------------------------------


def _check_inputs(hs: Sequence[IntPoly]) -> tuple[IntPoly, ...]:
    hs = tuple(hs)
    if not hs:
        raise EmptyInput("need at least one generator")
    if any(not h for h in hs):
        raise ZeroPolynomial("generators must be nonzero")
    return hs


def integer_in_ideal(hs: Sequence[IntPoly]) -> IntegerRelation | RationalObstruction:
    """Positive integer N and u with sum u_i h_i == N, or the gcd over Q if nonconstant."""
    hs = _check_inputs(hs)
    order = sorted(range(len(hs)), key=lambda i: hs[i].degree)
    first = order[0]
    c, g = content_primitive(hs[first])
    sign = 1 if hs[first].lc > 0 else -1
    if sign < 0:
        g = -g
    # Invariant: sum u[i] * hs[i] == delta * g, g primitive.
    u: dict[int, IntPoly] = {first: IntPoly.constant(sign)}
    delta = c
    for i in order[1:]:
        if g.is_constant():
            break
        g2, s, t, d2 = ext_bezout_over_Q(g, hs[i])
        if g2 == g and not t:
            continue
        u = {j: mul(s, uj) for j, uj in u.items()}
        u[i] = scale(t, delta)
        delta *= d2
        g = g2
        k = math.gcd(delta, *(content(x) for x in u.values()))
        if k > 1:
            u = {j: _div_exact_int(x, k) for j, x in u.items()}
            delta //= k
    if not g.is_constant():
        return RationalObstruction(g)
    return IntegerRelation(delta, tuple(u.get(i, ZERO) for i in range(len(hs))))


def reduce_cofactor_degrees(hs: Sequence[IntPoly], u: Sequence[IntPoly]) -> list[IntPoly]:
    """Shrink cofactor degrees without changing sum u_i h_i.

    With a pivot generator h_j of unit leading coefficient, write
    u_i = Q_i h_j + r_i for i != j, keep r_i and move Q_i h_i onto u_j.
    A no-op when no generator has leading coefficient +1 or -1.
    """
    pivots = [j for j, h in enumerate(hs) if h.lc in (1, -1) and h.degree > 0]
    if not pivots:
        return list(u)
    j = min(pivots, key=lambda i: hs[i].degree)
    out = list(u)
    extra = ZERO
    for i, ui in enumerate(u):
        if i == j or not ui or ui.degree < hs[j].degree:
            continue
        quot, rem = divmod_by_unit_lc(ui, hs[j])
        out[i] = rem
        extra = add(extra, mul(quot, hs[i]))
    out[j] = add(out[j], extra)
    return out


def unit_certificate(hs: Sequence[IntPoly], seed: int | None = None) -> UnitCertificate | NonUnitWitness:
    """Certificate that (hs) is the unit ideal of Z[q], or a witness that it is proper."""
    hs = _check_inputs(hs)
    rel = integer_in_ideal(hs)
    if isinstance(rel, RationalObstruction):
        return NonUnitWitness("Q", rel.common_factor, hs)
    N = rel.N
    u = reduce_cofactor_degrees(hs, rel.cofactors)
    if N > 1:
        peel = [p for p, e in factorize(N, seed=seed).factors for _ in range(e)]
        log.debug("peeling N=%d over primes %s", N, peel)
        for p in peel:
            prime = Prime(p)
            reduced = [reduce_mod(h, prime) for h in hs]
            if all(not r for r in reduced):
                # Every generator vanishes mod p; q divides them all there.
                return NonUnitWitness("Fp", ModPoly(prime, (0, 1)), hs, p)
            g, cof = multi_bezout(reduced)
            if not g.is_constant():
                return NonUnitWitness("Fp", g, hs, p)
            v = [lift_symmetric(c) for c in cof]
            w = _div_exact_int(sub(_linear_combination(v, hs), ONE), p)
            rest = N // p
            u = [sub(scale(vi, rest), mul(w, ui)) for vi, ui in zip(v, u)]
            u = reduce_cofactor_degrees(hs, u)
            N = rest
            if __debug__:
                assert _linear_combination(u, hs) == IntPoly.constant(N), "peeling invariant broken"
    return UnitCertificate(hs, tuple(u))


def principal_certificate(
    target: IntPoly,
    gens: Sequence[IntPoly],
    n: int,
    mode: str,
    indices: Sequence[int],
    seed: int | None = None,
) -> PrincipalCertificate | NonUnitWitness:
    """Certificate that (gens) == (target); raises NotDivisible if some generator is not a multiple."""
    gens = tuple(gens)
    if not gens:
        raise EmptyInput("need at least one generator")
    if target.is_constant():
        raise ValueError("target must be nonconstant")
    quotients = tuple(exact_div(g, target) for g in gens)
    result = unit_certificate(quotients, seed=seed)
    if isinstance(result, NonUnitWitness):
        return result
    return PrincipalCertificate(
        n=n,
        mode=mode,
        target=target,
        generators=gens,
        quotients=quotients,
        cofactors=result.cofactors,
        generator_indices=tuple(indices),
    )


# -- the two theorem families -----------------------------------------------


def qbinomial_subset_indices(n: int) -> list[int]:
    """{1} together with n/p for each prime p | n (the index p^(k-1) d for n = p^k d)."""
    return sorted({1} | {n // p for p in factorize(n).primes})


def qbinomial_divisor_indices(n: int) -> list[int]:
    """Proper divisors d of n.

    For a prime p not dividing n, the multiplicity argument needs (n, d)_q
    for every proper divisor d, so this is the index set the argument uses
    across all primes at once.
    """
    return divisors(n)[:-1]


def qbinomial_index_tiers(n: int, strategy: str) -> list[list[int]]:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    full = list(range(1, n))
    if strategy == "full":
        return [full]
    tiers: list[list[int]] = []
    for idx in (qbinomial_subset_indices(n), qbinomial_divisor_indices(n), full):
        if idx not in tiers:
            tiers.append(idx)
    return tiers


def theorem_qbinomial(n: int, strategy: str = "subset", seed: int | None = None) -> PrincipalCertificate:
    """Certificate that the (n, i)_q, 0 < i < n, generate (Phi_n) in Z[q].

    The "subset" strategy tries small index sets first and widens on a
    witness; any subset certificate proves the full statement because the
    subset ideal sits inside the full one.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    target = cyclotomic(n)
    result = None
    for indices in qbinomial_index_tiers(n, strategy):
        gens = [q_binomial(n, i) for i in indices]
        result = principal_certificate(target, gens, n, QBINOMIAL, indices, seed=seed)
        if isinstance(result, PrincipalCertificate):
            return result
        log.info("n=%d: generator indices %s are not enough, widening", n, indices)
    raise TheoremViolation(f"q-binomial ideal for n={n} is not (Phi_{n})", result)


def theorem_squarefree(n: int, seed: int | None = None) -> PrincipalCertificate:
    """Certificate that the [n]_q/[n/p]_q, p | n, generate (Phi_n) in Z[q]."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    f = factorize(n)
    if not f.is_squarefree():
        raise NotSquarefree(n)
    primes = f.primes
    gens = [quotient_generator(n, p) for p in primes]
    result = principal_certificate(cyclotomic(n), gens, n, SQUAREFREE, primes, seed=seed)
    if isinstance(result, NonUnitWitness):
        raise TheoremViolation(f"quotient-generator ideal for n={n} is not (Phi_{n})", result)
    return result


def theorem_certificate(mode: str, n: int, strategy: str = "subset", seed: int | None = None) -> PrincipalCertificate:
    if mode == QBINOMIAL:
        return theorem_qbinomial(n, strategy=strategy, seed=seed)
    if mode == SQUAREFREE:
        return theorem_squarefree(n, seed=seed)
    raise ValueError(f"unknown mode {mode!r}")


from .verify import Verdict, verify_certificate  # noqa: E402, F401  (re-exported checker)
