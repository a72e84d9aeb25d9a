"""Independent certificate checker.

Works on the parsed JSON payload and nothing else: every identity is
recomputed with ``polycore`` arithmetic, and for principal certificates the
claimed statement is rebuilt from scratch as well (Phi_n via the Moebius
product of the q^d - 1, generators via their defining formulas).  Nothing
from ``qobjects`` or ``certengine`` is trusted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polycore import ONE, ZERO, IntPoly, add, exact_div, from_json, mul, product, q_power_minus_one

_PRINCIPAL_KEYS = ("kind", "mode", "n", "variable", "target", "generator_indices", "generators", "quotients", "cofactors")
_UNIT_KEYS = ("kind", "variable", "generators", "cofactors")


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = "verified"
    index: int | None = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "verified"
        return self.reason if self.index is None else f"{self.reason} (index {self.index})"


def _fail(reason: str, index: int | None = None) -> Verdict:
    return Verdict(False, reason, index)


def _factor_small(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _cyclotomic_by_mobius(n: int) -> IntPoly:
    primes = list(_factor_small(n))
    num, den = [], []
    # Squarefree divisors e of n carry mu(e) = (-1)^|e|; the factor is q^(n/e) - 1.
    for mask in range(1 << len(primes)):
        e, bits = 1, 0
        for j, p in enumerate(primes):
            if mask >> j & 1:
                e *= p
                bits += 1
        (den if bits % 2 else num).append(q_power_minus_one(n // e))
    return exact_div(product(num), product(den))


def _qbinomial_row(n: int) -> list[IntPoly]:
    row = [ONE]
    cur = ONE
    for j in range(n):
        cur = exact_div(mul(cur, q_power_minus_one(n - j)), q_power_minus_one(j + 1))
        row.append(cur)
    return row


def _combination(cofactors, generators) -> IntPoly:
    total = ZERO
    for c, g in zip(cofactors, generators):
        total = add(total, mul(c, g))
    return total


def _parse_list(items) -> list[IntPoly]:
    if not isinstance(items, list):
        raise ValueError("expected a list of polynomials")
    return [from_json(x) for x in items]


def verify_certificate(cert) -> Verdict:
    """Recheck a certificate payload (dict) or certificate object.

    Objects are serialized first, so the check is always a function of the
    serialized form.
    """
    if not isinstance(cert, dict):
        from .certjson import to_json

        try:
            cert = to_json(cert)
        except TypeError:
            return _fail("malformed: not a certificate")
    kind = cert.get("kind")
    if kind == "principal":
        return _verify_principal(cert)
    if kind == "unit":
        return _verify_unit(cert)
    return _fail(f"malformed: unknown kind {kind!r}")


def _verify_unit(cert: dict) -> Verdict:
    if tuple(cert) != _UNIT_KEYS:
        return _fail("malformed: keys or key order")
    try:
        gens = _parse_list(cert["generators"])
        cofs = _parse_list(cert["cofactors"])
    except ValueError as exc:
        return _fail(f"malformed: {exc}")
    if len(gens) != len(cofs) or not gens:
        return _fail("malformed: length mismatch")
    if _combination(cofs, gens) != ONE:
        return _fail("bezout identity: sum of cofactor*generator is not 1")
    return Verdict(True)


def _verify_principal(cert: dict) -> Verdict:
    if tuple(cert) != _PRINCIPAL_KEYS:
        return _fail("malformed: keys or key order")
    try:
        target = from_json(cert["target"])
        gens = _parse_list(cert["generators"])
        quots = _parse_list(cert["quotients"])
        cofs = _parse_list(cert["cofactors"])
    except ValueError as exc:
        return _fail(f"malformed: {exc}")
    n, mode, indices = cert["n"], cert["mode"], cert["generator_indices"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        return _fail("malformed: n must be an integer >= 2")
    if not isinstance(indices, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in indices):
        return _fail("malformed: generator_indices")
    if cert["variable"] != "q":
        return _fail("malformed: variable")
    k = len(gens)
    if not (k and len(quots) == len(cofs) == len(indices) == k):
        return _fail("malformed: length mismatch")

    for i, (g, qt) in enumerate(zip(gens, quots)):
        if mul(qt, target) != g:
            return _fail("quotient identity: generator != quotient * target", i)
    if _combination(cofs, gens) != target:
        return _fail("bezout identity: sum of cofactor*generator != target")

    # The identities hold; now check they are about the claimed statement.
    if target != _cyclotomic_by_mobius(n):
        return _fail(f"statement: target is not Phi_{n}")
    if mode == "qbinomial":
        if len(set(indices)) != k or not all(0 < i < n for i in indices):
            return _fail("statement: q-binomial indices must be distinct and in (0, n)")
        row = _qbinomial_row(n)
        for j, (i, g) in enumerate(zip(indices, gens)):
            if g != row[i]:
                return _fail(f"statement: generator is not ({n}, {i})_q", j)
    elif mode == "squarefree":
        factors = _factor_small(n)
        if any(e > 1 for e in factors.values()):
            return _fail(f"statement: {n} is not squarefree")
        if indices != sorted(factors):
            return _fail("statement: indices must be the prime factors of n")
        top = q_power_minus_one(n)
        for j, (p, g) in enumerate(zip(indices, gens)):
            if g != exact_div(top, q_power_minus_one(n // p)):
                return _fail(f"statement: generator is not [{n}]_q/[{n // p}]_q", j)
    else:
        return _fail(f"malformed: unknown mode {mode!r}")
    return Verdict(True)


def verify_witness(payload: dict) -> Verdict:
    from .certjson import witness_from_json

    try:
        witness_from_json(payload)
    except (ValueError, KeyError, TypeError) as exc:
        return _fail(f"witness rejected: {exc}")
    return Verdict(True)
