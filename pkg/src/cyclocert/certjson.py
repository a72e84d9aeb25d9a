"""Canonical JSON for certificates and witnesses.

Keys are written in a fixed order (never sorted), with no optional
whitespace, and every integer coefficient is a decimal string, so equal
certificates serialize to identical bytes.
"""

from __future__ import annotations

import json

from . import modpoly, polycore
from .certengine import NonUnitWitness, PrincipalCertificate, UnitCertificate
from .polycore import VARIABLE


def canonical_dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True) + "\n"


def principal_to_json(cert: PrincipalCertificate) -> dict:
    return {
        "kind": "principal",
        "mode": cert.mode,
        "n": cert.n,
        "variable": VARIABLE,
        "target": polycore.to_json(cert.target),
        "generator_indices": list(cert.generator_indices),
        "generators": [polycore.to_json(g) for g in cert.generators],
        "quotients": [polycore.to_json(g) for g in cert.quotients],
        "cofactors": [polycore.to_json(g) for g in cert.cofactors],
    }


def unit_to_json(cert: UnitCertificate) -> dict:
    return {
        "kind": "unit",
        "variable": VARIABLE,
        "generators": [polycore.to_json(g) for g in cert.generators],
        "cofactors": [polycore.to_json(g) for g in cert.cofactors],
    }


def witness_to_json(w: NonUnitWitness) -> dict:
    out: dict = {"kind": "non_unit_witness", "over": w.over}
    if w.over == "Fp":
        out["p"] = str(int(w.p))
        out["common_factor"] = [str(c) for c in w.common_factor.coeffs]
    else:
        out["common_factor"] = polycore.to_json(w.common_factor)
    out["generators"] = [polycore.to_json(g) for g in w.generators]
    return out


def to_json(obj) -> dict:
    if isinstance(obj, PrincipalCertificate):
        return principal_to_json(obj)
    if isinstance(obj, UnitCertificate):
        return unit_to_json(obj)
    if isinstance(obj, NonUnitWitness):
        return witness_to_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return canonical_dumps(to_json(obj))


def witness_from_json(payload: dict) -> NonUnitWitness:
    """Rebuild a witness; raises ValueError if it is malformed or does not check."""
    gens = tuple(polycore.from_json(g) for g in payload.get("generators", []))
    over = payload.get("over")
    if over == "Fp":
        p = int(payload["p"])
        factor = modpoly.from_json({"p": payload["p"], "coeffs": payload["common_factor"]})
        return NonUnitWitness("Fp", factor, gens, p)
    if over == "Q":
        return NonUnitWitness("Q", polycore.from_json(payload["common_factor"]), gens)
    raise ValueError(f"unknown witness field over={over!r}")
