"""JSON encoding of exact values. Output is byte-stable for fixed input."""

from __future__ import annotations

import json
from fractions import Fraction

from .exact import GaussianRational, Polynomial, RationalMatrix
from .moduli_local import ConePresentation


def rational(x) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def polynomial(p: Polynomial) -> dict:
    return {
        "vars": list(p.variables),
        "terms": [{"exp": list(e), "coef": rational(c)} for e, c in p.sorted_terms()],
    }


def cone(c: ConePresentation) -> dict:
    return {
        "variables": list(c.variables),
        "equations": [polynomial(e) for e in c.equations],
        "free_dim": c.free_dim,
        "declared_multiplicity": c.declared_multiplicity,
        "tangent_space_dim": c.tangent_space_dim,
        "ambient_dim": c.ambient_dim,
        "equation_count": len(c.equations),
    }


def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, GaussianRational):
        return {"re": rational(obj.re), "im": rational(obj.im)}
    if isinstance(obj, Polynomial):
        return polynomial(obj)
    if isinstance(obj, ConePresentation):
        return cone(obj)
    if isinstance(obj, RationalMatrix):
        return [[rational(x) for x in row] for row in obj.to_rows()]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, pretty: bool = False) -> str:
    data = to_jsonable(obj)
    if pretty:
        return json.dumps(data, indent=2, ensure_ascii=False)
    return json.dumps(data, separators=(",", ":"), ensure_ascii=False)
