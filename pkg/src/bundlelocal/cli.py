"""Command-line front end.

Reports go to stdout as JSON; errors go to stderr as a single JSON line.
Exit codes: 0 success, 1 a verification check failed, 2 unknown command,
3 missing or invalid parameter, 4 internal inconsistency (formula != oracle).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field

from . import __version__
from . import determinantal as det
from . import invariants as inv
from . import moduli_local as ml
from . import special_models as sm
from .checks import Check, run_suite
from .exact import Polynomial
from .serialize import dumps

COMMANDS = ("mult", "tangent-cone", "invariants", "corank", "hilbert", "theta", "verify")

EXIT_OK, EXIT_CHECK_FAILED, EXIT_UNKNOWN_COMMAND, EXIT_BAD_PARAMETER, EXIT_INCONSISTENT = range(5)


class RequestError(Exception):
    def __init__(self, kind: str, message: str, code: int):
        super().__init__(message)
        self.kind = kind
        self.code = code


@dataclass
class Request:
    command: str
    parameters: dict[str, str] = field(default_factory=dict)

    def natural(self, name: str, default: int | None = None) -> int:
        raw = self.parameters.get(name)
        if raw is None:
            if default is None:
                raise RequestError("missing_parameter", f"--{name} is required for {self.command}",
                                   EXIT_BAD_PARAMETER)
            return default
        try:
            value = int(raw)
        except ValueError:
            value = -1
        if value < 0 or str(value) != raw.strip().lstrip("+"):
            raise RequestError("invalid_parameter", f"--{name} must be a natural number, got {raw!r}",
                               EXIT_BAD_PARAMETER)
        return value

    def choice(self, name: str, options, default: str | None = None) -> str:
        raw = self.parameters.get(name, default)
        if raw is None:
            raise RequestError("missing_parameter", f"--{name} is required for {self.command}",
                               EXIT_BAD_PARAMETER)
        if raw not in options:
            raise RequestError("invalid_parameter",
                               f"--{name} must be one of {', '.join(options)}, got {raw!r}",
                               EXIT_BAD_PARAMETER)
        return raw


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict
    checks: list[Check]
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": dict(sorted(self.inputs.items())),
            "results": self.results,
            "checks": [c.as_dict() for c in self.checks],
            "version": self.version,
        }


def _split_point(req: Request) -> ml.SplitPoint:
    g, r1, r2 = req.natural("g"), req.natural("r1", 1), req.natural("r2", 1)
    try:
        return ml.SplitPoint(g, r1, r2)
    except ValueError as exc:
        raise RequestError("invalid_parameter", str(exc), EXIT_BAD_PARAMETER) from exc


def _genus(req: Request, minimum: int = 2) -> int:
    g = req.natural("g")
    if g < minimum:
        raise RequestError("invalid_parameter", f"--g must be >= {minimum}", EXIT_BAD_PARAMETER)
    return g


def _mult(req: Request):
    case = req.choice("case", ("split", "trivial-rank2"))
    if case == "split":
        p = _split_point(req)
        d = p.r1 * p.r2 * (p.g - 1)
        mult = ml.multiplicity_case1(p)
        oracle = ml.segre_degree_oracle(d, d)
        results = {"multiplicity": mult, "d12": d, "segre_degree_oracle": oracle,
                   "tangent_space_dim": ml.tangent_space_dim_case1(p)}
        checks = [Check("formula-vs-segre-oracle", mult == oracle, f"{mult} vs {oracle}")]
        return results, checks
    g = _genus(req)
    rep = det.multiplicity_trivial_rank2(g)
    results = {"multiplicity": rep.multiplicity, "corank_dim": rep.corank_dim,
               "segre_factor": rep.segre_factor, "tangent_space_dim": rep.tangent_space_dim}
    return results, []


CONE_CASES = ("split", "trivial-rank2", "su3-torus", "su3-two-summand", "coble-trivial", "coble-split")


def _tangent_cone(req: Request):
    case = req.choice("case", CONE_CASES)
    if case == "split":
        cone = ml.tangent_cone_case1(_split_point(req))
    elif case == "trivial-rank2":
        cone = det.tangent_cone_trivial_rank2(_genus(req))
    elif case == "su3-torus":
        cone = sm.su3_genus2_local_model("torus").presentation
    elif case == "su3-two-summand":
        cone = sm.su3_genus2_local_model("two_summand").presentation
    elif case == "coble-trivial":
        cone = sm.coble_local_model("trivial").presentation
    else:
        cone = sm.coble_local_model("split").presentation
    return {"cone": cone}, []


def _invariants(req: Request):
    n = req.natural("n", 3)
    g = req.natural("g", 2)
    if n < 2 or g < 2:
        raise RequestError("invalid_parameter", "need --n >= 2 and --g >= 2", EXIT_BAD_PARAMETER)
    bound = req.natural("degree-bound", 3)
    if bound < 1:
        raise RequestError("invalid_parameter", "--degree-bound must be >= 1", EXIT_BAD_PARAMETER)
    # n rank-1 summands: every arrow carries d_ij = g - 1 coordinates
    spec = inv.TorusActionSpec.uniform(n, g - 1)
    pres = inv.invariant_presentation(spec, bound)
    missing = inv.certify_hilbert_basis(spec, pres.generators, 2 * bound)
    xs = spec.variable_names()
    results = {
        "x_variables": xs,
        "generators": [list(e) for e in pres.generators],
        "generator_variables": pres.generator_variables,
        "relations": pres.relations,
        "degree_bound": bound,
        "completeness_note": (f"every invariant monomial of degree <= {2 * bound} is a product "
                              "of the listed generators" if not missing else
                              f"{len(missing)} invariant monomials of degree <= {2 * bound} "
                              "are not products of the generators; raise --degree-bound"),
    }
    subs_ok = all(pres.substitute_relation(r, spec).is_zero() for r in pres.relations)
    checks = [Check("relations-vanish-on-generators", subs_ok,
                    "every relation maps to 0 under the generator substitution")]
    return results, checks


def _corank(req: Request):
    g = _genus(req)
    seed = req.natural("seed", 0)
    trials = req.natural("trials", 5)
    formula = det.corank_formula(g)
    if g < 3:
        return {"formula": formula, "bruteforce_diagonal": None, "bruteforce_random": []}, []
    diag = det.corank_bruteforce(det.CorankMap(g, det.diagonal_matrix([1, 1, 1] + [0] * (g - 3))))
    rng = random.Random(seed)
    rand = [det.corank_bruteforce(det.CorankMap(g, det.random_rank3_symmetric(g, rng)))
            for _ in range(trials)]
    results = {"formula": formula, "bruteforce_diagonal": diag, "bruteforce_random": rand}
    ok = diag == formula and all(v == formula for v in rand)
    return results, [Check("formula-vs-bruteforce", ok,
                           f"formula {formula}, brute force {sorted(set([diag] + rand))}")]


def _hilbert(req: Request):
    P = sm.solve_theta_hilbert_polynomial()
    results = {
        "polynomial": P,
        "leading_coefficient": sm.leading_coefficient(P),
        "degree_of_map": sm.degree_of_theta_map(),
        "values": {str(n): P.evaluate({"n": n}) for n in range(-7, 2)},
    }
    sym = P.rename({"n": "m"})
    mirrored = P.substitute({"n": -6 - Polynomial.var("m", ["m"])}, ["m"])
    return results, [Check("symmetry-about-minus-3", sym == mirrored,
                           "P(n) - P(-6-n) vanishes coefficientwise")]


def _theta(req: Request):
    g = _genus(req)
    h = req.natural("h")
    try:
        mult = ml.theta_multiplicity(g, h)
    except ml.NotOnThetaDivisor as exc:
        raise RequestError("not_on_theta_divisor", str(exc), EXIT_BAD_PARAMETER) from exc
    moduli = ml.multiplicity_case1(ml.SplitPoint(g, 1, 1))
    return {"theta_multiplicity": mult, "moduli_multiplicity": moduli}, [
        Check("theta-vs-moduli", mult == h * moduli, f"{mult} == {h} * {moduli}")]


def _verify(req: Request):
    if "seed" not in req.parameters:
        raise RequestError("missing_parameter", "--seed is required for verify", EXIT_BAD_PARAMETER)
    seed = req.natural("seed")
    checks = run_suite(seed)
    return {"passed": sum(c.passed for c in checks), "total": len(checks)}, checks


DISPATCH = {
    "mult": _mult,
    "tangent-cone": _tangent_cone,
    "invariants": _invariants,
    "corank": _corank,
    "hilbert": _hilbert,
    "theta": _theta,
    "verify": _verify,
}


def run(request: Request) -> Report:
    handler = DISPATCH.get(request.command)
    if handler is None:
        raise RequestError("unknown_command", f"unknown command {request.command!r}",
                           EXIT_UNKNOWN_COMMAND)
    results, checks = handler(request)
    return Report(request.command, dict(request.parameters), results, checks)


def emit(report: Report, pretty: bool = False) -> bytes:
    return (dumps(report.as_dict(), pretty) + "\n").encode("utf-8")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise RequestError("invalid_parameter", message, EXIT_BAD_PARAMETER)


PARAMS = ("g", "r1", "r2", "h", "n", "case", "degree-bound", "trials", "seed")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bundlelocal", description=__doc__.splitlines()[0])
    parser.add_argument("command", help=" | ".join(COMMANDS))
    for name in PARAMS:
        parser.add_argument(f"--{name}", dest=name.replace("-", "_"))
    parser.add_argument("--pretty", action="store_true", help="indent the JSON report")
    return parser


def parse_request(argv) -> tuple[Request, bool]:
    args = build_parser().parse_args(argv)
    params = {name: getattr(args, name.replace("-", "_")) for name in PARAMS}
    return Request(args.command, {k: v for k, v in params.items() if v is not None}), args.pretty


def _fail(kind: str, message: str, code: int, stderr) -> int:
    stderr.write(json.dumps({"error": kind, "message": message, "exit_code": code},
                            separators=(",", ":")) + "\n")
    return code


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout.buffer
    stderr = stderr or sys.stderr
    try:
        request, pretty = parse_request(sys.argv[1:] if argv is None else argv)
        report = run(request)
    except RequestError as exc:
        return _fail(exc.kind, str(exc), exc.code, stderr)
    except ArithmeticError as exc:
        return _fail("internal_inconsistency", str(exc), EXIT_INCONSISTENT, stderr)
    stdout.write(emit(report, pretty))
    stdout.flush()
    if report.passed:
        return EXIT_OK
    if request.command == "verify":
        return EXIT_CHECK_FAILED
    failed = [c.name for c in report.checks if not c.passed]
    return _fail("internal_inconsistency", f"formula and oracle disagree: {failed}",
                 EXIT_INCONSISTENT, stderr)


if __name__ == "__main__":
    sys.exit(main())
