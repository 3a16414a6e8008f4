"""The verification suite behind ``verify``: every closed form against its
independent oracle, with a fixed item order."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import determinantal as det
from . import invariants as inv
from . import moduli_local as ml
from . import special_models as sm
from .exact import Polynomial, binomial, random_rational


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def as_dict(self) -> dict:
        return {"name": self.name, "status": "pass" if self.passed else "fail",
                "detail": self.detail}


def check_segre_oracle() -> Check:
    bad = [(a, b) for a in range(1, 6) for b in range(1, 6)
           if binomial(a + b - 2, a - 1) != ml.segre_degree_oracle(a, b)]
    return Check("segre-degree-oracle", not bad,
                 "binomial(a+b-2, a-1) == interpolated Segre degree for 1<=a,b<=5"
                 + (f"; mismatches {bad}" if bad else ""))


def check_smoothness_scan() -> Check:
    ones = [(g, r1, r2) for g in range(2, 7) for r1 in range(1, 4) for r2 in range(1, 4)
            if ml.multiplicity_case1(ml.SplitPoint(g, r1, r2)) == 1]
    oracle = [(g, r1, r2) for g in range(2, 7) for r1 in range(1, 4) for r2 in range(1, 4)
              if ml.multiplicity_case1(ml.SplitPoint(g, r1, r2))
              != ml.segre_degree_oracle(r1 * r2 * (g - 1), r1 * r2 * (g - 1))]
    ok = ones == [(2, 1, 1)] and not oracle
    return Check("multiplicity-one-scan", ok,
                 f"points of multiplicity 1 over g=2..6, r=1..3: {ones}; "
                 f"formula/oracle mismatches: {oracle}")


def check_corank(seed) -> Check:
    rng = random.Random(seed)
    bad = []
    for g in range(3, 9):
        expected = det.corank_formula(g)
        diag = det.diagonal_matrix([1, 1, 1] + [0] * (g - 3))
        values = [det.corank_bruteforce(det.CorankMap(g, diag))]
        for _ in range(25):
            values.append(det.corank_bruteforce(det.CorankMap(g, det.random_rank3_symmetric(g, rng))))
        if any(v != expected for v in values):
            bad.append(f"g={g}: formula {expected}, brute force {sorted(set(values))}")
    return Check("corank-formula-vs-bruteforce", not bad,
                 "; ".join(bad) if bad else "brute-force corank equals C(g,3)-C(g-3,3) for g=3..8")


def check_harris_tu() -> Check:
    bad = []
    for g in range(1, 11):
        if det.harris_tu_degree(g, 1) != g:
            bad.append(f"d({g},1)")
        if g >= 2 and det.harris_tu_degree(g, 2) != binomial(g + 1, 3):
            bad.append(f"d({g},2)")
        if det.harris_tu_degree(g, g) != 1:
            bad.append(f"d({g},{g})")
    return Check("harris-tu-sanity", not bad,
                 "d(g,1)=g, d(g,2)=C(g+1,3), d(g,g)=1 for g<=10" + (f"; failed {bad}" if bad else ""))


def check_trivial_multiplicity() -> Check:
    values = [det.multiplicity_trivial_rank2(g).multiplicity for g in (2, 3, 4)]
    local = sm.coble_local_model("trivial").presentation.declared_multiplicity
    ok = values == [1, 2, 20] and local == values[1]
    return Check("trivial-bundle-multiplicity", ok,
                 f"g=2,3,4 -> {values}; initial-form degree of T^2 - det = {local}")


def check_torus_invariants() -> Check:
    spec = inv.TorusActionSpec.uniform(3, 1)
    basis = inv.invariant_monomial_hilbert_basis(spec, 3)
    expected = {(0, 0, 0, 1, 0, 1), (0, 1, 0, 0, 1, 0), (1, 0, 1, 0, 0, 0),
                (0, 1, 1, 0, 0, 1), (1, 0, 0, 1, 1, 0)}
    rels = inv.toric_relations(spec, basis, 6)
    ok = set(basis) == expected and len(basis) == 5 and len(rels) == 1
    if ok:
        names = inv.generator_names(5)
        z = {gen: names[basis.index(gen)] for gen in basis}
        # zeta_1..zeta_5 in the classical labelling
        zeta = [z[(0, 0, 0, 1, 0, 1)], z[(0, 1, 0, 0, 1, 0)], z[(1, 0, 1, 0, 0, 0)],
                z[(0, 1, 1, 0, 0, 1)], z[(1, 0, 0, 1, 1, 0)]]
        P = {n: Polynomial.var(n, names) for n in names}
        target = P[zeta[3]] * P[zeta[4]] - P[zeta[0]] * P[zeta[1]] * P[zeta[2]]
        ok = rels[0] == target or rels[0] == -target
    return Check("torus-invariants-rank3-genus2", ok,
                 f"{len(basis)} generators, relations {[str(r) for r in rels]}")


def check_weyl_relations(seed) -> Check:
    rng = random.Random(seed)
    failures = 0
    for g in (4, 5, 6):
        for _ in range(200):
            u = [[random_rational(rng) for _ in range(3)] for _ in range(g)]
            if inv.so3_verify_relations(inv.so3_eval_from_vectors(u)):
                failures += 1
    return Check("so3-weyl-relations", failures == 0,
                 f"200 random tuples for each g in (4,5,6); tables with violations: {failures}")


def check_trace_identity(seed) -> Check:
    two = inv.verify_polarized_trace_identity(2, 100, seed)
    three = inv.verify_polarized_trace_identity(3, 100, seed)
    return Check("polarized-cayley-hamilton", two and three, f"n=2: {two}, n=3: {three}")


def check_hilbert() -> Check:
    try:
        P = sm.solve_theta_hilbert_polynomial()
        lead = sm.leading_coefficient(P)
        deg = sm.degree_of_theta_map()
    except sm.HilbertSolveError as exc:
        return Check("theta-map-hilbert-polynomial", False, str(exc))
    ok = lead == Fraction(2, 40320) and deg == 2
    return Check("theta-map-hilbert-polynomial", ok, f"leading coefficient {lead}, degree {deg}")


def check_kummer() -> Check:
    results = [sm.kummer_partials_check(p) for p in itertools.permutations((1, 2, 3))]
    return Check("kummer-local-ideal", all(results),
                 "ideal(partials of T^2 - det) == ideal(T, 2x2 minors), all 6 relabelings")


def check_theta() -> Check:
    bad = [(g, h) for g in range(2, 7) for h in range(1, 4)
           if ml.theta_multiplicity(g, h) != h * ml.multiplicity_case1(ml.SplitPoint(g, 1, 1))]
    return Check("theta-multiplicity", not bad,
                 "mult theta = h * mult at rank-(1,1) split point for g=2..6, h=1..3"
                 + (f"; mismatches {bad}" if bad else ""))


def run_suite(seed) -> list[Check]:
    return [
        check_segre_oracle(),
        check_smoothness_scan(),
        check_corank(seed),
        check_harris_tu(),
        check_trivial_multiplicity(),
        check_torus_invariants(),
        check_weyl_relations(seed),
        check_trace_identity(seed),
        check_hilbert(),
        check_kummer(),
        check_theta(),
    ]
