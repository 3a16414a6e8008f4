"""Named local models: SU(3) in genus 2, the Coble quartic at its
non-stable points, the Kummer ideal check, and the Hilbert-polynomial solve
giving the degree of the theta map of SU(3) in genus 2."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import (Polynomial, RowSpace, binomial, matrix_rank, monomials_of_degree,
                    poly_partial, solve_linear, symbolic_determinant)
from .moduli_local import ConePresentation, SplitPoint, tangent_cone_case1


class HilbertSolveError(ValueError):
    pass


@dataclass(frozen=True)
class HilbertConstraint:
    kind: str
    at: int = 0
    value: Fraction = Fraction(0)
    center: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in ("value", "zero", "symmetry"):
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if self.kind == "zero" and self.value:
            raise ValueError("a zero constraint cannot carry a value")
        object.__setattr__(self, "value", Fraction(self.value))
        object.__setattr__(self, "center", Fraction(self.center))

    @classmethod
    def value_at(cls, at: int, value) -> HilbertConstraint:
        return cls("value", at=at, value=Fraction(value))

    @classmethod
    def zero_at(cls, at: int) -> HilbertConstraint:
        return cls("zero", at=at)

    @classmethod
    def symmetric_about(cls, center) -> HilbertConstraint:
        return cls("symmetry", center=Fraction(center))


@dataclass
class LocalModel:
    name: str
    presentation: ConePresentation


def hypersurface_multiplicity(f: Polynomial) -> int:
    """Multiplicity at the origin = degree of the initial form."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    return f.min_degree()


def quadric_rank(q: Polynomial) -> int:
    """Rank of a quadratic form (given as a homogeneous quadric)."""
    if not q.is_homogeneous() or q.degree() != 2:
        raise ValueError("not a quadratic form")
    n = len(q.variables)
    m = [[Fraction(0)] * n for _ in range(n)]
    for exp, c in q.terms.items():
        idx = [i for i, e in enumerate(exp) for _ in range(e)]
        i, j = idx
        if i == j:
            m[i][i] += c
        else:
            m[i][j] += c / 2
            m[j][i] += c / 2
    return matrix_rank(m)


# ---------------------------------------------------------------------------
# SU(3, O) on a genus-2 curve

def su3_genus2_local_model(case: str) -> LocalModel:
    if case == "torus":
        ys = [f"Y{i}" for i in range(1, 5)]
        xs = [f"X{i}" for i in range(1, 6)]
        variables = ys + xs
        X = {i: Polynomial.var(f"X{i}", variables) for i in range(1, 6)}
        eq = X[4] * X[5] - X[1] * X[2] * X[3]
        cone = ConePresentation(
            variables=variables,
            equations=[eq],
            free_dim=len(ys),
            declared_multiplicity=hypersurface_multiplicity(eq),
            tangent_space_dim=_tangent_dim([eq], variables),
            notes={"initial_form_rank": quadric_rank(eq.initial_form())},
        )
        return LocalModel("su3-genus2-torus", cone)
    if case == "two_summand":
        cone = tangent_cone_case1(SplitPoint(2, 1, 2))
        cone.notes = dict(cone.notes, initial_form_rank=quadric_rank(cone.equations[0]))
        return LocalModel("su3-genus2-two-summand", cone)
    raise ValueError(f"unknown case {case!r}; expected 'torus' or 'two_summand'")


def _tangent_dim(equations, variables) -> int:
    """Zariski tangent space dimension at the origin: ambient dimension minus
    the rank of the linear parts."""
    rows = []
    for eq in equations:
        lin = eq.homogeneous_part(1)
        rows.append([lin.coefficient(tuple(int(k == i) for k in range(len(variables))))
                     for i in range(len(variables))])
    return len(variables) - (matrix_rank(rows) if rows else 0)


# ---------------------------------------------------------------------------
# Coble quartic, genus 3

SYM3_NAMES = {(i, j): f"T{i}{j}" for i in range(1, 4) for j in range(i, 4)}


def _sym3(variables, names=SYM3_NAMES):
    entry = {key: Polynomial.var(name, variables) for key, name in names.items()}
    return [[entry[min(i, j), max(i, j)] for j in range(1, 4)] for i in range(1, 4)]


def coble_trivial_equation(names=SYM3_NAMES) -> Polynomial:
    variables = ["T"] + list(names.values())
    T = Polynomial.var("T", variables)
    return T * T - symbolic_determinant(_sym3(variables, names))


def coble_local_model(case: str) -> LocalModel:
    if case == "trivial":
        eq = coble_trivial_equation()
        cone = ConePresentation(
            variables=list(eq.variables),
            equations=[eq],
            free_dim=0,
            declared_multiplicity=hypersurface_multiplicity(eq),
            tangent_space_dim=_tangent_dim([eq], eq.variables),
        )
        return LocalModel("coble-trivial", cone)
    if case == "split":
        cone = tangent_cone_case1(SplitPoint(3, 1, 1))
        cone.notes = dict(cone.notes, initial_form_rank=quadric_rank(cone.equations[0]))
        return LocalModel("coble-split", cone)
    raise ValueError(f"unknown case {case!r}; expected 'trivial' or 'split'")


def express_in_ideal(f: Polynomial, gens: Sequence[Polynomial]) -> list[Polynomial] | None:
    """Multipliers c with sum c_i * gens_i == f, or None if f is not in the
    ideal. All inputs must be homogeneous; membership is decided in the
    single degree of f by exact linear algebra."""
    if f.is_zero():
        return [Polynomial(f.variables) for _ in gens]
    if not f.is_homogeneous() or not all(g.is_homogeneous() for g in gens):
        raise ValueError("degreewise membership needs homogeneous polynomials")
    d = f.degree()
    nvars = len(f.variables)
    targets = monomials_of_degree(nvars, d)
    col = {e: n for n, e in enumerate(targets)}
    space = RowSpace(len(targets))
    labels = []
    for gi, g in enumerate(gens):
        k = d - g.degree()
        if g.is_zero() or k < 0:
            continue
        for m in monomials_of_degree(nvars, k):
            vec = [Fraction(0)] * len(targets)
            for exp, c in g.terms.items():
                vec[col[tuple(a + b for a, b in zip(exp, m))]] += c
            space.add(vec)
            labels.append((gi, m))
    vec = [Fraction(0)] * len(targets)
    for exp, c in f.terms.items():
        vec[col[exp]] = c
    combo = space.express(vec)
    if combo is None:
        return None
    mults = [Polynomial(f.variables) for _ in gens]
    for k, c in combo.items():
        gi, m = labels[k]
        mults[gi] = mults[gi] + Polynomial(f.variables, {m: c})
    return mults


def two_by_two_minors(M) -> list[Polynomial]:
    out = []
    for R in itertools.combinations(range(len(M)), 2):
        for C in itertools.combinations(range(len(M[0])), 2):
            out.append(M[R[0]][C[0]] * M[R[1]][C[1]] - M[R[0]][C[1]] * M[R[1]][C[0]])
    return out


def kummer_partials_check(perm: Sequence[int] = (1, 2, 3)) -> bool:
    """ideal(partials of T^2 - det S) == ideal(T, 2x2 minors of S), checked by
    exhibiting explicit combinations in both directions.

    ``perm`` relabels the indices of S before building the equation.
    """
    relabel = {(i, j): SYM3_NAMES[tuple(sorted((perm[i - 1], perm[j - 1])))]
               for (i, j) in SYM3_NAMES}
    q = coble_trivial_equation(relabel)
    partials = [poly_partial(q, v) for v in q.variables]
    S = _sym3(q.variables)
    T = Polynomial.var("T", q.variables)
    target = [T] + two_by_two_minors(S)
    for a, b in ((partials, target), (target, partials)):
        for f in a:
            mults = express_in_ideal(f, b)
            if mults is None:
                return False
            recombined = Polynomial(q.variables)
            for c, g in zip(mults, b):
                recombined = recombined + c * g
            if recombined != f:
                return False
    return True


# ---------------------------------------------------------------------------
# Hilbert polynomial of SU(3, O), genus 2

def constrained_hilbert_solve(degree: int, constraints: Sequence[HilbertConstraint]) -> Polynomial:
    """The unique polynomial of the given degree satisfying the constraints,
    as a univariate Polynomial in ``n``."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    rows, rhs = [], []
    for con in constraints:
        if con.kind in ("value", "zero"):
            x = Fraction(con.at)
            rows.append([x ** k for k in range(degree + 1)])
            rhs.append(con.value if con.kind == "value" else Fraction(0))
        else:
            # P(c + y) must be even in y: its odd coefficients vanish
            c = con.center
            for m in range(1, degree + 1, 2):
                rows.append([binomial(k, m) * c ** (k - m) if k >= m else Fraction(0)
                             for k in range(degree + 1)])
                rhs.append(Fraction(0))
    if not rows:
        raise HilbertSolveError("constraints insufficient")
    sol, rank_a, rank_aug = solve_linear(rows, rhs)
    if sol is None:
        raise HilbertSolveError("no polynomial satisfies constraints")
    if rank_a < degree + 1:
        raise HilbertSolveError("constraints insufficient")
    return Polynomial(["n"], {(k,): c for k, c in enumerate(sol)})


def theta_map_constraints() -> list[HilbertConstraint]:
    cons = [HilbertConstraint.symmetric_about(-3)]
    cons += [HilbertConstraint.zero_at(n) for n in range(-5, 0)]
    cons += [HilbertConstraint.value_at(0, 1), HilbertConstraint.value_at(1, 9)]
    return cons


def solve_theta_hilbert_polynomial() -> Polynomial:
    return constrained_hilbert_solve(8, theta_map_constraints())


def leading_coefficient(p: Polynomial) -> Fraction:
    return p.coefficient((p.degree(),))


def degree_of_theta_map() -> int:
    P = solve_theta_hilbert_polynomial()
    deg = leading_coefficient(P) * math.factorial(8)
    if deg.denominator != 1:
        raise HilbertSolveError(f"non-integral degree {deg}")
    return int(deg)
