"""Invariant rings: torus-invariant monomials and their toric relations,
SO3 invariants of g vectors in 3-space, and a polarized Cayley-Hamilton
trace identity checker."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import (GaussianRational, Polynomial, RowSpace, leibniz_determinant,
                    monomials_of_degree, random_rational)

Exponent = tuple[int, ...]


# ---------------------------------------------------------------------------
# Torus actions on quivers

@dataclass(frozen=True)
class TorusActionSpec:
    """Arrows i -> j carry ``multiplicity[(i, j)]`` coordinates X_{i,j}^k,
    scaled by alpha_i / alpha_j. Nodes are numbered 1..n_summands."""

    n_summands: int
    multiplicity: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n_summands < 2:
            raise ValueError("need at least two summands")
        for (i, j), d in self.multiplicity.items():
            if i == j or not (1 <= i <= self.n_summands and 1 <= j <= self.n_summands):
                raise ValueError(f"bad arrow {(i, j)}")
            if d < 0:
                raise ValueError("multiplicities must be >= 0")

    @classmethod
    def uniform(cls, n: int, d: int = 1) -> TorusActionSpec:
        return cls(n, {(i, j): d for i in range(1, n + 1) for j in range(1, n + 1) if i != j})

    def coordinates(self) -> list[tuple[int, int, int]]:
        """(i, j, k) triples in exponent-vector order: arrows lexicographic, then k."""
        return [(i, j, k) for (i, j) in sorted(self.multiplicity)
                for k in range(1, self.multiplicity[i, j] + 1)]

    def variable_names(self) -> list[str]:
        out = []
        for i, j, k in self.coordinates():
            name = f"X{i}{j}"
            if self.multiplicity[i, j] > 1:
                name += f"_{k}"
            out.append(name)
        return out


def invariance_condition(exponent: Sequence[int], spec: TorusActionSpec) -> bool:
    coords = spec.coordinates()
    if len(exponent) != len(coords):
        raise ValueError("exponent length does not match the action")
    flow = [0] * (spec.n_summands + 1)
    for (i, j, _), n in zip(coords, exponent):
        flow[i] += n
        flow[j] -= n
    return not any(flow)


def invariant_monomials(spec: TorusActionSpec, degree: int) -> list[Exponent]:
    nvars = len(spec.coordinates())
    return [e for e in monomials_of_degree(nvars, degree) if invariance_condition(e, spec)]


def invariant_monomial_hilbert_basis(spec: TorusActionSpec, degree_bound: int) -> list[Exponent]:
    """Indecomposable invariant monomials of degree <= degree_bound, ordered by
    (degree, exponent vector)."""
    if degree_bound < 1:
        raise ValueError("degree_bound must be >= 1")
    basis: list[Exponent] = []
    for d in range(1, degree_bound + 1):
        for e in invariant_monomials(spec, d):
            # invariance is linear, so e - b is invariant whenever b <= e
            if not any(all(x <= y for x, y in zip(b, e)) for b in basis):
                basis.append(e)
    return basis


def decomposes(exponent: Sequence[int], basis: Sequence[Exponent], _memo=None) -> bool:
    """Whether ``exponent`` is a sum of basis vectors (with repetition)."""
    memo = {} if _memo is None else _memo
    e = tuple(exponent)
    if not any(e):
        return True
    if e in memo:
        return memo[e]
    ok = False
    for b in basis:
        if all(x <= y for x, y in zip(b, e)):
            if decomposes(tuple(y - x for x, y in zip(b, e)), basis, memo):
                ok = True
                break
    memo[e] = ok
    return ok


def certify_hilbert_basis(spec: TorusActionSpec, basis: Sequence[Exponent],
                          up_to_degree: int) -> list[Exponent]:
    """Invariant monomials of degree <= up_to_degree that are NOT products of
    basis monomials (empty list = completeness holds up to that degree)."""
    memo: dict = {}
    failures = []
    for d in range(1, up_to_degree + 1):
        for e in invariant_monomials(spec, d):
            if not decomposes(e, basis, memo):
                failures.append(e)
    return failures


def generator_names(count: int) -> list[str]:
    width = len(str(count)) if count > 9 else 1
    return [f"z{str(i).zfill(width)}" for i in range(1, count + 1)]


def _monomial_image(a: Sequence[int], generators: Sequence[Exponent]) -> Exponent:
    out = [0] * len(generators[0])
    for n, gen in zip(a, generators):
        if n:
            for t, x in enumerate(gen):
                out[t] += n * x
    return tuple(out)


def _compositions_of_weight(weights: Sequence[int], total: int) -> list[Exponent]:
    """Exponent vectors a >= 0 with sum a_i * weights[i] == total, sorted."""
    out = []

    def rec(i, remaining, acc):
        if i == len(weights):
            if remaining == 0:
                out.append(tuple(acc))
            return
        for n in range(remaining // weights[i] + 1):
            acc.append(n)
            rec(i + 1, remaining - n * weights[i], acc)
            acc.pop()

    rec(0, total, [])
    out.sort()
    return out


def toric_relations(spec: TorusActionSpec, generators: Sequence[Exponent],
                    x_degree_bound: int) -> list[Polynomial]:
    """Minimal relations among the generator monomials, found degree by degree.

    In each X-degree D the kernel of the substitution map is spanned by
    differences of generator monomials with the same image; a kernel vector
    is kept only if it is not already in the span of earlier relations times
    monomials.
    """
    generators = [tuple(g) for g in generators]
    for gen in generators:
        if not invariance_condition(gen, spec):
            raise ValueError(f"generator {gen} is not invariant")
    if not generators:
        return []
    names = generator_names(len(generators))
    weights = [sum(g) for g in generators]
    if min(weights) < 1:
        raise ValueError("generators must have positive degree")
    relations: list[Polynomial] = []
    for D in range(1, x_degree_bound + 1):
        monos = _compositions_of_weight(weights, D)
        if len(monos) < 2:
            continue
        col = {a: n for n, a in enumerate(monos)}
        space = RowSpace(len(monos))
        for rel in relations:
            rel_w = _weighted_degree(rel, weights)
            for m in _compositions_of_weight(weights, D - rel_w):
                vec = [Fraction(0)] * len(monos)
                for exp, c in rel.terms.items():
                    vec[col[tuple(x + y for x, y in zip(exp, m))]] += c
                space.add(vec)
        fibers: dict[Exponent, list[Exponent]] = {}
        for a in monos:
            fibers.setdefault(_monomial_image(a, generators), []).append(a)
        for image in sorted(fibers):
            fiber = fibers[image]
            for other in fiber[1:]:
                vec = [Fraction(0)] * len(monos)
                vec[col[fiber[0]]] += 1
                vec[col[other]] -= 1
                if space.add(vec):
                    p = Polynomial(names, {fiber[0]: 1, other: -1})
                    relations.append(p.normalized())
    return relations


def _weighted_degree(p: Polynomial, weights: Sequence[int]) -> int:
    degs = {sum(w * e for w, e in zip(weights, exp)) for exp in p.terms}
    if len(degs) != 1:
        raise ValueError("relation is not homogeneous in the X-grading")
    return degs.pop()


@dataclass
class InvariantPresentation:
    generators: list[Exponent]
    relations: list[Polynomial]
    degree_bound: int
    generator_variables: list[str] = field(default_factory=list)

    def substitute_relation(self, rel: Polynomial, spec: TorusActionSpec) -> Polynomial:
        xs = spec.variable_names()
        images = {name: Polynomial.monomial(xs, gen)
                  for name, gen in zip(self.generator_variables, self.generators)}
        return rel.substitute(images, xs)


def invariant_presentation(spec: TorusActionSpec, degree_bound: int,
                           relation_bound: int | None = None) -> InvariantPresentation:
    gens = invariant_monomial_hilbert_basis(spec, degree_bound)
    if relation_bound is None:
        relation_bound = 2 * degree_bound
    rels = toric_relations(spec, gens, relation_bound)
    return InvariantPresentation(gens, rels, degree_bound, generator_names(len(gens)))


# ---------------------------------------------------------------------------
# SO3 invariants of g vectors

@dataclass
class SO3Table:
    """T_{i,j} = u_i . u_j for i <= j and T_{i,j,k} = det(u_i, u_j, u_k) for
    i < j < k; indices are 1-based."""

    g: int
    t2: dict
    t3: dict

    def two(self, i: int, j: int):
        return self.t2[min(i, j), max(i, j)]

    def three(self, i: int, j: int, k: int):
        idx = (i, j, k)
        if len(set(idx)) < 3:
            return 0
        inversions = sum(1 for a, b in itertools.combinations(idx, 2) if a > b)
        value = self.t3[tuple(sorted(idx))]
        return -value if inversions % 2 else value


def so3_eval_from_vectors(u: Sequence[Sequence]) -> SO3Table:
    vecs = [tuple(Fraction(x) for x in v) for v in u]
    if not vecs:
        raise ValueError("need at least one vector")
    if any(len(v) != 3 for v in vecs):
        raise ValueError("vectors must lie in Q^3")
    g = len(vecs)
    t2 = {(i + 1, j + 1): sum(a * b for a, b in zip(vecs[i], vecs[j]))
          for i in range(g) for j in range(i, g)}
    t3 = {(i + 1, j + 1, k + 1): leibniz_determinant([vecs[i], vecs[j], vecs[k]])
          for i, j, k in itertools.combinations(range(g), 3)}
    return SO3Table(g, t2, t3)


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            sub = [row[:j] + row[j + 1:] for row in m[1:]]
            term = m[0][j] * _det(sub)
            total += term if j % 2 == 0 else -term
    return total


def _ids(idx) -> str:
    return ",".join(str(i) for i in idx)


def so3_verify_relations(t: SO3Table) -> list[str]:
    """Identifiers of Weyl relations that fail on the table.

    ``minor4[R|C]``: 4x4 minor of [T_{i,j}] on rows R, columns C;
    ``rel1[I|J]``: T_I T_J - det[T_{i,j}]_{i in I, j in J};
    ``rel2[i0,i1,i2,i3;i4]``: the alternating five-index relation.
    """
    g = t.g
    # every relation is weighted-homogeneous (T_ij weight 2, T_ijk weight 3),
    # so rescaling as u -> c*u preserves which ones vanish
    c = math.lcm(*(Fraction(x).denominator for x in list(t.t2.values()) + list(t.t3.values())))
    t = SO3Table(g, {k: int(v * c * c) for k, v in t.t2.items()},
                 {k: int(v * c * c * c) for k, v in t.t3.items()})
    violations = []
    quads = list(itertools.combinations(range(1, g + 1), 4))
    for a, R in enumerate(quads):
        for C in quads[a:]:
            if _det([[t.two(i, j) for j in C] for i in R]):
                violations.append(f"minor4[{_ids(R)}|{_ids(C)}]")
    triples = list(itertools.combinations(range(1, g + 1), 3))
    for a, I in enumerate(triples):
        for J in triples[a:]:
            lhs = t.three(*I) * t.three(*J)
            rhs = _det([[t.two(i, j) for j in J] for i in I])
            if lhs != rhs:
                violations.append(f"rel1[{_ids(I)}|{_ids(J)}]")
    for q in quads:
        i0, i1, i2, i3 = q
        for i4 in range(1, g + 1):
            value = (t.two(i0, i4) * t.three(i1, i2, i3)
                     - t.two(i1, i4) * t.three(i0, i2, i3)
                     + t.two(i2, i4) * t.three(i0, i1, i3)
                     - t.two(i3, i4) * t.three(i0, i1, i2))
            if value:
                violations.append(f"rel2[{_ids(q)};{i4}]")
    return violations


# ---------------------------------------------------------------------------
# Traceless 2x2 matrices <-> vectors in 3-space

def matrix_to_vector(X) -> tuple[GaussianRational, GaussianRational, GaussianRational]:
    """(u1, u2, u3) with X = [[u1, u2 - i u3], [u2 + i u3, -u1]]."""
    a, b = GaussianRational.coerce(X[0][0]), GaussianRational.coerce(X[0][1])
    c, d = GaussianRational.coerce(X[1][0]), GaussianRational.coerce(X[1][1])
    if a + d:
        raise ValueError("matrix is not traceless")
    i = GaussianRational(0, 1)
    return a, (b + c) * Fraction(1, 2), (b - c) * i * Fraction(1, 2)


def vector_to_matrix(u) -> list[list[GaussianRational]]:
    u1, u2, u3 = (GaussianRational.coerce(x) for x in u)
    i = GaussianRational(0, 1)
    return [[u1, u2 - i * u3], [u2 + i * u3, -u1]]


def _matmul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    return [[sum((A[r][k] * B[k][c] for k in range(m)), 0 * A[0][0]) for c in range(p)]
            for r in range(n)]


def trace(A):
    return sum((A[i][i] for i in range(1, len(A))), A[0][0])


def measure_triple_trace_constant(rng: random.Random, trials: int) -> GaussianRational | None:
    """The scalar kappa with Tr(XYZ) = kappa * det(u_X, u_Y, u_Z) on every
    sampled triple, or None if no single constant fits."""
    kappa = None
    for _ in range(trials):
        us = [[random_rational(rng) for _ in range(3)] for _ in range(3)]
        det = leibniz_determinant(us)
        if not det:
            continue
        X, Y, Z = (vector_to_matrix(u) for u in us)
        ratio = trace(_matmul(_matmul(X, Y), Z)) / det
        if kappa is None:
            kappa = ratio
        elif ratio != kappa:
            return None
    return kappa


# ---------------------------------------------------------------------------
# Polarized Cayley-Hamilton

def charpoly_faddeev_leverrier(A) -> list[Fraction]:
    """Coefficients [1, c_1, ..., c_n] of det(tI - A) = t^n + c_1 t^{n-1} + ... + c_n."""
    n = len(A)
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    coeffs = [Fraction(1)]
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        AM = _matmul(A, M)
        M = [[AM[i][j] + coeffs[-1] * ident[i][j] for j in range(n)] for i in range(n)]
        c = -trace(_matmul(A, M)) / k
        coeffs.append(c)
    return coeffs


def _eval_matrix_poly(coeffs, A):
    """coeffs[0] A^n + coeffs[1] A^{n-1} + ... + coeffs[n] I via Horner."""
    n = len(A)
    R = [[Fraction(0)] * n for _ in range(n)]
    for c in coeffs:
        R = _matmul(R, A)
        for i in range(n):
            R[i][i] += c
    return R


def cayley_hamilton_trace(X, leading_term_only: bool = False) -> Fraction:
    """Tr(X * P_X(X)) where P_X is the characteristic polynomial of X.

    ``leading_term_only`` replaces P_X by its leading term t^n; it exists
    only as a negative control.
    """
    coeffs = charpoly_faddeev_leverrier(X)
    if leading_term_only:
        coeffs = [coeffs[0]] + [Fraction(0)] * (len(coeffs) - 1)
    return trace(_matmul(X, _eval_matrix_poly(coeffs, X)))


def polarize(f, matrices) -> Fraction:
    """Inclusion-exclusion polarization of a degree-len(matrices) form f."""
    m = len(matrices)
    n = len(matrices[0])
    total = Fraction(0)
    for size in range(1, m + 1):
        sign = -1 if (m - size) % 2 else 1
        for subset in itertools.combinations(range(m), size):
            S = [[sum((matrices[s][i][j] for s in subset), Fraction(0)) for j in range(n)]
                 for i in range(n)]
            total += sign * f(S)
    return total


def verify_polarized_trace_identity(n: int, trials: int, seed,
                                    leading_term_only: bool = False) -> bool:
    if n not in (2, 3):
        raise ValueError("matrix size must be 2 or 3")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)

    def f(X):
        return cayley_hamilton_trace(X, leading_term_only)

    for _ in range(trials):
        Hs = [[[random_rational(rng) for _ in range(n)] for _ in range(n)] for _ in range(n + 1)]
        if polarize(f, Hs) != 0:
            return False
    return True
