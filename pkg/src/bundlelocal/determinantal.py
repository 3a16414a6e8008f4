"""Rank-2, trivial-determinant computations at the trivial bundle.

Coordinates: ``T_{i,j}`` (i <= j) on the symmetric matrix, ``T_{i,j,k}``
(i < j < k) for the alternating three-index invariants.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .exact import (Polynomial, RationalMatrix, binomial, matrix_rank,
                    random_rational, sparse_integer_rank,
                    symbolic_determinant)
from .moduli_local import ConePresentation, index_name


class InconsistencyError(ArithmeticError):
    """A closed form produced a value its own definition rules out."""


@dataclass(frozen=True)
class CorankMap:
    g: int
    T: RationalMatrix

    def __post_init__(self):
        if self.T.rows != self.g or self.T.cols != self.g:
            raise ValueError(f"T must be {self.g}x{self.g}")
        if not self.T.is_symmetric():
            raise ValueError("T must be symmetric")


@dataclass
class Rank2TrivialReport:
    g: int
    tangent_space_dim: int
    corank_dim: int
    segre_factor: int
    multiplicity: int
    cone: ConePresentation


def harris_tu_degree(g: int, r: int) -> int:
    """Degree of the locus of g x g symmetric matrices of corank >= r."""
    if not 0 <= r <= g:
        raise ValueError(f"need 0 <= r <= g, got r={r}, g={g}")
    value = Fraction(1)
    for a in range(r):
        value *= Fraction(binomial(g + a, r - a), binomial(2 * a + 1, a))
    if value.denominator != 1:
        raise InconsistencyError(f"non-integral degree {value} for g={g}, r={r}")
    return int(value)


def corank_formula(g: int) -> int:
    if g < 2:
        raise ValueError("genus must be >= 2")
    if g <= 2:
        return 0
    return binomial(g, 3) - binomial(g - 3, 3)


def contraction_columns(m: CorankMap) -> tuple[list[tuple[int, ...]], list[dict[int, Fraction]]]:
    """Sparse columns of V^dual (x) wedge^4 V -> wedge^3 V, x (x) y -> T(x) -| y.

    Returns the row labels (3-subsets, lexicographic) and one {row: value}
    map per basis element e_i^dual (x) e_q, ordered by (i, q).
    """
    g = m.g
    triples = list(itertools.combinations(range(g), 3))
    row_of = {t: n for n, t in enumerate(triples)}
    columns = []
    for i in range(g):
        for q in itertools.combinations(range(g), 4):
            col: dict[int, Fraction] = {}
            for s, k in enumerate(q):
                coef = m.T[i, k]
                if coef:
                    row = row_of[q[:s] + q[s + 1:]]
                    col[row] = col.get(row, 0) + (coef if s % 2 == 0 else -coef)
            columns.append(col)
    return triples, columns


def contraction_matrix(m: CorankMap) -> list[list[Fraction]]:
    """Dense form of :func:`contraction_columns` (rows = 3-subsets)."""
    triples, columns = contraction_columns(m)
    dense = [[Fraction(0)] * len(columns) for _ in triples]
    for c, col in enumerate(columns):
        for r, x in col.items():
            dense[r][c] = x
    return dense


def corank_bruteforce(m: CorankMap) -> int:
    """dim wedge^3 V minus the rank of the contraction map."""
    triples, columns = contraction_columns(CorankMap(m.g, _primitive_integer(m.T)))
    # reversed order keeps pivot rows sparse much longer (measured ~7x faster at g=8)
    return len(triples) - sparse_integer_rank(reversed(columns))


def _primitive_integer(T: RationalMatrix) -> RationalMatrix:
    # the contraction map is linear in T, so rescaling T preserves its rank
    den = math.lcm(*(x.denominator for x in T.entries))
    ints = [int(x * den) for x in T.entries]
    content = math.gcd(*ints) or 1
    return RationalMatrix(T.rows, T.cols, [v // content for v in ints])


def random_rank3_symmetric(g: int, rng: random.Random) -> RationalMatrix:
    """G^T D G with D = diag(d1, d2, d3, 0, ...) and G invertible."""
    if g < 3:
        raise ValueError("need g >= 3 for a rank-3 matrix")
    d = []
    for _ in range(3):
        x = Fraction(0)
        while not x:
            x = random_rational(rng)
        d.append(x)
    while True:
        G = RationalMatrix(g, g, [random_rational(rng) for _ in range(g * g)])
        if matrix_rank(G) == g:
            break
    D = RationalMatrix(g, g, [d[i] if i == j and i < 3 else 0
                              for i in range(g) for j in range(g)])
    return G.transpose() @ D @ G


def diagonal_matrix(values) -> RationalMatrix:
    n = len(values)
    return RationalMatrix(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)])


def multiplicity_trivial_rank2(g: int) -> Rank2TrivialReport:
    if g < 2:
        raise ValueError("genus must be >= 2")
    tangent = binomial(g + 1, 2) + binomial(g, 3)
    if g == 2:
        corank, segre, mult = 0, 1, 1
    else:
        corank = corank_formula(g)
        segre = harris_tu_degree(g, g - 3)
        mult = (1 + corank) * segre
    cone = tangent_cone_trivial_rank2(g, _multiplicity=mult)
    return Rank2TrivialReport(g=g, tangent_space_dim=tangent, corank_dim=corank,
                              segre_factor=segre, multiplicity=mult, cone=cone)


def sym_names(g: int) -> dict[tuple[int, int], str]:
    return {(i, j): index_name("T", (i, j), g)
            for i in range(1, g + 1) for j in range(i, g + 1)}


def triple_names(g: int) -> dict[tuple[int, int, int], str]:
    return {t: index_name("T", t, g) for t in itertools.combinations(range(1, g + 1), 3)}


class SymbolTable:
    """Lookup of T_{i,j} (symmetric) and T_{i,j,k} (alternating) as polynomials."""

    def __init__(self, g: int, with_triples: bool = True):
        self.g = g
        self.two = sym_names(g)
        self.three = triple_names(g) if with_triples else {}
        self.variables = list(self.two.values()) + list(self.three.values())
        self._p = {name: Polynomial.var(name, self.variables) for name in self.variables}
        self.zero = Polynomial(self.variables)

    def t2(self, i: int, j: int) -> Polynomial:
        return self._p[self.two[min(i, j), max(i, j)]]

    def t3(self, i: int, j: int, k: int) -> Polynomial:
        sign, key = alternating_key((i, j, k))
        if sign == 0:
            return self.zero
        p = self._p[self.three[key]]
        return p if sign > 0 else -p

    def matrix(self, rows, cols) -> list[list[Polynomial]]:
        return [[self.t2(i, j) for j in cols] for i in rows]


def alternating_key(idx) -> tuple[int, tuple]:
    """(sign, sorted indices) for an alternating symbol; sign 0 on repeats."""
    if len(set(idx)) != len(idx):
        return 0, tuple(sorted(idx))
    inversions = sum(1 for a, b in itertools.combinations(idx, 2) if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(idx))


def four_minors(tab: SymbolTable) -> list[Polynomial]:
    """All 4x4 minors of the symmetric matrix, one per unordered pair of
    index sets (minor(R, C) = minor(C, R) by symmetry)."""
    subsets = list(itertools.combinations(range(1, tab.g + 1), 4))
    out = []
    for a, R in enumerate(subsets):
        for C in subsets[a:]:
            out.append(symbolic_determinant(tab.matrix(R, C)))
    return out


def relation4(tab: SymbolTable, i0, i1, i2, i3, i4) -> Polynomial:
    return (tab.t2(i0, i4) * tab.t3(i1, i2, i3)
            - tab.t2(i1, i4) * tab.t3(i0, i2, i3)
            + tab.t2(i2, i4) * tab.t3(i0, i1, i3)
            - tab.t2(i3, i4) * tab.t3(i0, i1, i2))


def tangent_cone_trivial_rank2(g: int, _multiplicity: int | None = None) -> ConePresentation:
    if g < 2:
        raise ValueError("genus must be >= 2")
    tab = SymbolTable(g)
    equations: list[Polynomial] = []
    seen: set = set()

    def emit(p: Polynomial):
        if p.is_zero():
            return
        key = p.normalized()
        if key not in seen:
            seen.add(key)
            equations.append(p)

    for p in four_minors(tab):
        emit(p)
    triples = list(tab.three)
    for a, s in enumerate(triples):
        for t in triples[a:]:
            emit(tab.t3(*s) * tab.t3(*t))
    for quad in itertools.combinations(range(1, g + 1), 4):
        for i4 in range(1, g + 1):
            emit(relation4(tab, *quad, i4))
    if _multiplicity is None:
        _multiplicity = multiplicity_trivial_rank2(g).multiplicity
    return ConePresentation(
        variables=tab.variables,
        equations=equations,
        free_dim=0,
        declared_multiplicity=_multiplicity,
        tangent_space_dim=len(tab.variables),
    )
