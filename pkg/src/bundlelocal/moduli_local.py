"""Local data at a non-stable point whose graded object has two
non-isomorphic stable summands, and the theta-divisor multiplicity there."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .exact import Polynomial, binomial, newton_interpolate


class NotOnThetaDivisor(ValueError):
    """Raised when dim H^0(gr_1) = 0, i.e. the point does not lie on theta."""


@dataclass(frozen=True)
class SplitPoint:
    g: int
    r1: int
    r2: int

    def __post_init__(self):
        if self.g < 2:
            raise ValueError(f"genus must be >= 2, got {self.g}")
        if self.r1 < 1 or self.r2 < 1:
            raise ValueError(f"summand ranks must be >= 1, got {self.r1}, {self.r2}")

    @property
    def ranks(self) -> tuple[int, int]:
        return (self.r1, self.r2)


@dataclass(frozen=True)
class ExtDims:
    d: tuple[tuple[int, int], tuple[int, int]]

    @classmethod
    def of(cls, p: SplitPoint) -> ExtDims:
        r = p.ranks
        return cls(tuple(tuple(ext_dim(p.g, r[i], r[j], i == j) for j in range(2))
                         for i in range(2)))


@dataclass
class ConePresentation:
    """A cone (free smooth factor) x (affine cone cut out by ``equations``)."""

    variables: list[str]
    equations: list[Polynomial]
    free_dim: int
    declared_multiplicity: int
    tangent_space_dim: int
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        names = set(self.variables)
        for eq in self.equations:
            extra = eq.used_variables() - names
            if extra:
                raise ValueError(f"equation uses unlisted variables {sorted(extra)}")
        if self.declared_multiplicity < 1:
            raise ValueError("multiplicity must be >= 1")

    @property
    def ambient_dim(self) -> int:
        return len(self.variables)


def index_name(prefix: str, idx, bound: int) -> str:
    """``T12`` style names when every index is a single digit, otherwise
    zero-padded and underscore-separated so that name order = index order."""
    if bound <= 9:
        return prefix + "".join(str(i) for i in idx)
    width = len(str(bound))
    return prefix + "_" + "_".join(str(i).zfill(width) for i in idx)


def ext_dim(g: int, ri: int, rj: int, diagonal: bool) -> int:
    if g < 2 or ri < 1 or rj < 1:
        raise ValueError("need g >= 2 and positive ranks")
    return ri * rj * (g - 1) + (1 if diagonal else 0)


def free_factor_dim(p: SplitPoint) -> int:
    # trace-kernel of the diagonal Ext's: sum of d_ii minus h^1(O) = g
    return ext_dim(p.g, p.r1, p.r1, True) + ext_dim(p.g, p.r2, p.r2, True) - p.g


def tangent_space_dim_case1(p: SplitPoint) -> int:
    d = p.r1 * p.r2 * (p.g - 1)
    return (p.r1 ** 2 + p.r2 ** 2) * (p.g - 1) + 2 - p.g + d * d


def multiplicity_case1(p: SplitPoint) -> int:
    d = p.r1 * p.r2 * (p.g - 1)
    return binomial(2 * d - 2, d - 1)


def segre_degree_oracle(a: int, b: int) -> int:
    """Degree of P^{a-1} x P^{b-1} in its Segre embedding, read off from the
    interpolated Hilbert polynomial rather than from a closed form."""
    if a < 1 or b < 1:
        raise ValueError("need a, b >= 1")
    top = a + b - 2
    ns = list(range(top + 1))
    values = [binomial(n + a - 1, a - 1) * binomial(n + b - 1, b - 1) for n in ns]
    coeffs = newton_interpolate(ns, values)
    lead = coeffs[top]
    deg = lead * math.factorial(top)
    if deg.denominator != 1:
        raise ArithmeticError(f"non-integral Segre degree {deg}")
    return int(deg)


def tangent_cone_case1(p: SplitPoint) -> ConePresentation:
    ext = ExtDims.of(p)
    d12, d21 = ext.d[0][1], ext.d[1][0]
    nfree = free_factor_dim(p)
    ys = [index_name("Y", (i,), nfree) for i in range(1, nfree + 1)]
    bound = max(d12, d21)
    zname = {(k, l): index_name("Z", (k, l), bound)
             for k in range(1, d12 + 1) for l in range(1, d21 + 1)}
    zs = [zname[k, l] for k in range(1, d12 + 1) for l in range(1, d21 + 1)]
    variables = ys + zs
    z = {key: Polynomial.var(name, variables) for key, name in zname.items()}
    equations = []
    for k, k2 in itertools.combinations(range(1, d12 + 1), 2):
        for l, l2 in itertools.combinations(range(1, d21 + 1), 2):
            equations.append(z[k, l] * z[k2, l2] - z[k, l2] * z[k2, l])
    return ConePresentation(
        variables=variables,
        equations=equations,
        free_dim=nfree,
        declared_multiplicity=multiplicity_case1(p),
        tangent_space_dim=tangent_space_dim_case1(p),
        notes={"d12": d12, "d21": d21},
    )


def theta_multiplicity(g: int, h: int) -> int:
    """Multiplicity of theta at a split point with rank-1 summands, where
    h = dim H^0(gr_1) is supplied by the caller."""
    if g < 2:
        raise ValueError("genus must be >= 2")
    if h < 0:
        raise ValueError("h must be non-negative")
    if h == 0:
        raise NotOnThetaDivisor("h = 0: the point is not on the theta divisor")
    return h * binomial(2 * g - 4, g - 2)
