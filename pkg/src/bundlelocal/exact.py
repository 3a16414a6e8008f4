"""Exact arithmetic layer: rationals, Gaussian rationals, sparse polynomials
and fraction-free linear algebra.

Rationals are :class:`fractions.Fraction`, which is always stored reduced
with a positive denominator.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rational = Fraction


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def random_rational(rng: random.Random) -> Fraction:
    """Numerator uniform in [-20, 20], denominator uniform in [1, 10]."""
    return Fraction(rng.randint(-20, 20), rng.randint(1, 10))


# ---------------------------------------------------------------------------
# Gaussian rationals

@dataclass(frozen=True)
class GaussianRational:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        return cls(Fraction(x), Fraction(0))

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials

class Polynomial:
    """Sparse polynomial over Q.

    ``terms`` maps exponent tuples to nonzero :class:`Fraction` coefficients.
    Variables are kept in lexicographic order of their names; binary
    operations require both operands to share the same variable tuple.
    """

    __slots__ = ("variables", "terms", "_index")

    def __init__(self, variables: Iterable[str],
                 terms: Mapping[Sequence[int], object] | None = None):
        given = tuple(variables)
        if len(set(given)) != len(given):
            raise ValueError(f"duplicate variable names: {given}")
        ordered = tuple(sorted(given))
        perm = [given.index(v) for v in ordered]
        clean = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != len(given):
                raise ValueError("exponent length does not match variables")
            if any(e < 0 for e in exp):
                raise ValueError("negative exponent")
            c = Fraction(coef)
            if c:
                key = tuple(exp[p] for p in perm)
                c = clean.get(key, 0) + c
                if c:
                    clean[key] = c
                else:
                    clean.pop(key, None)
        self.variables = ordered
        self.terms = clean
        self._index = {v: i for i, v in enumerate(ordered)}

    @classmethod
    def _raw(cls, variables, terms, index=None):
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._index = index if index is not None else {v: i for i, v in enumerate(variables)}
        return p

    @classmethod
    def constant(cls, variables: Iterable[str], value=1) -> Polynomial:
        variables = tuple(sorted(variables))
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def var(cls, name: str, variables: Iterable[str]) -> Polynomial:
        variables = tuple(sorted(variables))
        if name not in variables:
            raise ValueError(f"unknown variable {name!r}")
        exp = tuple(int(v == name) for v in variables)
        return cls(variables, {exp: 1})

    @classmethod
    def monomial(cls, variables: Iterable[str], exp: Sequence[int], coef=1) -> Polynomial:
        return cls(tuple(variables), {tuple(exp): coef})

    # -- basic protocol ----------------------------------------------------

    def _check(self, other: Polynomial):
        if self.variables != other.variables:
            raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")

    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.variables, Fraction(other))

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.variables, out, self._index)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.variables, {e: -c for e, c in self.terms.items()}, self._index)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            if not c:
                return Polynomial._raw(self.variables, {}, self._index)
            return Polynomial._raw(self.variables, {e: v * c for e, v in self.terms.items()}, self._index)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.variables, out, self._index)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self.terms == other.terms
        try:
            return self == self._lift(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, reverse=True):
            c = self.terms[exp]
            mono = "*".join(v if e == 1 else f"{v}^{e}"
                            for v, e in zip(self.variables, exp) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> Polynomial:
        return Polynomial._raw(self.variables,
                               {e: c for e, c in self.terms.items() if sum(e) == d},
                               self._index)

    def initial_form(self) -> Polynomial:
        """Lowest-degree homogeneous component."""
        return self.homogeneous_part(self.min_degree())

    def used_variables(self) -> set[str]:
        return {v for i, v in enumerate(self.variables) if any(e[i] for e in self.terms)}

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items())

    # -- transformations ---------------------------------------------------

    def partial(self, var: str) -> Polynomial:
        return poly_partial(self, var)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at a point; values may be any ring elements supporting + and *."""
        vals = [values[v] for v in self.variables]
        total = 0
        for exp, c in self.terms.items():
            term = c
            for x, e in zip(vals, exp):
                if e:
                    term = term * x ** e
            total = total + term
        return total

    def substitute(self, images: Mapping[str, Polynomial], target_vars: Sequence[str]) -> Polynomial:
        """Ring map sending each variable to a polynomial over ``target_vars``."""
        target = tuple(sorted(target_vars))
        result = Polynomial(target)
        cache: dict = {}
        for exp, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for v, e in zip(self.variables, exp):
                if e:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = images[v] ** e
                    term = term * cache[key]
            result = result + term
        return result

    def rename(self, mapping: Mapping[str, str]) -> Polynomial:
        new_vars = [mapping.get(v, v) for v in self.variables]
        return Polynomial(new_vars, self.terms)

    def normalized(self) -> Polynomial:
        """Scale so the lexicographically largest term has coefficient 1."""
        if not self.terms:
            return self
        lead = self.terms[max(self.terms)]
        return self * (1 / lead)


def poly_partial(p: Polynomial, var: str) -> Polynomial:
    if var not in p._index:
        raise ValueError(f"unknown variable {var!r}")
    i = p._index[var]
    out = {}
    for exp, c in p.terms.items():
        if exp[i]:
            e = list(exp)
            e[i] -= 1
            out[tuple(e)] = c * exp[i]
    return Polynomial._raw(p.variables, out, p._index)


def monomials_of_degree(nvars: int, d: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree d, in lexicographic order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        exp = [0] * nvars
        for i in combo:
            exp[i] += 1
        out.append(tuple(exp))
    out.sort()
    return out


def symbolic_determinant(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant of a square matrix of polynomials by cofactor expansion."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("symbolic_determinant needs a square matrix")
    if n == 0:
        raise ValueError("empty matrix")
    variables = m[0][0].variables
    for row in m:
        for entry in row:
            if entry.variables != variables:
                raise ValueError("matrix entries over different variable lists")

    memo: dict = {}

    def minor(rows: tuple[int, ...], cols: tuple[int, ...]) -> Polynomial:
        if len(rows) == 1:
            return m[rows[0]][cols[0]]
        key = (rows, cols)
        if key in memo:
            return memo[key]
        r0, rest = rows[0], rows[1:]
        total = Polynomial(variables)
        for j, c in enumerate(cols):
            entry = m[r0][c]
            if entry.is_zero():
                continue
            sub = minor(rest, cols[:j] + cols[j + 1:])
            term = entry * sub
            total = total + term if j % 2 == 0 else total - term
        memo[key] = total
        return total

    return minor(tuple(range(n)), tuple(range(n)))


# ---------------------------------------------------------------------------
# Dense rational matrices

class RationalMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        entries = tuple(Fraction(x) for x in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> RationalMatrix:
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(nrows, ncols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls(rows, cols, [0] * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(self.cols, self.rows,
                              [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                out.append(sum((r[k] * other[k, j] for k in range(self.cols) if r[k]), Fraction(0)))
        return RationalMatrix(self.rows, other.cols, out)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i))

    def __eq__(self, other):
        return (isinstance(other, RationalMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"RationalMatrix({self.to_rows()})"


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for r in rows:
        r = [Fraction(x) for x in r]
        scale = math.lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * scale) for x in r])
    return out


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free Bareiss elimination."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    nrows = len(a)
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = next((i for i in range(rank, nrows) if a[i][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        prow = a[rank]
        for i in range(rank + 1, nrows):
            row = a[i]
            f = row[col]
            if f:
                a[i] = [(p * x - f * y) // prev for x, y in zip(row, prow)]
            else:
                a[i] = [(p * x) // prev for x in row]
        prev = p
        rank += 1
    return rank


def sparse_integer_rank(vectors: Iterable[Mapping[int, int]]) -> int:
    """Rank of integer vectors given as sparse {index: value} maps.

    Fraction-free elimination where every stored row is kept primitive (its
    content divided out), so entries stay small on sparse inputs.
    """
    pivots: dict[int, dict[int, int]] = {}
    for vec in vectors:
        r = {k: int(v) for k, v in vec.items() if v}
        while r:
            lead = min(r)
            p = pivots.get(lead)
            if p is None:
                content = math.gcd(*r.values())
                pivots[lead] = {k: v // content for k, v in r.items()}
                break
            a, b = p[lead], r[lead]
            common = math.gcd(a, b)
            a //= common
            b //= common
            new = {k: a * v for k, v in r.items()}
            for k, v in p.items():
                x = new.get(k, 0) - b * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            if new:
                content = math.gcd(*new.values())
                if content > 1:
                    new = {k: v // content for k, v in new.items()}
            r = new
    return len(pivots)


def matrix_rank(m) -> int:
    """Exact rank over Q. Accepts a RationalMatrix or a list of rows."""
    rows = m.to_rows() if isinstance(m, RationalMatrix) else m
    return bareiss_rank(_integer_rows(rows))


def bareiss_determinant(m) -> Fraction:
    rows = m.to_rows() if isinstance(m, RationalMatrix) else [list(r) for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of non-square matrix")
    if n == 0:
        return Fraction(1)
    rows = [[Fraction(x) for x in r] for r in rows]
    scales = [math.lcm(*(x.denominator for x in r)) for r in rows]
    a = [[int(x * s) for x in r] for r, s in zip(rows, scales)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], math.prod(scales))


class RowSpace:
    """Incrementally maintained reduced row-echelon basis over Q.

    Each stored row remembers how it was built from the inserted vectors, so
    membership queries can return an explicit combination.
    """

    def __init__(self, width: int):
        self.width = width
        self._rows: list[tuple[int, list[Fraction], dict[int, Fraction]]] = []
        self._count = 0

    def __len__(self):
        return len(self._rows)

    def _reduce(self, vec, combo):
        vec = list(vec)
        for pivot, row, rcombo in self._rows:
            f = vec[pivot]
            if f:
                for j in range(pivot, self.width):
                    if row[j]:
                        vec[j] -= f * row[j]
                for k, c in rcombo.items():
                    combo[k] = combo.get(k, 0) - f * c
        return vec, combo

    def add(self, vec: Sequence) -> bool:
        """Insert a vector; returns True if it enlarged the span."""
        idx = self._count
        self._count += 1
        vec, combo = self._reduce([Fraction(x) for x in vec], {idx: Fraction(1)})
        pivot = next((j for j, x in enumerate(vec) if x), None)
        if pivot is None:
            return False
        inv = 1 / vec[pivot]
        vec = [x * inv for x in vec]
        combo = {k: c * inv for k, c in combo.items() if c}
        for n, (p, row, rcombo) in enumerate(self._rows):
            f = row[pivot]
            if f:
                self._rows[n] = (p, [a - f * b for a, b in zip(row, vec)],
                                 _combo_sub(rcombo, combo, f))
        self._rows.append((pivot, vec, combo))
        self._rows.sort(key=lambda t: t[0])
        return True

    def express(self, vec: Sequence) -> dict[int, Fraction] | None:
        """Coefficients c with sum c[k] * inserted[k] == vec, or None."""
        residual, combo = self._reduce([Fraction(x) for x in vec], {})
        if any(residual):
            return None
        return {k: -c for k, c in combo.items() if c}

    def contains(self, vec: Sequence) -> bool:
        return self.express(vec) is not None


def _combo_sub(a, b, f):
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) - f * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def solve_linear(rows: Sequence[Sequence], rhs: Sequence) -> tuple[list[Fraction] | None, int, int]:
    """Solve A x = b exactly.

    Returns ``(solution, rank(A), rank([A|b]))``; ``solution`` is None when
    the system is inconsistent, and otherwise a particular solution with free
    variables set to zero.
    """
    n = len(rows[0]) if rows else 0
    aug = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n + 1):
        p = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    rank_aug = len(pivots)
    rank_a = sum(1 for c in pivots if c < n)
    if rank_aug > rank_a:
        return None, rank_a, rank_aug
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return x, rank_a, rank_aug


def newton_interpolate(xs: Sequence, ys: Sequence) -> list[Fraction]:
    """Coefficients (constant term first) of the unique polynomial of degree
    < len(xs) through the points, via divided differences."""
    xs = [Fraction(x) for x in xs]
    table = [Fraction(y) for y in ys]
    n = len(xs)
    if len(set(xs)) != n:
        raise ValueError("interpolation nodes must be distinct")
    divided = [table[0]]
    for level in range(1, n):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(n - level)]
        divided.append(table[0])
    # expand the Newton form back to monomial coefficients
    coeffs = [Fraction(0)] * n
    basis = [Fraction(1)]
    for k in range(n):
        for i, b in enumerate(basis):
            coeffs[i] += divided[k] * b
        if k + 1 < n:
            nxt = [Fraction(0)] * (len(basis) + 1)
            for i, b in enumerate(basis):
                nxt[i + 1] += b
                nxt[i] -= xs[k] * b
            basis = nxt
    return coeffs


def leibniz_determinant(m: Sequence[Sequence]):
    """Determinant as the signed sum over permutations; used as an oracle."""
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i, j in enumerate(perm):
            term = term * m[i][j]
        total = total + term
    return total
