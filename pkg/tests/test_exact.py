from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bundlelocal.exact import (GaussianRational, Polynomial, RationalMatrix, RowSpace,
                               bareiss_determinant, binomial, leibniz_determinant,
                               matrix_rank, newton_interpolate, poly_partial,
                               random_rational, solve_linear, sparse_integer_rank,
                               symbolic_determinant)


def naive_rank(rows):
    """Plain Gauss-Jordan over Fraction, kept deliberately simple."""
    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][c]:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def random_matrix(rng, rows, cols, zero_rate=0.0):
    return [[Fraction(0) if rng.random() < zero_rate else random_rational(rng)
             for _ in range(cols)] for _ in range(rows)]


@pytest.mark.parametrize("n,k,expected", [(0, 0, 1), (4, 2, 6), (2, 3, 0)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


def test_rational_field_axioms_are_exact(rng):
    for _ in range(500):
        a, b, c = (random_rational(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c


def test_random_rational_ranges(rng):
    for _ in range(200):
        x = random_rational(rng)
        assert x.denominator <= 10
        assert abs(x) <= 20


@pytest.mark.parametrize("rows,expected", [
    ([[1, 0], [0, 1]], 2),
    ([[1, 1, 1]] * 3, 1),
    ([[1, 2], [2, 4], [3, 6]], 1),
])
def test_matrix_rank_examples(rows, expected):
    assert matrix_rank(RationalMatrix.from_rows(rows)) == expected


def test_rank_invariant_under_transpose(rng):
    for _ in range(100):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        m = RationalMatrix.from_rows(random_matrix(rng, r, c, zero_rate=0.4))
        assert matrix_rank(m) == matrix_rank(m.transpose())


def test_bareiss_rank_agrees_with_naive_elimination(rng):
    for _ in range(100):
        r, c = rng.randint(1, 7), rng.randint(1, 7)
        k = rng.randint(1, min(r, c))
        # product of r x k and k x c has rank <= k, exercising deficient cases
        A = RationalMatrix.from_rows(random_matrix(rng, r, k))
        B = RationalMatrix.from_rows(random_matrix(rng, k, c))
        rows = (A @ B).to_rows()
        assert matrix_rank(rows) == naive_rank(rows)


def test_sparse_rank_agrees_with_bareiss(rng):
    for _ in range(100):
        r, c = rng.randint(1, 9), rng.randint(1, 9)
        rows = [[rng.randint(-3, 3) if rng.random() < 0.35 else 0 for _ in range(c)]
                for _ in range(r)]
        sparse = [{j: x for j, x in enumerate(row) if x} for row in rows]
        assert sparse_integer_rank(sparse) == matrix_rank(rows)


def test_determinant_matches_leibniz(rng):
    for n in range(1, 6):
        m = random_matrix(rng, n, n, zero_rate=0.2)
        assert bareiss_determinant(m) == leibniz_determinant(m)


def _vars(names):
    return {n: Polynomial.var(n, names) for n in names}


def test_symbolic_determinant_small():
    v = _vars(["x"])
    assert symbolic_determinant([[v["x"]]]) == v["x"]
    v = _vars(["a", "b", "c", "d"])
    m = [[v["a"], v["b"]], [v["c"], v["d"]]]
    assert symbolic_determinant(m) == v["a"] * v["d"] - v["b"] * v["c"]


def test_symbolic_determinant_generic_symmetric_3x3():
    names = ["T11", "T12", "T13", "T22", "T23", "T33"]
    v = _vars(names)
    S = [[v[f"T{min(i, j)}{max(i, j)}"] for j in (1, 2, 3)] for i in (1, 2, 3)]
    d = symbolic_determinant(S)
    # brute-force signed permutation sum as the oracle
    assert d == leibniz_determinant(S)
    assert d.degree() == 3 and d.is_homogeneous()
    assert sorted(d.terms.values()) == [-1, -1, -1, 1, 2]


def test_symbolic_determinant_constant_entries(rng):
    for n in range(1, 5):
        m = random_matrix(rng, n, n)
        P = [[Polynomial.constant(["x"], x) for x in row] for row in m]
        det = symbolic_determinant(P)
        assert det == Polynomial.constant(["x"], bareiss_determinant(m))


def test_symbolic_determinant_rejects_non_square():
    v = _vars(["x"])
    with pytest.raises(ValueError):
        symbolic_determinant([[v["x"], v["x"]]])


def test_partial_examples():
    T = Polynomial.var("T", ["T"])
    assert poly_partial(T * T, "T") == 2 * T
    v = _vars(["X1", "X2", "X3", "X4", "X5"])
    assert poly_partial(v["X4"] * v["X5"] - v["X1"] * v["X2"] * v["X3"], "X4") == v["X5"]
    names = ["T11", "T12", "T13", "T22", "T23", "T33"]
    w = _vars(names)
    S = [[w[f"T{min(i, j)}{max(i, j)}"] for j in (1, 2, 3)] for i in (1, 2, 3)]
    assert poly_partial(symbolic_determinant(S), "T11") == w["T22"] * w["T33"] - w["T23"] ** 2
    with pytest.raises(ValueError):
        poly_partial(T, "U")


def _random_poly(rng, names, nterms=4, maxdeg=3):
    terms = {}
    for _ in range(nterms):
        terms[tuple(rng.randint(0, maxdeg) for _ in names)] = random_rational(rng)
    return Polynomial(names, terms)


def test_partial_linear_and_leibniz(rng):
    names = ["x", "y", "z"]
    for _ in range(100):
        p, q = _random_poly(rng, names), _random_poly(rng, names)
        c = random_rational(rng)
        for v in names:
            assert poly_partial(p + c * q, v) == poly_partial(p, v) + c * poly_partial(q, v)
            assert poly_partial(p * q, v) == poly_partial(p, v) * q + p * poly_partial(q, v)


def test_polynomial_variables_sorted_and_checked():
    p = Polynomial(["y", "x"], {(1, 0): 1})
    assert p.variables == ("x", "y")
    assert p == Polynomial.var("y", ["x", "y"])
    with pytest.raises(ValueError):
        p + Polynomial.var("x", ["x"])
    assert Polynomial(["x"], {(1,): 0}).is_zero()


def test_initial_form():
    v = _vars(["T", "a"])
    f = v["T"] ** 2 - v["a"] ** 3
    assert f.initial_form() == v["T"] ** 2
    assert f.min_degree() == 2


poly_terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
    max_size=5,
)


@given(poly_terms, poly_terms, poly_terms)
def test_polynomial_ring_axioms(a, b, c):
    p, q, r = (Polynomial(["x", "y"], t) for t in (a, b, c))
    assert (p + q) + r == p + (q + r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert (p - p).is_zero()


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=1, max_size=6))
def test_newton_interpolation_reproduces_polynomial(coeffs):
    def f(x):
        return sum(c * x ** k for k, c in enumerate(coeffs))
    xs = list(range(len(coeffs)))
    assert newton_interpolate(xs, [f(x) for x in xs]) == [Fraction(c) for c in coeffs]


def test_solve_linear_reports_ranks():
    x, ra, rb = solve_linear([[1, 1], [1, -1]], [3, 1])
    assert x == [2, 1] and ra == rb == 2
    x, ra, rb = solve_linear([[1, 1], [2, 2]], [1, 3])
    assert x is None and (ra, rb) == (1, 2)


def test_rowspace_express_returns_combination(rng):
    vecs = [[random_rational(rng) for _ in range(5)] for _ in range(3)]
    space = RowSpace(5)
    for v in vecs:
        space.add(v)
    target = [2 * a - b + Fraction(1, 3) * c for a, b, c in zip(*vecs)]
    combo = space.express(target)
    assert combo is not None
    rebuilt = [sum(combo.get(k, 0) * vecs[k][j] for k in range(3)) for j in range(5)]
    assert rebuilt == target


def test_gaussian_rational_arithmetic():
    i = GaussianRational(0, 1)
    assert i * i == -1
    z = GaussianRational(Fraction(1, 2), 3)
    assert z / z == 1
    assert (z - z) == 0
    assert z.conjugate() * z == GaussianRational(Fraction(1, 4) + 9, 0)
