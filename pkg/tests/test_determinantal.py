import itertools

import pytest

from bundlelocal.determinantal import (CorankMap, SymbolTable, alternating_key, contraction_matrix,
                                       corank_bruteforce, corank_formula, diagonal_matrix,
                                       four_minors, harris_tu_degree, multiplicity_trivial_rank2,
                                       random_rank3_symmetric, relation4,
                                       tangent_cone_trivial_rank2)
from bundlelocal.exact import Polynomial, RationalMatrix, binomial, matrix_rank, random_rational


def harris_tu_by_gamma_free_recursion(g, r):
    """Same product computed term by term with plain integers as a cross-check."""
    num, den = 1, 1
    for a in range(r):
        num *= binomial(g + a, r - a)
        den *= binomial(2 * a + 1, a)
    assert num % den == 0
    return num // den


def test_harris_tu_small_values():
    assert harris_tu_degree(3, 1) == 3
    assert harris_tu_degree(4, 2) == 10
    assert harris_tu_degree(4, 1) == 4
    assert harris_tu_degree(5, 5) == 1
    with pytest.raises(ValueError):
        harris_tu_degree(3, 4)


def test_harris_tu_against_integer_product():
    for g in range(1, 11):
        for r in range(g + 1):
            assert harris_tu_degree(g, r) == harris_tu_by_gamma_free_recursion(g, r)


def test_harris_tu_corank_one_is_determinant_degree():
    for g in range(1, 11):
        assert harris_tu_degree(g, 1) == g
        assert harris_tu_degree(g, g) == 1
        if g >= 2:
            assert harris_tu_degree(g, 2) == binomial(g + 1, 3)


def test_corank_formula_values():
    assert [corank_formula(g) for g in range(2, 7)] == [0, 1, 4, 10, 19]


def test_corank_bruteforce_hand_computed():
    # g=3: wedge^4 of a 3-space is zero, so the whole of wedge^3 is cokernel
    assert corank_bruteforce(CorankMap(3, diagonal_matrix([1, 1, 1]))) == 1
    # g=4, T=diag(1,2,3,0): images of e1*,e2*,e3* span three of the four
    # basis triples and e4* maps to zero, leaving only e123 uncovered
    assert corank_bruteforce(CorankMap(4, diagonal_matrix([1, 2, 3, 0]))) == 1


def test_sparse_corank_matches_dense_rank(rng):
    for g in range(3, 7):
        for _ in range(3):
            m = CorankMap(g, random_rank3_symmetric(g, rng))
            dense = contraction_matrix(m)
            assert corank_bruteforce(m) == binomial(g, 3) - matrix_rank(dense)


def test_corank_invariant_under_congruence(rng):
    for g in (4, 5):
        T = random_rank3_symmetric(g, rng)
        while True:
            G = RationalMatrix.from_rows([[random_rational(rng) for _ in range(g)] for _ in range(g)])
            if matrix_rank(G) == g:
                break
        T2 = G.transpose() @ T @ G
        assert corank_bruteforce(CorankMap(g, T)) == corank_bruteforce(CorankMap(g, T2))


def test_random_rank3_symmetric_has_rank_3(rng):
    for g in range(3, 9):
        T = random_rank3_symmetric(g, rng)
        assert T.is_symmetric()
        assert matrix_rank(T) == 3


def test_corank_map_validation():
    with pytest.raises(ValueError):
        CorankMap(3, RationalMatrix.from_rows([[1, 2, 0], [0, 1, 0], [0, 0, 1]]))
    with pytest.raises(ValueError):
        CorankMap(4, diagonal_matrix([1, 1, 1]))


def test_trivial_multiplicity_values():
    assert [multiplicity_trivial_rank2(g).multiplicity for g in (2, 3, 4)] == [1, 2, 20]
    rep = multiplicity_trivial_rank2(4)
    assert rep.corank_dim == 4 and rep.segre_factor == 4
    assert rep.tangent_space_dim == binomial(5, 2) + binomial(4, 3)


def test_alternating_key():
    assert alternating_key((1, 2, 3)) == (1, (1, 2, 3))
    assert alternating_key((2, 1, 3)) == (-1, (1, 2, 3))
    assert alternating_key((3, 1, 2)) == (1, (1, 2, 3))
    assert alternating_key((1, 1, 2))[0] == 0


def test_genus3_cone_is_a_double_point_in_triples():
    cone = tangent_cone_trivial_rank2(3)
    t = Polynomial.var("T123", cone.variables)
    assert cone.equations == [t * t]
    assert cone.ambient_dim == 7
    assert cone.declared_multiplicity == 2


def test_genus4_cone_shape():
    cone = tangent_cone_trivial_rank2(4)
    assert cone.ambient_dim == binomial(5, 2) + binomial(4, 3)
    assert all(e.is_homogeneous() for e in cone.equations)
    degrees = sorted(e.degree() for e in cone.equations)
    # one 4x4 determinant, 10 products of triples, 4 five-index linear relations
    assert degrees.count(4) == 1
    assert len(cone.equations) == 15


def _substitution(tab, u):
    values = {}
    for (i, j), name in tab.two.items():
        values[name] = sum(a * b for a, b in zip(u[i - 1], u[j - 1]))
    for (i, j, k), name in tab.three.items():
        a, b, c = u[i - 1], u[j - 1], u[k - 1]
        values[name] = (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                        + a[2] * (b[0] * c[1] - b[1] * c[0]))
    return values


def test_minors_and_relation4_vanish_on_gram_data(rng):
    for g in (4, 5):
        tab = SymbolTable(g)
        minors = four_minors(tab)
        rels = [relation4(tab, *q, i4) for q in itertools.combinations(range(1, g + 1), 4)
                for i4 in range(1, g + 1)]
        for _ in range(10):
            u = [[random_rational(rng) for _ in range(3)] for _ in range(g)]
            vals = _substitution(tab, u)
            for p in minors + rels:
                assert p.evaluate(vals) == 0
