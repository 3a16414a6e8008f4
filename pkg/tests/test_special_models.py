import itertools
from fractions import Fraction

import pytest

from bundlelocal.exact import Polynomial, newton_interpolate, poly_partial
from bundlelocal.special_models import (HilbertConstraint, HilbertSolveError, coble_local_model,
                                        coble_trivial_equation, constrained_hilbert_solve,
                                        degree_of_theta_map, express_in_ideal,
                                        hypersurface_multiplicity, kummer_partials_check,
                                        leading_coefficient, quadric_rank,
                                        solve_theta_hilbert_polynomial, su3_genus2_local_model)


def test_su3_torus_model():
    cone = su3_genus2_local_model("torus").presentation
    assert cone.ambient_dim == 9
    assert cone.free_dim == 4
    assert cone.declared_multiplicity == 2
    assert cone.tangent_space_dim == 9
    assert cone.notes["initial_form_rank"] == 2
    assert str(cone.equations[0]) in ("-X1*X2*X3 + X4*X5", "X4*X5 - X1*X2*X3")


def test_su3_two_summand_model():
    cone = su3_genus2_local_model("two_summand").presentation
    assert cone.ambient_dim == 9
    assert cone.declared_multiplicity == 2
    assert cone.notes["initial_form_rank"] == 4
    with pytest.raises(ValueError):
        su3_genus2_local_model("other")


def test_coble_models():
    trivial = coble_local_model("trivial").presentation
    assert trivial.ambient_dim == 7
    assert trivial.declared_multiplicity == 2
    assert trivial.tangent_space_dim == 7
    split = coble_local_model("split").presentation
    assert split.declared_multiplicity == 2
    assert split.notes["initial_form_rank"] == 4


def test_coble_equation_shape():
    q = coble_trivial_equation()
    assert q.initial_form() == Polynomial.var("T", q.variables) ** 2
    assert hypersurface_multiplicity(q) == 2
    assert q.degree() == 3


def test_quadric_rank():
    v = ["a", "b", "c"]
    a, b, c = (Polynomial.var(x, v) for x in v)
    assert quadric_rank(a * b) == 2
    assert quadric_rank(a * a + b * b + c * c) == 3
    assert quadric_rank((a + b) ** 2) == 1
    with pytest.raises(ValueError):
        quadric_rank(a * b * c)


def test_express_in_ideal():
    v = ["x", "y"]
    x, y = (Polynomial.var(n, v) for n in v)
    mults = express_in_ideal(x * x * y + y ** 3, [x * x, y * y])
    assert mults[0] * x * x + mults[1] * y * y == x * x * y + y ** 3
    assert express_in_ideal(x * y, [x * x, y * y]) is None


def test_kummer_ideal_all_relabelings():
    for perm in itertools.permutations((1, 2, 3)):
        assert kummer_partials_check(perm)


def test_partials_count():
    q = coble_trivial_equation()
    partials = [poly_partial(q, v) for v in q.variables]
    assert len(partials) == 7
    assert all(not p.is_zero() for p in partials)


def test_theta_hilbert_polynomial_against_interpolation():
    # symmetry about -3 fixes P(-6) = P(0) and P(-7) = P(1); nine values
    # then determine a degree-8 polynomial
    xs = list(range(-7, 2))
    ys = [9, 1, 0, 0, 0, 0, 0, 1, 9]
    coeffs = newton_interpolate(xs, ys)
    P = solve_theta_hilbert_polynomial()
    assert P == Polynomial(["n"], {(k,): c for k, c in enumerate(coeffs)})


def test_theta_hilbert_polynomial_data():
    P = solve_theta_hilbert_polynomial()
    assert P.degree() == 8
    assert leading_coefficient(P) == Fraction(2, 40320)
    assert degree_of_theta_map() == 2
    for n in range(-5, 0):
        assert P.evaluate({"n": n}) == 0
    assert P.evaluate({"n": 0}) == 1 and P.evaluate({"n": 1}) == 9
    assert P.evaluate({"n": 2}) == P.evaluate({"n": -8})


def test_constrained_solve_small_case():
    cons = [HilbertConstraint.symmetric_about(0), HilbertConstraint.value_at(1, 1),
            HilbertConstraint.zero_at(0)]
    assert str(constrained_hilbert_solve(2, cons)) == "n^2"


def test_constrained_solve_errors():
    with pytest.raises(HilbertSolveError):
        constrained_hilbert_solve(2, [HilbertConstraint.value_at(0, 1)])
    with pytest.raises(HilbertSolveError):
        constrained_hilbert_solve(0, [HilbertConstraint.value_at(0, 1), HilbertConstraint.value_at(1, 2)])
    with pytest.raises(ValueError):
        HilbertConstraint("bogus")
