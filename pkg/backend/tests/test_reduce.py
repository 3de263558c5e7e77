"""
Tests for invariants, order reduction, quadrature and first integrals

Numeric drift checks integrate specialized equations with fixed-step RK4.
"""

import sys
import os

# Add the project root to the path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..'))

import pytest
import sympy

from backend.lamsym.errors import (
    InsufficientBasis,
    NonFiniteState,
    NoMatchInBasis,
    NotSupported,
    NumericFailure,
    PoleEncountered,
    VerificationFailure,
)
from backend.lamsym.expr import (
    T,
    antiderivative,
    coordinate,
    diff_partial,
    equal,
    function,
    function_bindings,
    is_zero,
)
from backend.lamsym.jlm import lambda_from_divergence
from backend.lamsym.parser import parse_expr, parse_ode
from backend.lamsym.reduce import (
    T1,
    Y1,
    FirstIntegral,
    InvariantPair,
    apply_prolonged,
    certify_pair,
    check_first_integral,
    find_invariants,
    independent,
    integral_in_original_variables,
    integrals_agree,
    integrate_trajectory,
    invariant_basis,
    numeric_drift,
    quadrature,
    reduce_basis,
    reduce_ode,
    reduction_residual,
)
from backend.lamsym.symmetry import AnsatzBasis, PointField
from backend.lamsym.symmetry.equivalence import certify


PV = "y'' = -2*y*y' + q(t)*y' + q'(t)*y"
PV_INTEGRAL = "-y*q(t) + y^2 + y'"
PXV = "y'' = y'^2/y + y'/y + r(t)*y^2 - y*(r''(t)/r(t) - r'(t)^2/r(t)^2)"
PXVI = "y'' = y'^2/y - q'(t)*y'/y + y^3 - q(t)*y^2 + q''(t)"
EX4 = "y'' = (t*y' - t*y^2 + y^2)*exp(-1/y) + 2*y'^2/y + y'"
EQ38 = "2*y*y'' - 6*y'^2 + y^5 + y^2 = 0"
EX5 = ("y'' = 2*y'^2/y + (t*exp(t/y) - 4/t)*y' - (3*y^2/t + y)*exp(t/y)"
       " + t*y^2 + 2*y/t^2")


def integral(text: str) -> FirstIntegral:
    return FirstIntegral(parse_expr(text))


def conserved(I, G) -> bool:
    """dI/dt1 vanishes along dy1/dt1 = G."""
    return is_zero(diff_partial(I, T1) + diff_partial(I, Y1) * G)


@pytest.fixture
def pv():
    return parse_ode(PV)


@pytest.fixture
def pv_symmetry(pv):
    return certify(pv, PointField(0, 1), lambda_from_divergence(pv))


# ============================================================================
# Invariants
# ============================================================================

class TestInvariants:
    """Test find_invariants and certify_pair."""

    def test_painleve_v_pair(self, pv, pv_symmetry):
        """Test that d/dy yields t and a y'-dependent invariant."""
        pairs = find_invariants(pv, pv_symmetry, invariant_basis(pv, window=2))
        pair = pairs[0]
        assert equal(pair.t1, T)
        assert coordinate('y', 1) in pair.y1.free_symbols
        assert is_zero(apply_prolonged(pv, pv_symmetry, pair.y1))
        assert independent(pv, pair.t1, pair.y1)

    def test_every_pair_is_invariant(self, pv, pv_symmetry):
        """Test that every returned pair is annihilated by the prolonged field."""
        for pair in find_invariants(pv, pv_symmetry, invariant_basis(pv, window=2)):
            assert is_zero(apply_prolonged(pv, pv_symmetry, pair.t1))
            assert is_zero(apply_prolonged(pv, pv_symmetry, pair.y1))

    def test_insufficient_basis(self, pv, pv_symmetry):
        """Test that a basis without y' gives no first-order invariant."""
        with pytest.raises(InsufficientBasis):
            find_invariants(pv, pv_symmetry, invariant_basis(pv, window=0))

    def test_translation_falls_back_to_t(self):
        """Test that tau = 0 supplies t1 = t when the basis has no order-0 invariant."""
        ode = parse_ode("y'' = 0")
        S = certify(ode, PointField(0, 1), 0)
        pairs = find_invariants(ode, S, AnsatzBasis(generators=(coordinate('y', 1),), window=0))
        assert equal(pairs[0].t1, T)
        assert equal(pairs[0].y1, coordinate('y', 1))

    def test_certify_pinned_pair(self):
        """Test the Painleve-Ince XVI pair and its reduced equation."""
        ode = parse_ode(PXVI)
        S = certify(ode, PointField(parse_expr('1/y^2'), parse_expr("q'(t)/y^2")),
                    lambda_from_divergence(ode))
        pair = certify_pair(ode, S, InvariantPair(parse_expr('y - q(t)'),
                                                  parse_expr("(y' - q'(t))/y")))
        G = reduce_ode(ode, pair, reduce_basis(1))
        assert equal(G, T1 / Y1)

    def test_certify_rejects_non_invariant(self, pv, pv_symmetry):
        """Test that y' is not an invariant of d/dy."""
        with pytest.raises(VerificationFailure):
            certify_pair(pv, pv_symmetry, InvariantPair(T, coordinate('y', 1)))

    def test_certify_rejects_dependent_pair(self, pv, pv_symmetry):
        """Test that t and t^2 are not independent."""
        with pytest.raises(VerificationFailure):
            certify_pair(pv, pv_symmetry, InvariantPair(T, T ** 2))


# ============================================================================
# Reduction
# ============================================================================

class TestReduction:
    """Test reduce_ode."""

    def test_painleve_v(self, pv):
        """Test that the Painleve-Ince V invariant is constant on solutions."""
        pair = InvariantPair(T, parse_expr(PV_INTEGRAL))
        G = reduce_ode(pv, pair, reduce_basis(1))
        assert G == 0
        assert reduction_residual(pv, pair, G) == 0

    def test_example_four(self):
        """Test dy1/dt1 = y1 for ex4-catalano."""
        ode = parse_ode(EX4)
        pair = InvariantPair(T, parse_expr("y'/y^2 - t*exp(-1/y)"))
        assert equal(reduce_ode(ode, pair, reduce_basis(1)), Y1)

    def test_no_match(self):
        """Test that constants cannot express dy1/dt1 = y1."""
        ode = parse_ode(EX4)
        pair = InvariantPair(T, parse_expr("y'/y^2 - t*exp(-1/y)"))
        with pytest.raises(NoMatchInBasis):
            reduce_ode(ode, pair, reduce_basis(0))


# ============================================================================
# Quadrature
# ============================================================================

class TestQuadrature:
    """Test closed-form quadrature of reduced equations."""

    def test_constant(self):
        """Test that G = 0 gives I = y1."""
        assert quadrature(0) == Y1

    def test_linear(self):
        """Test that G = y1 gives exp(-t1)*y1."""
        assert equal(quadrature(Y1), sympy.exp(-T1) * Y1)

    def test_separable(self):
        """Test that G = 1/y1 gives y1^2/2 - t1."""
        assert equal(quadrature(1 / Y1), Y1 ** 2 / 2 - T1)

    def test_linear_with_variable_coefficient(self):
        """Test the ex5-catalano reduced equation."""
        G = parse_expr('(-3*y1 + t1^2)/t1')
        assert conserved(quadrature(G), G)

    def test_bernoulli(self):
        """Test the reduced equation of the implicit example."""
        G = parse_expr('3*y1/t1 - (t1^4 + t1)/(2*y1)')
        I = quadrature(G)
        assert Y1 in I.free_symbols
        assert conserved(I, G)

    def test_not_supported(self):
        """Test that exp(t1*y1) has no supported form."""
        with pytest.raises(NotSupported):
            quadrature(sympy.exp(T1 * Y1))

    def test_marker_not_supported(self):
        """Test that markers in G are refused."""
        with pytest.raises(NotSupported):
            quadrature(antiderivative(function('r')) * Y1 ** 2)

    def test_back_in_original_variables(self):
        """Test composing the ex4-catalano quadrature with its pair."""
        ode = parse_ode(EX4)
        pair = InvariantPair(T, parse_expr("y'/y^2 - t*exp(-1/y)"))
        I = FirstIntegral(integral_in_original_variables(Y1, pair))
        assert check_first_integral(ode, I)
        assert integrals_agree(ode, I, integral("(y'/y^2 - t*exp(-1/y))*exp(-t)"))


# ============================================================================
# First Integrals
# ============================================================================

class TestFirstIntegrals:
    """Test symbolic first-integral checks."""

    def test_painleve_v(self, pv):
        """Test the Painleve-Ince V integral."""
        assert check_first_integral(pv, integral(PV_INTEGRAL))

    def test_painleve_xv_with_marker(self):
        """Test an integral holding the antiderivative of r."""
        ode = parse_ode(PXV)
        assert check_first_integral(
            ode, integral("(r'(t)/r(t) + (y' + 1)/y)^2 - 2*(r(t)*y + Int(r(t)))"),
        )

    def test_example_five(self):
        """Test the ex5-catalano integral with its exponential kernel."""
        ode = parse_ode(EX5)
        assert check_first_integral(
            ode, integral("t^2*(t*y^2*exp(t/y) - y + t*y')/y^2 - t^5/5"),
        )

    def test_verdict_ignores_other_equations(self):
        """Test that parsing y'' = 0 leaves y a parameter of x'' = y."""
        ode = parse_ode("x'' = y")
        I = integral("x' - y*t")
        assert check_first_integral(ode, I)
        parse_ode("y'' = 0")
        assert check_first_integral(ode, I)

    def test_not_an_integral(self, pv):
        """Test that y^2 is not conserved."""
        assert not check_first_integral(pv, integral('y^2'))

    def test_functions_of_an_integral_agree(self, pv):
        """Test that I^2 + 3 carries the same information as I."""
        I = parse_expr(PV_INTEGRAL)
        assert integrals_agree(pv, FirstIntegral(I), FirstIntegral(I ** 2 + 3))

    def test_different_integrals_disagree(self, pv):
        """Test that t and I are functionally independent."""
        assert not integrals_agree(pv, integral(PV_INTEGRAL), FirstIntegral(T))

    def test_str(self):
        """Test the constant name in the string form."""
        assert str(integral("y'")) == "y' = a1"


# ============================================================================
# Numeric Drift
# ============================================================================

class TestDrift:
    """Test RK4 drift of first integrals."""

    def test_painleve_v(self, pv):
        """Test drift with q(t) = t."""
        drift = numeric_drift(pv, integral(PV_INTEGRAL), function_bindings('q', T))
        assert drift < 1e-8

    def test_painleve_xvi(self):
        """Test drift with q(t) = t^2."""
        ode = parse_ode(PXVI)
        drift = numeric_drift(
            ode,
            integral("((y' - q'(t))/y)^2 - (y - q(t))^2"),
            function_bindings('q', T ** 2),
            ic=(0.0, 1.0, 0.5),
            t_end=0.5,
        )
        assert drift < 1e-7

    def test_constant_integral(self, pv):
        """Test that a constant has no drift."""
        assert numeric_drift(pv, FirstIntegral(1), function_bindings('q', T)) == 0.0

    @pytest.mark.parametrize('ode, text, binding, ic, t_end', [
        (PV, PV_INTEGRAL, ('q', T), (0.0, 1.0, 0.0), 1.0),
        (PXVI, "((y' - q'(t))/y)^2 - (y - q(t))^2", ('q', T ** 2), (0.0, 1.0, 0.5), 0.5),
        (EX4, "(y'/y^2 - t*exp(-1/y))*exp(-t)", None, (0.0, 1.0, 0.0), 1.0),
        (EQ38, "y'^2/y^6 - 1/y - 1/(4*y^4)", None, (0.0, 1.0, 0.0), 1.0),
    ], ids=['painleve-ince-V', 'painleve-ince-XVI', 'ex4-catalano', 'eq38'])
    def test_fourth_order_convergence(self, ode, text, binding, ic, t_end):
        """Test that halving the step reduces the drift by about 16."""
        specialization = function_bindings(*binding) if binding else None
        args = (parse_ode(ode), integral(text), specialization)
        coarse = numeric_drift(*args, ic=ic, t_end=t_end, step=0.05)
        fine = numeric_drift(*args, ic=ic, t_end=t_end, step=0.025)
        assert coarse / fine >= 8

    def test_complex_right_hand_side(self):
        """Test that an imaginary acceleration stops the integration."""
        ode = parse_ode("y'' = (-1)^(1/2)*y")
        with pytest.raises(NonFiniteState):
            numeric_drift(ode, integral("y'"), ic=(0.0, 1.0, 0.0))

    def test_pole(self):
        """Test that starting on a pole of the integral raises."""
        ode = parse_ode("y'' = 0")
        with pytest.raises(PoleEncountered):
            numeric_drift(ode, integral("y'/(y - 1)"), ic=(0.0, 1.0, 0.0))

    def test_unbound_function(self, pv):
        """Test that an unspecialized q(t) cannot be evaluated."""
        with pytest.raises(NumericFailure):
            numeric_drift(pv, integral(PV_INTEGRAL))

    def test_trajectory_marker_column(self):
        """Test that Int(r) becomes a state column growing like t when r = 1."""
        ode = parse_ode(PXV)
        table = integrate_trajectory(
            ode,
            integral("(r'(t)/r(t) + (y' + 1)/y)^2 - 2*(r(t)*y + Int(r(t)))"),
            function_bindings('r', 1),
            t_end=0.2,
            step=1e-3,
        )
        assert list(table.columns) == ['t', 'y', "y'", 'I', 'Int(1)']
        assert table['Int(1)'].iloc[-1] == pytest.approx(0.2)
        assert table['I'].max() - table['I'].min() < 1e-8
