"""
Tests for lambda-prolongation, the determining equation, the ansatz solver
and equivalence of lambda-symmetries
"""

import itertools
import sys
import os

# Add the project root to the path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..'))

import pytest
import sympy

from backend.lamsym.corpus import load_corpus
from backend.lamsym.errors import EmptyResult, NotASymmetry, NotRationalInYPrime
from backend.lamsym.expr import T, coordinate, dependent, equal, is_zero
from backend.lamsym.jlm import lambda_from_divergence
from backend.lamsym.parser import parse_expr, parse_ode
from backend.lamsym.symmetry import (
    AnsatzBasis,
    PointField,
    default_basis,
    determining_residual,
    equivalence_classes,
    equivalence_residual,
    in_span,
    is_equivalent,
    lambda_prolong,
    solve_determining,
)
from backend.lamsym.symmetry.equivalence import certify


Y = dependent('y')
YP = coordinate('y', 1)

PV = "y'' = -2*y*y' + q(t)*y' + q'(t)*y"
KAMKE = "y'' = y'^2/y + f'(t)*y^(p+1) + p*f(t)*y'*y^p"
EQ38 = "2*y*y'' - 6*y'^2 + y^5 + y^2 = 0"


def field(tau: str, eta: str) -> PointField:
    return PointField(parse_expr(tau), parse_expr(eta))


@pytest.fixture
def pv():
    return parse_ode(PV)


class TestProlongation:
    """Test the first and second lambda-prolongation."""

    def test_kamke_first_prolongation(self):
        """Test eta1 of (0, 1/y) with lambda_J for Kamke 6.542."""
        ode = parse_ode(KAMKE)
        eta1, = lambda_prolong(field('0', '1/y'), lambda_from_divergence(ode), 1, ode)
        assert equal(eta1, parse_expr("p*y^(p-1)*f(t) + y'/y^2"))

    def test_painleve_v_first_prolongation(self, pv):
        """Test eta1 of d/dy with lambda = -2y + q."""
        eta1, = lambda_prolong(field('0', '1'), parse_expr('-2*y + q(t)'), 1, pv)
        assert equal(eta1, parse_expr('q(t) - 2*y'))

    def test_classical_translation(self, pv):
        """Test that d/dt with lambda = 0 has eta1 = 0."""
        eta1, = lambda_prolong(field('1', '0'), 0, 1, pv)
        assert eta1 == 0

    def test_second_order_is_on_shell(self, pv):
        """Test that eta2 holds no y''."""
        eta1, eta2 = lambda_prolong(field('t', 'y^2'), parse_expr('y'), 2, pv)
        assert coordinate('y', 2) not in eta2.free_symbols

    def test_order_range(self, pv):
        """Test that only orders 1 and 2 exist."""
        with pytest.raises(ValueError):
            lambda_prolong(field('1', '0'), 0, 3, pv)


class TestDeterminingResidual:
    """Test the determining equation."""

    def test_painleve_v(self, pv):
        """Test that (d/dy, -2y + q) is a lambda-symmetry of Painleve-Ince V."""
        assert is_zero(determining_residual(pv, field('0', '1'), parse_expr('-2*y + q(t)')))

    def test_painleve_v_not_a_point_symmetry(self, pv):
        """Test that d/dy alone is not a point symmetry."""
        assert not is_zero(determining_residual(pv, field('0', '1'), 0))

    def test_example_four(self):
        """Test the ex4-catalano symmetry with lambda_J."""
        ode = parse_ode("y'' = (t*y' - t*y^2 + y^2)*exp(-1/y) + 2*y'^2/y + y'")
        lam = lambda_from_divergence(ode)
        assert is_zero(determining_residual(ode, field('0', '1/(y^2*exp(t))'), lam))

    def test_point_field_rejects_coordinates(self):
        """Test that tau and eta are functions of (t, y) only."""
        with pytest.raises(NotASymmetry):
            PointField(YP, 0)


class TestAnsatzBasis:
    """Test candidate generation."""

    def test_window_monomials(self):
        """Test a window of 1 over (t, y)."""
        basis = AnsatzBasis(window=1, variables=(T, Y))
        assert len(basis.monomials()) == 9

    def test_proportional_generators_kept_once(self):
        """Test that y and 2*y count once."""
        basis = AnsatzBasis(generators=(Y, 2 * Y), window=0)
        assert len(basis) == 2

    def test_default_basis_harvests_functions(self, pv):
        """Test that q(t) and q'(t) become factors."""
        basis = default_basis(pv, window=0)
        names = {str(f) for f in basis.factors}
        assert names == {'q(t)', "q'(t)"}


class TestSolver:
    """Test solve_determining."""

    def test_painleve_v(self, pv):
        """Test that both Painleve-Ince V symmetries are in the solver's span."""
        lam = lambda_from_divergence(pv)
        found = [S.field for S in solve_determining(pv, lam, default_basis(pv, window=2))]
        assert in_span(field('0', '1'), found)
        assert in_span(field('1', 'y*q(t) - y^2'), found)

    def test_eq38(self):
        """Test that (1/y^6, 0) is recovered for the implicit equation."""
        ode = parse_ode(EQ38)
        basis = default_basis(ode, window=1, hints=[parse_expr('1/y^6')])
        found = [S.field for S in solve_determining(ode, lambda_from_divergence(ode), basis)]
        assert in_span(field('1/y^6', '0'), found)

    def test_results_verify(self, pv):
        """Test that every returned symmetry has zero residual."""
        lam = lambda_from_divergence(pv)
        for S in solve_determining(pv, lam, default_basis(pv, window=1)):
            assert is_zero(determining_residual(pv, S.field, S.lam))
            assert equal(S.characteristic, S.field.eta - YP * S.field.tau)

    def test_empty_result(self):
        """Test that constant fields do not solve y'' = t*y with lambda = 0."""
        ode = parse_ode("y'' = t*y")
        with pytest.raises(EmptyResult):
            solve_determining(ode, 0, AnsatzBasis(window=0))

    def test_not_rational_in_yprime(self):
        """Test that y' under a kernel is refused."""
        ode = parse_ode("y'' = exp(y')")
        with pytest.raises(NotRationalInYPrime):
            solve_determining(ode, 0, AnsatzBasis(window=0))


class TestEquivalence:
    """Test the equivalence criterion."""

    def test_kamke(self):
        """Test (0, 1/y) with lambda_J against d/dy with the alternative lambda."""
        ode = parse_ode(KAMKE)
        s1 = certify(ode, field('0', '1/y'), lambda_from_divergence(ode))
        s2 = certify(ode, field('0', '1'), parse_expr("p*y^p*f(t) + y'/y"))
        assert is_equivalent(ode, s1, s2)

    def test_painleve_v_pair(self, pv):
        """Test that the two Painleve-Ince V symmetries are equivalent."""
        lam = lambda_from_divergence(pv)
        s1 = certify(pv, field('0', '1'), lam)
        s2 = certify(pv, field('1', 'y*q(t) - y^2'), lam)
        assert is_equivalent(pv, s1, s2)
        assert is_equivalent(pv, s2, s1)
        assert equivalence_classes(pv, [s1, s2]) == [0, 0]

    def test_eq38_against_translation(self):
        """Test (1/y^6, 0) with lambda_J against d/dt with lambda = 0."""
        ode = parse_ode(EQ38)
        s1 = certify(ode, field('1/y^6', '0'), lambda_from_divergence(ode))
        s2 = certify(ode, field('1', '0'), 0)
        assert is_equivalent(ode, s1, s2)

    def test_reflexive(self, pv):
        """Test that a symmetry is equivalent to itself."""
        s = certify(pv, field('0', '1'), lambda_from_divergence(pv))
        assert equivalence_residual(pv, s, s) == 0

    @pytest.mark.parametrize('entry', load_corpus(), ids=lambda e: e.id)
    def test_reflexive_and_symmetric_on_corpus(self, entry):
        """Test both laws on every worked equation's certified symmetries."""
        ode = parse_ode(entry.ode_text)
        lam = lambda_from_divergence(ode)
        symmetries = [certify(ode, field(tau, eta), lam) for tau, eta in entry.expected_symmetries]
        symmetries += [
            certify(ode, field(tau, eta), parse_expr(alt)) for tau, eta, alt in entry.equivalent
        ]
        for S in symmetries:
            assert is_equivalent(ode, S, S)
        for S1, S2 in itertools.combinations(symmetries, 2):
            assert is_equivalent(ode, S1, S2) == is_equivalent(ode, S2, S1)

    def test_inequivalent_point_symmetries(self):
        """Test that d/dy and y*d/dy of y'' = 0 are not equivalent."""
        ode = parse_ode("y'' = 0")
        s1 = certify(ode, field('0', '1'), 0)
        s2 = certify(ode, field('0', 'y'), 0)
        assert not is_equivalent(ode, s1, s2)
        assert equivalence_classes(ode, [s1, s2, s1]) == [0, 1, 0]

    def test_certify_rejects(self, pv):
        """Test that certify names a pair that fails the determining equation."""
        with pytest.raises(NotASymmetry) as exc_info:
            certify(pv, field('0', '1'), 0, label='translation')
        assert 'translation' in exc_info.value.message


class TestSpan:
    """Test span membership of point fields."""

    def test_scaled_member(self):
        """Test that (0, 2) is in the span of (0, 1)."""
        assert in_span(field('0', '2'), [field('0', '1')])

    def test_combination(self):
        """Test a combination of two fields."""
        assert in_span(field('1', '3*y'), [field('1', '0'), field('0', 'y')])

    def test_not_member(self):
        """Test that (1, 0) is not in the span of (0, 1)."""
        assert not in_span(field('1', '0'), [field('0', '1')])

    def test_components_not_mixed(self):
        """Test that (y, 0) is not in the span of (0, y)."""
        assert not in_span(field('y', '0'), [field('0', 'y')])
