import cmath
import math

import pytest
from hypothesis import given, strategies as st

from transversal_injection.amplitude import (
    AmplitudePoly,
    InjectionState,
    LogicalState,
    ZeroProbabilityTrajectory,
    bloch,
    evaluate,
    normalize,
    poly_add_term,
)

PLUS = InjectionState(1 / math.sqrt(2), 1 / math.sqrt(2))
ZERO = InjectionState(1, 0)

# coefficient vectors c_w of alpha^(5-w) beta^w for the d=2, X=(1,0), Z=(0,1) state
EQ5_A = [0, 1, 1, -1, -1, 0]
EQ5_B = [0, -1, 1, 1, -1, 0]

angles = st.tuples(st.floats(0, math.pi), st.floats(0, 2 * math.pi))


class TestPoly:
    def test_add_term(self):
        p = poly_add_term(AmplitudePoly(5), 1, 1)
        assert p.coeffs == [0, 1, 0, 0, 0, 0]

    def test_cancellation(self):
        p = AmplitudePoly(5).add_term(1, 1).add_term(1, -1)
        assert p.is_zero()

    def test_eq5_terms(self):
        p = AmplitudePoly(5)
        for w, s in [(1, 1), (2, 1), (3, -1), (4, -1)]:
            p = p.add_term(w, s)
        assert p.coeffs == EQ5_A
        assert p.format() == "a^4*b + a^3*b^2 - a^2*b^3 - a*b^4"

    def test_bad_weight(self):
        with pytest.raises(ValueError):
            AmplitudePoly(5).add_term(6)

    def test_large_coefficients_stay_exact(self):
        p = AmplitudePoly(3, [2**70, 0, 0, -(2**70) + 1])
        assert (p + p).coeffs[0] == 2**71

    def test_json_roundtrip(self):
        p = AmplitudePoly(5, EQ5_B)
        assert p.to_json() == {"N": 5, "coeffs": EQ5_B}
        assert AmplitudePoly.from_json(p.to_json()) == p


class TestEvaluate:
    def test_eq5_vanishes_at_zero_state(self):
        assert evaluate(AmplitudePoly(5, EQ5_A), ZERO) == 0

    def test_constant_term(self):
        assert evaluate(AmplitudePoly(5, [1, 0, 0, 0, 0, 0]), ZERO) == 1

    def test_eq5_vanishes_at_plus(self):
        assert abs(evaluate(AmplitudePoly(5, EQ5_A), PLUS)) < 1e-15

    def test_direct_substitution(self):
        chi = InjectionState.from_angles(1.1, 0.4)
        a, b = chi.alpha, chi.beta
        want = a**4 * b + a**3 * b**2 - a**2 * b**3 - a * b**4
        assert cmath.isclose(evaluate(AmplitudePoly(5, EQ5_A), chi), want, abs_tol=1e-14)

    @given(st.lists(st.integers(-50, 50), min_size=6, max_size=6),
           st.lists(st.integers(-50, 50), min_size=6, max_size=6), angles)
    def test_linear(self, c1, c2, ang):
        chi = InjectionState.from_angles(*ang)
        p, q = AmplitudePoly(5, c1), AmplitudePoly(5, c2)
        assert cmath.isclose((p + q).evaluate(chi), p.evaluate(chi) + q.evaluate(chi), abs_tol=1e-9)


class TestNormalize:
    def test_pure_zero(self):
        state = LogicalState(AmplitudePoly(5, [1, 0, 0, 0, 0, 0]), AmplitudePoly(5))
        (a, b), norm2 = normalize(state, InjectionState.from_angles(0.3, 0.0))
        assert cmath.isclose(a, 1) and b == 0
        assert math.isclose(norm2, math.cos(0.15) ** 10)

    def test_zero_probability(self):
        state = LogicalState(AmplitudePoly(5, EQ5_A), AmplitudePoly(5, EQ5_B))
        with pytest.raises(ZeroProbabilityTrajectory):
            normalize(state, ZERO)

    def test_sign_normalized(self):
        state = LogicalState(-AmplitudePoly(5, EQ5_A), -AmplitudePoly(5, EQ5_B))
        fixed = state.sign_normalized()
        assert fixed.A.coeffs == EQ5_A and fixed.B.coeffs == EQ5_B

    def test_injection_state_must_be_unit(self):
        with pytest.raises(ValueError):
            InjectionState(1, 1)


class TestBloch:
    @pytest.mark.parametrize("a, b, want", [
        (1, 0, (0, 0, 1)),
        (1 / math.sqrt(2), 1 / math.sqrt(2), (1, 0, 0)),
        (1 / math.sqrt(2), 1j / math.sqrt(2), (0, 1, 0)),
    ])
    def test_axes(self, a, b, want):
        assert bloch(complex(a), complex(b)) == pytest.approx(want, abs=1e-12)

    def test_rejects_unnormalised(self):
        with pytest.raises(ValueError):
            bloch(1 + 0j, 1 + 0j)

    @given(angles, st.floats(0, 2 * math.pi))
    def test_global_phase_and_unit_norm(self, ang, gamma):
        chi = InjectionState.from_angles(*ang)
        phase = cmath.exp(1j * gamma)
        v = bloch(chi.alpha, chi.beta)
        assert bloch(phase * chi.alpha, phase * chi.beta) == pytest.approx(v, abs=1e-12)
        assert math.isclose(sum(c * c for c in v), 1.0, abs_tol=1e-9)
