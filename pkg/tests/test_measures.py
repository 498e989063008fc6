import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfield_gaussian.model import (
    critical_coupling,
    hopfield,
    hopfield_basis,
    no_a2,
)
from hopfield_gaussian.measures import (
    STEERING_THRESHOLD,
    SteeringClass,
    UnphysicalStateError,
    average_occupations,
    classify_steering,
    correlation_report,
    covariance_from_correlators,
    gaussian_steering,
    gaussian_steering_raw,
    ground_state_log_negativity_closed,
    ground_state_steering_closed,
    log_negativity,
    ppt_symplectic_eigenvalues,
    purities,
    second_order_correlators,
    symplectic_invariants,
)
from hopfield_gaussian.states import (
    BARE,
    CovarianceMatrix,
    ground_state_covariance_closed,
    no_a2_covariance_closed,
    steady_state_covariance,
    thermal_covariance_closed,
    thermal_occupation,
)

VACUUM = CovarianceMatrix(0.5 * np.eye(4), BARE)

stable_hopfield = st.builds(
    hopfield, st.floats(0.1, 4.0), st.just(1.0), st.floats(0.01, 2.5)
)
stable_no_a2 = st.tuples(st.floats(0.2, 4.0), st.floats(0.02, 0.98)).map(
    lambda t: no_a2(t[0], 1.0, t[1] * critical_coupling(t[0], 1.0))
)


def random_physical_covariance(rng: np.random.Generator) -> CovarianceMatrix:
    """Random two-mode Gaussian state from elementary symplectic blocks."""

    def rot(phi):
        c, s = math.cos(phi), math.sin(phi)
        return np.array([[c, s], [-s, c]])

    def local(phi1, phi2):
        out = np.zeros((4, 4))
        out[:2, :2] = rot(phi1)
        out[2:, 2:] = rot(phi2)
        return out

    def squeeze(r1, r2):
        return np.diag([math.exp(r1), math.exp(-r1), math.exp(r2), math.exp(-r2)])

    def two_mode_squeeze(r):
        ch, sh = math.cosh(r), math.sinh(r)
        return np.array(
            [[ch, 0, sh, 0], [0, ch, 0, -sh], [sh, 0, ch, 0], [0, -sh, 0, ch]]
        )

    s = (
        local(*rng.uniform(0, 2 * math.pi, 2))
        @ squeeze(*rng.uniform(-0.7, 0.7, 2))
        @ two_mode_squeeze(rng.uniform(-0.8, 0.8))
        @ local(*rng.uniform(0, 2 * math.pi, 2))
    )
    nu = rng.uniform(0.5, 2.5, 2)
    return CovarianceMatrix(s @ np.diag([nu[0], nu[0], nu[1], nu[1]]) @ s.T, BARE)


class TestSymplecticInvariants:
    def test_vacuum(self):
        inv = symplectic_invariants(VACUUM)
        assert inv.i_a == inv.i_b == 0.25
        assert inv.i_c == 0.0 and inv.i_ab == 0.0625
        assert inv.d_minus == inv.d_plus == 0.5

    def test_ground_state_is_entangled(self):
        inv = symplectic_invariants(ground_state_covariance_closed(hopfield(1, 1, 0.5)))
        assert inv.d_minus < 0.5

    def test_unphysical_rejected(self):
        squeezed_too_far = CovarianceMatrix(np.diag([0.1, 0.1, 0.5, 0.5]), BARE)
        with pytest.raises(UnphysicalStateError):
            symplectic_invariants(squeezed_too_far)

    def test_determinant_identity_and_ppt_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(300):
            gamma = random_physical_covariance(rng)
            inv = symplectic_invariants(gamma)
            nu = ppt_symplectic_eigenvalues(gamma)
            assert abs(inv.d_minus - nu[0]) < 1e-10
            assert abs(inv.d_plus - nu[1]) < 1e-10
            assert abs(inv.d_plus * inv.d_minus - math.sqrt(inv.i_ab)) < 1e-10
            assert inv.d_plus >= 0.5 - 1e-10


class TestLogNegativity:
    def test_vacuum(self):
        assert log_negativity(VACUUM) == 0.0

    def test_vanishes_at_weak_coupling(self):
        g = ground_state_covariance_closed(hopfield(1.5, 1, 1e-7))
        assert log_negativity(g) < 1e-5

    def test_golden_point_value(self):
        # ground state at omega_a = omega_b = 1, lambda = 0.5:
        # 2 d~_- = (sqrt(6) - 1)/sqrt(5)
        g = ground_state_covariance_closed(hopfield(1, 1, 0.5))
        expected = math.log(math.sqrt(5) / (math.sqrt(6) - 1))
        assert log_negativity(g) == pytest.approx(expected, abs=1e-12)

    @given(stable_hopfield)
    def test_closed_form_matches_pipeline(self, p):
        from_pipeline = log_negativity(ground_state_covariance_closed(p))
        assert ground_state_log_negativity_closed(p) == pytest.approx(
            from_pipeline, abs=1e-10
        )


class TestSteering:
    def test_vacuum(self):
        assert gaussian_steering(VACUUM) == (0.0, 0.0)

    def test_golden_point_value(self):
        g = ground_state_covariance_closed(hopfield(1, 1, 0.5))
        expected = 0.5 * math.log(1.2)  # I_a / 4 I_ab = 0.3 / 0.25
        assert gaussian_steering(g) == (
            pytest.approx(expected, abs=1e-12),
            pytest.approx(expected, abs=1e-12),
        )

    @given(stable_hopfield)
    def test_ground_state_symmetry(self, p):
        g_ab, g_ba = gaussian_steering(ground_state_covariance_closed(p))
        assert abs(g_ab - g_ba) < 1e-10

    @given(stable_hopfield)
    def test_closed_form_matches_pipeline(self, p):
        g_ab, g_ba = gaussian_steering(ground_state_covariance_closed(p))
        closed = ground_state_steering_closed(p)
        assert closed == pytest.approx(g_ab, abs=1e-10)
        assert closed == pytest.approx(g_ba, abs=1e-10)

    def test_thermal_one_way_point(self):
        g = thermal_covariance_closed(hopfield(1, 1, 0.8), 0.25)
        g_ab, g_ba = gaussian_steering(g)
        assert g_ab == 0.0 and g_ba > 0.0

    def test_raw_values_exposed_for_diagnostics(self):
        raw_ab, raw_ba = gaussian_steering_raw(VACUUM)
        assert raw_ab == pytest.approx(0.0, abs=1e-14)
        g = thermal_covariance_closed(hopfield(1, 1, 0.8), 0.25)
        assert gaussian_steering_raw(g)[0] < 0.0  # clipped to 0 in the public value


class TestPurities:
    def test_vacuum_is_pure(self):
        assert purities(VACUUM) == (1.0, 1.0, 1.0)

    def test_one_way_regime_ordering(self):
        mu_a, mu_b, mu_ab = purities(thermal_covariance_closed(hopfield(1, 1, 0.8), 0.25))
        assert mu_b < mu_ab < mu_a

    def test_no_steering_ordering_at_low_cavity_frequency(self):
        gamma = thermal_covariance_closed(hopfield(0.15, 1, 0.25), 0.2)
        mu_a, mu_b, mu_ab = purities(gamma)
        assert mu_b > mu_a > mu_ab
        assert gaussian_steering(gamma) == (0.0, 0.0)

    @given(stable_hopfield, st.floats(0.0, 1.0))
    def test_classification_consistent_with_purity_ordering(self, p, temperature):
        gamma = thermal_covariance_closed(p, temperature)
        g_ab, g_ba = gaussian_steering(gamma)
        mu_a, mu_b, mu_ab = purities(gamma)
        # mode m steers iff its marginal purity drops below the global one
        if g_ab > 1e-9:
            assert mu_a < mu_ab
        if mu_a < mu_ab * (1 - 1e-9):
            assert g_ab > 0
        if g_ba > 1e-9:
            assert mu_b < mu_ab
        if mu_b < mu_ab * (1 - 1e-9):
            assert g_ba > 0


class TestClassification:
    @pytest.mark.parametrize(
        "g_ab,g_ba,expected",
        [
            (0.0, 0.0, SteeringClass.NO_WAY),
            (0.2, 0.0, SteeringClass.ONE_WAY_A_TO_B),
            (0.0, 0.2, SteeringClass.ONE_WAY_B_TO_A),
            (0.1, 0.2, SteeringClass.TWO_WAY),
            (STEERING_THRESHOLD / 2, 0.0, SteeringClass.NO_WAY),
        ],
    )
    def test_cases(self, g_ab, g_ba, expected):
        assert classify_steering(g_ab, g_ba) is expected

    def test_negative_input_rejected(self):
        with pytest.raises(ValueError):
            classify_steering(-0.1, 0.0)

    def test_steerable_ground_state_is_two_way(self):
        rep = correlation_report(ground_state_covariance_closed(hopfield(1, 1, 0.5)))
        assert rep.classification is SteeringClass.TWO_WAY
        assert rep.e_n > 0

    @given(stable_hopfield, st.floats(0.0, 1.0))
    def test_steerable_states_are_entangled(self, p, temperature):
        gamma = thermal_covariance_closed(p, temperature)
        rep = correlation_report(gamma)
        if rep.g_ab > 0 or rep.g_ba > 0:
            assert rep.e_n > 0


class TestOccupations:
    def test_vacuum(self):
        assert average_occupations(VACUUM) == (0.0, 0.0)

    @given(stable_hopfield)
    def test_ground_state_symmetry(self, p):
        n_a, n_b = average_occupations(ground_state_covariance_closed(p))
        assert abs(n_a - n_b) < 1e-10

    def test_thermal_point_is_asymmetric(self):
        n_a, n_b = average_occupations(thermal_covariance_closed(hopfield(1, 1, 0.8), 0.25))
        assert abs(n_a - n_b) > 1e-3


class TestCorrelators:
    def test_decoupled_vacuum(self):
        basis = hopfield_basis(hopfield(1.5, 1, 1e-9))
        mo = second_order_correlators(basis, (0.0, 0.0))
        assert mo["a_adag"] == pytest.approx(1.0, abs=1e-12)
        assert mo["b_bdag"] == pytest.approx(1.0, abs=1e-12)
        for key, value in mo.items():
            if key not in ("a_adag", "b_bdag"):
                assert abs(value) < 1e-8

    def test_anomalous_moments_survive_in_ground_state(self):
        mo = second_order_correlators(hopfield_basis(hopfield(1, 1, 0.5)), (0.0, 0.0))
        assert abs(mo["a_a"]) > 0.1
        # sum over branches gives -cos(2 theta)/4 = -1/(4 sqrt(5)) here
        assert mo["a_a"] == pytest.approx(-0.25 / math.sqrt(5), abs=1e-12)

    @given(stable_hopfield, st.floats(0.0, 1.0))
    def test_commutators_and_covariance_roundtrip(self, p, temperature):
        basis = hopfield_basis(p)
        occ = (
            thermal_occupation(basis.omega_upper, temperature),
            thermal_occupation(basis.omega_lower, temperature),
        )
        mo = second_order_correlators(basis, occ)
        assert mo["a_adag"] - mo["adag_a"] == pytest.approx(1.0, abs=1e-10)
        assert mo["b_bdag"] - mo["bdag_b"] == pytest.approx(1.0, abs=1e-10)
        rebuilt = covariance_from_correlators(mo)
        direct = steady_state_covariance(basis, temperature)
        assert np.max(np.abs(rebuilt.entries - direct.entries)) < 1e-9

    def test_negative_occupation_rejected(self):
        with pytest.raises(ValueError):
            second_order_correlators(hopfield_basis(hopfield(1, 1, 0.5)), (-0.1, 0.0))


class TestClosedFormTrends:
    def test_entanglement_grows_with_coupling_at_resonance(self):
        lams = np.linspace(0.05, 1.2, 24)
        en = [ground_state_log_negativity_closed(hopfield(1, 1, l)) for l in lams]
        assert all(b > a for a, b in zip(en, en[1:]))

    def test_steering_positive_region_lies_inside_entangled_region(self):
        for lam in np.linspace(0.05, 1.2, 24):
            p = hopfield(1, 1, lam)
            if ground_state_steering_closed(p) > 0:
                assert ground_state_log_negativity_closed(p) > 0


resonant_no_a2 = st.floats(0.02, 0.98).map(lambda f: no_a2(1.0, 1.0, 0.5 * f))


class TestNoA2Steering:
    @given(resonant_no_a2, st.floats(0.0, 1.0))
    def test_resonant_model_never_steers_one_way(self, p, temperature):
        gamma = no_a2_covariance_closed(p, temperature)
        g_ab, g_ba = gaussian_steering(gamma)
        assert abs(g_ab - g_ba) < 1e-10
        assert classify_steering(g_ab, g_ba) in (
            SteeringClass.NO_WAY,
            SteeringClass.TWO_WAY,
        )
