import math

import numpy as np
import pytest

from qdc_energy import (
    Architecture,
    CoolingPlant,
    CryostatPhysical,
    DomainError,
    HeatLeak,
    OperatingPoint,
    beta_from_physical,
    carnot_cop,
    effective_cop,
    external_heat_load,
    power_breakdown,
    power_fractions,
    pue,
    scaled_power,
)
from conftest import random_scenarios

REF_PLANT = CoolingPlant(eta_c=0.15, fom=5.0)
MILLIKELVIN_15 = OperatingPoint(t_cold=0.015, t_ambient=300.0)
KELVIN_4P5 = OperatingPoint(t_cold=4.5, t_ambient=300.0)
NO_LEAK = HeatLeak.from_beta(0.0)


class TestOperatingPoint:
    def test_rejects_cold_at_or_above_ambient(self):
        with pytest.raises(DomainError):
            OperatingPoint(t_cold=300.0, t_ambient=300.0)
        with pytest.raises(DomainError):
            OperatingPoint(t_cold=301.0, t_ambient=300.0)

    def test_rejects_nonpositive_and_nonfinite(self):
        with pytest.raises(DomainError):
            OperatingPoint(t_cold=0.0, t_ambient=300.0)
        with pytest.raises(DomainError):
            OperatingPoint(t_cold=1.0, t_ambient=math.inf)
        with pytest.raises(DomainError):
            OperatingPoint(t_cold=math.nan, t_ambient=300.0)


class TestCoolingPlant:
    def test_eta_c_bounds(self):
        with pytest.raises(DomainError):
            CoolingPlant(eta_c=0.0, fom=5.0)
        with pytest.raises(DomainError):
            CoolingPlant(eta_c=1.5, fom=5.0)
        CoolingPlant(eta_c=1.0, fom=5.0)

    def test_fom_positive(self):
        with pytest.raises(DomainError):
            CoolingPlant(eta_c=0.15, fom=0.0)


class TestArchitecture:
    def test_counts_and_phi(self):
        with pytest.raises(DomainError):
            Architecture(n_qubits=0, phi=0.5)
        with pytest.raises(DomainError):
            Architecture(n_qubits=10, phi=1.1)
        with pytest.raises(DomainError):
            Architecture(n_qubits=10, phi=0.5, q_per_qubit=0.0)
        Architecture(n_qubits=1, phi=0.0)
        Architecture(n_qubits=1, phi=1.0, q_per_qubit=2.0)


class TestCryostatPhysical:
    def test_sphere_is_the_floor_for_c1(self):
        sphere = float(np.cbrt(36.0 * math.pi))
        CryostatPhysical(
            u_coeff=1e-4, c1_geom=sphere, v_per_qubit=1e-3, q1_per_qubit=1e-3
        )
        with pytest.raises(DomainError):
            CryostatPhysical(
                u_coeff=1e-4, c1_geom=4.0, v_per_qubit=1e-3, q1_per_qubit=1e-3
            )

    def test_zero_in_cryostat_load_rejected(self):
        with pytest.raises(DomainError):
            CryostatPhysical(
                u_coeff=1e-4, c1_geom=6.0, v_per_qubit=1e-3, q1_per_qubit=0.0
            )


class TestHeatLeak:
    def test_exactly_one_mode(self):
        cryostat = CryostatPhysical(
            u_coeff=1e-4, c1_geom=6.0, v_per_qubit=1e-3, q1_per_qubit=1e-3
        )
        with pytest.raises(DomainError):
            HeatLeak()
        with pytest.raises(DomainError):
            HeatLeak(abstract_beta=1.0, physical=cryostat)
        with pytest.raises(DomainError):
            HeatLeak.from_beta(-1.0)


class TestCarnotCop:
    def test_midpoint_is_unity(self):
        assert carnot_cop(OperatingPoint(150.0, 300.0)) == 1.0

    def test_direct_arithmetic(self):
        assert carnot_cop(KELVIN_4P5) == pytest.approx(4.5 / 295.5, rel=1e-12)

    def test_ratio_between_technologies_near_300(self):
        ratio = carnot_cop(KELVIN_4P5) / carnot_cop(MILLIKELVIN_15)
        assert 290.0 < ratio < 310.0
        assert ratio == pytest.approx(304.55, abs=0.01)

    def test_increasing_in_t_cold(self):
        cops = [
            carnot_cop(OperatingPoint(t, 300.0)) for t in (0.01, 0.1, 1.0, 10.0, 100.0)
        ]
        assert all(a < b for a, b in zip(cops, cops[1:]))


class TestEffectiveCop:
    def test_values(self):
        assert effective_cop(KELVIN_4P5, REF_PLANT) == pytest.approx(
            0.15 * 4.5 / 295.5, rel=1e-12
        )
        assert effective_cop(KELVIN_4P5, REF_PLANT) == pytest.approx(
            2.28426e-3, rel=1e-5
        )
        assert effective_cop(MILLIKELVIN_15, REF_PLANT) == pytest.approx(
            7.50038e-6, rel=1e-5
        )

    def test_carnot_plant_at_midpoint(self):
        plant = CoolingPlant(eta_c=1.0, fom=5.0)
        assert effective_cop(OperatingPoint(150.0, 300.0), plant) == 1.0


class TestBetaFromPhysical:
    CRYOSTAT = CryostatPhysical(
        u_coeff=5e-4, c1_geom=6.0, v_per_qubit=1e-3, q1_per_qubit=1e-3
    )

    def test_worked_value(self):
        expected = 5e-4 * 6.0 * 300.0 * (1e-3) ** (2.0 / 3.0) / 1e-3
        beta = beta_from_physical(self.CRYOSTAT, 300.0)
        assert beta == pytest.approx(expected, rel=1e-12)
        assert beta == pytest.approx(9.0, rel=1e-12)

    def test_perfect_insulation(self):
        insulated = CryostatPhysical(
            u_coeff=0.0, c1_geom=6.0, v_per_qubit=1e-3, q1_per_qubit=1e-3
        )
        assert beta_from_physical(insulated, 300.0) == 0.0

    def test_inverse_in_q1(self):
        doubled = CryostatPhysical(
            u_coeff=5e-4, c1_geom=6.0, v_per_qubit=1e-3, q1_per_qubit=2e-3
        )
        assert beta_from_physical(doubled, 300.0) == pytest.approx(4.5, rel=1e-12)


class TestExternalHeatLoad:
    CRYOSTAT = CryostatPhysical(
        u_coeff=5e-4, c1_geom=6.0, v_per_qubit=1e-3, q1_per_qubit=1e-3
    )

    def test_worked_value(self):
        load = external_heat_load(self.CRYOSTAT, 300.0, 10**6)
        expected = 5e-4 * 6.0 * 300.0 * (1e-3) ** (2.0 / 3.0) * (1e6) ** (2.0 / 3.0)
        assert load == pytest.approx(expected, rel=1e-12)
        assert load == pytest.approx(90.0, rel=1e-12)

    def test_zero_u(self):
        insulated = CryostatPhysical(
            u_coeff=0.0, c1_geom=6.0, v_per_qubit=1e-3, q1_per_qubit=1e-3
        )
        assert external_heat_load(insulated, 300.0, 12345) == 0.0

    def test_two_thirds_power_scaling(self):
        small = external_heat_load(self.CRYOSTAT, 300.0, 1000)
        big = external_heat_load(self.CRYOSTAT, 300.0, 8000)
        assert big / small == pytest.approx(4.0, rel=1e-12)


class TestPowerBreakdown:
    def test_all_cryogenic_limit(self):
        arch = Architecture(n_qubits=100, phi=1.0, q_per_qubit=2.0)
        report = power_breakdown(arch, NO_LEAK, MILLIKELVIN_15, REF_PLANT)
        assert report.p2_ambient_electronics == 0.0
        assert report.w2_ambient_cooling == 0.0
        cop = effective_cop(MILLIKELVIN_15, REF_PLANT)
        assert report.p_t_total == pytest.approx(200.0 * (1.0 + 1.0 / cop), rel=1e-12)

    def test_no_cryogenics_gives_fom_overhead_only(self):
        arch = Architecture(n_qubits=50, phi=0.0, q_per_qubit=3.0)
        report = power_breakdown(arch, NO_LEAK, MILLIKELVIN_15, REF_PLANT)
        assert report.p_t_total == pytest.approx(150.0 * 1.2, rel=1e-12)

    def test_leak_dominated_cryo_cooling(self):
        arch = Architecture(n_qubits=1000, phi=0.1, q_per_qubit=1.0)
        report = power_breakdown(
            arch, HeatLeak.from_beta(10.0), MILLIKELVIN_15, REF_PLANT
        )
        # Leak ratio folds to 1 at this size, doubling the cryostat load.
        cop = effective_cop(MILLIKELVIN_15, REF_PLANT)
        assert report.w1_cryo_cooling == pytest.approx(200.0 / cop, rel=1e-12)
        assert report.w1_cryo_cooling == pytest.approx(2.6665e7, rel=1e-4)

    def test_additivity_invariants(self):
        rng = np.random.default_rng(7)
        for phi, leak, n, op, plant in random_scenarios(rng, 200):
            arch = Architecture(n_qubits=n, phi=phi, q_per_qubit=1.7)
            report = power_breakdown(arch, leak, op, plant)
            assert report.q1_cryo_total == pytest.approx(
                report.p1_cryo_electronics + report.q_o_leak, rel=1e-12
            )
            assert report.w_s_total_cooling == pytest.approx(
                report.w1_cryo_cooling + report.w2_ambient_cooling, rel=1e-12
            )
            assert report.p_t_total == pytest.approx(
                report.p1_cryo_electronics
                + report.p2_ambient_electronics
                + report.w_s_total_cooling,
                rel=1e-12,
            )

    def test_requires_q_per_qubit(self):
        arch = Architecture(n_qubits=10, phi=0.5)
        with pytest.raises(DomainError):
            power_breakdown(arch, NO_LEAK, MILLIKELVIN_15, REF_PLANT)

    def test_physical_leak_uses_vessel_load(self):
        cryostat = CryostatPhysical(
            u_coeff=5e-4, c1_geom=6.0, v_per_qubit=1e-3, q1_per_qubit=0.1
        )
        arch = Architecture(n_qubits=1000, phi=0.1, q_per_qubit=1.0)
        report = power_breakdown(
            arch, HeatLeak.from_physical(cryostat), MILLIKELVIN_15, REF_PLANT
        )
        assert report.q_o_leak == pytest.approx(
            external_heat_load(cryostat, 300.0, 1000), rel=1e-12
        )

    def test_physical_leak_with_phi_zero_rejected(self):
        cryostat = CryostatPhysical(
            u_coeff=5e-4, c1_geom=6.0, v_per_qubit=1e-3, q1_per_qubit=0.1
        )
        arch = Architecture(n_qubits=1000, phi=0.0, q_per_qubit=1.0)
        with pytest.raises(DomainError):
            power_breakdown(
                arch, HeatLeak.from_physical(cryostat), MILLIKELVIN_15, REF_PLANT
            )

    def test_abstract_beta_with_phi_zero_accepted(self):
        arch = Architecture(n_qubits=1000, phi=0.0, q_per_qubit=1.0)
        report = power_breakdown(
            arch, HeatLeak.from_beta(50.0), MILLIKELVIN_15, REF_PLANT
        )
        assert report.q_o_leak == 0.0
        assert report.w1_cryo_cooling == 0.0


class TestScaledPower:
    def test_single_qubit_no_cryo_load(self):
        assert scaled_power(1, 0.0, HeatLeak.from_beta(3.0), MILLIKELVIN_15, REF_PLANT) == pytest.approx(
            1.2, abs=1e-12
        )

    def test_worked_value(self):
        value = scaled_power(10, 0.001, NO_LEAK, MILLIKELVIN_15, REF_PLANT)
        cop = 0.15 * 0.015 / 299.985
        assert value == pytest.approx(10 * (1 + 0.001 / cop + 0.999 / 5), rel=1e-12)
        assert value == pytest.approx(1345.27, abs=0.01)

    def test_linear_in_size_without_leak(self):
        for n in (1, 7, 512, 10**5):
            assert scaled_power(
                2 * n, 0.01, NO_LEAK, MILLIKELVIN_15, REF_PLANT
            ) == pytest.approx(
                2.0 * scaled_power(n, 0.01, NO_LEAK, MILLIKELVIN_15, REF_PLANT),
                rel=1e-12,
            )

    def test_matches_breakdown_per_qubit_power(self):
        rng = np.random.default_rng(11)
        for phi, leak, n, op, plant in random_scenarios(rng, 200):
            q = 2.5
            arch = Architecture(n_qubits=n, phi=phi, q_per_qubit=q)
            absolute = power_breakdown(arch, leak, op, plant).p_t_total
            assert scaled_power(n, phi, leak, op, plant) == pytest.approx(
                absolute / q, rel=1e-12
            )


class TestPue:
    def test_reference_facility(self):
        assert pue(0.0, NO_LEAK, 1, MILLIKELVIN_15, REF_PLANT) == pytest.approx(
            1.2, abs=1e-12
        )

    def test_ion_trap_value(self):
        value = pue(0.1, NO_LEAK, 1000, KELVIN_4P5, REF_PLANT)
        assert value == pytest.approx(44.958, abs=1e-3)

    def test_low_phi_superconducting(self):
        value = pue(1e-5, NO_LEAK, 1000, MILLIKELVIN_15, REF_PLANT)
        assert value == pytest.approx(2.53327, abs=1e-5)

    def test_scaled_power_identity(self):
        rng = np.random.default_rng(13)
        for phi, leak, n, op, plant in random_scenarios(rng, 200):
            assert pue(phi, leak, n, op, plant) * n == pytest.approx(
                scaled_power(n, phi, leak, op, plant), rel=1e-12
            )

    def test_size_independent_without_leak(self):
        values = {
            pue(0.3, NO_LEAK, n, MILLIKELVIN_15, REF_PLANT) for n in (1, 10, 10**6)
        }
        assert len(values) == 1  # bit-identical

    def test_monotone_in_beta(self):
        betas = [0.0, 0.01, 0.1, 1.0, 10.0, 100.0]
        values = [
            pue(0.1, HeatLeak.from_beta(b), 1000, MILLIKELVIN_15, REF_PLANT)
            for b in betas
        ]
        assert all(a <= b for a, b in zip(values, values[1:]))

    def test_monotone_in_size_with_leak(self):
        sizes = [10, 100, 1000, 10**4, 10**5, 10**6]
        values = [
            pue(0.1, HeatLeak.from_beta(5.0), n, MILLIKELVIN_15, REF_PLANT)
            for n in sizes
        ]
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_strictly_decreasing_in_t_cold(self):
        temps = [0.01, 0.1, 1.0, 4.5, 10.0, 100.0]
        values = [
            pue(0.01, NO_LEAK, 1000, OperatingPoint(t, 300.0), REF_PLANT)
            for t in temps
        ]
        assert all(a > b for a, b in zip(values, values[1:]))


class TestPowerFractions:
    def test_equal_cooling_needs_at_beta_ten(self):
        report = power_fractions(
            0.1, HeatLeak.from_beta(10.0), 1000, MILLIKELVIN_15, REF_PLANT
        )
        assert report.f_leak_cooling == report.f_cryo_electronics_cooling
        assert report.f_cryo_electronics_cooling == pytest.approx(0.4999, abs=1e-3)

    def test_cryo_cooling_dominates_at_small_beta(self):
        report = power_fractions(
            0.1, HeatLeak.from_beta(0.01), 1000, MILLIKELVIN_15, REF_PLANT
        )
        assert report.f_cryo_electronics_cooling > 0.99

    def test_low_phi_split(self):
        report = power_fractions(1e-5, NO_LEAK, 1000, MILLIKELVIN_15, REF_PLANT)
        assert report.f_electronics == pytest.approx(0.3947, abs=1e-4)
        assert report.f_cryo_electronics_cooling == pytest.approx(0.5263, abs=1e-4)
        assert report.f_leak_cooling == 0.0
        assert report.f_ambient_cooling == pytest.approx(0.0789, abs=1e-4)

    def test_ion_trap_electronics_share(self):
        report = power_fractions(0.1, NO_LEAK, 1000, KELVIN_4P5, REF_PLANT)
        assert report.f_electronics == pytest.approx(0.0222, abs=1e-4)
        assert abs(report.f_electronics - 0.023) < 0.003

    def test_normalization_and_ratio(self):
        rng = np.random.default_rng(17)
        for phi, leak, n, op, plant in random_scenarios(rng, 500):
            report = power_fractions(phi, leak, n, op, plant)
            assert abs(sum(report.as_tuple()) - 1.0) <= 1e-12
            if report.f_cryo_electronics_cooling > 0.0 and report.f_leak_cooling > 0.0:
                expected = leak.abstract_beta / float(np.cbrt(n))
                ratio = report.f_leak_cooling / report.f_cryo_electronics_cooling
                assert ratio == pytest.approx(expected, rel=1e-12)


class TestCarnotHalving:
    def test_w1_doubles_from_20mk_to_10mk(self):
        arch = Architecture(n_qubits=1000, phi=0.1, q_per_qubit=1.0)
        w1_10 = power_breakdown(
            arch, NO_LEAK, OperatingPoint(0.010, 300.0), REF_PLANT
        ).w1_cryo_cooling
        w1_20 = power_breakdown(
            arch, NO_LEAK, OperatingPoint(0.020, 300.0), REF_PLANT
        ).w1_cryo_cooling
        assert 1.99 <= w1_10 / w1_20 <= 2.01
