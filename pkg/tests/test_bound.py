"""Bound-state spectra, quantization residuals, sweeps, and SSW coalescence."""

import math

import numpy as np
import pytest

from kgsquare import (
    DomainError,
    PotentialConfig,
    antiparticle_crossover_energy,
    count_imaginary_q_solutions,
    detect_ssw,
    find_bound_states,
    pole_residual,
    quantization_residual,
    spectrum_sweep,
    z0_of,
)
from kgsquare.oracle import OracleConfig, oracle_bound_states

# Frozen regression anchors for the g_t=1, a=0.5 coalescence (well deepening
# past V0 ~ -2.25 merges the even particle/antiparticle pair).
SSW_V0 = -2.2526775990478694
SSW_E = -0.8558233459004724


def _cfg_at_phase(energy_e: float, phase: float, a: float = 1.0) -> PotentialConfig:
    """Pure vector well whose interior phase q*a equals ``phase`` at E."""
    v0 = energy_e - math.sqrt((phase / a) ** 2 + 1.0)
    return PotentialConfig(v0, a, 1.0)


class TestQuantizationResidual:
    def test_half_pi_phase(self):
        # qa = pi/2: even residual reduces to -q, odd to +kappa.
        cfg = _cfg_at_phase(0.5, math.pi / 2.0)
        q = math.pi / 2.0
        kappa = math.sqrt(0.75)
        assert quantization_residual(0.5, cfg, "even") == pytest.approx(-q, abs=1e-12)
        assert quantization_residual(0.5, cfg, "odd") == pytest.approx(kappa, abs=1e-12)

    def test_pi_phase_is_not_automatically_bound(self):
        # qa = pi (a transmission-resonance phase): both residuals are nonzero.
        cfg = _cfg_at_phase(0.5, math.pi)
        q = math.pi
        kappa = math.sqrt(0.75)
        assert quantization_residual(0.5, cfg, "odd") == pytest.approx(-q, abs=1e-12)
        assert quantization_residual(0.5, cfg, "even") == pytest.approx(-kappa, abs=1e-12)

    def test_domain_errors(self):
        cfg = PotentialConfig(-1.0, 0.5, 1.0)
        with pytest.raises(DomainError):
            quantization_residual(1.0, cfg, "even")
        with pytest.raises(DomainError):
            quantization_residual(0.99, PotentialConfig(0.0, 1.0, 1.0), "even")


class TestZ0:
    def test_scalar_depth_limit(self):
        assert z0_of(0.3, PotentialConfig(-2.0, 5.0, 0.0)) == 0.0

    def test_unit_radicand(self):
        assert z0_of(0.0, PotentialConfig(-1.0, 0.7, 1.0)) == pytest.approx(0.7, abs=1e-15)

    def test_negative_radicand_rejected(self):
        with pytest.raises(DomainError):
            z0_of(0.3, PotentialConfig(-2.5, 5.0, 0.0))

    @pytest.mark.parametrize(
        "v0,a,g_t",
        [(-0.2, 0.5, 1.0), (-1.0, 0.5, 1.0), (-1.2, 5.0, 0.0), (-1.5, 5.0, 0.5)],
    )
    def test_circle_identity(self, v0, a, g_t):
        # z0^2 = z^2 + (kappa a)^2 ties the phase to the well geometry.
        cfg = PotentialConfig(v0, a, g_t)
        for s in find_bound_states(cfg):
            kappa_a = math.sqrt((1.0 - s.energy_e) * (1.0 + s.energy_e)) * a
            assert s.z0**2 - s.z**2 - kappa_a**2 == pytest.approx(
                0.0, abs=1e-12 * max(1.0, s.z0**2)
            )
            assert s.z < s.z0


class TestFindBoundStates:
    def test_free_particle_empty(self):
        assert find_bound_states(PotentialConfig(0.0, 1.0, 1.0)) == []

    def test_beyond_scalar_depth_limit_empty(self):
        assert find_bound_states(PotentialConfig(-2.5, 5.0, 0.0)) == []

    def test_shallow_well_has_even_state_near_threshold(self):
        states = find_bound_states(PotentialConfig(-0.2, 0.5, 1.0))
        assert len(states) == 1
        assert states[0].parity == "even"
        assert states[0].energy_e == pytest.approx(0.97936870006225574, rel=1e-12)
        assert states[0].z == pytest.approx(0.31261419141112851, rel=1e-12)
        assert states[0].z0 == pytest.approx(0.32853747123612187, rel=1e-12)

    def test_mid_depth_frozen(self):
        states = find_bound_states(PotentialConfig(-1.0, 0.5, 1.0))
        assert [(s.index_n, s.parity) for s in states] == [(1, "even")]
        assert states[0].energy_e == pytest.approx(0.56430564071997369, rel=1e-12)

    def test_scalar_well_frozen_spectrum(self):
        states = find_bound_states(PotentialConfig(-1.2, 5.0, 0.0))
        expected = [
            (-0.99071570043673896, "odd"),
            (-0.78946932424543848, "even"),
            (-0.55444904523217053, "odd"),
            (-0.32831458378050826, "even"),
            (0.32831458378050826, "even"),
            (0.55444904523217053, "odd"),
            (0.78946932424543859, "even"),
            (0.99071570043673896, "odd"),
        ]
        assert len(states) == len(expected)
        assert [s.index_n for s in states] == list(range(1, 9))
        for s, (energy, parity) in zip(states, expected):
            assert s.parity == parity
            assert s.energy_e == pytest.approx(energy, rel=1e-11, abs=1e-13)

    def test_invariants_on_every_state(self):
        for v0, a, g_t in [(-0.2, 0.5, 1.0), (-1.0, 0.5, 1.0), (-1.2, 5.0, 0.0), (-1.5, 5.0, 0.5)]:
            cfg = PotentialConfig(v0, a, g_t)
            states = find_bound_states(cfg)
            energies = [s.energy_e for s in states]
            assert energies == sorted(energies)
            for s in states:
                assert abs(s.energy_e) < 1.0
                q2 = (s.energy_e - g_t * v0) ** 2 - (1.0 + (1.0 - g_t) * v0) ** 2
                assert q2 > 0.0
                assert abs(quantization_residual(s.energy_e, cfg, s.parity)) < 1e-10
                assert pole_residual(s.energy_e, cfg) < 1e-8

    def test_parity_alternates_in_phase_order(self):
        # With z0 > pi the levels alternate even/odd as the phase z grows.
        for v0, a, g_t in [(-1.2, 5.0, 0.0), (-1.5, 5.0, 0.5)]:
            states = find_bound_states(PotentialConfig(v0, a, g_t))
            by_z: dict[float, str] = {}
            for s in states:
                by_z.setdefault(round(s.z, 9), s.parity)
            parities = [by_z[z] for z in sorted(by_z)]
            assert parities == ["even" if i % 2 == 0 else "odd" for i in range(len(parities))]

    def test_deep_well_phases_approach_half_pi_multiples(self):
        # Wide balanced well: lowest phases z_n lock to n pi / 2 within 2%.
        states = find_bound_states(PotentialConfig(-1.0, 60.0, 0.5))
        assert len(states) > 40
        zs = sorted(s.z for s in states)
        for n, z in enumerate(zs[:4], start=1):
            assert z == pytest.approx(n * math.pi / 2.0, rel=0.02)

    def test_resolves_near_coalescent_pair(self):
        # 1e-8 from the critical depth the even pair is split by ~1e-4 and the
        # adaptive dip refinement must still find both levels.
        states = find_bound_states(PotentialConfig(SSW_V0 + 1e-8, 0.5, 1.0))
        pair = [s for s in states if s.parity == "even" and s.energy_e < -0.5]
        assert len(pair) == 2
        gap = abs(pair[1].energy_e - pair[0].energy_e)
        assert 1e-5 < gap < 1e-3
        for s in pair:
            assert s.energy_e == pytest.approx(SSW_E, abs=1e-3)

    def test_matches_shooting_oracle(self):
        ocfg = OracleConfig(step_count=4000)
        for v0, a, g_t in [(-1.0, 0.5, 1.0), (-1.2, 5.0, 0.0)]:
            cfg = PotentialConfig(v0, a, g_t)
            solver = [(s.energy_e, s.parity) for s in find_bound_states(cfg)]
            oracle = oracle_bound_states(cfg, ocfg)
            assert len(solver) == len(oracle)
            for (e_s, p_s), (e_o, p_o) in zip(solver, oracle):
                assert p_s == p_o
                assert e_s == pytest.approx(e_o, abs=1e-8)


class TestDualityAndImaginaryQ:
    @pytest.mark.parametrize("energy", [0.4, 0.62, 0.9])
    def test_pole_residual_factorizes(self, energy):
        # |D(k -> i kappa)| = 2 |f_even f_odd|: bound states are exactly the
        # poles of the transmission amplitude continued below threshold.
        cfg = PotentialConfig(-1.2, 5.0, 0.0)
        product = 2.0 * abs(
            quantization_residual(energy, cfg, "even")
            * quantization_residual(energy, cfg, "odd")
        )
        assert pole_residual(energy, cfg) == pytest.approx(product, rel=1e-12)

    @pytest.mark.parametrize(
        "v0,a,g_t",
        [(-1.5, 0.5, 1.0), (-1.2, 5.0, 0.0), (-1.5, 5.0, 0.5), (-3.0, 5.0, 0.25)],
    )
    def test_no_imaginary_q_solutions(self, v0, a, g_t):
        assert count_imaginary_q_solutions(PotentialConfig(v0, a, g_t)) == 0


class TestSpectralSymmetries:
    def test_vector_well_mirror(self):
        # g_t = 1: spectrum at -V0 is the negated spectrum at +V0.
        well = find_bound_states(PotentialConfig(-1.7, 0.5, 1.0))
        barrier = find_bound_states(PotentialConfig(1.7, 0.5, 1.0))
        assert len(well) == len(barrier) == 1
        assert well[0].energy_e == pytest.approx(-0.05536401593472954, rel=1e-10)
        assert well[0].energy_e == pytest.approx(-barrier[0].energy_e, abs=1e-9)

    def test_scalar_well_energy_mirror(self):
        states = find_bound_states(PotentialConfig(-1.2, 5.0, 0.0))
        energies = sorted(s.energy_e for s in states)
        for e_low, e_high in zip(energies, reversed(energies)):
            assert e_low == pytest.approx(-e_high, abs=1e-9)
        assert all(abs(s.energy_e) > 1e-9 for s in states)

    def test_scalar_well_depth_mirror(self):
        left = [s.energy_e for s in find_bound_states(PotentialConfig(-1.2, 5.0, 0.0))]
        right = [s.energy_e for s in find_bound_states(PotentialConfig(-0.8, 5.0, 0.0))]
        assert len(left) == len(right)
        for e_l, e_r in zip(left, right):
            assert e_l == pytest.approx(e_r, abs=1e-9)

    def test_scalar_well_empty_at_depth_limit(self):
        assert find_bound_states(PotentialConfig(-2.0, 5.0, 0.0)) == []


@pytest.fixture(scope="module")
def fig5_sweep():
    return spectrum_sweep(1.0, 0.5, np.linspace(-4.0, -0.01, 241))


class TestSpectrumSweep:
    def test_ssw_event_found_and_refined(self, fig5_sweep):
        events = fig5_sweep.ssw_events
        assert len(events) == 1
        event = events[0]
        assert event.parity == "even"
        assert event.v0_critical == pytest.approx(SSW_V0, abs=1e-6)
        assert event.e_critical == pytest.approx(SSW_E, abs=1e-6)
        assert abs(event.e_critical) < 1.0 - 1e-6

    def test_ssw_independent_of_grid_resolution(self, fig5_sweep):
        finer = spectrum_sweep(1.0, 0.5, np.linspace(-4.0, -0.01, 373))
        assert len(finer.ssw_events) == 1
        assert finer.ssw_events[0].v0_critical == pytest.approx(
            fig5_sweep.ssw_events[0].v0_critical, abs=1e-8
        )

    def test_detect_ssw_matches_sweep(self, fig5_sweep):
        refined = detect_ssw(fig5_sweep)
        assert len(refined) == 1
        v0_c, e_c = refined[0]
        assert v0_c == pytest.approx(fig5_sweep.ssw_events[0].v0_critical, abs=1e-9)
        assert e_c == pytest.approx(fig5_sweep.ssw_events[0].e_critical, abs=1e-7)

    def test_branches_are_parity_pure_and_continuous(self, fig5_sweep):
        for branch in fig5_sweep.branches:
            assert len(branch.v0s) == len(branch.states)
            assert {s.parity for s in branch.states} == {branch.parity}
            energies = [s.energy_e for s in branch.states]
            for e_prev, e_next in zip(energies, energies[1:]):
                assert abs(e_next - e_prev) < 0.25

    def test_continuum_dives_classified(self, fig5_sweep):
        assert fig5_sweep.disappearance_events
        for dive in fig5_sweep.disappearance_events:
            assert dive.continuum in ("upper", "lower")
            assert abs(dive.last_energy) > 0.99

    def test_balanced_well_has_no_ssw_and_particle_branches(self):
        sweep = spectrum_sweep(0.5, 5.0, np.linspace(-4.0, -0.01, 201))
        assert sweep.ssw_events == []
        assert sweep.ssw_candidates == []
        assert detect_ssw(sweep) == []
        assert sweep.branches
        assert all(b.label == "particle" for b in sweep.branches)

    def test_scalar_well_has_no_ssw(self):
        sweep = spectrum_sweep(0.0, 5.0, np.linspace(-1.99, -0.01, 201))
        assert sweep.ssw_events == []
        assert detect_ssw(sweep) == []

    def test_threads_do_not_change_results(self):
        grid = np.linspace(-4.0, -0.01, 121)
        serial = spectrum_sweep(1.0, 0.5, grid, threads=1)
        threaded = spectrum_sweep(1.0, 0.5, grid, threads=4)
        assert len(serial.branches) == len(threaded.branches)
        for b_s, b_t in zip(serial.branches, threaded.branches):
            assert b_s.v0s == b_t.v0s
            assert [s.energy_e for s in b_s.states] == [s.energy_e for s in b_t.states]

    def test_rejects_non_monotone_grid(self):
        with pytest.raises(DomainError):
            spectrum_sweep(1.0, 0.5, [-1.0, -2.0, -1.5])


class TestAntiparticleCrossover:
    def test_class_c_value(self):
        assert antiparticle_crossover_energy(0.25) == pytest.approx(-1.0 / 3.0, rel=1e-15)
        assert antiparticle_crossover_energy(0.0) == 0.0

    def test_rejected_outside_class_c(self):
        for g_t in (0.5, 0.8, 1.0):
            with pytest.raises(DomainError):
                antiparticle_crossover_energy(g_t)
