"""Unit tests for the bundled evolution, measurement and preparation circuits."""

import numpy as np
import pytest

from photonenv.channel import SINGLE_MODE_CAVITY, apply_model, evolve_analytic, initial_state, map_coefficients
from photonenv.channel.states import DensityMatrix4
from photonenv.photonics import (
    BUNDLED_NETLISTS,
    build_evolution_circuit,
    build_measurement_circuit,
    build_preparation_circuit,
    compile_circuit,
    internal_from_computational,
    load_bundled,
    propagate,
    reduced_system_state,
    solve_angles,
)
from photonenv.photonics.netlist import parse_netlist, render_netlist
from photonenv.photonics.circuits import TEMPLATE_DEFAULTS

pytestmark = [pytest.mark.unit, pytest.mark.photonics]

LN2 = float(np.log(2))


def evolve(param, model=None):
    angles = solve_angles(param) if model is None else solve_angles(param, model)
    circuit = compile_circuit(build_evolution_circuit(angles))
    return angles, propagate(circuit, circuit.prepared_state())


class TestBundled:
    """Netlist files shipped with the package."""

    @pytest.mark.parametrize("name", BUNDLED_NETLISTS)
    def test_parse_with_default_parameters(self, name):
        ir = parse_netlist(render_netlist(load_bundled(name), **TEMPLATE_DEFAULTS))

        assert len(ir) > 0

    def test_unknown_name(self):
        with pytest.raises(KeyError, match="no bundled netlist 'fig2'"):
            load_bundled("fig2")

    def test_measurement_detectors(self):
        ir = build_measurement_circuit()

        assert sorted(ir.detectors.values()) == ["D1", "D2", "D3", "D4"]
        assert ir.preparation is None


class TestAngles:
    """Waveplate and prism angles reproducing Q, R, S."""

    def test_identity_at_zero(self):
        angles = solve_angles(0.0)

        assert (angles.theta1, angles.theta2) == (0.0, 0.0)
        assert angles.env_phase == 0.0

    @pytest.mark.parametrize("u", (1e-9, 0.1, LN2, 2.0, 30.0))
    def test_realized_amplitudes(self, u):
        angles = solve_angles(u)
        coeffs = map_coefficients(u)
        realized = angles.amplitudes()

        assert angles.gamma_t == u
        for name in ("Q", "R", "S"):
            assert abs(realized[name] - getattr(coeffs, name)) <= 1e-12

    def test_ln2(self):
        realized = solve_angles(LN2).amplitudes()

        assert realized["Q"] == pytest.approx(0.75)
        assert realized["R"] == pytest.approx(-0.25)
        assert realized["S"] == pytest.approx(np.sqrt(3 / 8))

    def test_long_time_limit(self):
        angles = solve_angles(60.0)

        assert angles.theta1 == pytest.approx(30.0)
        # Q -> 1/2, R -> -1/2, S -> 1/sqrt2
        assert angles.theta2 == pytest.approx(-np.rad2deg(np.arctan(1 / np.sqrt(2))) / 2)

    @pytest.mark.parametrize("gt, phase", [(0.5, -np.pi / 2), (3.0, np.pi / 2)])
    def test_cavity_phase(self, gt, phase):
        angles = solve_angles(gt, SINGLE_MODE_CAVITY)

        assert angles.env_phase == pytest.approx(phase)
        assert angles.model is SINGLE_MODE_CAVITY
        assert abs(angles.amplitudes()["S"] - map_coefficients(gt, SINGLE_MODE_CAVITY).S) <= 1e-12


class TestEvolutionCircuit:
    """The optical simulator of the channel acting on |eg>."""

    def test_output_branches_at_ln2(self):
        _, final = evolve(LN2)

        assert final.amplitude("V", "h", "env0") == pytest.approx(0.75, abs=1e-12)
        assert final.amplitude("H", "v", "env0") == pytest.approx(-0.25, abs=1e-12)
        assert final.amplitude("H", "h", "env1") == pytest.approx(np.sqrt(3 / 8), abs=1e-12)
        assert final.path_probability("spill") == pytest.approx(0.0, abs=1e-24)
        assert final.norm() == pytest.approx(1.0)

    @pytest.mark.parametrize("u", (0.0, 0.2, LN2, 1.5, 6.0))
    def test_reduced_state_matches_channel(self, u):
        _, final = evolve(u)
        expected = evolve_analytic(initial_state("eg"), u)

        assert reduced_system_state(final).allclose(expected, atol=1e-9)

    @pytest.mark.parametrize("gt", (0.3, 1.1, 2.6))
    def test_cavity_reduced_state(self, gt):
        angles, final = evolve(gt, SINGLE_MODE_CAVITY)
        expected = apply_model(initial_state("eg"), gt, SINGLE_MODE_CAVITY)

        assert angles.env_phase != 0.0
        assert reduced_system_state(final).allclose(expected, atol=1e-9)


class TestMeasurementCircuit:
    """Projective measurement in the collective basis."""

    @pytest.mark.parametrize("name, detector", [
        ("triplet0", "D1"),
        ("singlet", "D2"),
        ("ee", "D3"),
        ("gg", "D4"),
    ])
    def test_each_collective_state_hits_one_detector(self, name, detector):
        circuit = compile_circuit(build_measurement_circuit())
        ket = np.linalg.eigh(initial_state(name).matrix)[1][:, -1]
        out = propagate(circuit, circuit.state_on(internal_from_computational(ket)))

        probs = circuit.detector_probabilities(out)
        assert probs[detector] == pytest.approx(1.0, abs=1e-12)
        assert sum(probs.values()) == pytest.approx(1.0)


class TestPreparationCircuit:
    """HWP and CNOT preparing cos2t|eg> + sin2t|ge>."""

    @pytest.mark.parametrize("theta", (0.0, 10.0, 22.5, 40.0))
    def test_prepared_state(self, theta):
        circuit = compile_circuit(build_preparation_circuit(theta))
        final = propagate(circuit, circuit.prepared_state())
        t = np.deg2rad(2 * theta)
        expected = DensityMatrix4.from_ket([0.0, np.cos(t), np.sin(t), 0.0])

        assert reduced_system_state(final).allclose(expected, atol=1e-12)

    def test_maximally_entangled_at_22_5(self):
        circuit = compile_circuit(build_preparation_circuit(22.5))
        final = propagate(circuit, circuit.prepared_state())

        assert reduced_system_state(final).allclose(initial_state("triplet0"), atol=1e-12)
