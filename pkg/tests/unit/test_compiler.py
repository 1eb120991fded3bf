"""Unit tests for compiling netlists into unitaries and propagating photons."""

import numpy as np
import pytest

from photonenv.core.exceptions import NonUnitaryComposite
from photonenv.photonics import (
    PhotonState,
    compile_circuit,
    computational_from_internal,
    internal_from_computational,
    parse_netlist,
    propagate,
    serialize,
)
from photonenv.photonics.elements import PolarizationCnot

pytestmark = [pytest.mark.unit, pytest.mark.photonics]

HH, HV, VH, VV = np.eye(4)


def compiled(text):
    return compile_circuit(parse_netlist(text))


class TestBasisOrder:
    """Internal (pol, mode) index against the computational basis."""

    def test_ee_is_vv(self):
        np.testing.assert_array_equal(internal_from_computational([1, 0, 0, 0]), VV)

    def test_gg_is_hh(self):
        np.testing.assert_array_equal(internal_from_computational([0, 0, 0, 1]), HH)

    def test_inverse(self, rng):
        ket = rng.normal(size=4) + 1j * rng.normal(size=4)

        np.testing.assert_allclose(computational_from_internal(internal_from_computational(ket)), ket)


class TestPhotonState:
    """Amplitude container over (pol, mode, path)."""

    def test_shape_checked(self):
        with pytest.raises(ValueError, match="amplitudes must have shape"):
            PhotonState(np.zeros((2, 2, 3)), ("a", "b"))

    def test_accessors(self):
        amps = np.zeros((2, 2, 2), dtype=complex)
        amps[1, 0, 1] = 0.6
        amps[0, 1, 0] = 0.8j
        state = PhotonState(amps, ("a", "b"))

        assert state.norm() == pytest.approx(1.0)
        assert state.amplitude("V", "h", "b") == 0.6
        assert state.path_probability("a") == pytest.approx(0.64)
        np.testing.assert_array_equal(state.branch("b"), 0.6 * VH)
        assert state.nonzero() == [("H", "v", "a", 0.8j), ("V", "h", "b", 0.6 + 0j)]


class TestCompile:
    """Composite unitaries and routing."""

    def test_unitary_for_every_corpus_file(self, valid_netlists):
        for path in valid_netlists:
            circuit = compile_circuit(parse_netlist(path.read_text()))
            u = circuit.unitary
            assert u.shape == (4 * circuit.path_count, 4 * circuit.path_count), path.name
            np.testing.assert_allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=1e-9, err_msg=path.name)

    def test_vacuum_slot_for_missing_port(self):
        circuit = compiled("pbs in=a out=b,c\n")

        assert circuit.labels == ("a", "b", "c", "~vac0")

    def test_pbs_routing(self):
        circuit = compiled("pbs in=a out=b,c\n")
        diag = (HH + VV) / np.sqrt(2)
        out = propagate(circuit, circuit.state_on(diag, "a"))

        np.testing.assert_allclose(out.branch("b"), HH / np.sqrt(2))
        np.testing.assert_allclose(out.branch("c"), VV / np.sqrt(2))
        assert out.path_probability("a") == 0.0

    def test_balanced_splitters_cancel(self):
        circuit = compiled("bs in=a,b out=c,d\nbs in=c,d out=e,f\n")
        out = propagate(circuit, circuit.state_on(HV, "a"))

        assert out.path_probability("e") == pytest.approx(1.0)
        assert out.path_probability("f") == pytest.approx(0.0, abs=1e-15)

    def test_sequence_on_one_path(self):
        circuit = compiled("hwp theta=45 in=p out=p\ncnot in=p out=p\n")
        out = propagate(circuit, circuit.state_on(HH, "p"))

        # H -> V, then V leaves the mode alone
        np.testing.assert_allclose(out.branch("p"), VH, atol=1e-15)

    def test_relabel_moves_amplitude(self):
        circuit = compiled("mirror in=p out=q\n")
        out = propagate(circuit, circuit.state_on(VV, "p"))

        assert out.path_probability("q") == pytest.approx(1.0)

    def test_markers_contribute_nothing(self):
        circuit = compiled("source pol=H out=p\nmask mode=h in=p out=p\n")

        np.testing.assert_array_equal(circuit.unitary, np.eye(4 * circuit.path_count))

    def test_empty_netlist(self):
        circuit = compiled("")

        assert circuit.labels == ("p0",)
        np.testing.assert_array_equal(circuit.unitary, np.eye(4))

    def test_prepared_state(self):
        circuit = compiled("source pol=V out=p\nmask mode=v in=p out=p\n")

        np.testing.assert_array_equal(circuit.prepared_state().branch("p"), VV)

    def test_unpolarized_source_needs_input(self):
        circuit = compiled("source out=p\nmirror in=p out=q\n")

        with pytest.raises(ValueError, match="supply an input state"):
            circuit.prepared_state()

    def test_state_from_other_circuit_rejected(self):
        a = compiled("mirror in=p out=q\n")
        b = compiled("pbs in=p out=q,r\n")

        with pytest.raises(ValueError, match="not built for this circuit"):
            propagate(b, a.state_on(HH))

    def test_detector_probabilities(self):
        circuit = compiled("source out=a\npbs in=a out=t,r\ndetector id=T in=t\ndetector id=R in=r\n")
        out = propagate(circuit, circuit.state_on((HV + 1j * VH) / np.sqrt(2)))

        probs = circuit.detector_probabilities(out)
        assert probs == pytest.approx({"T": 0.5, "R": 0.5})

    def test_non_unitary_element_refused(self, mocker):
        mocker.patch.object(PolarizationCnot, "local_unitary", return_value=2 * np.eye(4))

        with pytest.raises(NonUnitaryComposite, match="cnot on line 2"):
            compiled("mirror in=a out=a\ncnot in=a out=a\n")


ONE_PORT = ("hwp theta={theta:.6f} ref={ref}", "dove theta={theta:.6f}", "gp phi={phi:.6f}", "cnot", "mirror")
TWO_PORT = ("pbs", "bs", "mzim")


def random_chain(rng, length):
    """Netlist text for a random linear chain of elements starting on path p0."""
    paths = ["p0"]
    lines = ["source pol=H out=p0"]
    fresh = 1
    for _ in range(length):
        if rng.random() < 0.6:
            element = ONE_PORT[rng.integers(len(ONE_PORT))].format(
                theta=rng.uniform(-90, 90), ref=rng.choice(["H", "V"]), phi=rng.uniform(-np.pi, np.pi))
            path = paths[rng.integers(len(paths))]
            out = path
            if element == "mirror":
                out = f"p{fresh}"
                fresh += 1
                paths[paths.index(path)] = out
            lines.append(f"{element} in={path} out={out}")
            continue

        kind = TWO_PORT[rng.integers(len(TWO_PORT))]
        if len(paths) >= 2 and rng.random() < 0.5:
            a, b = rng.choice(paths, size=2, replace=False)
            lines.append(f"{kind} in={a},{b} out={a},{b}")
        else:
            a, b = paths[rng.integers(len(paths))], f"p{fresh}"
            fresh += 1
            paths.append(b)
            lines.append(f"{kind} in={a} out={a},{b}")
    return "\n".join(lines) + "\n"


class TestRandomChains:
    """Compiled unitarity over seeded random element chains."""

    def test_unitary(self, rng):
        for _ in range(100):
            text = random_chain(rng, int(rng.integers(1, 13)))
            circuit = compiled(text)
            u = circuit.unitary

            np.testing.assert_allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=1e-9, err_msg=text)
            out = propagate(circuit, circuit.state_on(HH, "p0"))
            assert out.norm() == pytest.approx(1.0, abs=1e-9)

    def test_round_trips_through_text(self, rng):
        for _ in range(20):
            ir = parse_netlist(random_chain(rng, 8))

            assert parse_netlist(serialize(ir)).same_structure(ir)
