"""Unit tests for optical element kinds and their local unitaries."""

import numpy as np
import pytest

from photonenv.photonics import bs_action, cnot_matrix, dove_matrix, gp_phase, hwp_matrix, mzim_action, pbs_action
from photonenv.photonics.elements import (
    BeamSplitter,
    Detector,
    DovePrism,
    GlassPlate,
    HalfWavePlate,
    Mask,
    ParitySorter,
    PolarizationCnot,
    PolarizingBeamSplitter,
    Source,
    finite_float,
)

pytestmark = [pytest.mark.unit, pytest.mark.photonics]

H, V = 0, 1
h, v = 0, 1


def internal(pol, mode):
    return 2 * pol + mode


def route(matrix, pol, mode, port):
    """(internal index, port) receiving the amplitude of a basis input."""
    col = 2 * internal(pol, mode) + port
    rows = np.flatnonzero(np.abs(matrix[:, col]) > 1e-12)
    assert len(rows) == 1
    return divmod(int(rows[0]), 2)


def is_unitary(m):
    return np.allclose(m.conj().T @ m, np.eye(m.shape[0]), atol=1e-12)


class TestJonesMatrices:
    """Single degree-of-freedom matrices."""

    def test_hwp_at_zero_is_reflection(self):
        np.testing.assert_allclose(hwp_matrix(0.0), np.diag([1.0, -1.0]))

    def test_hwp_at_22_5_is_hadamard(self):
        np.testing.assert_allclose(hwp_matrix(22.5), np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=1e-15)

    def test_hwp_at_45_swaps(self):
        np.testing.assert_allclose(hwp_matrix(45.0), [[0, 1], [1, 0]], atol=1e-15)

    def test_hwp_reference_axis(self):
        """Relative to V the plate sends V to cos2t V + sin2t H."""
        m = hwp_matrix(15.0, ref="V")

        assert m[1, 1] == pytest.approx(np.cos(np.deg2rad(30)))
        assert m[0, 1] == pytest.approx(np.sin(np.deg2rad(30)))

    def test_hwp_bad_reference(self):
        with pytest.raises(ValueError, match="ref"):
            hwp_matrix(10.0, ref="D")

    @pytest.mark.parametrize("theta", (0.0, 12.3, 45.0, -70.0))
    def test_dove_is_proper_rotation(self, theta):
        m = dove_matrix(theta)

        assert is_unitary(m)
        assert np.linalg.det(m) == pytest.approx(1.0)

    def test_dove_first_column(self):
        m = dove_matrix(10.0)

        np.testing.assert_allclose(m[:, 0], [np.cos(np.deg2rad(20)), np.sin(np.deg2rad(20))])

    def test_gp_phase(self):
        assert gp_phase(np.pi) == pytest.approx(-1.0)

    def test_cnot(self):
        m = cnot_matrix()

        assert is_unitary(m)
        assert m[internal(H, v), internal(H, h)] == 1.0
        assert m[internal(V, h), internal(V, h)] == 1.0


class TestTwoPortActions:
    """Port routing of PBS, MZIM and BS."""

    @pytest.mark.parametrize("action", [pbs_action, mzim_action, bs_action])
    def test_unitary(self, action):
        assert is_unitary(action())

    def test_pbs_transmits_h_reflects_v(self):
        m = pbs_action()

        assert route(m, H, h, 0) == (internal(H, h), 0)
        assert route(m, H, v, 1) == (internal(H, v), 1)
        assert route(m, V, h, 0) == (internal(V, h), 1)
        assert route(m, V, v, 1) == (internal(V, v), 0)

    def test_mzim_sorts_parity(self):
        m = mzim_action()

        assert route(m, H, h, 0)[1] == 0
        assert route(m, V, v, 0)[1] == 0
        assert route(m, V, h, 0)[1] == 1
        assert route(m, H, v, 0)[1] == 1

    def test_bs_balanced(self):
        m = bs_action()
        col = m[:, 2 * internal(V, h) + 0]

        np.testing.assert_allclose(np.abs(col[[2 * internal(V, h), 2 * internal(V, h) + 1]]) ** 2, [0.5, 0.5])


class TestElementConstruction:
    """Parameter and port validation on element instances."""

    def test_required_parameter(self):
        with pytest.raises(ValueError, match="requires parameter 'theta'"):
            HalfWavePlate(["a"], ["b"], {})

    def test_unexpected_parameter(self):
        with pytest.raises(ValueError, match="unexpected parameter 'phi'"):
            Mask(["a"], ["b"], {"mode": "h", "phi": "1"})

    def test_bad_choice(self):
        with pytest.raises(ValueError, match="expected one of h, v"):
            Mask(["a"], ["b"], {"mode": "x"})

    def test_finite_float(self):
        assert finite_float("1e-3") == 0.001
        with pytest.raises(ValueError, match="finite"):
            finite_float("inf")

    @pytest.mark.parametrize("factory, message", [
        (lambda: Source(["a"], ["b"]), "takes no in="),
        (lambda: Detector(["a"], ["b"], {"id": "D1"}), "takes no out="),
        (lambda: DovePrism([], ["b"], {"theta": 1.0}), "takes 1 in="),
        (lambda: PolarizingBeamSplitter(["a"], ["b"]), "takes 2 out="),
        (lambda: BeamSplitter(["a", "b", "c"], ["d", "e"]), "takes 1 to 2 in="),
        (lambda: ParitySorter(["a"], ["b", "b"]), "output path twice"),
        (lambda: PolarizingBeamSplitter(["a", "a"], ["b", "c"]), "input path twice"),
    ])
    def test_arity(self, factory, message):
        with pytest.raises(ValueError, match=message):
            factory()

    def test_numeric_params_converted(self):
        el = HalfWavePlate(["a"], ["a"], {"theta": 22.5})

        assert el.params == {"theta": 22.5}
        np.testing.assert_allclose(el.local_unitary(), np.kron(hwp_matrix(22.5), np.eye(2)))

    def test_params_in_declaration_order(self):
        el = HalfWavePlate(["a"], ["a"], {"ref": "V", "theta": "10"})

        assert list(el.params) == ["theta", "ref"]

    def test_to_line(self):
        el = GlassPlate(["p"], ["q"], {"phi": 0.5})

        assert el.to_line() == "gp phi=0.5 in=p out=q"

    def test_equality_ignores_line(self):
        a = PolarizationCnot(["p"], ["p"], line=3)
        b = PolarizationCnot(["p"], ["p"], line=9)

        assert a == b
        assert hash(a) == hash(b)
        assert a != PolarizationCnot(["p"], ["q"])

    def test_marker_elements_do_not_transform(self):
        assert not Source([], ["p"], {"pol": "H"}).is_transforming
        assert not Detector(["p"], [], {"id": "D1"}).is_transforming
        assert Mask(["p"], ["p"], {"mode": "v"}).is_transforming
        np.testing.assert_array_equal(Mask(["p"], ["p"], {"mode": "v"}).local_unitary(), np.eye(4))
