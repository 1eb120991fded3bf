"""Unit tests for the Kraus, Choi and dilation presentations of the channel."""

import numpy as np
import pytest

from photonenv.channel import (
    MULTIMODE_VACUUM,
    SINGLE_MODE_CAVITY,
    Basis,
    KrausSet,
    apply_channel,
    apply_model,
    build_dilation,
    channel_kraus,
    choi_matrix,
    evolve_analytic,
    initial_state,
    kraus_closed_form,
    kraus_coefficients,
    kraus_from_choi,
    kraus_from_dilation,
    map_coefficients,
)
from photonenv.core.exceptions import IncompleteKrausSet, InconsistentCoefficients, NegativeChoiEigenvalue
from photonenv.entanglement import concurrence, concurrence_cavity_eg
from photonenv.sampling import random_state

pytestmark = [pytest.mark.unit, pytest.mark.channel]

GRID = (0.0, 1e-8, 1e-3, 0.1, 0.5, float(np.log(2)), 1.0, 2.0, 5.0, 20.0)


class TestKrausSet:
    """The KrausSet container."""

    def test_empty_rejected(self):
        with pytest.raises(IncompleteKrausSet, match="empty"):
            KrausSet((), ())

    def test_label_count_checked(self):
        with pytest.raises(ValueError, match="one label"):
            KrausSet((np.eye(4),), ("a", "b"))

    def test_shape_checked(self):
        with pytest.raises(ValueError, match="4x4"):
            KrausSet((np.eye(2),), ("a",))

    def test_identity_channel(self, rng):
        ks = KrausSet((np.eye(4),), ("I",), Basis.COMPUTATIONAL)
        rho = random_state(rng)

        assert ks.completeness_residual() == 0.0
        assert apply_channel(ks, rho).allclose(rho, atol=1e-14)

    def test_incomplete_set_refused(self, rng):
        ks = KrausSet((0.5 * np.eye(4),), ("half",))

        with pytest.raises(IncompleteKrausSet, match="completeness residual"):
            apply_channel(ks, random_state(rng))


class TestClosedForm:
    """Closed-form operators M0, M1A, M1B, M2."""

    @pytest.mark.parametrize("u", GRID + (800.0,))
    def test_complete(self, u):
        ks, _ = kraus_closed_form(u)

        assert ks.completeness_residual() <= 1e-9

    def test_labels_and_basis(self):
        ks, kc = kraus_closed_form(0.4)

        assert ks.labels == ("M0", "M1A", "M1B", "M2")
        assert ks.basis is Basis.COLLECTIVE
        assert ks.operator("M2")[3, 1] == pytest.approx(kc.F)

    def test_identity_at_zero(self):
        ks, _ = kraus_closed_form(0.0)

        np.testing.assert_array_equal(ks.operator("M0"), np.eye(4))
        for label in ("M1A", "M1B", "M2"):
            assert np.count_nonzero(ks.operator(label)) == 0

    @pytest.mark.parametrize("u", GRID)
    def test_matches_analytic_solution(self, u, rng):
        ks, _ = kraus_closed_form(u)
        for _ in range(5):
            rho = random_state(rng)
            assert apply_channel(ks, rho).allclose(evolve_analytic(rho, u), atol=1e-9)


class TestChoi:
    """Choi matrix and the Kraus operators extracted from it."""

    @pytest.mark.parametrize("u", (0.0, 0.3, 1.0, 4.0))
    def test_hermitian_psd_trace_four(self, u):
        c = choi_matrix(u)

        np.testing.assert_allclose(c, c.conj().T, atol=1e-14)
        assert np.trace(c).real == pytest.approx(4.0)
        assert np.min(np.linalg.eigvalsh(c)) > -1e-12

    def test_blocks_are_images_of_units(self):
        c = choi_matrix(0.6)
        unit = np.zeros((4, 4))
        unit[1, 2] = 1.0

        from photonenv.channel import propagate_collective
        np.testing.assert_allclose(c[4:8, 8:12], propagate_collective(unit, 0.6))

    def test_rank(self):
        assert len(kraus_from_choi(0.0)) == 1
        assert len(kraus_from_choi(np.log(2))) == 4

    @pytest.mark.parametrize("u", GRID)
    def test_matches_analytic_solution(self, u, rng):
        ks = kraus_from_choi(u)

        assert ks.completeness_residual() <= 1e-8
        for _ in range(5):
            rho = random_state(rng)
            assert apply_channel(ks, rho).allclose(evolve_analytic(rho, u), atol=1e-9)

    def test_negative_eigenvalue_refused(self, mocker):
        broken = np.eye(16, dtype=complex) / 4
        broken[0, 0] = -1e-6
        mocker.patch("photonenv.channel.kraus.choi_matrix", return_value=broken)

        with pytest.raises(NegativeChoiEigenvalue, match="Choi eigenvalue"):
            kraus_from_choi(0.5)


class TestDilation:
    """System-environment isometry."""

    @pytest.mark.parametrize("u", GRID + (800.0,))
    def test_multimode_isometry(self, u):
        v = build_dilation(map_coefficients(u))

        assert v.shape == (16, 4)
        np.testing.assert_allclose(v.conj().T @ v, np.eye(4), atol=1e-9)

    @pytest.mark.parametrize("gt", (0.0, 0.5, np.pi / (2 * np.sqrt(2)), 3.0))
    def test_cavity_isometry(self, gt):
        v = build_dilation(map_coefficients(gt, SINGLE_MODE_CAVITY), model=SINGLE_MODE_CAVITY)

        assert v.shape == (12, 4)
        np.testing.assert_allclose(v.conj().T @ v, np.eye(4), atol=1e-9)

    def test_trivial_embedding_at_zero(self):
        v = build_dilation(map_coefficients(0.0))

        for col in range(4):
            assert v[col * 4, col] == 1.0
            assert np.linalg.norm(v[:, col]) == pytest.approx(1.0)

    def test_mismatched_coefficients_rejected(self):
        with pytest.raises(InconsistentCoefficients, match="not an isometry"):
            build_dilation(map_coefficients(0.5), kraus_coefficients(1.5))

    @pytest.mark.parametrize("u", (1e-8, 0.2, float(np.log(2)), 3.0))
    def test_environment_trace_matches_analytic_solution(self, u, rng):
        ks = kraus_from_dilation(build_dilation(map_coefficients(u)))

        assert ks.basis is Basis.COMPUTATIONAL
        assert len(ks) == 4
        for _ in range(5):
            rho = random_state(rng)
            assert apply_channel(ks, rho).allclose(evolve_analytic(rho, u), atol=1e-9)

    def test_wrong_shape(self):
        with pytest.raises(ValueError, match="isometry"):
            kraus_from_dilation(np.zeros((12, 4)), MULTIMODE_VACUUM)


class TestCavityChannel:
    """Single-mode cavity flavor, available only through the dilation."""

    def test_three_operators(self):
        ks = channel_kraus(0.8, SINGLE_MODE_CAVITY)

        assert ks.labels == ("K0", "K1", "K2")
        assert ks.completeness_residual() <= 1e-12

    @pytest.mark.parametrize("gt", (0.2, 0.9, 1.7))
    def test_eg_concurrence(self, gt):
        rho = apply_model(initial_state("eg"), gt, SINGLE_MODE_CAVITY)

        assert concurrence(rho).concurrence == pytest.approx(concurrence_cavity_eg(gt), abs=1e-9)

    def test_ee_populations(self):
        gt = 0.45
        c = map_coefficients(gt, SINGLE_MODE_CAVITY)
        rho = apply_model(initial_state("ee"), gt, SINGLE_MODE_CAVITY)

        assert rho.element("ee", "ee").real == pytest.approx(abs(c.M) ** 2)
        assert rho.element("eg", "eg").real == pytest.approx(abs(c.P) ** 2)
        assert rho.element("gg", "gg").real == pytest.approx(abs(c.N) ** 2)

    def test_multimode_route_is_closed_form(self, rng):
        rho = random_state(rng)

        assert apply_model(rho, 0.7).allclose(evolve_analytic(rho, 0.7), atol=1e-9)
