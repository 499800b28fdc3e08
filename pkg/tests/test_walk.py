"""Dirac walk: gate, stepping, continuum limit, Lorentz covariance."""

import math

import numpy as np
import pytest

from dcquantum.errors import PatchMismatch
from dcquantum.linalg import OperatorKind, classify_op, decompose_unitary
from dcquantum.scalar import DualComplex
from dcquantum.walk import (
    CovarianceReport,
    WalkState,
    continuum_residual,
    corrected_gate,
    covariance_check,
    dirac_gate,
    dirac_plane_wave,
    lorentz_encodings,
    point_source,
    run,
    step,
    walk_vs_continuum_error,
)
from dcquantum.linalg import DCVector


class TestGate:
    def test_entries(self):
        g = dirac_gate(0.5)
        assert np.allclose(g.sig, [[0, 1], [1, 0]])
        assert np.allclose(g.inf, -0.5j * np.eye(2))

    def test_is_dual_unitary(self):
        assert OperatorKind.UNITARY in classify_op(dirac_gate(1.7))

    def test_generator_is_mass_coupling(self):
        m = 1.1
        _, h = decompose_unitary(dirac_gate(m))
        assert np.allclose(h, [[0, -m], [-m, 0]])

    def test_corrected_gate_closed_form(self):
        m, h = 0.8, 0.3
        g = corrected_gate(m, h)
        c, s = math.cos(m * h), math.sin(m * h)
        assert np.allclose(g, [[-1j * s, c], [c, -1j * s]])
        assert np.allclose(g @ g.conj().T, np.eye(2))

    def test_corrected_gate_tends_to_dual_gate(self):
        m, h = 0.8, 1e-6
        g_eps = dirac_gate(m)
        approx = g_eps.sig + h * g_eps.inf
        assert np.abs(corrected_gate(m, h) - approx).max() < 1e-11


class TestStep:
    def test_massless_pure_shift(self):
        w = point_source(8, x0=3)
        w2 = step(w, 0.0)
        assert np.allclose(w2.plus.sig, np.eye(8)[4])
        assert np.abs(w2.plus.inf).max() == 0
        assert np.abs(w2.minus.sig).max() == 0

    def test_single_right_mover_first_step(self):
        m = 0.9
        w = step(point_source(8, x0=3), m)
        # psi+ rides to x0+1; an infinitesimal left-mover -im eps appears at x0-1
        assert w.plus.sig[4] == 1.0
        assert w.minus.inf[2] == -1j * m
        assert np.count_nonzero(w.plus.sig) == 1
        assert np.count_nonzero(w.minus.inf) == 1

    def test_wraparound(self):
        w = step(point_source(4, x0=3), 0.0)
        assert w.plus.sig[0] == 1.0

    def test_norm_conserved_over_many_steps(self):
        plus = np.exp(2j * np.pi * np.arange(16) / 16) / np.sqrt(32)
        minus = np.exp(-2j * np.pi * np.arange(16) / 16) / np.sqrt(32)
        w = WalkState(DCVector(plus), DCVector(minus))
        for _ in range(100):
            w = step(w, 1.3)
        n = w.total_norm()
        assert abs(n.sig - 1.0) < 1e-12 and abs(n.inf) < 1e-12

    def test_run_snapshots(self):
        snaps = run(point_source(8), 0.5, steps=6, record_every=2)
        assert [s.time for s in snaps] == [0, 2, 4, 6]
        snaps = run(point_source(8), 0.5, steps=5, record_every=2)
        assert [s.time for s in snaps] == [0, 2, 4, 5]

    def test_mismatched_fields_rejected(self):
        with pytest.raises(PatchMismatch):
            WalkState(DCVector(np.zeros(3)), DCVector(np.zeros(4)))


class TestContinuumResidual:
    def test_plane_wave_residual_is_second_order(self):
        k, m = 1.0, 1.0
        psip, psim, omega = dirac_plane_wave(k, m)
        assert omega == pytest.approx(math.sqrt(k * k + m * m))

        def worst(h):
            rp, rm = continuum_residual(psip, psim, m, x=0.3, t=0.2, h=h)
            return max(abs(rp), abs(rm))

        ratio = worst(1e-3) / worst(5e-4)
        assert 3.5 < ratio < 4.5

    def test_massless_plane_wave_is_exact(self):
        psip, psim, _ = dirac_plane_wave(1.0, 0.0)
        rp, rm = continuum_residual(psip, psim, 0.0, x=0.7, t=0.1, h=0.05)
        assert abs(rp) < 1e-14 and abs(rm) < 1e-14

    def test_constant_spinor_residual(self):
        # x-independent functions probe only the mass rotation: the residual
        # per row is |e^{-imh} - (cos mh - i sin mh)| = 0 for the symmetric
        # spinor, checked against the exact solution of d_t psi = -im sigma1 psi
        m, h = 1.0, 0.05
        psip = lambda x, t: np.exp(-1j * m * t) / np.sqrt(2)
        psim = lambda x, t: np.exp(-1j * m * t) / np.sqrt(2)
        rp, rm = continuum_residual(psip, psim, m, x=0.0, t=0.0, h=h)
        assert abs(rp) < 1e-14 and abs(rm) < 1e-14

    def test_non_solution_residual_is_first_order(self):
        psip = lambda x, t: np.exp(1j * x)
        psim = lambda x, t: 0.0 * x

        def worst(h):
            rp, rm = continuum_residual(psip, psim, 1.0, x=0.0, t=0.0, h=h)
            return max(abs(rp), abs(rm))

        ratio = worst(1e-3) / worst(5e-4)
        assert 1.7 < ratio < 2.3


class TestWalkConvergence:
    def test_first_order_in_h(self):
        errs = [walk_vs_continuum_error(n)[0] for n in (128, 256, 512)]
        for big, small in zip(errs, errs[1:]):
            assert 1.6 < big / small < 2.4

    def test_error_is_small_at_fine_resolution(self):
        err, h, t_end = walk_vs_continuum_error(1024)
        assert err < 0.02
        assert t_end == pytest.approx(1.0, abs=h)


class TestLorentz:
    def test_encoding_columns(self):
        p = lorentz_encodings(4, 9, m=2.0)
        assert np.allclose(p.e_alpha.sig, 0.5)
        assert np.allclose(p.e_beta.sig, 1.0 / 3.0)
        assert p.m_prime == pytest.approx(2.0 / 6.0)

    def test_invalid_patch(self):
        with pytest.raises(PatchMismatch):
            lorentz_encodings(0, 2)

    def test_trivial_patch(self):
        p = lorentz_encodings(1, 1)
        rep = covariance_check(p, (DualComplex(0.3 + 0.1j), DualComplex(-0.2)))
        assert rep.max_discrepancy < 1e-15 and rep.passed

    def test_dual_exact_patch(self):
        p = lorentz_encodings(2, 3)
        inputs = (DualComplex(0.4 - 0.2j, 0.1), DualComplex(0.3j, -0.5))
        rep = covariance_check(p, inputs)
        assert rep.mode == "dual_exact"
        assert rep.max_discrepancy < 1e-12
        assert rep.passed

    def test_dual_exact_many_patches(self, rng):
        for alpha in (1, 2, 3):
            for beta in (1, 2, 3):
                p = lorentz_encodings(alpha, beta, m=0.7)
                inputs = (
                    DualComplex(complex(*rng.standard_normal(2)),
                                complex(*rng.standard_normal(2))),
                    DualComplex(complex(*rng.standard_normal(2)),
                                complex(*rng.standard_normal(2))),
                )
                rep = covariance_check(p, inputs)
                assert rep.max_discrepancy < 1e-12

    def test_corrected_mode_second_order(self):
        p = lorentz_encodings(2, 2)
        inputs = (DualComplex(0.5, 0.2), DualComplex(0.3 - 0.1j, 0.0))
        rep = covariance_check(p, inputs, mode="corrected", h=1e-2)
        assert rep.mode == "corrected"
        assert rep.fitted_order == pytest.approx(2.0, abs=0.2)
        assert rep.passed

    def test_unknown_mode(self):
        p = lorentz_encodings(1, 2)
        with pytest.raises(ValueError):
            covariance_check(p, (DualComplex(1), DualComplex(0)), mode="nope")

    def test_wire_values_single_left_mover(self):
        # one left-moving unit amplitude through a 1 x 3 patch: each output
        # right wire keeps a_i plus an infinitesimal -i m' psi-/sqrt(3)
        p = lorentz_encodings(1, 3, m=1.0)
        psim = DualComplex(1.0)
        rep = covariance_check(p, (DualComplex(0), psim))
        assert rep.max_discrepancy < 1e-12
