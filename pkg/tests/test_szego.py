"""Outer-function layer: 1/D, D from the weight, S, r, coefficient recovery."""

import numpy as np
import pytest

from conftest import geometric_alphas, real_alphas
from szegojost.errors import (
    ConvergenceWarning,
    InvalidParameterError,
    PreconditionError,
    SzegoConditionError,
)
from szegojost.opuc import CircleMeasure, VerblunskyCoeffs, bernstein_szego
from szegojost.series import taylor_mul
from szegojost.szego import (
    d_from_weight,
    dinv_from_alphas,
    r_series,
    recover_alpha_geronimus_freud,
    recover_alpha_simon,
    s_series,
)

SQ3 = np.sqrt(3.0)


def test_dinv_single_coefficient_closed_form():
    """alpha_0 = 1/2: 1/D = (2/sqrt(3))(1 - z/2), a degree-one polynomial."""
    c = VerblunskyCoeffs.finitely_supported([0.5])
    dinv = dinv_from_alphas(c, order=6)
    expected = np.zeros(7)
    expected[0] = 2.0 / SQ3
    expected[1] = -1.0 / SQ3
    assert np.allclose(dinv.coeffs, expected)
    assert dinv.note is None


def test_dinv_constant_term_is_kappa_inf(rng):
    c = real_alphas(rng, 5)
    dinv = dinv_from_alphas(c, order=16)
    assert np.isclose(dinv.coeffs[0].real, c.kappa_inf())


def test_dinv_finitely_supported_is_exact_polynomial(rng):
    """Past the support the starred iterates stop changing."""
    c = real_alphas(rng, 3)
    low = dinv_from_alphas(c, order=8)
    high = dinv_from_alphas(c, order=20)
    assert np.allclose(high.coeffs[:9], low.coeffs)
    assert np.max(np.abs(high.coeffs[9:])) == 0.0


def test_dinv_truncated_warns_when_unconverged():
    c = VerblunskyCoeffs(alpha=0.5 * 0.5 ** np.arange(8))
    with pytest.warns(ConvergenceWarning):
        dinv = dinv_from_alphas(c, order=16)
    assert dinv.note is not None and "unconverged" in dinv.note


def test_dinv_truncated_quiet_when_tail_is_negligible():
    import warnings

    c = geometric_alphas(0.5, 2.0, order=96)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        dinv = dinv_from_alphas(c, order=64)
    assert dinv.note is None


def test_d_from_weight_uniform_is_one():
    d = d_from_weight(CircleMeasure.lebesgue(512), order=12)
    assert np.allclose(d.coeffs, np.eye(13)[0], atol=1e-13)


def test_d_from_weight_inverts_dinv(rng):
    c = real_alphas(rng, 4, scale=0.4)
    measure = bernstein_szego(c, 4)
    d = d_from_weight(measure, order=32)
    dinv = dinv_from_alphas(c, order=32)
    ident = taylor_mul(d, dinv, order=32)
    assert np.max(np.abs(ident.coeffs - np.eye(33)[0])) < 1e-10


def test_d_boundary_modulus_recovers_weight():
    """|D|^2 on the circle equals the weight density."""
    c = VerblunskyCoeffs.finitely_supported([0.3, -0.2])
    measure = bernstein_szego(c, 2, grid_size=512)
    d = d_from_weight(measure, order=64)
    vals = d(measure.points())
    assert np.max(np.abs(np.abs(vals) ** 2 - measure.weight)) < 1e-8


def test_d_from_weight_guards():
    with_atom = CircleMeasure(weight=0.5 * np.ones(64), point_masses=((1.0, 0.5),))
    with pytest.raises(PreconditionError):
        d_from_weight(with_atom, order=8)
    dead = CircleMeasure(weight=np.concatenate([np.zeros(1), np.full(63, 64.0 / 63.0)]))
    with pytest.raises(SzegoConditionError):
        d_from_weight(dead, order=8)
    with pytest.raises(InvalidParameterError):
        d_from_weight(CircleMeasure.lebesgue(64), order=40)


def test_recovery_round_trip(rng):
    """Both boundary integrals reproduce the coefficients they came from."""
    al = rng.uniform(-0.4, 0.4, 5)
    c = VerblunskyCoeffs.finitely_supported(al)
    measure = bernstein_szego(c, 5, 4096)
    dinv = dinv_from_alphas(c, order=7)
    for m in range(5):
        g = recover_alpha_geronimus_freud(c, measure, dinv, m)
        s = recover_alpha_simon(c, measure, dinv, m)
        assert abs(g - al[m]) < 1e-10
        assert abs(s - al[m]) < 1e-10
        assert abs(g - s) < 1e-10


def test_recovery_needs_mass_free_measure():
    c = VerblunskyCoeffs.finitely_supported([0.2])
    dinv = dinv_from_alphas(c, order=4)
    measure = CircleMeasure(weight=0.9 * np.ones(64), point_masses=((1.0, 0.1),))
    with pytest.raises(PreconditionError):
        recover_alpha_geronimus_freud(c, measure, dinv, 0)
    with pytest.raises(PreconditionError):
        recover_alpha_simon(c, measure, dinv, 0)


def test_s_series_layout():
    """c_0 = 1 and c_j = -alpha_{j-1}."""
    c = geometric_alphas(0.5, 2.0)
    s = s_series(c, order=10)
    assert s.coeffs[0] == 1.0
    assert np.allclose(s.coeffs[1:], -0.5 * 0.5 ** np.arange(10))
    with pytest.raises(InvalidParameterError):
        s_series(c, order=0)


def test_r_series_methods_agree():
    c = geometric_alphas(0.5, 2.0)
    dinv = dinv_from_alphas(c, order=64)
    grid = r_series(dinv, order=24, method="grid")
    product = r_series(dinv, order=24, method="product")
    assert np.max(np.abs(grid.coeffs - product.coeffs)) < 1e-12


def test_r_series_unimodular_on_circle():
    # single alpha: dinv = (2 - z)/sqrt(3) has its only zero at 2, so the
    # truncated tails decay at rate 2 and the circle values are clean
    c = VerblunskyCoeffs.finitely_supported([0.5])
    dinv = dinv_from_alphas(c, order=48)
    r = r_series(dinv, order=40)
    z = np.exp(1j * np.linspace(0.1, 2.0 * np.pi, 40))
    assert np.max(np.abs(np.abs(r(z)) - 1.0)) < 1e-10
    # the geometric family carries a dinv zero near |z| = 1.16, so the
    # negative tail decays slowly and truncation noise is much larger
    cg = geometric_alphas(0.5, 2.0)
    rg = r_series(dinv_from_alphas(cg, order=64), order=48)
    assert np.max(np.abs(np.abs(rg(z)) - 1.0)) < 5e-3


def test_r_series_real_coefficients_for_real_alpha(rng):
    c = real_alphas(rng, 4)
    dinv = dinv_from_alphas(c, order=32)
    r = r_series(dinv, order=16, method="product")
    assert np.max(np.abs(r.coeffs.imag)) < 1e-13


def test_r_series_guards():
    c = geometric_alphas(0.5, 2.0)
    dinv = dinv_from_alphas(c, order=16)
    with pytest.raises(InvalidParameterError):
        r_series(dinv, order=32, method="product")
    with pytest.raises(InvalidParameterError):
        r_series(dinv, order=8, method="newton")
