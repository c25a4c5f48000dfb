"""Jost layer: finite-range polynomials, the coefficient map, u, M, Blaschke."""

import numpy as np
import pytest

from conftest import mild_jacobi, real_alphas
from szegojost.errors import (
    DomainError,
    InvalidParameterError,
    OutOfRangeError,
    PoleError,
)
from szegojost.jost import (
    JostData,
    b_series,
    b_series_from_deltas,
    blaschke,
    e_from_z,
    finite_range_jost_data,
    geronimus_deltas,
    geronimus_map,
    jost_g_ell,
    m_finite_range,
    m_function,
    u_from_dinv,
    z_from_e,
)
from szegojost.oprl import (
    JacobiParams,
    PointMeasure,
    eval_polys,
    spectral_measure_oracle,
)
from szegojost.opuc import VerblunskyCoeffs
from szegojost.series import TaylorSeries


def test_joukowski_maps_invert(rng):
    es = rng.uniform(-5.0, 5.0, 10) + 1j * rng.uniform(-2.0, 2.0, 10)
    for e in es:
        z = z_from_e(e)
        assert abs(z) <= 1.0 + 1e-12
        assert np.isclose(e_from_z(z), e)
    # the band maps to the circle
    assert np.isclose(abs(z_from_e(1.3)), 1.0)
    with pytest.raises(DomainError):
        e_from_z(0.0)


def test_jost_polynomial_free_case():
    g = jost_g_ell(JacobiParams.free())
    z = np.array([0.3, -0.8j, 1.7])
    assert np.allclose(g(z), 1.0)


def test_jost_polynomial_single_b():
    """One diagonal perturbation b_1 gives g = 1 - b_1 z."""
    params = JacobiParams(a=[1.0], b=[1.5], free_after=1)
    g = jost_g_ell(params)
    assert np.allclose(g.coeffs, [1.0, -1.5, 0.0])


def test_jost_polynomial_matches_defining_combination(rng):
    """g_l(z) = z^l (p_l(z + 1/z) - z p_{l-1}(z + 1/z)) with the poles cancelled."""
    params = mild_jacobi(rng, 3)
    ell = 4
    g = jost_g_ell(params, ell)
    assert g.order <= 2 * ell
    zs = rng.uniform(0.3, 1.4, 12) * np.exp(1j * rng.uniform(0.0, 2 * np.pi, 12))
    ev = eval_polys(params, ell, zs + 1.0 / zs)
    direct = zs**ell * (ev.p[ell] - zs * ev.p[ell - 1])
    assert np.allclose(g(zs), direct, atol=1e-11)


def test_jost_polynomial_range_choice_is_immaterial(rng):
    params = mild_jacobi(rng, 3)
    low = jost_g_ell(params)
    high = jost_g_ell(params, params.free_range_order() + 3)
    zs = rng.uniform(0.2, 1.5, 10) * np.exp(1j * rng.uniform(0.0, 2 * np.pi, 10))
    assert np.allclose(low(zs), high(zs), atol=1e-12)
    with pytest.raises(InvalidParameterError):
        jost_g_ell(params, params.free_range_order() - 1)


def test_jost_polynomial_needs_free_tail(rng):
    truncated = JacobiParams(a=[1.1], b=[0.2])
    with pytest.raises(InvalidParameterError):
        jost_g_ell(truncated)


def test_coefficient_map_constant_half():
    """alpha = 1/2 maps to b = -1/2 and a = 3/4, exactly in floats."""
    c = VerblunskyCoeffs(alpha=np.full(40, 0.5))
    params = geronimus_map(c)
    assert np.all(params.b == -0.5)
    assert np.all(params.a == 0.75)
    assert not params.is_free_tailed


def test_coefficient_map_matches_deltas(rng):
    c = real_alphas(rng, 9)
    b, asq1 = geronimus_deltas(c, count=8)
    params = geronimus_map(c, count=8)
    assert np.allclose(params.b, b)
    assert np.allclose(params.a, np.sqrt(1.0 + asq1))
    assert params.is_free_tailed


def test_coefficient_map_needs_real_alpha():
    with pytest.raises(InvalidParameterError):
        geronimus_map(VerblunskyCoeffs.finitely_supported([0.1j]))


def test_deltas_truncated_count_cap():
    c = VerblunskyCoeffs(alpha=np.full(10, 0.1))
    b, asq1 = geronimus_deltas(c)
    assert len(b) == 4  # entries through alpha_9 support four mapped rows
    with pytest.raises(OutOfRangeError):
        geronimus_deltas(c, count=5)


def test_u_single_coefficient_closed_form():
    """alpha_0 = 1/2 gives u = 1 - z/2 after the boundary rescaling."""
    c = VerblunskyCoeffs.finitely_supported([0.5])
    data = u_from_dinv(c, order=8)
    expected = np.zeros(9)
    expected[0] = 1.0
    expected[1] = -0.5
    assert np.allclose(data.u.coeffs, expected)
    assert data.zeros_in_disk.size == 0


def test_u_prefactor_value(rng):
    al = rng.uniform(-0.5, 0.5, 4)
    c = VerblunskyCoeffs.finitely_supported(al)
    data = u_from_dinv(c, order=16)
    scale = np.sqrt((1.0 - al[0] ** 2) * (1.0 - al[1]))
    assert np.isclose(data.u.coeffs[0].real, scale * c.kappa_inf())


def test_u_matches_finite_range_polynomial(rng):
    """The rescaled reciprocal outer function equals the exact polynomial."""
    for _ in range(6):
        n = int(rng.integers(2, 7))
        al = rng.uniform(-0.55, 0.55, n)
        c = VerblunskyCoeffs.finitely_supported(al)
        params = geronimus_map(c)
        g = jost_g_ell(params, len(params.a) + 2)
        data = u_from_dinv(c)
        zs = 0.85 * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, 20))
        assert np.max(np.abs(data.u(zs) - g(zs))) < 1e-9


def test_u_has_no_disk_zeros_for_decaying_alpha():
    """Finitely supported alpha gives a purely a.c. measure, so u is
    zero-free in the disk and the mapped matrix has no eigenvalues
    outside [-2, 2]."""
    c = VerblunskyCoeffs.finitely_supported([0.9, -0.9])
    data = u_from_dinv(c, order=32)
    assert data.zeros_in_disk.size == 0
    assert data.eigenvalues.size == 0
    params = geronimus_map(c)
    oracle = spectral_measure_oracle(params, 600)
    assert np.max(np.abs(oracle.nodes)) <= 2.0 + 1e-8


def test_jost_data_accepts_a_genuine_bound_state():
    """The single-b_1 polynomial 1 - 1.5 z pairs the zero 2/3 with E = 13/6."""
    data = JostData(
        u=TaylorSeries([1.0, -1.5, 0.0]),
        zeros_in_disk=np.array([2.0 / 3.0]),
        eigenvalues=np.array([13.0 / 6.0]),
    )
    assert data.eigenvalues[0] == 13.0 / 6.0


def test_finite_range_jost_data_finds_the_bound_state():
    data = finite_range_jost_data(JacobiParams(a=[1.0], b=[1.5], free_after=1))
    assert data.zeros_in_disk.size == 1
    assert np.isclose(data.zeros_in_disk[0], 2.0 / 3.0)
    assert np.isclose(data.eigenvalues[0], 13.0 / 6.0)
    free = finite_range_jost_data(JacobiParams.free())
    assert free.zeros_in_disk.size == 0
    assert free.u.coeffs[0] == 1.0


def test_finite_range_jost_data_two_sided():
    # b_1 = +/-1.5 are mirror images: zeros at +/-2/3, energies +/-13/6
    minus = finite_range_jost_data(JacobiParams(a=[1.0], b=[-1.5], free_after=1))
    assert np.isclose(minus.zeros_in_disk[0], -2.0 / 3.0)
    assert np.isclose(minus.eigenvalues[0], -13.0 / 6.0)


def test_u_needs_real_alpha():
    with pytest.raises(InvalidParameterError):
        u_from_dinv(VerblunskyCoeffs.finitely_supported([0.5j]))


def test_jost_data_validation():
    u = TaylorSeries([1.0, -0.5])
    with pytest.raises(InvalidParameterError):
        JostData(u=u, zeros_in_disk=np.array([0.3]), eigenvalues=np.empty(0))
    with pytest.raises(InvalidParameterError):
        # 0.3 is not a zero of 1 - z/2
        JostData(u=u, zeros_in_disk=np.array([0.3]), eigenvalues=np.array([0.3 + 1 / 0.3]))


def test_b_series_coefficient_placement():
    """Odd slots take -b_n, even slots take -(a_n^2 - 1), indexed from 1."""
    params = JacobiParams(a=[1.1, 1.0], b=[0.2, -0.3], free_after=2)
    b = b_series(params, order=6)
    expected = [1.0, -0.2, -(1.1**2 - 1.0), 0.3, 0.0, 0.0, 0.0]
    assert np.allclose(b.coeffs, expected)
    with pytest.raises(InvalidParameterError):
        b_series(params, order=1)


def test_b_series_from_deltas_matches_map(rng):
    c = real_alphas(rng, 6)
    params = geronimus_map(c, count=6)
    bd, asq1 = geronimus_deltas(c, count=6)
    direct = b_series(params, order=12)
    from_deltas = b_series_from_deltas(bd, asq1, order=12)
    assert np.max(np.abs(direct.coeffs - from_deltas.coeffs)) < 1e-15


def test_m_free_is_identity():
    free = JacobiParams.free()
    zs = np.array([0.5, 0.3 - 0.2j, 1.7 + 0.4j])
    assert np.allclose(m_finite_range(free, zs), zs)
    assert m_function(free, 0.5) == 0.5


def test_m_single_b_closed_form():
    """b_1 only: M(z) = z/(1 - b_1 z), poles included."""
    params = JacobiParams(a=[1.0], b=[1.5], free_after=1)
    zs = np.array([0.2, 0.5 + 0.3j, 2.0])
    assert np.allclose(m_finite_range(params, zs), zs / (1.0 - 1.5 * zs))
    with pytest.raises(PoleError):
        m_finite_range(params, 2.0 / 3.0)


def test_boundary_density_identity():
    """|u|^2 Im M = sin(theta) on the upper unit circle."""
    params = JacobiParams(a=[1.0], b=[1.5], free_after=1)
    g = jost_g_ell(params)
    theta = np.linspace(0.15, np.pi - 0.15, 50)
    z = np.exp(1j * theta)
    lhs = np.abs(g(z)) ** 2 * m_finite_range(params, z).imag
    assert np.max(np.abs(lhs - np.sin(theta))) < 1e-12


def test_m_reflection_identity(rng):
    """u(z) u(1/z) (M(z) - M(1/z)) = z - 1/z off the circle."""
    al = rng.uniform(-0.5, 0.5, 4)
    c = VerblunskyCoeffs.finitely_supported(al)
    params = geronimus_map(c)
    data = u_from_dinv(c)
    zs = rng.uniform(0.5, 0.9, 15) * np.exp(1j * rng.uniform(0.0, 2 * np.pi, 15))
    lhs = data.u(zs) * data.u(1.0 / zs) * (
        m_finite_range(params, zs) - m_finite_range(params, 1.0 / zs)
    )
    assert np.max(np.abs(lhs - (zs - 1.0 / zs))) < 1e-9


def test_m_function_dispatch():
    pm = PointMeasure(nodes=[-1.0, 1.0], weights=[0.5, 0.5])
    z = 0.4 + 0.1j
    assert np.isclose(m_function(pm, z), pm.stieltjes(z + 1.0 / z))
    with pytest.raises(DomainError):
        m_function(pm, 1.2)

    class Borel:
        def joukowski_borel(self, z):
            return 7.0 * z

    assert m_function(Borel(), 0.5) == 3.5
    with pytest.raises(InvalidParameterError):
        m_function(object(), 0.5)


def test_blaschke_unimodular_and_zeros(rng):
    zeros = [0.4 + 0.2j, -0.3]
    z = np.exp(1j * rng.uniform(0.0, 2 * np.pi, 24))
    assert np.max(np.abs(np.abs(blaschke(zeros, z)) - 1.0)) < 1e-12
    assert np.isclose(blaschke(zeros, 0.4 + 0.2j), 0.0, atol=1e-15)
    with pytest.raises(InvalidParameterError):
        blaschke([1.2], 0.5)
