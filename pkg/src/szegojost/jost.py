"""Jost-function layer on the real-line side.

Finite-range Jost polynomials, the real coefficient map between Verblunsky
and Jacobi parameters, the scaled reciprocal-Szego route to u(z), the
Jacobi-side coefficient series B(z), M-functions in the Joukowski variable,
and Blaschke products.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import (
    DomainError,
    InvalidParameterError,
    NumericalDegeneracyError,
    PoleError,
)
from .oprl import JacobiParams, PointMeasure, orthonormal_poly_coeffs
from .opuc import VerblunskyCoeffs
from .series import TaylorSeries
from .szego import dinv_from_alphas

__all__ = [
    "JostData",
    "jost_g_ell",
    "finite_range_jost_data",
    "geronimus_deltas",
    "geronimus_map",
    "u_from_dinv",
    "b_series",
    "m_function",
    "m_finite_range",
    "blaschke",
    "z_from_e",
    "e_from_z",
]

_polyval = np.polynomial.polynomial.polyval


def e_from_z(z):
    """Joukowski map E = z + 1/z."""
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise DomainError("the Joukowski map needs z != 0")
    return z + 1.0 / z

def z_from_e(e: complex) -> complex:
    """The Joukowski preimage inside the closed unit disk.

    Root of z^2 - E z + 1 = 0 with |z| <= 1 (the two roots multiply to 1);
    |z| = 1 exactly when E lies on [-2, 2].
    """
    e = complex(e)
    s = np.sqrt(e * e - 4.0 + 0.0j)
    r1, r2 = (e + s) / 2.0, (e - s) / 2.0
    return r1 if abs(r1) <= abs(r2) else r2


def jost_g_ell(params: JacobiParams, ell: int | None = None) -> TaylorSeries:
    """Exact Jost polynomial g_l(z) = z^l (p_l(z + 1/z) - z p_{l-1}(z + 1/z)).

    Needs a free tail: a_n = 1 for n >= l and b_n = 0 for n > l.  The
    apparent poles at z = 0 cancel, leaving a polynomial of degree <= 2l,
    assembled here exactly through binomial expansion of z^l (z + 1/z)^j.
    ``ell`` defaults to the smallest valid range and may be any value >= it
    (the function does not depend on the choice).
    """
    min_ell = params.free_range_order()
    if ell is None:
        ell = min_ell
    elif ell < min_ell:
        raise InvalidParameterError(
            f"range {ell} is too small; parameters are only free past {min_ell}"
        )
    if ell == 0:
        return TaylorSeries(np.array([1.0, 0.0]))
    p = orthonormal_poly_coeffs(params, ell)
    acc = np.zeros(2 * ell + 1, dtype=float)
    # z^l * x^j -> sum_i C(j,i) z^{l+j-2i}
    for j, cj in enumerate(p[ell]):
        for i in range(j + 1):
            acc[ell + j - 2 * i] += cj * comb(j, i)
    # z^{l+1} * x^j -> sum_i C(j,i) z^{l+1+j-2i}
    for j, cj in enumerate(p[ell - 1]):
        for i in range(j + 1):
            acc[ell + 1 + j - 2 * i] -= cj * comb(j, i)
    return TaylorSeries(acc)


def geronimus_deltas(coeffs: VerblunskyCoeffs, count: int | None = None):
    """Exact (b_n, a_n^2 - 1) arrays of the mapped Jacobi parameters.

    b_{n+1}    = a2n - a2n+2 - a2n+1 (a2n + a2n+2)
    a_{n+1}^2 - 1 = a2n+1 - a2n+3 - a2n+2^2 (1 - a2n+3)(1 + a2n+1)
                    - a2n+3 a2n+1
    Returned without the square root so callers needing a_n - 1 to full
    relative precision can avoid the cancellation in sqrt(1 + delta) - 1.
    """
    if not coeffs.is_real():
        raise InvalidParameterError("the coefficient map needs real alpha")
    if count is None:
        if coeffs.is_finitely_supported:
            count = len(coeffs.alpha) // 2 + 3
        else:
            count = max(0, (len(coeffs.alpha) - 2) // 2)
    al = np.array([coeffs.entry(j).real for j in range(2 * count + 2)])
    b = np.empty(count)
    asq1 = np.empty(count)
    for n in range(count):
        a0, a1, a2 = al[2 * n], al[2 * n + 1], al[2 * n + 2]
        a3 = al[2 * n + 3] if 2 * n + 3 < len(al) else coeffs.entry(2 * n + 3).real
        b[n] = a0 - a2 - a1 * (a0 + a2)
        asq1[n] = a1 - a3 - a2**2 * (1.0 - a3) * (1.0 + a1) - a3 * a1
    return b, asq1


def geronimus_map(coeffs: VerblunskyCoeffs, count: int | None = None) -> JacobiParams:
    """Jacobi parameters of the real-line measure matching real alpha.

    For finitely supported alpha the result is free past the support and the
    tail policy says so; truncated alpha yields truncated parameters.
    """
    b, asq1 = geronimus_deltas(coeffs, count)
    if np.any(1.0 + asq1 <= 0.0):
        n = int(np.argmax(1.0 + asq1 <= 0.0))
        raise NumericalDegeneracyError(
            f"mapped a_{n + 1}^2 = {1 + asq1[n]:.3e} is not positive"
        )
    a = np.sqrt(1.0 + asq1)
    free_after = len(a) if coeffs.is_finitely_supported else None
    return JacobiParams(a=a, b=b, free_after=free_after)


@dataclass(frozen=True)
class JostData:
    """Jost series with its disk zeros and the eigenvalues they encode."""

    u: TaylorSeries
    zeros_in_disk: np.ndarray
    eigenvalues: np.ndarray

    def __post_init__(self):
        zeros = np.asarray(self.zeros_in_disk, dtype=complex)
        eigs = np.asarray(self.eigenvalues, dtype=complex)
        if zeros.shape != eigs.shape:
            raise InvalidParameterError("zeros and eigenvalues must pair up")
        if zeros.size:
            if np.max(np.abs(zeros)) >= 1.0:
                raise InvalidParameterError("recorded zeros must lie inside the disk")
            scale = float(np.max(np.abs(self.u.coeffs)))
            resid = np.max(np.abs(self.u(zeros)))
            if resid > 1e-6 * scale:
                raise InvalidParameterError(
                    f"alleged zero has residual {resid:.3e} relative to {scale:.3e}"
                )
            if np.max(np.abs(e_from_z(zeros) - eigs)) > 1e-9 * max(
                1.0, float(np.max(np.abs(eigs)))
            ):
                raise InvalidParameterError("eigenvalues must be Joukowski images")
        object.__setattr__(self, "zeros_in_disk", zeros)
        object.__setattr__(self, "eigenvalues", eigs)


def u_from_dinv(
    coeffs: VerblunskyCoeffs,
    dinv: TaylorSeries | None = None,
    order: int = 64,
    refine_step: int = 8,
) -> JostData:
    """Jost series u = sqrt((1 - alpha_0^2)(1 - alpha_1)) / D for real alpha.

    Disk zeros of the truncated series are found by companion rootfinding,
    then filtered by residual and by stability under truncation refinement
    (relative movement < 1e-6 when the order grows by ``refine_step``), which
    discards spurious truncation zeros.
    """
    if not coeffs.is_real():
        raise InvalidParameterError("the Jost correspondence needs real alpha")
    if dinv is None:
        dinv = dinv_from_alphas(coeffs, order)
    a0 = coeffs.entry(0).real
    a1 = coeffs.entry(1).real
    scale = float(np.sqrt((1.0 - a0 * a0) * (1.0 - a1)))
    u = TaylorSeries(scale * dinv.coeffs, note=dinv.note)
    zeros = _disk_roots(u)
    refined = TaylorSeries(
        scale * dinv_from_alphas(coeffs, u.order + refine_step).coeffs
    )
    stable = []
    for z in zeros:
        candidates = _disk_roots(refined, near=z)
        if candidates.size and np.min(np.abs(candidates - z)) < 1e-6 * max(abs(z), 1e-3):
            stable.append(z)
    zeros = np.array(sorted(stable, key=lambda w: (w.real, w.imag)), dtype=complex)
    return JostData(u=u, zeros_in_disk=zeros, eigenvalues=e_from_z(zeros) if zeros.size else np.empty(0, dtype=complex))


def finite_range_jost_data(params: JacobiParams, ell: int | None = None) -> JostData:
    """Jost polynomial of a finite-range perturbation with its disk zeros.

    The polynomial is exact, so every root inside the open disk is a
    genuine bound state; the eigenvalues are the Joukowski images z + 1/z.
    """
    u = jost_g_ell(params, ell)
    zeros = np.array(
        sorted(_disk_roots(u), key=lambda w: (w.real, w.imag)), dtype=complex
    )
    eigs = e_from_z(zeros) if zeros.size else np.empty(0, dtype=complex)
    return JostData(u=u, zeros_in_disk=zeros, eigenvalues=eigs)


def _disk_roots(series: TaylorSeries, near: complex | None = None) -> np.ndarray:
    """Roots of the truncated polynomial inside the open unit disk."""
    c = series.coeffs
    nz = np.nonzero(np.abs(c) > 1e-300)[0]
    if nz.size == 0 or nz[-1] == 0:
        return np.empty(0, dtype=complex)
    roots = np.polynomial.polynomial.polyroots(c[: nz[-1] + 1])
    roots = roots[np.abs(roots) < 1.0]
    if roots.size:
        scale = float(np.max(np.abs(c)))
        roots = roots[np.abs(series(roots)) < 1e-8 * scale]
    if near is not None and roots.size:
        roots = roots[np.abs(roots - near) < 0.1]
    return roots


def b_series(params: JacobiParams, order: int = 64) -> TaylorSeries:
    """B(z) = 1 - sum_n [b_{n+1} z^{2n+1} + (a_{n+1}^2 - 1) z^{2n+2}].

    First-order kernel of the Jost function: stripping one row off the
    matrix multiplies u by ((z^2+1-b_1 z)/a_1) and subtracts
    (a_1/a_2) z^2 times the twice-stripped u, so to first order in the
    coefficient deltas u picks up -b_{n+1}(z + ... + z^{2n+1}) and
    -(a_{n+1}-1)(1 + 2z^2 + ... + 2z^{2n+2}).  B keeps exactly the top
    power of each kernel; that is the part the reflected combination
    (1-z^2)u(z) + z^2 u(1/z)B(z) needs in order to cancel the slow tail.
    """
    if order < 2:
        raise InvalidParameterError("series order must be >= 2")
    c = np.zeros(order + 1, dtype=float)
    c[0] = 1.0
    n = 0
    while 2 * n + 1 <= order:
        c[2 * n + 1] = -params.b_entry(n + 1)
        if 2 * n + 2 <= order:
            c[2 * n + 2] = -(params.a_entry(n + 1) ** 2 - 1.0)
        n += 1
    return TaylorSeries(c)


def b_series_from_deltas(b, asq1, order: int = 64) -> TaylorSeries:
    """B(z) assembled from exact (b_n, a_n^2 - 1) arrays.

    Placing a_n^2 - 1 directly (rather than reconstituting a_n and
    subtracting 1) keeps full relative precision when a_n is within
    rounding distance of 1.
    """
    if order < 2:
        raise InvalidParameterError("series order must be >= 2")
    b = np.asarray(b, dtype=float)
    asq1 = np.asarray(asq1, dtype=float)
    c = np.zeros(order + 1, dtype=float)
    c[0] = 1.0
    n = 0
    while 2 * n + 1 <= order:
        c[2 * n + 1] = -(b[n] if n < len(b) else 0.0)
        if 2 * n + 2 <= order:
            c[2 * n + 2] = -(asq1[n] if n < len(asq1) else 0.0)
        n += 1
    return TaylorSeries(c)


def m_finite_range(params: JacobiParams, z) -> complex | np.ndarray:
    """M(z) for free-tailed parameters by coefficient stripping, exactly.

    Peeling rows off the matrix turns M into a finite continued fraction
    seeded by the free value M(z) = z, so the result is a rational function
    of z valid on all of C except its poles; in particular it evaluates the
    analytic continuation across the unit circle that the reflection
    identity needs.
    """
    ell = params.free_range_order()
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise DomainError("M needs z != 0")
    e = z + 1.0 / z
    m = z.astype(complex).copy() if z.shape else complex(z)
    for j in range(ell, 0, -1):
        den = e - params.b_entry(j) - params.a_entry(j) ** 2 * m
        if np.min(np.abs(den)) < 1e-13 * max(1.0, float(np.max(np.abs(e)))):
            raise PoleError(z, context=f"continued fraction at depth {j}")
        m = 1.0 / den
    return m


def m_function(measure, z) -> complex:
    """Borel transform in the Joukowski variable: M(z) = integral d rho/(z + 1/z - x).

    Accepts a :class:`PointMeasure` (exact sum), free-tailed
    :class:`JacobiParams` (exact continued fraction, also valid outside the
    disk as the analytic continuation), or any object exposing
    ``joukowski_borel(z)``.  Measure-side inputs are restricted to
    0 < |z| < 1 where the integral representation converges.
    """
    if isinstance(measure, JacobiParams):
        return m_finite_range(measure, z)
    z = complex(z)
    if not 0.0 < abs(z) < 1.0:
        raise DomainError("the integral form of M needs 0 < |z| < 1")
    if isinstance(measure, PointMeasure):
        return measure.stieltjes(z + 1.0 / z)
    if hasattr(measure, "joukowski_borel"):
        return measure.joukowski_borel(z)
    raise InvalidParameterError(f"cannot evaluate M for {type(measure).__name__}")


def blaschke(zeros, z):
    """Product of (z - z_j)/(1 - conj(z_j) z) over the listed disk zeros."""
    z = np.asarray(z, dtype=complex)
    result = np.ones_like(z)
    for zj in np.asarray(zeros, dtype=complex):
        if abs(zj) >= 1.0:
            raise InvalidParameterError("Blaschke zeros must lie inside the disk")
        result = result * (z - zj) / (1.0 - np.conj(zj) * z)
    return result
