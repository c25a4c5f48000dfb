"""Unit-circle recursion engine.

Covers the coefficient side of the circle theory: the Szego recursion for
orthonormal and second-kind polynomials, paraorthogonal polynomials and their
point measures, Bernstein-Szego approximants, and the Caratheodory transform
of a sampled circle measure.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AliasingError,
    DomainError,
    InvalidParameterError,
    OutOfRangeError,
)

__all__ = [
    "VerblunskyCoeffs",
    "CirclePolyPair",
    "CircleMeasure",
    "ParaOrthogonalPoly",
    "PopucMeasure",
    "szego_recursion",
    "second_kind",
    "popuc",
    "popuc_point_measure",
    "bernstein_szego",
    "popuc_average_check",
    "caratheodory",
    "roots_of_unity",
]

_polyval = np.polynomial.polynomial.polyval


@dataclass(frozen=True)
class VerblunskyCoeffs:
    """Verblunsky coefficients alpha_0, alpha_1, ... with a tail policy.

    ``zero_after = k`` means alpha_n = 0 for all n > k (so the sequence is
    finitely supported); ``zero_after = None`` means the sequence is known
    only up to the stored length and reading past it raises
    :class:`OutOfRangeError`.
    """

    alpha: np.ndarray
    zero_after: int | None = None

    def __post_init__(self):
        alpha = np.asarray(self.alpha, dtype=complex)
        if alpha.ndim != 1:
            raise InvalidParameterError("alpha must be a 1-d array")
        if not np.all(np.isfinite(alpha)):
            raise InvalidParameterError("alpha entries must be finite")
        if alpha.size and np.max(np.abs(alpha)) >= 1.0:
            raise InvalidParameterError("every |alpha_n| must be < 1")
        if self.zero_after is not None and self.zero_after >= 0:
            if len(alpha) < self.zero_after + 1:
                alpha = np.concatenate(
                    [alpha, np.zeros(self.zero_after + 1 - len(alpha), dtype=complex)]
                )
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def finitely_supported(cls, alphas) -> "VerblunskyCoeffs":
        alphas = np.atleast_1d(np.asarray(alphas, dtype=complex))
        return cls(alphas, zero_after=len(alphas) - 1)

    @classmethod
    def zero(cls) -> "VerblunskyCoeffs":
        return cls(np.empty(0, dtype=complex), zero_after=-1)

    @property
    def is_finitely_supported(self) -> bool:
        return self.zero_after is not None

    def entry(self, n: int) -> complex:
        if n < 0:
            raise InvalidParameterError("alpha_n is defined for n >= 0")
        if n < len(self.alpha):
            return complex(self.alpha[n])
        if self.is_finitely_supported:
            return 0.0 + 0.0j
        raise OutOfRangeError(n, "alpha")

    def slice(self, n: int) -> np.ndarray:
        """alpha_0 .. alpha_{n-1} as an array."""
        return np.array([self.entry(j) for j in range(n)], dtype=complex)

    def rho(self, n: int) -> float:
        return float(np.sqrt(1.0 - abs(self.entry(n)) ** 2))

    def kappa(self, n: int) -> float:
        """kappa_n = prod_{j<n} rho_j^{-1}; nondecreasing in n."""
        al = self.slice(n)
        return float(np.prod(1.0 / np.sqrt(1.0 - np.abs(al) ** 2)))

    def kappa_inf(self) -> float:
        """Limit of kappa_n; finite because sum |alpha_n|^2 < infinity here."""
        if not self.is_finitely_supported:
            raise InvalidParameterError(
                "kappa_inf needs a finitely supported tail; pass the stored "
                "length to kappa() for a truncated estimate"
            )
        return self.kappa(len(self.alpha))

    def negated(self) -> "VerblunskyCoeffs":
        return VerblunskyCoeffs(-self.alpha, zero_after=self.zero_after)

    def is_real(self) -> bool:
        return bool(np.all(self.alpha.imag == 0.0))


def _monic_sequence(coeffs: VerblunskyCoeffs, n: int) -> list[np.ndarray]:
    """Monic Phi_0 .. Phi_n as ascending coefficient arrays.

    Each step uses Phi_{m+1} = z Phi_m - conj(alpha_m) Phi_m*, with the star
    polynomial realized exactly as conjugate-and-reverse.
    """
    if n < 0:
        raise InvalidParameterError("order must be nonnegative")
    seq = [np.ones(1, dtype=complex)]
    for m in range(n):
        phi = seq[m]
        star = np.conj(phi[::-1])
        nxt = np.zeros(m + 2, dtype=complex)
        nxt[1:] = phi
        nxt[: m + 1] -= np.conj(coeffs.entry(m)) * star
        seq.append(nxt)
    return seq


@dataclass(frozen=True)
class CirclePolyPair:
    """Orthonormal phi_n and phi_n* as ascending coefficient arrays.

    phi_star is exactly the conjugated-and-reversed phi array, so the two
    have equal modulus on the unit circle by construction; kappa is the
    leading coefficient of phi_n (and the constant term of phi_n*).
    """

    phi: np.ndarray
    phi_star: np.ndarray
    kappa: float

    def __post_init__(self):
        object.__setattr__(self, "phi", np.asarray(self.phi, dtype=complex))
        object.__setattr__(self, "phi_star", np.asarray(self.phi_star, dtype=complex))

    @property
    def degree(self) -> int:
        return len(self.phi) - 1

    @property
    def monic(self) -> np.ndarray:
        return self.phi / self.kappa

    @property
    def monic_star(self) -> np.ndarray:
        return self.phi_star / self.kappa

    def __call__(self, z):
        return _polyval(np.asarray(z, dtype=complex), self.phi)

    def star(self, z):
        return _polyval(np.asarray(z, dtype=complex), self.phi_star)


def szego_recursion(coeffs: VerblunskyCoeffs, n: int) -> CirclePolyPair:
    """(phi_n, phi_n*) after n recursion steps."""
    monic = _monic_sequence(coeffs, n)[n]
    kappa = coeffs.kappa(n)
    phi = kappa * monic
    return CirclePolyPair(phi=phi, phi_star=np.conj(phi[::-1]), kappa=kappa)


def second_kind(coeffs: VerblunskyCoeffs, n: int) -> CirclePolyPair:
    """(psi_n, psi_n*): the recursion run with every alpha negated."""
    return szego_recursion(coeffs.negated(), n)


@dataclass(frozen=True)
class ParaOrthogonalPoly:
    """z Phi_n - conj(omega) Phi_n* and its zeros (all on the unit circle)."""

    coeffs: np.ndarray
    zeros: np.ndarray
    omega: complex

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        return _polyval(np.asarray(z, dtype=complex), self.coeffs)


def popuc(coeffs: VerblunskyCoeffs, n: int, omega: complex) -> ParaOrthogonalPoly:
    """Paraorthogonal polynomial of degree n+1 for boundary parameter omega.

    Zeros come from the companion matrix of the coefficient array and are
    reported as computed, without projection onto the circle.
    """
    omega = complex(omega)
    if abs(abs(omega) - 1.0) > 1e-12:
        raise InvalidParameterError(f"omega must be unimodular, got |omega|={abs(omega)!r}")
    phi = _monic_sequence(coeffs, n)[n]
    poly = np.zeros(n + 2, dtype=complex)
    poly[1:] = phi
    poly[: n + 1] -= np.conj(omega) * np.conj(phi[::-1])
    zeros = np.polynomial.polynomial.polyroots(poly)
    return ParaOrthogonalPoly(coeffs=poly, zeros=zeros, omega=omega)


@dataclass(frozen=True)
class PopucMeasure:
    """Point measure on the circle carried by paraorthogonal zeros."""

    zeros: np.ndarray
    weights: np.ndarray
    omega: complex

    def moment(self, k: int) -> complex:
        """Trigonometric moment integral of z^(-k)."""
        return complex(np.sum(self.weights * self.zeros ** (-k)))


def popuc_point_measure(coeffs: VerblunskyCoeffs, n: int, omega: complex) -> PopucMeasure:
    """Zeros plus Christoffel weights 1/sum_{k<=n} |phi_k(z_j)|^2."""
    para = popuc(coeffs, n, omega)
    monic = _monic_sequence(coeffs, n)
    acc = np.zeros(len(para.zeros))
    for k in range(n + 1):
        vals = _polyval(para.zeros, monic[k]) * coeffs.kappa(k)
        acc += np.abs(vals) ** 2
    weights = 1.0 / acc
    return PopucMeasure(zeros=para.zeros, weights=weights, omega=para.omega)


@dataclass(frozen=True)
class CircleMeasure:
    """Probability measure on the unit circle: sampled weight plus atoms.

    ``weight`` holds samples of the density with respect to dtheta/2pi on the
    uniform grid theta_j = 2 pi j / G; G must be a power of two so the
    transform-based operations stay aligned with the grid.
    """

    weight: np.ndarray
    point_masses: tuple = ()
    mass_tol: float = field(default=1e-10, compare=False)

    def __post_init__(self):
        w = np.asarray(self.weight, dtype=float)
        if w.ndim != 1 or w.size < 2 or (w.size & (w.size - 1)) != 0:
            raise InvalidParameterError("weight grid size must be a power of two >= 2")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise InvalidParameterError("weight samples must be finite and nonnegative")
        masses = tuple((complex(z), float(m)) for z, m in self.point_masses)
        for z, m in masses:
            if m <= 0:
                raise InvalidParameterError("point masses must be positive")
            if abs(abs(z) - 1.0) > 1e-12:
                raise InvalidParameterError("point masses must sit on the unit circle")
        total = float(w.mean()) + sum(m for _, m in masses)
        if abs(total - 1.0) > self.mass_tol:
            raise InvalidParameterError(
                f"total mass {total:.17g} is not 1 within {self.mass_tol:g}"
            )
        object.__setattr__(self, "weight", w)
        object.__setattr__(self, "point_masses", masses)

    @property
    def grid_size(self) -> int:
        return len(self.weight)

    def thetas(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.grid_size) / self.grid_size

    def points(self) -> np.ndarray:
        return np.exp(1j * self.thetas())

    def moment(self, k: int) -> complex:
        """Trigonometric moment integral of e^(-i k theta)."""
        grid = np.mean(self.weight * np.exp(-1j * k * self.thetas()))
        atoms = sum(m * z ** (-k) for z, m in self.point_masses)
        return complex(grid + atoms)

    @classmethod
    def lebesgue(cls, grid_size: int = 4096) -> "CircleMeasure":
        return cls(np.ones(grid_size))


def bernstein_szego(coeffs: VerblunskyCoeffs, n: int, grid_size: int = 4096) -> CircleMeasure:
    """Measure with density 1/|phi_n|^2 (w.r.t. dtheta/2pi), sampled on the grid.

    This is the measure whose Verblunsky coefficients equal the first n
    entries of ``coeffs`` and vanish from index n on, so its trigonometric
    moments for |k| <= n agree with those of the full measure.
    """
    pair = szego_recursion(coeffs, n)
    z = np.exp(2j * np.pi * np.arange(grid_size) / grid_size)
    w = 1.0 / np.abs(pair(z)) ** 2
    return CircleMeasure(weight=w)


def roots_of_unity(count: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(count) / count)


def popuc_average_check(
    coeffs: VerblunskyCoeffs,
    n: int,
    omegas,
    k: int,
    grid_size: int = 4096,
) -> tuple[complex, complex]:
    """Average the k-th paraorthogonal moment over omega vs. the cut measure.

    Each moment is a polynomial in omega of degree <= |k| <= n, so a uniform
    root-of-unity grid of size >= 2n+2 averages it exactly; the average must
    match the k-th moment of the degree-n approximant measure.
    """
    omegas = np.asarray(omegas, dtype=complex)
    if abs(k) > n:
        raise InvalidParameterError("moment order |k| must not exceed n")
    if len(omegas) < 2 * n + 2:
        raise AliasingError(
            f"omega grid of size {len(omegas)} cannot resolve order {n}; need >= {2 * n + 2}"
        )
    if np.max(np.abs(np.abs(omegas) - 1.0)) > 1e-12:
        raise InvalidParameterError("all omega values must be unimodular")
    avg = complex(
        np.mean([popuc_point_measure(coeffs, n, w).moment(k) for w in omegas])
    )
    reference = bernstein_szego(coeffs, n, grid_size).moment(k)
    return avg, reference


def caratheodory(measure: CircleMeasure, z: complex) -> complex:
    """F(z) = integral of (zeta + z)/(zeta - z) d mu(zeta) for |z| < 1.

    Trapezoid sum over the weight grid (spectrally accurate for smooth
    weights) plus exact kernel terms for the atoms.  F(0) = 1 and Re F > 0.
    """
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError("the Caratheodory transform is evaluated inside the disk")
    zeta = measure.points()
    val = complex(np.mean(measure.weight * (zeta + z) / (zeta - z)))
    val += sum(m * (p + z) / (p - z) for p, m in measure.point_masses)
    return val
