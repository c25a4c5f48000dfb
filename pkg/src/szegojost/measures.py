"""Measure specifications, discretization, and coefficient ingestion.

A MeasureSpec is the human-writable description (JSON document) of a
probability measure on the unit circle or on [-2, 2]: a named analytic
weight family or inline samples, plus finitely many point masses.  Circle
specs realize to a CircleMeasure on a power-of-two grid; line specs realize
to a large PointMeasure on Gauss nodes of a reference free matrix, after an
integrability precheck on the endpoint behavior of the weight.
"""

import json
import math
import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import (
    DegenerateMeasureError,
    InvalidParameterError,
    PreconditionError,
)
from .oprl import JacobiParams, PointMeasure
from .opuc import CircleMeasure, VerblunskyCoeffs, szego_recursion

__all__ = [
    "MeasureSpec",
    "ExperimentConfig",
    "CONFIG_ENV_VAR",
    "load_config",
    "realize_circle",
    "realize_line",
    "ingest_circle",
    "ingest_line",
    "parse_alpha_spec",
]

CONFIG_ENV_VAR = "SZEGOJOST_CONFIG"
_CIRCLE_FAMILIES = ("uniform", "bernstein-szego", "cosine-polynomial")
_LINE_FAMILIES = ("semicircle-free", "uniform", "szego-mapped")
_GAUSS_REFERENCE_SIZE = 2000


@dataclass(frozen=True)
class MeasureSpec:
    """Declarative description of a circle or line probability measure.

    Exactly one of ``family`` (with ``family_params``) or ``samples`` gives
    the a.c. weight.  ``normalization`` scales the a.c. part; None means
    "choose it so the total mass is 1".  Point masses are (location, mass)
    pairs: unimodular locations for circle measures, real for line measures.
    """

    kind: str
    family: str | None = None
    family_params: tuple = ()
    samples: tuple | None = None
    point_masses: tuple = ()
    normalization: float | None = None

    def __post_init__(self):
        if self.kind not in ("circle", "line"):
            raise InvalidParameterError(f"kind must be circle or line, got {self.kind!r}")
        if (self.family is None) == (self.samples is None):
            raise InvalidParameterError("specify exactly one of family or samples")
        if self.family is not None:
            table = _CIRCLE_FAMILIES if self.kind == "circle" else _LINE_FAMILIES
            if self.family not in table:
                raise InvalidParameterError(
                    f"unknown {self.kind} family {self.family!r}; choose from {table}"
                )
            object.__setattr__(self, "family_params", tuple(float(p) for p in self.family_params))
        if self.samples is not None:
            arr = tuple(float(s) for s in self.samples)
            if len(arr) < 8:
                raise InvalidParameterError("inline samples need at least 8 points")
            if min(arr) < 0.0:
                raise InvalidParameterError("weight samples must be nonnegative")
            object.__setattr__(self, "samples", arr)
        masses = []
        total = 0.0
        for loc, mass in self.point_masses:
            loc, mass = complex(loc), float(mass)
            if mass <= 0.0:
                raise InvalidParameterError("point masses must be positive")
            total += mass
            if self.kind == "circle":
                if abs(abs(loc) - 1.0) > 1e-9:
                    raise InvalidParameterError(f"circle mass location {loc} is not unimodular")
                loc = loc / abs(loc)
            else:
                if abs(loc.imag) > 1e-12:
                    raise InvalidParameterError(f"line mass location {loc} is not real")
                loc = loc.real
            masses.append((loc, mass))
        if total >= 1.0:
            raise InvalidParameterError("point masses must total less than 1")
        object.__setattr__(self, "point_masses", tuple(masses))
        if self.normalization is not None and float(self.normalization) <= 0.0:
            raise InvalidParameterError("normalization must be positive")

    @classmethod
    def from_dict(cls, doc: dict) -> "MeasureSpec":
        known = {"kind", "acWeight", "pointMasses", "normalization"}
        extra = set(doc) - known
        if extra:
            raise InvalidParameterError(f"unknown field(s) in measure document: {sorted(extra)}")
        if "kind" not in doc or "acWeight" not in doc:
            raise InvalidParameterError("measure document needs fields kind and acWeight")
        family, params, samples = None, (), None
        ac = doc["acWeight"]
        if isinstance(ac, str):
            name, _, rest = ac.partition(":")
            family = name.strip()
            if rest.strip():
                try:
                    params = tuple(float(tok) for tok in rest.split(","))
                except ValueError as exc:
                    raise InvalidParameterError(f"bad acWeight parameter list {rest!r}") from exc
        elif isinstance(ac, dict) and "samples" in ac:
            samples = tuple(ac["samples"])
        else:
            raise InvalidParameterError("acWeight must be 'family:params' or {'samples': [...]}")
        masses = tuple((m[0] if not isinstance(m[0], str) else complex(m[0]), m[1])
                       for m in doc.get("pointMasses", ()))
        return cls(
            kind=doc["kind"],
            family=family,
            family_params=params,
            samples=samples,
            point_masses=masses,
            normalization=doc.get("normalization"),
        )

    @classmethod
    def from_file(cls, path: str) -> "MeasureSpec":
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        if not isinstance(doc, dict):
            raise InvalidParameterError("measure document must be a JSON object")
        return cls.from_dict(doc)


def _bernstein_szego_weight(alphas, thetas: np.ndarray) -> np.ndarray:
    coeffs = VerblunskyCoeffs.finitely_supported(alphas)
    n = len(coeffs.alpha)
    pair = szego_recursion(coeffs, n)
    vals = pair(np.exp(1j * thetas))
    return 1.0 / np.abs(vals) ** 2


def _circle_weight(spec: MeasureSpec, thetas: np.ndarray) -> np.ndarray:
    if spec.samples is not None:
        return np.asarray(spec.samples, dtype=float)
    if spec.family == "uniform":
        return np.ones_like(thetas)
    if spec.family == "bernstein-szego":
        return _bernstein_szego_weight(spec.family_params, thetas)
    if spec.family == "cosine-polynomial":
        w = np.ones_like(thetas)
        for j, cj in enumerate(spec.family_params, start=1):
            w += cj * np.cos(j * thetas)
        if np.min(w) <= 0.0:
            raise InvalidParameterError("cosine-polynomial weight is not strictly positive")
        return w
    raise InvalidParameterError(f"unhandled circle family {spec.family!r}")


def realize_circle(spec: MeasureSpec, grid_size: int = 4096) -> CircleMeasure:
    """Sample a circle spec onto its grid and normalize the total mass."""
    if spec.kind != "circle":
        raise InvalidParameterError("realize_circle needs a circle-kind spec")
    if spec.samples is not None:
        grid_size = len(spec.samples)
    thetas = 2.0 * np.pi * np.arange(grid_size) / grid_size
    w = _circle_weight(spec, thetas)
    mass_total = sum(m for _, m in spec.point_masses)
    mean = float(np.mean(w))
    if mean <= 0.0:
        raise PreconditionError("a.c. part vanishes; point-mass-only measures are excluded")
    if spec.normalization is None:
        scale = (1.0 - mass_total) / mean
    else:
        scale = float(spec.normalization)
    return CircleMeasure(weight=scale * w, point_masses=spec.point_masses)


@lru_cache(maxsize=8)
def _free_gauss_rule(size: int):
    """Gauss nodes and weights of the size-N free matrix, in closed form.

    The truncated free matrix has eigenvalues 2 cos(k pi/(N+1)) and
    first-component weights (2/(N+1)) sin^2(k pi/(N+1)); these quadrature
    nodes integrate polynomials of degree <= 2N-1 exactly against the
    semicircle density sqrt(4-x^2)/(2 pi).
    """
    k = np.arange(size, 0, -1)
    angles = k * np.pi / (size + 1)
    nodes = 2.0 * np.cos(angles)
    weights = (2.0 / (size + 1)) * np.sin(angles) ** 2
    return nodes, weights


def _line_density(spec: MeasureSpec):
    """Vectorized a.c. density f(x) on (-2, 2), up to normalization."""
    if spec.samples is not None:
        xs = np.linspace(-2.0, 2.0, len(spec.samples))
        vals = np.asarray(spec.samples, dtype=float)
        return lambda x: np.interp(x, xs, vals)
    if spec.family == "semicircle-free":
        return lambda x: np.sqrt(np.maximum(4.0 - np.asarray(x) ** 2, 0.0)) / (2.0 * np.pi)
    if spec.family == "uniform":
        return lambda x: np.full_like(np.asarray(x, dtype=float), 0.25)
    if spec.family == "szego-mapped":
        alphas = spec.family_params
        def density(x):
            x = np.asarray(x, dtype=float)
            theta = np.arccos(np.clip(x / 2.0, -1.0, 1.0))
            w = _bernstein_szego_weight(alphas, theta)
            return w * np.sqrt(np.maximum(4.0 - x**2, 0.0)) / (2.0 * np.pi)
        return density
    raise InvalidParameterError(f"unhandled line family {spec.family!r}")


def _endpoint_exponents(density) -> tuple:
    """Fitted vanishing exponents of f near -2 and +2."""
    deltas = np.array([1e-2, 1e-3, 1e-4, 1e-5])
    out = []
    for sign in (-1.0, 1.0):
        xs = sign * (2.0 - deltas)
        vals = np.maximum(np.asarray(density(xs), dtype=float), 1e-300)
        slope = np.polyfit(np.log(deltas), np.log(vals), 1)[0]
        out.append(float(slope))
    return tuple(out)


def check_line_integrability(spec: MeasureSpec) -> None:
    """Require f(x)/(4 - x^2) to be integrable, naming a divergent endpoint.

    The weight must vanish at each endpoint at a positive fitted rate;
    a flat (or growing) endpoint makes the integral logarithmically (or
    worse) divergent there.
    """
    lo, hi = _endpoint_exponents(_line_density(spec))
    bad = [name for name, p in (("-2", lo), ("+2", hi)) if p <= 0.05]
    if bad:
        raise PreconditionError(
            "integral of f(x)/(4 - x^2) diverges at endpoint "
            + " and ".join(bad)
            + "; the weight does not vanish there"
        )


def realize_line(spec: MeasureSpec, size: int = _GAUSS_REFERENCE_SIZE) -> PointMeasure:
    """Discretize a line spec on free-matrix Gauss nodes.

    The a.c. part is re-weighted from the semicircle reference rule, so
    polynomial integrals hold to Gauss accuracy; point masses are merged
    into the node list.
    """
    if spec.kind != "line":
        raise InvalidParameterError("realize_line needs a line-kind spec")
    nodes, gauss_w = _free_gauss_rule(size)
    f = _line_density(spec)(nodes)
    if np.min(f) < 0.0:
        raise InvalidParameterError("line weight is negative somewhere on (-2, 2)")
    reference = np.sqrt(4.0 - nodes**2) / (2.0 * np.pi)
    w = gauss_w * f / reference
    total = float(np.sum(w))
    if total <= 0.0:
        raise PreconditionError("a.c. part vanishes; point-mass-only measures are excluded")
    mass_total = sum(m for _, m in spec.point_masses)
    if spec.normalization is None:
        scale = (1.0 - mass_total) / total
    else:
        scale = float(spec.normalization)
    w = scale * w
    xs, ws = list(nodes), list(w)
    for loc, mass in spec.point_masses:
        j = int(np.searchsorted(xs, loc))
        if j < len(xs) and abs(xs[j] - loc) < 1e-12:
            ws[j] += mass
        elif j > 0 and abs(xs[j - 1] - loc) < 1e-12:
            ws[j - 1] += mass
        else:
            xs.insert(j, float(loc))
            ws.insert(j, mass)
    return PointMeasure(nodes=np.array(xs), weights=np.array(ws))


def _circle_expectation(measure: CircleMeasure, poly: np.ndarray, extra_power: int = 0):
    """Mean of z^extra_power * poly(z) against the measure."""
    z = measure.points()
    vals = np.polynomial.polynomial.polyval(z, poly) * z**extra_power
    total = np.mean(measure.weight * vals)
    for loc, mass in measure.point_masses:
        total += mass * np.polynomial.polynomial.polyval(loc, poly) * loc**extra_power
    return complex(total)


def ingest_circle(measure, n: int) -> VerblunskyCoeffs:
    """Recursion coefficients of a sampled circle measure, first n entries.

    Runs the monic recursion, choosing each alpha_m so the next monic
    polynomial integrates to zero: alpha_m = conj(<z Phi_m> / <Phi_m^*>).
    The denominator is the squared monic norm; when it degenerates (or an
    alpha reaches the unit circle) the sampled measure cannot support the
    requested order.
    """
    if isinstance(measure, MeasureSpec):
        measure = realize_circle(measure)
    if float(np.min(measure.weight)) <= 0.0:
        raise PreconditionError("ingestion needs a strictly positive a.c. weight")
    alphas = np.zeros(n, dtype=complex)
    phi = np.array([1.0 + 0.0j])
    for m in range(n):
        phi_star = np.conj(phi[::-1])
        num = _circle_expectation(measure, phi, extra_power=1)
        den = _circle_expectation(measure, phi_star)
        if abs(den) < 1e-13:
            raise DegenerateMeasureError(m, "monic norm collapsed; measure is numerically trivial")
        alpha = np.conj(num / den)
        if abs(alpha) >= 1.0 - 1e-13:
            raise DegenerateMeasureError(
                m, f"|alpha_{m}| = {abs(alpha):.6f} reached the unit circle"
            )
        alphas[m] = alpha
        phi = np.concatenate(([0.0], phi)) - np.conj(alpha) * np.concatenate(
            (phi_star, [0.0])
        )
    return VerblunskyCoeffs(alpha=alphas)


def ingest_line(measure, n: int) -> JacobiParams:
    """Recursion coefficients of a line measure, first n rows.

    MeasureSpec inputs pass the endpoint integrability check and are
    discretized first; the coefficients then come from the discretized
    orthogonalization recurrence on the node values.
    """
    if isinstance(measure, MeasureSpec):
        check_line_integrability(measure)
        measure = realize_line(measure)
    x, w = measure.nodes, measure.weights
    if n > len(x):
        raise InvalidParameterError(f"order {n} exceeds the {len(x)} support points")
    a = np.zeros(n)
    b = np.zeros(n)
    p_prev = np.zeros_like(x)
    p = np.ones_like(x) / math.sqrt(float(np.sum(w)))
    a_prev = 0.0
    for m in range(n):
        b[m] = float(np.sum(w * x * p * p))
        r = (x - b[m]) * p - a_prev * p_prev
        norm_sq = float(np.sum(w * r * r))
        if norm_sq <= 1e-26:
            raise DegenerateMeasureError(m + 1, "residual norm collapsed; too few support points")
        a[m] = math.sqrt(norm_sq)
        p_prev, p = p, r / a[m]
        a_prev = a[m]
    return JacobiParams(a=a, b=b)


@dataclass(frozen=True)
class ExperimentConfig:
    """Run-wide defaults: series order, grid size, tolerances, window, format."""

    series_order: int = 64
    grid_size: int = 4096
    tolerances: tuple = (("one_sided_slack", 0.1), ("radius_rel", 0.05))
    window: tuple | None = None
    output_format: str = "csv"

    def __post_init__(self):
        if self.series_order < 8:
            raise InvalidParameterError("series order must be >= 8")
        g = self.grid_size
        if g < 4 * self.series_order or g & (g - 1) != 0:
            raise InvalidParameterError(
                f"grid size {g} must be a power of two >= 4 * series order"
            )
        if isinstance(self.tolerances, dict):
            object.__setattr__(self, "tolerances", tuple(sorted(self.tolerances.items())))
        else:
            object.__setattr__(self, "tolerances", tuple(sorted(self.tolerances)))
        if self.output_format not in ("csv", "structured"):
            raise InvalidParameterError("output format must be csv or structured")
        if self.window is not None:
            object.__setattr__(self, "window", (int(self.window[0]), int(self.window[1])))

    def tolerance(self, name: str) -> float:
        for key, val in self.tolerances:
            if key == name:
                return float(val)
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "seriesOrder": self.series_order,
            "gridSize": self.grid_size,
            "tolerances": {k: v for k, v in self.tolerances},
            "window": list(self.window) if self.window else None,
            "outputFormat": self.output_format,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        known = {"seriesOrder", "gridSize", "tolerances", "window", "outputFormat"}
        extra = set(doc) - known
        if extra:
            raise InvalidParameterError(f"unknown config field(s): {sorted(extra)}")
        base = cls()
        tol = doc.get("tolerances")
        return cls(
            series_order=int(doc.get("seriesOrder", base.series_order)),
            grid_size=int(doc.get("gridSize", base.grid_size)),
            tolerances=tuple(sorted(tol.items())) if tol else base.tolerances,
            window=tuple(doc["window"]) if doc.get("window") else None,
            output_format=doc.get("outputFormat", base.output_format),
        )


def load_config(path: str | None = None) -> ExperimentConfig:
    """Config from an explicit path, the environment variable, or defaults."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
    if not path:
        return ExperimentConfig()
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise InvalidParameterError("config document must be a JSON object")
    return ExperimentConfig.from_dict(doc)


def parse_alpha_spec(text: str, order: int = 64) -> VerblunskyCoeffs:
    """Coefficient sequences from generator notation, inline lists, or files.

    geometric:C=0.5,R=2   ->  alpha_n = C R^-n, entries 0..order (truncated)
    constant:c=0.25       ->  alpha_n = c, entries 0..order (truncated)
    0.5,0.25,0.125        ->  finitely supported, as listed
    file:coeffs.txt       ->  finitely supported, whitespace/comma separated
    """
    text = text.strip()
    name, _, rest = text.partition(":")
    if name == "geometric":
        kv = _parse_kv(rest, ("C", "R"))
        c, r = kv["C"], kv["R"]
        if not r > 1.0:
            raise InvalidParameterError("geometric spec needs R > 1")
        alpha = c * r ** (-np.arange(order + 1, dtype=float))
        return VerblunskyCoeffs(alpha=alpha)
    if name == "constant":
        if "=" in rest:
            value = _parse_kv(rest, ("c",))["c"]
        else:
            value = float(rest)
        return VerblunskyCoeffs(alpha=np.full(order + 1, value))
    if name == "file":
        with open(rest.strip(), "r", encoding="utf-8") as fh:
            toks = fh.read().replace(",", " ").split()
        return VerblunskyCoeffs.finitely_supported([complex(t) for t in toks])
    try:
        values = [complex(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise InvalidParameterError(f"cannot parse coefficient spec {text!r}") from exc
    if not values:
        raise InvalidParameterError("empty coefficient spec")
    return VerblunskyCoeffs.finitely_supported(values)


def _parse_kv(rest: str, keys: tuple) -> dict:
    out = {}
    for tok in rest.split(","):
        key, eq, val = tok.partition("=")
        if not eq:
            raise InvalidParameterError(f"expected key=value, got {tok!r}")
        key = key.strip()
        if key not in keys:
            raise InvalidParameterError(f"unknown key {key!r}; expected {keys}")
        try:
            out[key] = float(val)
        except ValueError as exc:
            raise InvalidParameterError(f"bad numeric value in {tok!r}") from exc
    missing = [k for k in keys if k not in out]
    if missing:
        raise InvalidParameterError(f"missing key(s) {missing} in spec")
    return out
