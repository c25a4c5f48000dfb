"""Shared parameter draws for the test suite.

Randomized tests seed their own generator so failures reproduce.  Two draw
regimes are used: mild perturbations (a near 1, b near 0) keep the forward
recursion well conditioned over long orders, while the wider draws exercise
the generic code paths at short orders where conditioning is not an issue.
"""

import numpy as np
import pytest

from szegojost.oprl import JacobiParams
from szegojost.opuc import VerblunskyCoeffs


def mild_jacobi(rng, n, free=True):
    a = rng.uniform(0.85, 1.2, size=n)
    b = rng.uniform(-0.25, 0.25, size=n)
    return JacobiParams(a=a, b=b, free_after=n if free else None)


def wide_jacobi(rng, n, free=True):
    a = rng.uniform(0.5, 1.5, size=n)
    b = rng.uniform(-1.0, 1.0, size=n)
    return JacobiParams(a=a, b=b, free_after=n if free else None)


def real_alphas(rng, n, scale=0.55):
    return VerblunskyCoeffs.finitely_supported(rng.uniform(-scale, scale, size=n))


def complex_alphas(rng, n, scale=0.65):
    al = rng.uniform(-scale, scale, n) + 1j * rng.uniform(-0.5, 0.5, n)
    al = al * 0.9 / np.maximum(1.0, np.abs(al) / 0.7)
    return VerblunskyCoeffs.finitely_supported(al)


def geometric_alphas(c, r, order=64):
    """alpha_n = c r^-n for n = 0..order, truncated tail."""
    return VerblunskyCoeffs(alpha=c * r ** -np.arange(order + 1, dtype=float))


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)
