"""
Shared fixtures: seeded generators, random PSD builders and small spectra
"""

import logging

import numpy as np
import pytest
from numpy.random import Generator, Philox, SeedSequence

from src.eigenbases import GeometryParams, disk_spectrum
from src.spectral import DissipativeSpectrum, SymMatrix


@pytest.fixture
def rng():
    return Generator(Philox(SeedSequence(12345)))


def random_spectrum(rng, dim, low=-10.0, high=-0.1):
    """Descending strictly negative eigenvalues drawn from [low, high]."""
    lam = np.sort(rng.uniform(low, high, dim))[::-1]
    return DissipativeSpectrum.from_eigenvalues(lam)


def random_psd(rng, dim, rank=None):
    """Symmetric PSD matrix B Bᵀ of the given rank (full by default)."""
    B = rng.standard_normal((dim, rank or dim))
    return SymMatrix(B @ B.T)


@pytest.fixture
def make_spectrum(rng):
    return lambda dim, **kw: random_spectrum(rng, dim, **kw)


@pytest.fixture
def make_psd(rng):
    return lambda dim, **kw: random_psd(rng, dim, **kw)


@pytest.fixture(scope="session")
def disk_params():
    return GeometryParams(alpha=1.0, gamma=0.5)


@pytest.fixture(scope="session")
def disk_spec_200(disk_params):
    return disk_spectrum(disk_params, 200)


@pytest.fixture
def two_mode_spectrum():
    return DissipativeSpectrum.from_eigenvalues([-1.0, -2.0])


@pytest.fixture(autouse=True)
def restore_root_logger():
    """main() reconfigures the root logger; undo it so caplog keeps working."""
    root = logging.getLogger()
    level, handlers = root.level, list(root.handlers)
    yield
    root.setLevel(level)
    root.handlers[:] = handlers
