"""
Dissipative spectra of the three geometries with deterministic mode ordering
"""

import itertools
import logging
import math
from typing import List, Tuple

import numpy as np

from ..errors import DomainError
from ..spectral.types import DissipativeSpectrum
from .modes import DiskMode, GeometryParams, OscillatorMode, Parity, SphereMode
from .special_functions import BESSEL_MAX_ORDER, BESSEL_MAX_ZERO_INDEX, HERMITE_MAX_DEGREE, bessel_zero

logger = logging.getLogger(__name__)

WEYL_GROWTH = 1.25


def _check_cutoff(cutoff: int):
    if cutoff < 1:
        raise DomainError(f"cutoff must be >= 1, got {cutoff}")


def _disk_candidates(limit: float) -> List[Tuple[float, int, int, int]]:
    """All (j, m, parity rank, k) with j_{m,k} <= limit."""
    found = []
    for m in range(BESSEL_MAX_ORDER + 2):
        if m > limit:
            break
        if m > BESSEL_MAX_ORDER:
            raise DomainError(
                f"disk cutoff needs Bessel order {m} > {BESSEL_MAX_ORDER}; lower the cutoff"
            )
        for k in range(1, BESSEL_MAX_ZERO_INDEX + 1):
            j = bessel_zero(m, k)
            if j > limit:
                break
            found.append((j, m, 0, k))
            if m > 0:
                found.append((j, m, 1, k))
        else:
            raise DomainError(f"disk cutoff needs more than {BESSEL_MAX_ZERO_INDEX} zeros of J_{m}")
    return found


def disk_spectrum(params: GeometryParams, cutoff: int) -> DissipativeSpectrum:
    """
    The `cutoff` largest Dirichlet disk eigenvalues λ = -α²·j_{m,k}² - γ.

    Ties are broken by m, then cos before sin, then k; each m >= 1 level appears as a
    cos/sin pair with equal eigenvalue.

    Args:
        params: alpha, gamma
        cutoff: Number of modes

    Returns:
        DissipativeSpectrum of DiskMode labels
    """
    _check_cutoff(cutoff)
    # Weyl's law: about j²/4 Dirichlet modes below j
    limit = 2.0 * math.sqrt(cutoff) + 3.0
    while True:
        candidates = _disk_candidates(limit)
        if len(candidates) >= cutoff:
            break
        limit *= WEYL_GROWTH

    a2 = params.alpha ** 2
    keyed = sorted(
        (-(-a2 * j * j - params.gamma), m, parity, k, j) for j, m, parity, k in candidates
    )[:cutoff]
    modes = tuple(
        DiskMode(m=m, k=k, parity=Parity.SIN if parity else Parity.COS)
        for _, m, parity, k, _ in keyed
    )
    eigenvalues = np.array([-key[0] for key in keyed])
    logger.info(
        f"Disk spectrum: {cutoff} modes, λ in [{eigenvalues[-1]:.6g}, {eigenvalues[0]:.6g}]"
    )
    return DissipativeSpectrum(modes, eigenvalues)


def oscillator_levels(d: int, degree: int) -> List[Tuple[int, ...]]:
    """Multi-indices of total degree `degree` in lexicographic order."""
    return [n for n in itertools.product(range(degree + 1), repeat=d) if sum(n) == degree]


def oscillator_spectrum(params: GeometryParams, cutoff: int) -> DissipativeSpectrum:
    """
    The `cutoff` largest eigenvalues λ_n = -(|n| + d/2) - γ of the damped oscillator.

    Multi-indices are enumerated by |n| ascending, then lexicographically.
    """
    _check_cutoff(cutoff)
    d = params.d
    if params.gamma <= d / 2:
        logger.warning(
            f"Oscillator gamma={params.gamma} <= d/2={d / 2}; eigenvalues stay negative "
            f"but the damping is weaker than the zero-point level"
        )

    modes: List[OscillatorMode] = []
    eigenvalues: List[float] = []
    degree = 0
    while len(modes) < cutoff:
        if degree > HERMITE_MAX_DEGREE:
            raise DomainError(f"oscillator cutoff {cutoff} needs Hermite degree > {HERMITE_MAX_DEGREE}")
        lam = -(degree + d / 2) - params.gamma
        for n in oscillator_levels(d, degree):
            modes.append(OscillatorMode(n=n))
            eigenvalues.append(lam)
        degree += 1

    logger.info(f"Oscillator spectrum: d={d}, {cutoff} modes up to degree {degree - 1}")
    return DissipativeSpectrum(tuple(modes[:cutoff]), np.array(eigenvalues[:cutoff]))


def sphere_spectrum(params: GeometryParams, L: int) -> DissipativeSpectrum:
    """
    All (l, m) with l <= L, eigenvalue -α² l(l+1) - γ, ordered by l then m.

    (L + 1)² modes in total.
    """
    if L < 0:
        raise DomainError(f"L must be non-negative, got {L}")
    a2 = params.alpha ** 2
    modes = []
    eigenvalues = []
    for l in range(L + 1):
        lam = -a2 * l * (l + 1) - params.gamma
        for m in range(-l, l + 1):
            modes.append(SphereMode(l=l, m=m))
            eigenvalues.append(lam)
    logger.info(f"Sphere spectrum: L={L}, {len(modes)} modes")
    return DissipativeSpectrum(tuple(modes), np.array(eigenvalues))


def sphere_degree_for(cutoff: int) -> int:
    """Smallest L with (L + 1)² >= cutoff."""
    _check_cutoff(cutoff)
    return math.isqrt(cutoff - 1)
