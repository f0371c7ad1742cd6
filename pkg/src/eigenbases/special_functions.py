"""
Special functions for the three eigenbases

Bessel functions of the first kind and their zeros, orthonormal Hermite functions,
classical Zernike radial polynomials and fully normalized associated Legendre values.
Everything here accepts scalars or numpy arrays and returns numpy values.
"""

import logging
import math
import threading
from functools import lru_cache
from typing import Tuple, Union

import numpy as np

from ..errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

BESSEL_MAX_ORDER = 60
BESSEL_MAX_ARG = 500.0
BESSEL_MAX_ZERO_INDEX = 100
# Series/recurrence crossover, lower than the customary max(12, 2m): above x ≈ 2 the
# alternating series cancels and loses about 5e-12 absolute accuracy.
SERIES_MAX_ARG = 2.0
MILLER_RESCALE = 1e200
ZERO_SCAN_STEP = 0.25
MAX_NEWTON_ITERATIONS = 100

HERMITE_MAX_DEGREE = 200
HERMITE_MAX_ARG = 30.0


def _bessel_series(m: int, x: np.ndarray) -> np.ndarray:
    """Power series Σ (-1)^s (x/2)^{2s+m} / (s!(s+m)!), summed exactly with fsum."""
    out = np.empty_like(x)
    for idx, xi in enumerate(x):
        if xi == 0.0:
            out[idx] = 1.0 if m == 0 else 0.0
            continue
        half = 0.5 * xi
        term = math.exp(m * math.log(half) - math.lgamma(m + 1))
        terms = [term]
        s = 0
        q = half * half
        while True:
            term *= -q / ((s + 1) * (s + 1 + m))
            s += 1
            terms.append(term)
            if abs(term) <= 1e-17 * abs(terms[0]) and s > q:
                break
        out[idx] = math.fsum(terms)
    return out


def _bessel_miller(m: int, x: np.ndarray) -> np.ndarray:
    """
    Backward recurrence f_{n-1} = (2n/x) f_n - f_{n+1} from a large even start order,
    normalized by J_0 + 2 Σ J_{2k} = 1.
    """
    top = max(m, float(np.max(x)))
    start = int(top + 30 + 12 * np.cbrt(top))
    start += start % 2

    f_next = np.zeros_like(x)
    f = np.full_like(x, 1e-30)
    norm = np.zeros_like(x)
    result = np.zeros_like(x)
    for n in range(start, 0, -1):
        f_prev = (2.0 * n / x) * f - f_next
        f_next, f = f, f_prev
        # f now holds the unnormalized J_{n-1}
        if n - 1 == m:
            result = f.copy()
        if (n - 1) % 2 == 0 and n - 1 > 0:
            norm += 2.0 * f
        big = np.abs(f) > MILLER_RESCALE
        if np.any(big):
            scale = np.where(big, 1.0 / MILLER_RESCALE, 1.0)
            f *= scale
            f_next *= scale
            norm *= scale
            result *= scale
    norm += f
    return result / norm


def _bessel_unchecked(m: int, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x <= SERIES_MAX_ARG
    if np.any(small):
        out[small] = _bessel_series(m, x[small])
    if np.any(~small):
        out[~small] = _bessel_miller(m, x[~small])
    return out


def bessel_j(m: int, x: ArrayLike) -> ArrayLike:
    """
    Bessel function of the first kind J_m(x) for integer 0 <= m <= 61, 0 <= x <= 500.

    Power series for x <= 2, Miller backward recurrence beyond. The crossover sits well
    below the customary x <= max(12, 2m) switch on purpose: the alternating series
    cancels above x ≈ 2 and drifts by about 5e-12, while the recurrence stays at
    rounding level for every order here. Order 61 is accepted because normalizing
    order-60 modes needs J_{m+1}.

    Args:
        m: Order
        x: Argument (scalar or array)

    Returns:
        J_m(x), same shape as x
    """
    if not 0 <= m <= BESSEL_MAX_ORDER + 1:
        raise DomainError(f"Bessel order must be in 0..{BESSEL_MAX_ORDER + 1}, got {m}")
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > BESSEL_MAX_ARG) or not np.all(np.isfinite(arr)):
        raise DomainError(f"Bessel argument must lie in [0, {BESSEL_MAX_ARG:g}]")
    out = _bessel_unchecked(m, arr.reshape(-1)).reshape(arr.shape)
    return float(out) if out.ndim == 0 else out


def _bessel_derivative(m: int, x: np.ndarray) -> np.ndarray:
    if m == 0:
        return -_bessel_unchecked(1, x)
    return 0.5 * (_bessel_unchecked(m - 1, x) - _bessel_unchecked(m + 1, x))


def _mcmahon(m: int, k: np.ndarray) -> np.ndarray:
    beta = (k + 0.5 * m - 0.25) * math.pi
    mu = 4.0 * m * m
    return (
        beta
        - (mu - 1.0) / (8.0 * beta)
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * (8.0 * beta) ** 3)
    )


def _zero_brackets(m: int, count: int) -> Tuple[np.ndarray, np.ndarray]:
    lo_edge = max(float(m), 1.0)
    hi_edge = (count + 0.5 * m - 0.25) * math.pi + math.pi
    while True:
        grid = np.arange(lo_edge, hi_edge + ZERO_SCAN_STEP, ZERO_SCAN_STEP)
        values = _bessel_unchecked(m, grid)
        change = np.nonzero(values[:-1] * values[1:] < 0.0)[0]
        if change.shape[0] >= count:
            change = change[:count]
            return grid[change], grid[change + 1]
        logger.debug(f"Zero scan for J_{m} found {change.shape[0]}/{count}; widening")
        hi_edge += 0.5 * (hi_edge - lo_edge)


@lru_cache(maxsize=256)
def _bessel_zeros(m: int, count: int) -> Tuple[float, ...]:
    """First `count` positive zeros of J_m by bracketed, safeguarded Newton."""
    lo, hi = _zero_brackets(m, count)
    f_lo = _bessel_unchecked(m, lo)

    guess = _mcmahon(m, np.arange(1, count + 1, dtype=float))
    x = np.where((guess > lo) & (guess < hi), guess, 0.5 * (lo + hi))

    for iteration in range(MAX_NEWTON_ITERATIONS):
        f = _bessel_unchecked(m, x)
        fp = _bessel_derivative(m, x)

        same = f * f_lo > 0.0
        lo = np.where(same, x, lo)
        f_lo = np.where(same, f, f_lo)
        hi = np.where(same | (f == 0.0), hi, x)

        with np.errstate(divide="ignore", invalid="ignore"):
            x_new = x - f / fp
        outside = ~((x_new >= lo) & (x_new <= hi)) | ~np.isfinite(x_new)
        x_new = np.where(outside, 0.5 * (lo + hi), x_new)
        x_new = np.where(f == 0.0, x, x_new)

        done = np.abs(x_new - x) <= 1e-13 * np.maximum(1.0, x)
        x = x_new
        if np.all(done):
            logger.debug(f"Zeros of J_{m} (count={count}) converged in {iteration + 1} iterations")
            break
    else:
        raise ConvergenceError(f"Newton refinement of the zeros of J_{m} did not converge")

    if np.any(np.diff(x) <= 0.0):
        raise ConvergenceError(f"zeros of J_{m} are not strictly increasing")
    return tuple(float(v) for v in x)


_zero_lock = threading.Lock()


def bessel_zero(m: int, k: int) -> float:
    """
    k-th positive zero j_{m,k} of J_m.

    Args:
        m: Order, 0..60
        k: Zero index, 1..100

    Returns:
        The zero to about 1e-13 absolute accuracy
    """
    if not 0 <= m <= BESSEL_MAX_ORDER:
        raise DomainError(f"Bessel order must be in 0..{BESSEL_MAX_ORDER}, got {m}")
    if not 1 <= k <= BESSEL_MAX_ZERO_INDEX:
        raise DomainError(f"zero index must be in 1..{BESSEL_MAX_ZERO_INDEX}, got {k}")
    # zeros are computed in blocks of 16 so neighbouring k share one cache entry
    count = 16 * ((k + 15) // 16)
    with _zero_lock:
        zeros = _bessel_zeros(m, count)
    return zeros[k - 1]


def _check_hermite(n_max: int, x: np.ndarray):
    if not 0 <= n_max <= HERMITE_MAX_DEGREE:
        raise DomainError(f"Hermite degree must be in 0..{HERMITE_MAX_DEGREE}, got {n_max}")
    if np.any(np.abs(x) > HERMITE_MAX_ARG):
        raise DomainError(f"Hermite argument must satisfy |x| <= {HERMITE_MAX_ARG:g}")


def hermite_function_table(n_max: int, x: ArrayLike, scaled: bool = False) -> np.ndarray:
    """
    Orthonormal Hermite functions ψ_0..ψ_{n_max} at x, shape (n_max + 1, *x.shape).

    With scaled=True the factor e^{-x²/2} is left out, giving ψ_n(x)·e^{x²/2} for use
    with Gauss–Hermite weights.
    """
    arr = np.asarray(x, dtype=float)
    _check_hermite(n_max, arr)
    table = np.empty((n_max + 1,) + arr.shape)
    base = math.pi ** -0.25
    table[0] = base if scaled else base * np.exp(-0.5 * arr * arr)
    if n_max >= 1:
        table[1] = arr * math.sqrt(2.0) * table[0]
    for n in range(1, n_max):
        table[n + 1] = arr * math.sqrt(2.0 / (n + 1)) * table[n] - math.sqrt(n / (n + 1)) * table[n - 1]
    return table


def hermite_function(n: int, x: ArrayLike, scaled: bool = False) -> ArrayLike:
    """Orthonormal Hermite function ψ_n(x) by the normalized three-term recurrence."""
    out = hermite_function_table(n, x, scaled)[n]
    return float(out) if out.ndim == 0 else out


def zernike_radial(n: int, m: int, r: ArrayLike) -> ArrayLike:
    """
    Classical radial Zernike polynomial R_n^m(r) by its finite sum.

    Args:
        n: Radial degree, n >= m
        m: Azimuthal order, m >= 0, n - m even
        r: Radius in [0, 1]
    """
    if m < 0 or n < m:
        raise DomainError(f"Zernike indices need 0 <= m <= n, got n={n}, m={m}")
    if (n - m) % 2:
        raise DomainError(f"Zernike indices need n - m even, got n={n}, m={m}")
    arr = np.asarray(r, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise DomainError("Zernike radius must lie in [0, 1]")

    out = np.zeros_like(arr)
    for s in range((n - m) // 2 + 1):
        coeff = (-1) ** s * math.factorial(n - s) // (
            math.factorial(s)
            * math.factorial((n + m) // 2 - s)
            * math.factorial((n - m) // 2 - s)
        )
        out = out + float(coeff) * arr ** (n - 2 * s)
    return float(out) if out.ndim == 0 else out


def zernike_function(n: int, m: int, r: ArrayLike, theta: ArrayLike) -> ArrayLike:
    """
    Real Zernike function orthonormal on the disk measure r dr dθ.

    cos(|m|θ) for m >= 0, sin(|m|θ) for m < 0.
    """
    am = abs(m)
    norm = math.sqrt(2.0 * (n + 1) / (math.pi * (2.0 if m == 0 else 1.0)))
    radial = zernike_radial(n, am, r)
    theta = np.asarray(theta, dtype=float)
    angular = np.cos(am * theta) if m >= 0 else np.sin(am * theta)
    out = norm * radial * angular
    return float(out) if np.ndim(out) == 0 else out


def associated_legendre_normalized(l_max: int, x: ArrayLike) -> np.ndarray:
    """
    Fully normalized associated Legendre values P̄_l^m(x) for 0 <= m <= l <= l_max.

    Normalized so that P̄_l^m(cos θ) e^{imφ} has unit norm on the sphere; no
    Condon–Shortley phase. Computed by the two-term recurrence in l with the
    normalization folded into its coefficients.

    Returns:
        Array of shape (l_max + 1, l_max + 1, *x.shape); entries with m > l are zero
    """
    if l_max < 0:
        raise DomainError(f"l_max must be non-negative, got {l_max}")
    arr = np.asarray(x, dtype=float)
    if np.any(np.abs(arr) > 1.0):
        raise DomainError("associated Legendre argument must lie in [-1, 1]")

    table = np.zeros((l_max + 1, l_max + 1) + arr.shape)
    sin_theta = np.sqrt(np.clip(1.0 - arr * arr, 0.0, None))
    diag = np.full(arr.shape, 1.0 / math.sqrt(4.0 * math.pi))
    for m in range(l_max + 1):
        if m > 0:
            diag = diag * math.sqrt((2.0 * m + 1.0) / (2.0 * m)) * sin_theta
        table[m, m] = diag
        if m + 1 <= l_max:
            table[m + 1, m] = math.sqrt(2.0 * m + 3.0) * arr * diag
        for l in range(m + 2, l_max + 1):
            a = math.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
            b = -math.sqrt(
                ((l - 1.0) ** 2 - m * m) * (2.0 * l + 1.0) / ((2.0 * l - 3.0) * (l * l - m * m))
            )
            table[l, m] = a * arr * table[l - 1, m] + b * table[l - 2, m]
    return table
