"""
Simulation of the truncated stochastic dynamics dX = ΛX dt + dW_Q

The exact scheme steps X ← e^{Λdt}X + η with η ~ N(0, S(dt)), S the finite-horizon
dissipation integral, so its stationary covariance is the Lyapunov solution itself. The
Euler–Maruyama scheme is kept for comparison; it converges to a dt-biased covariance.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from numpy.random import Generator, Philox, SeedSequence
from pydantic import BaseModel, ConfigDict, Field
from scipy.signal import lfilter

from ..errors import CholeskyError, DimensionMismatchError, DomainError
from ..scheduler import WorkerPool
from ..spectral.types import DissipativeSpectrum, SymMatrix

logger = logging.getLogger(__name__)

BATCHES_PER_PATH = 16
JITTER_START = 1e-15
JITTER_GROWTH = 10.0
JITTER_ATTEMPTS = 4
BURN_IN_DECAYS = 10.0
MAX_STEP_DECAY = 10.0


class SimMethod(str, Enum):
    EXACT = "exact"
    EULER = "euler"


class SimConfig(BaseModel):
    """
    Simulation parameters.

    n_steps counts every step including burn-in; burn_in=None uses
    ceil(10 / (γ_eff·dt)).
    """

    model_config = ConfigDict(frozen=True)

    dt: float = Field(0.1, gt=0.0)
    n_steps: int = Field(50_000, ge=1)
    burn_in: Optional[int] = Field(None, ge=0)
    n_paths: int = Field(64, ge=1)
    seed: int = Field(20240601, ge=0, le=2**64 - 1)
    method: SimMethod = SimMethod.EXACT

    def resolved_burn_in(self, spec: DissipativeSpectrum) -> int:
        if self.burn_in is not None:
            return self.burn_in
        return int(math.ceil(BURN_IN_DECAYS / (spec.gamma_eff * self.dt)))


@dataclass
class SimulationResult:
    """Empirical covariance with batch-means standard errors."""

    P_hat: SymMatrix
    stderr: SymMatrix
    method: SimMethod
    burn_in: int
    samples_per_path: int
    n_batches: int
    jitter: float
    diagnostics: List[Tuple[int, int, float]] = field(default_factory=list)


def _pair_sums(spec: DissipativeSpectrum) -> np.ndarray:
    lam = spec.eigenvalues
    return lam[:, None] + lam[None, :]


def exact_step_covariance(spec: DissipativeSpectrum, Q: SymMatrix, dt: float) -> SymMatrix:
    """
    S_jk = Q_jk (e^{(λ_j+λ_k)dt} - 1)/(λ_j + λ_k), the noise accumulated over one step.
    """
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt}")
    if Q.dim != spec.dim:
        raise DimensionMismatchError(f"Q dimension {Q.dim} does not match {spec.dim} modes")
    s = _pair_sums(spec)
    return SymMatrix(Q.entries * (np.expm1(s * dt) / s))


def euler_stationary_covariance(spec: DissipativeSpectrum, Q: SymMatrix, dt: float) -> SymMatrix:
    """
    Stationary covariance of the Euler–Maruyama chain,
    P_jk = Q_jk dt / (1 - (1 + λ_j dt)(1 + λ_k dt)).
    """
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt}")
    if Q.dim != spec.dim:
        raise DimensionMismatchError(f"Q dimension {Q.dim} does not match {spec.dim} modes")
    _check_euler_stable(spec, dt)
    a = 1.0 + spec.eigenvalues * dt
    return SymMatrix(Q.entries * dt / (1.0 - np.outer(a, a)))


def _check_euler_stable(spec: DissipativeSpectrum, dt: float):
    limit = 2.0 / abs(float(spec.eigenvalues[-1]))
    if dt >= limit:
        raise DomainError(f"Euler scheme unstable: dt={dt} >= 2/|λ_min| = {limit:.6g}")


def cholesky_with_jitter(S: SymMatrix) -> Tuple[np.ndarray, float]:
    """
    Lower Cholesky factor of S, adding jitter·I if the plain factorization fails.

    Jitter starts at 1e-15·trace and grows ×10 for at most 4 attempts.

    Returns:
        (L, jitter used)
    """
    trace = float(np.trace(S.entries))
    if trace == 0.0 and not np.any(S.entries):
        return np.zeros_like(S.entries), 0.0
    try:
        return np.linalg.cholesky(S.entries), 0.0
    except np.linalg.LinAlgError:
        pass

    jitter = JITTER_START * abs(trace)
    eye = np.eye(S.dim)
    for attempt in range(1, JITTER_ATTEMPTS + 1):
        try:
            L = np.linalg.cholesky(S.entries + jitter * eye)
            logger.debug(f"Cholesky succeeded with jitter {jitter:.3e} (attempt {attempt})")
            return L, jitter
        except np.linalg.LinAlgError:
            logger.debug(f"Cholesky failed with jitter {jitter:.3e} (attempt {attempt})")
            jitter *= JITTER_GROWTH
    raise CholeskyError(
        f"step covariance is not factorizable after {JITTER_ATTEMPTS} jitter attempts "
        f"(last jitter {jitter / JITTER_GROWTH:.3e}); is Q badly conditioned?"
    )


def path_generator(seed: int, path: int) -> Generator:
    """Counter-based substream for one path: Philox keyed by (seed, path)."""
    return Generator(Philox(SeedSequence(seed, spawn_key=(path,))))


def _run_path(
    path: int,
    factors: np.ndarray,
    noise_factor: np.ndarray,
    cfg: SimConfig,
    burn_in: int,
    batch_len: int,
) -> np.ndarray:
    """Batch-mean covariances (BATCHES_PER_PATH, n, n) of one path."""
    n = factors.shape[0]
    rng = path_generator(cfg.seed, path)
    xi = rng.standard_normal((cfg.n_steps, n))
    eta = np.einsum("tj,kj->tk", xi, noise_factor)

    X = np.empty_like(eta)
    for k in range(n):
        X[:, k] = lfilter([1.0], [1.0, -factors[k]], eta[:, k])

    used = X[burn_in : burn_in + BATCHES_PER_PATH * batch_len]
    batches = used.reshape(BATCHES_PER_PATH, batch_len, n)
    return np.einsum("btj,btk->bjk", batches, batches) / batch_len


def simulate(
    spec: DissipativeSpectrum,
    Q: SymMatrix,
    cfg: SimConfig,
    pool: Optional[WorkerPool] = None,
) -> SimulationResult:
    """
    Estimate the stationary covariance by simulation.

    Each path starts at X = 0, runs cfg.n_steps steps and discards burn_in of them; the
    rest is cut into 16 equal batches. P_hat is the mean over all batch means and stderr
    their standard deviation over sqrt(batch count).

    Args:
        spec: Dissipative spectrum
        Q: Projected noise matrix
        cfg: Simulation parameters
        pool: Worker pool for paths; results are identical for any thread count

    Returns:
        SimulationResult
    """
    if Q.dim != spec.dim:
        raise DimensionMismatchError(f"Q dimension {Q.dim} does not match {spec.dim} modes")
    burn_in = cfg.resolved_burn_in(spec)
    if burn_in >= cfg.n_steps:
        raise DomainError(f"burn-in {burn_in} must be smaller than n_steps {cfg.n_steps}")
    batch_len = (cfg.n_steps - burn_in) // BATCHES_PER_PATH
    if batch_len < 1:
        raise DomainError(
            f"{cfg.n_steps - burn_in} post burn-in steps cannot fill {BATCHES_PER_PATH} batches"
        )
    dropped = cfg.n_steps - burn_in - BATCHES_PER_PATH * batch_len
    if dropped:
        logger.debug(f"Dropping {dropped} trailing steps per path to equalize batches")
    if cfg.dt * spec.gamma_eff > MAX_STEP_DECAY:
        logger.warning(
            f"dt·γ_eff = {cfg.dt * spec.gamma_eff:.3g} > {MAX_STEP_DECAY:g}: "
            f"a single step already equilibrates"
        )

    if cfg.method == SimMethod.EXACT:
        factors = np.exp(spec.eigenvalues * cfg.dt)
        noise_factor, jitter = cholesky_with_jitter(exact_step_covariance(spec, Q, cfg.dt))
    else:
        _check_euler_stable(spec, cfg.dt)
        factors = 1.0 + spec.eigenvalues * cfg.dt
        noise_factor, jitter = cholesky_with_jitter(Q)
        noise_factor = math.sqrt(cfg.dt) * noise_factor

    pool = pool or WorkerPool(1)
    logger.info(
        f"Simulating {cfg.n_paths} paths × {cfg.n_steps} steps ({cfg.method.value}, dt={cfg.dt}, "
        f"burn-in {burn_in}) on {pool.threads} thread(s)"
    )
    per_path = pool.map_ordered(
        lambda p: _run_path(p, factors, noise_factor, cfg, burn_in, batch_len),
        range(cfg.n_paths),
    )

    batch_means = np.concatenate(per_path, axis=0)
    n_batches = batch_means.shape[0]
    P_hat = batch_means.mean(axis=0)
    stderr = batch_means.std(axis=0, ddof=1) / math.sqrt(n_batches)

    diagnostics = [
        (path, b, float(np.trace(per_path[path][b])))
        for path in range(cfg.n_paths)
        for b in range(BATCHES_PER_PATH)
    ]
    logger.info(f"Simulation finished: {n_batches} batches of {batch_len} samples")
    return SimulationResult(
        P_hat=SymMatrix(P_hat),
        stderr=SymMatrix(stderr),
        method=cfg.method,
        burn_in=burn_in,
        samples_per_path=BATCHES_PER_PATH * batch_len,
        n_batches=n_batches,
        jitter=jitter,
        diagnostics=diagnostics,
    )
