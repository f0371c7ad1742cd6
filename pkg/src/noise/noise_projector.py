"""
Projection of noise specifications onto an eigenbasis

Kernel noise is projected by tensor quadrature, Q = Φᵀ W K W Φ, evaluated in row blocks
of the kernel matrix so memory stays at block_size × n_points. Blocks are summed in
block order, so the result does not depend on the worker count.
"""

import csv
import hashlib
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from ..eigenbases.basis import Basis
from ..eigenbases.modes import Geometry, Parity
from ..eigenbases.special_functions import zernike_function
from ..errors import DimensionMismatchError, DomainError, GeometryMismatchError
from ..quadrature import QuadratureGrid
from ..scheduler import WorkerPool
from ..spectral.linalg import clip_negative_eigenvalues, eigvalsh_sym
from ..spectral.types import SymMatrix
from .noise_models import (
    DiagonalNoise,
    GaussianKernelNoise,
    TableKernelNoise,
    WhiteNoise,
    ZernikeNoise,
    is_kernel_noise,
)

logger = logging.getLogger(__name__)

PSD_REL_TOL = 1e-8
BLOCK_REL_TOL = 1e-8
SYMMETRY_REL_TOL = 1e-12
SYMMETRY_SAMPLES = 64
MAX_KERNEL_MODES = 256
MAX_KERNEL_NODES = 20_000
MAX_TABLE_NODES = 4096
DEFAULT_BLOCK_SIZE = 512
DEFAULT_CACHE_BYTES = 256 * 1024 * 1024


class BlockStructureReport(BaseModel):
    """Couplings that rotational symmetry forbids."""

    geometry: str
    max_cross_order: float
    max_cos_sin: float
    threshold: float
    block_diagonal: bool
    worst_pair: Optional[Tuple[str, str]] = None


def read_kernel_table(path: str, n_points: int) -> np.ndarray:
    """
    Read a node-pair kernel table.

    The CSV has a header i,j,value with flat grid node indices. Missing pairs are zero and
    a pair given in one direction only is mirrored.
    """
    if n_points > MAX_TABLE_NODES:
        raise DomainError(
            f"kernel tables are limited to {MAX_TABLE_NODES} grid nodes, the grid has {n_points}"
        )
    K = np.zeros((n_points, n_points))
    seen = np.zeros((n_points, n_points), dtype=bool)
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames is None or not {"i", "j", "value"} <= set(reader.fieldnames):
                raise DomainError(f"{path}: kernel table needs columns i, j, value")
            for line_no, row in enumerate(reader, start=2):
                try:
                    i, j, value = int(row["i"]), int(row["j"]), float(row["value"])
                except (TypeError, ValueError) as e:
                    raise DomainError(f"{path}:{line_no}: {e}") from e
                if not (0 <= i < n_points and 0 <= j < n_points):
                    raise DomainError(f"{path}:{line_no}: node index outside 0..{n_points - 1}")
                if seen[i, j] and K[i, j] != value:
                    raise DomainError(f"{path}:{line_no}: pair ({i}, {j}) repeated with a different value")
                K[i, j] = value
                seen[i, j] = True
    except OSError as e:
        raise DomainError(f"cannot read kernel table {path}: {e}") from e

    both = seen & seen.T
    scale = max(1.0, float(np.max(np.abs(K))))
    if np.any(np.abs(K - K.T)[both] > SYMMETRY_REL_TOL * scale):
        raise DomainError(f"{path}: kernel table is not symmetric")
    K = np.where(seen.T & ~seen, K.T, K)
    logger.info(f"Read kernel table {path}: {int(np.count_nonzero(seen))} entries")
    return K


def _check_kernel_symmetry(noise, points: np.ndarray):
    """Compare K(x, y) with K(y, x) on a fixed sample of grid nodes."""
    n = points.shape[0]
    idx = np.unique(np.linspace(0, n - 1, min(n, SYMMETRY_SAMPLES)).astype(int))
    sample = points[idx]
    K = noise.evaluate(sample, sample)
    if K.shape != (idx.shape[0], idx.shape[0]):
        raise DomainError(f"kernel returned shape {K.shape}, expected {(idx.shape[0],) * 2}")
    scale = max(1.0, float(np.max(np.abs(K))))
    if float(np.max(np.abs(K - K.T))) > SYMMETRY_REL_TOL * scale:
        raise DomainError("kernel is not symmetric: K(x, y) != K(y, x) on sampled nodes")


def _grid_digest(grid: QuadratureGrid) -> str:
    h = hashlib.sha1(grid.geometry.encode())
    h.update(grid.weights.tobytes())
    for name in sorted(grid.coords):
        h.update(name.encode())
        h.update(np.ascontiguousarray(grid.coords[name]).tobytes())
    return h.hexdigest()


class NoiseProjector:
    """
    Builds Q_N for a noise specification and a basis.

    Kernel matrices small enough for cache_bytes are kept between calls, keyed by grid
    and kernel parameters; (n_points)² doubles is the footprint of one entry.
    """

    def __init__(
        self,
        pool: Optional[WorkerPool] = None,
        block_size: int = DEFAULT_BLOCK_SIZE,
        cache_bytes: int = DEFAULT_CACHE_BYTES,
    ):
        self.pool = pool or WorkerPool(1)
        self.block_size = block_size
        self.cache_bytes = cache_bytes
        self._kernel_cache: Dict[Tuple, np.ndarray] = {}

    def project(
        self,
        noise,
        basis: Basis,
        grid: Optional[QuadratureGrid] = None,
        clip: bool = False,
    ) -> SymMatrix:
        """
        Project a noise specification onto a basis.

        Args:
            noise: One of the NoiseSpec variants
            basis: Target eigenbasis
            grid: Quadrature grid for kernel and Zernike noise, default basis.default_grid()
            clip: Replace negative eigenvalues of a quadrature result by zero

        Returns:
            Symmetric Q_N
        """
        n = basis.dim
        if grid is not None and grid.geometry != basis.geometry.value:
            raise GeometryMismatchError(
                f"basis geometry {basis.geometry.value} does not match grid geometry {grid.geometry}"
            )
        if isinstance(noise, WhiteNoise):
            return SymMatrix.identity(n, noise.sigma2)
        if isinstance(noise, DiagonalNoise):
            return SymMatrix.diagonal_matrix(noise.diagonal(basis.spectrum.eigenvalues))

        if grid is None:
            grid = basis.default_grid()

        if isinstance(noise, ZernikeNoise):
            Q = self._project_zernike(noise, basis, grid)
        elif is_kernel_noise(noise):
            Q = self._project_kernel(noise, basis, grid)
        else:
            raise DomainError(f"unsupported noise specification: {type(noise).__name__}")
        return self._finish(Q, clip)

    def _project_zernike(self, noise: ZernikeNoise, basis: Basis, grid: QuadratureGrid) -> SymMatrix:
        if basis.geometry != Geometry.DISK:
            raise GeometryMismatchError("zernike noise is defined on the disk only")
        phi = basis.evaluate(grid.coords) * grid.weights[:, None]
        terms = noise.terms()
        Z = np.column_stack(
            [zernike_function(n, m, grid.coords["r"], grid.coords["theta"]) for n, m, _ in terms]
        )
        A = phi.T @ Z
        a = np.array([t[2] for t in terms])
        logger.debug(f"Zernike noise: {len(terms)} terms up to order {noise.order}")
        return SymMatrix((A * a) @ A.T)

    def _project_kernel(self, noise, basis: Basis, grid: QuadratureGrid) -> SymMatrix:
        if basis.dim > MAX_KERNEL_MODES:
            raise DomainError(f"kernel noise is limited to {MAX_KERNEL_MODES} modes, got {basis.dim}")
        if grid.size > MAX_KERNEL_NODES:
            raise DomainError(
                f"kernel projection is limited to {MAX_KERNEL_NODES} quadrature nodes, "
                f"the grid has {grid.size}; lower the quadrature orders"
            )

        wphi = basis.evaluate(grid.coords, scaled=grid.scaled) * grid.linear_weights()[:, None]
        kernel_rows = self._kernel_source(noise, grid)
        starts = list(range(0, grid.size, self.block_size))

        def block(start: int) -> np.ndarray:
            stop = min(start + self.block_size, grid.size)
            return wphi[start:stop].T @ (kernel_rows(start, stop) @ wphi)

        partials = self.pool.map_ordered(block, starts)
        total = np.zeros((basis.dim, basis.dim))
        for part in partials:
            total += part
        logger.debug(f"Kernel projection: {grid.size} nodes in {len(starts)} blocks, {basis.dim} modes")
        return SymMatrix(total)

    def _kernel_source(self, noise, grid: QuadratureGrid):
        """Callable (start, stop) -> kernel rows, backed by the cache when it fits."""
        if isinstance(noise, TableKernelNoise):
            key = (_grid_digest(grid), "table", noise.table)
            if key not in self._kernel_cache:
                self._kernel_cache[key] = read_kernel_table(noise.table, grid.size)
            K = self._kernel_cache[key]
            return lambda start, stop: K[start:stop]

        points = grid.cartesian()
        _check_kernel_symmetry(noise, points)
        if isinstance(noise, GaussianKernelNoise) and 8 * grid.size ** 2 <= self.cache_bytes:
            key = (_grid_digest(grid), "gaussian", noise.sigma2, noise.lengthscale)
            if key not in self._kernel_cache:
                self._kernel_cache[key] = noise.evaluate(points, points)
            K = self._kernel_cache[key]
            return lambda start, stop: K[start:stop]
        return lambda start, stop: noise.evaluate(points[start:stop], points)

    def _finish(self, Q: SymMatrix, clip: bool) -> SymMatrix:
        eigenvalues = eigvalsh_sym(Q)
        norm = float(np.max(np.abs(eigenvalues)))
        min_eig = float(eigenvalues[0])
        if min_eig < -PSD_REL_TOL * norm:
            logger.warning(
                f"Projected noise has eigenvalue {min_eig:.3e} below "
                f"-{PSD_REL_TOL:g}·‖Q‖ (‖Q‖={norm:.3e}); quadrature may be under-resolved"
            )
        if clip and min_eig < 0.0:
            Q, removed = clip_negative_eigenvalues(Q)
            logger.info(f"Clipped negative eigenvalues of Q, removed mass {removed:.3e}")
        return Q


def project_noise(
    noise,
    basis: Basis,
    grid: Optional[QuadratureGrid] = None,
    clip: bool = False,
    pool: Optional[WorkerPool] = None,
) -> SymMatrix:
    """Project with a throwaway NoiseProjector."""
    return NoiseProjector(pool=pool).project(noise, basis, grid, clip)


def _order_key(mode) -> Tuple[int, int]:
    """(azimuthal order, parity rank) used to group modes into symmetry blocks."""
    if mode.geometry == Geometry.DISK.value:
        return mode.m, 1 if mode.parity == Parity.SIN else 0
    return mode.m, 0


def block_structure_report(Q: SymMatrix, modes: List) -> BlockStructureReport:
    """
    Largest entries of Q that couple different azimuthal orders.

    Disk modes are grouped by |m| (cos and sin pairs at the same m are reported
    separately as max_cos_sin); sphere modes by m. Block-diagonal means both are at most
    1e-8·max|Q|.
    """
    if Q.dim != len(modes):
        raise DimensionMismatchError(f"Q dimension {Q.dim} does not match {len(modes)} modes")
    geometry = modes[0].geometry
    if geometry == Geometry.OSCILLATOR.value:
        raise DomainError("block structure is undefined for oscillator modes (no azimuthal order)")

    keys = [_order_key(mode) for mode in modes]
    order = np.array([k[0] for k in keys])
    parity = np.array([k[1] for k in keys])
    mag = np.abs(Q.entries)

    cross = order[:, None] != order[None, :]
    cos_sin = ~cross & (parity[:, None] != parity[None, :])
    max_cross = float(np.max(mag[cross])) if np.any(cross) else 0.0
    max_cos_sin = float(np.max(mag[cos_sin])) if np.any(cos_sin) else 0.0
    threshold = BLOCK_REL_TOL * Q.max_abs()

    worst = None
    forbidden = np.where(cross | cos_sin, mag, 0.0)
    if np.any(forbidden > 0.0):
        i, j = np.unravel_index(int(np.argmax(forbidden)), forbidden.shape)
        worst = (modes[i].label(), modes[j].label())

    return BlockStructureReport(
        geometry=geometry,
        max_cross_order=max_cross,
        max_cos_sin=max_cos_sin,
        threshold=threshold,
        block_diagonal=max_cross <= threshold and max_cos_sin <= threshold,
        worst_pair=worst,
    )
