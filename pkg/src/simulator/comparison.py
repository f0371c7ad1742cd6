"""
Statistical comparison of an empirical covariance against a reference
"""

import logging
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from ..errors import DimensionMismatchError
from ..spectral.types import SymMatrix

logger = logging.getLogger(__name__)

Z_THRESHOLD = 4.0
PASS_FRACTION = 0.99
MAX_REPORTED_OUTLIERS = 10


class Outlier(BaseModel):
    row: int
    col: int
    z: float
    estimate: float
    reference: float
    stderr: float


class CovarianceComparison(BaseModel):
    """Outcome of compare_covariance; z-scores over the upper triangle."""

    max_z: float
    worst_entry: Optional[Tuple[int, int]] = None
    fraction_within: float
    max_diag_rel_error: float
    z_threshold: float
    pass_fraction: float
    diag_tolerance: Optional[float] = None
    passed: bool
    outliers: List[Outlier] = []


def compare_covariance(
    P_hat: SymMatrix,
    stderr: SymMatrix,
    P_ref: SymMatrix,
    z_threshold: float = Z_THRESHOLD,
    pass_fraction: float = PASS_FRACTION,
    max_diag_rel_error: Optional[float] = None,
) -> CovarianceComparison:
    """
    Compare P_hat ± stderr with P_ref.

    z = |P_hat - P_ref| / stderr entrywise; an entry with stderr = 0 scores 0 when it
    matches exactly and infinity otherwise. The comparison passes when at least
    pass_fraction of the entries have z <= z_threshold and, if max_diag_rel_error is
    given, every diagonal relative error stays below it.
    """
    if not (P_hat.dim == stderr.dim == P_ref.dim):
        raise DimensionMismatchError(
            f"dimensions differ: P_hat {P_hat.dim}, stderr {stderr.dim}, P_ref {P_ref.dim}"
        )
    n = P_ref.dim
    diff = np.abs(P_hat.entries - P_ref.entries)
    se = stderr.entries
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(se > 0.0, diff / se, np.where(diff == 0.0, 0.0, np.inf))

    rows, cols = np.triu_indices(n)
    z_upper = z[rows, cols]
    within = float(np.count_nonzero(z_upper <= z_threshold)) / z_upper.shape[0]
    worst = int(np.argmax(z_upper))
    max_z = float(z_upper[worst])

    ref_diag = np.abs(np.diag(P_ref.entries))
    diag_diff = np.diag(diff)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(ref_diag > 0.0, diag_diff / ref_diag, np.where(diag_diff == 0.0, 0.0, np.inf))
    max_rel = float(np.max(rel))

    passed = within >= pass_fraction
    if max_diag_rel_error is not None and max_rel > max_diag_rel_error:
        passed = False

    order = np.argsort(-z_upper, kind="stable")
    outliers = [
        Outlier(
            row=int(rows[i]),
            col=int(cols[i]),
            z=float(z_upper[i]),
            estimate=float(P_hat.entries[rows[i], cols[i]]),
            reference=float(P_ref.entries[rows[i], cols[i]]),
            stderr=float(se[rows[i], cols[i]]),
        )
        for i in order[:MAX_REPORTED_OUTLIERS]
        if z_upper[i] > z_threshold
    ]

    result = CovarianceComparison(
        max_z=max_z,
        worst_entry=(int(rows[worst]), int(cols[worst])),
        fraction_within=within,
        max_diag_rel_error=max_rel,
        z_threshold=z_threshold,
        pass_fraction=pass_fraction,
        diag_tolerance=max_diag_rel_error,
        passed=passed,
        outliers=outliers,
    )
    if passed:
        logger.info(f"Covariance comparison passed: max z {max_z:.3g}, {within:.1%} within {z_threshold:g}σ")
    else:
        logger.warning(
            f"Covariance comparison failed: max z {max_z:.3g} at {result.worst_entry}, "
            f"{within:.1%} within {z_threshold:g}σ, max diagonal rel error {max_rel:.3g}"
        )
    return result
