"""
Report Generator implementation

Assembles the output documents of every command. Documents are plain dicts of lists and
floats, carry no timestamps and keep a fixed key order, so identical runs serialize to
identical bytes.
"""

import logging
from typing import Any, Dict, List, Optional

from ..spectral.types import DissipativeSpectrum, LyapunovSolution, SymMatrix

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def mode_records(spec: DissipativeSpectrum) -> List[Dict[str, Any]]:
    """Modes as {geometry, indices, eigenvalue} records."""
    return spec.records()


class ReportGenerator:
    """
    Builds spectrum tables, solve bundles, verification and simulation reports.
    """

    def __init__(self, config_echo: Optional[Dict[str, Any]] = None):
        """
        Initialize report generator.

        Args:
            config_echo: Resolved flat configuration copied into every document
        """
        # documents must not depend on where they are written
        self.config_echo = {k: v for k, v in (config_echo or {}).items() if k != "output.path"}

    def _header(self, command: str) -> Dict[str, Any]:
        return {"schema_version": SCHEMA_VERSION, "command": command, "config": self.config_echo}

    def spectrum_table(self, spec: DissipativeSpectrum) -> Dict[str, Any]:
        """Ordered modes and eigenvalues."""
        report = self._header("spectrum")
        report.update(
            {
                "mode_count": spec.dim,
                "gamma_eff": spec.gamma_eff,
                "modes": mode_records(spec),
                "eigenvalues": spec.eigenvalues.tolist(),
            }
        )
        logger.info(f"Generated spectrum table with {spec.dim} modes")
        return report

    def solve_bundle(
        self,
        spec: DissipativeSpectrum,
        Q: SymMatrix,
        solution: LyapunovSolution,
        psd: Dict[str, Any],
        bounds: Dict[str, Any],
        energy: Dict[str, Any],
        block_structure: Optional[Dict[str, Any]] = None,
        gram_defect: Optional[float] = None,
        variance_profile: Optional[Dict[str, Any]] = None,
    ) -> Dict[str, Any]:
        """
        Solution bundle of one spectral solve.

        Returns:
            {modes, eigenvalues, Q, P, residual_rel, min_eig_P, psd, bounds, energy_budget,
            plus block_structure, gram_defect and variance_profile when available}
        """
        report = self._header("solve")
        report.update(
            {
                "modes": mode_records(spec),
                "eigenvalues": spec.eigenvalues.tolist(),
                "Q": Q.to_list(),
                "P": solution.P.to_list(),
                "residual_rel": solution.residual_rel,
                "min_eig_P": solution.min_eigenvalue,
                "psd": psd,
                "bounds": bounds,
                "energy_budget": energy,
            }
        )
        if block_structure is not None:
            report["block_structure"] = block_structure
        if gram_defect is not None:
            report["gram_defect"] = gram_defect
        if variance_profile is not None:
            report["variance_profile"] = variance_profile
        logger.info(f"Generated solve bundle: {spec.dim} modes, residual {solution.residual_rel:.3e}")
        return report

    def verification_report(self, sections: Dict[str, Any], failures: List[str]) -> Dict[str, Any]:
        """Verification sections followed by the overall verdict."""
        report = self._header("verify")
        report.update(sections)
        report["failures"] = list(failures)
        report["passed"] = not failures
        logger.info(f"Generated verification report: {'passed' if not failures else f'{len(failures)} failure(s)'}")
        return report

    def simulation_report(
        self,
        result,
        P_ref: SymMatrix,
        comparison,
        extras: Optional[Dict[str, Any]] = None,
    ) -> Dict[str, Any]:
        """Empirical covariance, its standard errors and the comparison against P_ref."""
        report = self._header("simulate")
        report.update(
            {
                "method": result.method.value,
                "burn_in": result.burn_in,
                "samples_per_path": result.samples_per_path,
                "n_batches": result.n_batches,
                "jitter": result.jitter,
                "P_ref": P_ref.to_list(),
                "P_hat": result.P_hat.to_list(),
                "stderr": result.stderr.to_list(),
                "comparison": comparison.model_dump(mode="python"),
            }
        )
        if extras:
            report.update(extras)
        report["passed"] = comparison.passed
        logger.info(f"Generated simulation report: {'passed' if comparison.passed else 'failed'}")
        return report

    @staticmethod
    def diagnostics_rows(result) -> List[List[Any]]:
        """(path, batch, trace) rows of the per-batch covariance traces."""
        return [[path, batch, trace] for path, batch, trace in result.diagnostics]

