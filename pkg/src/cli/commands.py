"""
Command implementations: spectrum, solve, verify, simulate

Each command is a function of a validated RunConfig (plus a worker pool that never
changes results) returning its output document. run_command writes the document and
turns failed checks into VerificationFailure.
"""

import logging
import os
import sys
from typing import Any, Callable, Dict, Optional, TextIO, Tuple

import numpy as np
from numpy.random import Generator, Philox, SeedSequence

from ..config import ConfigManager, RunConfig
from ..eigenbases import Basis, Geometry, build_basis, covariance_field, gram_defect, gram_matrix
from ..errors import ConfigError, DomainError, VerificationFailure
from ..noise import NoiseKind, NoiseProjector, block_structure_report
from ..noise.noise_projector import MAX_KERNEL_MODES
from ..quadrature import QuadratureGrid
from ..report import ReportGenerator
from ..scheduler import WorkerPool
from ..simulator import (
    SimMethod,
    compare_covariance,
    euler_stationary_covariance,
    simulate,
)
from ..spectral import (
    DissipativeSpectrum,
    SymMatrix,
    contraction_check,
    decay_rate_fit,
    dissipativity_check,
    energy_budget,
    integral_bound_check,
    operator_norm_sym,
    quadrature_oracle_covariance,
    semigroup_decay_check,
    solve_dense_lyapunov,
    solve_spectral_lyapunov,
    truncation_bound,
)
from ..spectral.lyapunov_solver import PSD_REL_TOL
from ..storage import write_csv_rows, write_output

logger = logging.getLogger(__name__)

RESIDUAL_LIMIT = 1e-12
DENSE_ORACLE_TOL = 1e-10
QUADRATURE_ORACLE_TOL = 1e-6
ORACLE_DIM = 16
SAMPLE_MAX_TIME = 5.0


class RunContext:
    """Objects shared by the steps of one command."""

    def __init__(self, config: RunConfig, pool: Optional[WorkerPool] = None):
        self.config = config
        self.pool = pool or WorkerPool(1)
        self.projector = NoiseProjector(pool=self.pool)
        self.reports = ReportGenerator(ConfigManager.to_flat(config))
        self.noise = config.noise.to_spec()

    def basis(self, cutoff: Optional[int] = None) -> Basis:
        """Basis of the configured size, or of `cutoff` modes."""
        cfg = self.config
        if cutoff is None:
            return build_basis(cfg.geometry, cfg.params(), cfg.cutoff, cfg.L)
        return build_basis(cfg.geometry, cfg.params(), cutoff)

    def grid(self, basis: Basis) -> Optional[QuadratureGrid]:
        """Quadrature grid, only for noise that needs one."""
        if self.config.noise.kind in (NoiseKind.WHITE, NoiseKind.DIAGONAL):
            return None
        q = self.config.quad
        return basis.default_grid(radial=q.radial, angular=q.angular, hermite=q.hermite, polar=q.polar)

    def noise_matrix(self, basis: Basis, grid: Optional[QuadratureGrid]) -> SymMatrix:
        return self.projector.project(self.noise, basis, grid, clip=self.config.noise.clip)


def _psd_summary(P: SymMatrix, min_eigenvalue: float) -> Dict[str, Any]:
    tol = PSD_REL_TOL * operator_norm_sym(P)
    return {"is_psd": min_eigenvalue >= -tol, "min_eigenvalue": min_eigenvalue, "tol": tol}


def _bounds(ctx: RunContext, spec: DissipativeSpectrum, q_norm: float) -> Dict[str, Any]:
    """Truncation bounds for the configured N, using λ_{N+1} of an extended spectrum."""
    extended = ctx.basis(spec.dim + 1).spectrum
    bounds = truncation_bound(extended, spec.dim, q_norm)
    return {
        "coarse": bounds.coarse,
        "improved": bounds.improved,
        "q_norm": q_norm,
        "lambda_next": float(extended.eigenvalues[spec.dim]),
    }


def cmd_spectrum(config: RunConfig, pool: Optional[WorkerPool] = None) -> Dict[str, Any]:
    """Ordered modes and eigenvalues of the configured geometry."""
    ctx = RunContext(config, pool)
    return ctx.reports.spectrum_table(ctx.basis().spectrum)


def cmd_solve(config: RunConfig, pool: Optional[WorkerPool] = None) -> Dict[str, Any]:
    """Project the noise, solve for P and bundle it with bounds and diagnostics."""
    ctx = RunContext(config, pool)
    basis = ctx.basis()
    spec = basis.spectrum
    grid = ctx.grid(basis)
    Q = ctx.noise_matrix(basis, grid)
    solution = solve_spectral_lyapunov(spec, Q)

    block = None
    if config.geometry != Geometry.OSCILLATOR:
        block = {
            "Q": block_structure_report(Q, list(spec.modes)).model_dump(mode="python"),
            "P": block_structure_report(solution.P, list(spec.modes)).model_dump(mode="python"),
        }

    profile = None
    if config.output.field_points > 0:
        coordinate, coords = basis.profile(config.output.field_points)
        profile = {
            "coordinate": coordinate.tolist(),
            "variance": covariance_field(basis, solution.P, coords).tolist(),
        }

    return ctx.reports.solve_bundle(
        spec,
        Q,
        solution,
        psd=_psd_summary(solution.P, solution.min_eigenvalue),
        bounds=_bounds(ctx, spec, operator_norm_sym(Q)),
        energy=energy_budget(spec, solution.P),
        block_structure=block,
        gram_defect=gram_defect(gram_matrix(basis, grid)) if grid is not None else None,
        variance_profile=profile,
    )


def _relative_frobenius(a: SymMatrix, b: SymMatrix) -> float:
    scale = float(np.linalg.norm(b.entries))
    diff = float(np.linalg.norm(a.entries - b.entries))
    return diff / scale if scale > 0.0 else diff


def _sample_checks(
    spec: DissipativeSpectrum, Q: SymMatrix, P: SymMatrix, q_norm: float, samples: int, seed: int
) -> Dict[str, Dict[str, Any]]:
    """Randomized semigroup, contraction, dissipativity and integral-bound checks."""
    rng = Generator(Philox(SeedSequence(seed)))
    results = {name: [] for name in ("semigroup", "contraction", "dissipativity", "integral")}
    for _ in range(samples):
        c = rng.standard_normal(spec.dim)
        t = rng.uniform(0.0, SAMPLE_MAX_TIME)
        phi = rng.standard_normal(spec.dim)
        psi = rng.standard_normal(spec.dim)
        results["semigroup"].append(semigroup_decay_check(spec, c, t))
        results["contraction"].append(contraction_check(spec, t))
        results["dissipativity"].append(dissipativity_check(spec, c))
        results["integral"].append(integral_bound_check(spec, Q, phi, psi, P=P, q_norm=q_norm))

    summary = {}
    for name, checks in results.items():
        violations = sum(1 for check in checks if not check.holds)
        # dissipativity compares two negative numbers; report how far below the bound it sits
        if name == "dissipativity":
            worst = max(check.lhs - check.rhs for check in checks)
            summary[name] = {"samples": samples, "violations": violations, "max_excess": worst}
        else:
            ratios = [check.lhs / check.rhs for check in checks if check.rhs > 0.0]
            summary[name] = {
                "samples": samples,
                "violations": violations,
                "max_ratio": max(ratios) if ratios else 0.0,
            }
    return summary


def _check_reference(config: RunConfig) -> int:
    n_ref = config.verify.reference_cutoff
    errors = []
    if n_ref <= config.mode_count:
        errors.append(
            f"verify.reference_cutoff: must exceed the run's mode count {config.mode_count}, got {n_ref}"
        )
    if config.noise.is_kernel and n_ref > MAX_KERNEL_MODES:
        errors.append(f"verify.reference_cutoff: kernel noise is limited to {MAX_KERNEL_MODES} modes")
    if config.noise.kind == NoiseKind.DIAGONAL and config.noise.values is not None and len(config.noise.values) < n_ref:
        errors.append(f"noise.values: {len(config.noise.values)} values for {n_ref} reference modes")
    if errors:
        raise ConfigError(errors)
    return n_ref


def cmd_verify(config: RunConfig, pool: Optional[WorkerPool] = None) -> Dict[str, Any]:
    """
    Check the truncation bounds, the decay rate, the semigroup and integral inequalities
    and the agreement of the three Lyapunov solvers against a large reference solve.
    """
    ctx = RunContext(config, pool)
    n_ref = _check_reference(config)
    basis = ctx.basis(n_ref)
    spec = basis.spectrum
    Q = ctx.noise_matrix(basis, ctx.grid(basis))
    reference = solve_spectral_lyapunov(spec, Q)
    P = reference.P
    q_norm = operator_norm_sym(Q)
    failures = []

    rows = []
    for N in sorted(set(config.verify.sweep)):
        tail = P.entries.copy()
        tail[:N, :N] = 0.0
        measured = operator_norm_sym(tail)
        bounds = truncation_bound(spec, N, q_norm)
        ok = measured <= bounds.improved * (1.0 + 1e-12) and bounds.improved <= bounds.coarse
        rows.append(
            {
                "N": N,
                "lambda_next": float(spec.eigenvalues[N]),
                "measured": measured,
                "improved": bounds.improved,
                "coarse": bounds.coarse,
                "ok": ok,
            }
        )
        if not ok:
            failures.append(f"truncation N={N}: measured {measured:.6g} exceeds bound {bounds.improved:.6g}")
        logger.info(f"N={N}: ‖P_ref - P_N‖ = {measured:.6g}, improved bound {bounds.improved:.6g}")

    rate: Dict[str, Any] = {"tolerance": config.verify.slope_tolerance}
    lam_next = [abs(row["lambda_next"]) for row in rows]
    measured_all = [row["measured"] for row in rows]
    try:
        slope = decay_rate_fit(lam_next, measured_all)
        rate["slope_vs_lambda"] = slope
        rate["slope_vs_N"] = decay_rate_fit([row["N"] for row in rows], measured_all)
        rate["ok"] = slope <= -1.0 + config.verify.slope_tolerance
        if not rate["ok"]:
            failures.append(f"decay rate: slope {slope:.4f} above {-1.0 + config.verify.slope_tolerance:.4f}")
    except DomainError as e:
        logger.info(f"Decay-rate fit skipped: {e}")
        rate.update({"slope_vs_lambda": None, "slope_vs_N": None, "ok": True, "skipped": str(e)})

    samples = _sample_checks(spec, Q, P, q_norm, config.verify.samples, config.sim.seed)
    for name, summary in samples.items():
        if summary["violations"]:
            failures.append(f"{name}: {summary['violations']} of {summary['samples']} samples violate the bound")

    m = min(config.mode_count, ORACLE_DIM)
    spec_m = spec.truncate(m)
    Q_m = Q.leading_block(m)
    P_m = P.leading_block(m)
    dense_err = _relative_frobenius(P_m, solve_dense_lyapunov(spec_m, Q_m))
    quad_err = _relative_frobenius(P_m, quadrature_oracle_covariance(spec_m, Q_m))
    oracles = {
        "dim": m,
        "dense_rel_error": dense_err,
        "quadrature_rel_error": quad_err,
        "ok": dense_err <= DENSE_ORACLE_TOL and quad_err <= QUADRATURE_ORACLE_TOL,
    }
    if not oracles["ok"]:
        failures.append(f"oracles: dense {dense_err:.3e}, quadrature {quad_err:.3e}")

    psd = _psd_summary(P, reference.min_eigenvalue)
    if reference.residual_rel > RESIDUAL_LIMIT:
        failures.append(f"residual {reference.residual_rel:.3e} above {RESIDUAL_LIMIT:g}")
    if not psd["is_psd"]:
        failures.append(f"reference P not PSD: min eigenvalue {reference.min_eigenvalue:.3e}")

    sections = {
        "reference_cutoff": n_ref,
        "gamma_eff": spec.gamma_eff,
        "q_norm": q_norm,
        "residual_rel": reference.residual_rel,
        "psd": psd,
        "truncation": rows,
        "rate_fit": rate,
        "samples": samples,
        "oracles": oracles,
        "energy_budget": energy_budget(spec, P),
    }
    return ctx.reports.verification_report(sections, failures)


def cmd_simulate(config: RunConfig, pool: Optional[WorkerPool] = None) -> Dict[str, Any]:
    """Simulate the truncated dynamics and compare with the stationary covariance."""
    ctx = RunContext(config, pool)
    basis = ctx.basis()
    spec = basis.spectrum
    Q = ctx.noise_matrix(basis, ctx.grid(basis))
    P = solve_spectral_lyapunov(spec, Q).P
    cfg = config.sim.to_sim_config()

    result = simulate(spec, Q, cfg, ctx.pool)
    extras: Dict[str, Any] = {"dt": cfg.dt, "steps": cfg.n_steps, "paths": cfg.n_paths, "seed": cfg.seed}
    if cfg.method == SimMethod.EULER:
        P_ref = euler_stationary_covariance(spec, Q, cfg.dt)
        extras["P_spectral"] = P.to_list()
        extras["dt_bias"] = float(np.max(np.abs(P_ref.entries - P.entries)))
    else:
        P_ref = P

    comparison = compare_covariance(
        result.P_hat, result.stderr, P_ref, max_diag_rel_error=config.sim.max_diag_rel_error
    )
    report = ctx.reports.simulation_report(result, P_ref, comparison, extras)
    if config.sim.diagnostics:
        report["_diagnostics"] = ReportGenerator.diagnostics_rows(result)
    return report


COMMANDS: Dict[str, Callable[[RunConfig, Optional[WorkerPool]], Dict[str, Any]]] = {
    "spectrum": cmd_spectrum,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "simulate": cmd_simulate,
}


def _diagnostics_path(output_path: str) -> Optional[str]:
    if output_path in ("-", ""):
        return None
    root, _ = os.path.splitext(output_path)
    return f"{root}.diagnostics.csv"


def run_command(
    name: str,
    config: RunConfig,
    threads: Optional[int] = None,
    stream: Optional[TextIO] = None,
) -> Dict[str, Any]:
    """
    Run one command and write its document.

    Args:
        name: spectrum, solve, verify or simulate
        config: Validated configuration
        threads: Worker count (never changes results)
        stream: Destination when output.path is "-", default stdout

    Returns:
        The document that was written

    Raises:
        VerificationFailure: verify or simulate checks failed (after writing the report)
    """
    if name not in COMMANDS:
        raise ConfigError([f"unknown command {name!r}"])
    pool = WorkerPool(threads if threads is not None else 1)
    logger.info(f"Running {name} ({config.geometry.value}, {config.mode_count} modes)")
    document = COMMANDS[name](config, pool)

    diagnostics = document.pop("_diagnostics", None)
    write_output(
        document,
        config.output.path,
        config.output.format.value,
        stream if stream is not None else sys.stdout,
    )
    if diagnostics is not None:
        path = _diagnostics_path(config.output.path)
        if path is None:
            logger.warning("sim.diagnostics needs a file output.path; diagnostics not written")
        else:
            write_csv_rows(path, ["path", "batch", "trace"], diagnostics)
            logger.info(f"Wrote {len(diagnostics)} diagnostic rows to {path}")

    if document.get("passed") is False:
        failures = document.get("failures") or ["covariance comparison failed"]
        raise VerificationFailure(f"{name}: " + "; ".join(failures), document)
    return document
