"""Aggregated verification suite backing the ``verify-all`` command."""

from dataclasses import dataclass

from . import equations as eqs
from . import poincare, position
from .clifford import gamma_set, verify_clifford
from .linalg import mat_max
from .opcalc import sample_momenta
from .symmetry import verify_projection_relations


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol


@dataclass(frozen=True)
class RunConfig:
    seed: int = 42
    samples: int = 12
    holdout: int = 4
    tol: float = 1e-9
    mass: float = 1.0
    kappa: float = 1.0
    corrupt_reduction: bool = False

    def __post_init__(self):
        if not (0.0 < self.tol <= 1e-6):
            raise ValueError("tol must lie in (0, 1e-6]")
        if self.samples < 8:
            raise ValueError("samples must be >= 8")
        if self.holdout < 4:
            raise ValueError("holdout must be >= 4")


def run_verify_all(cfg: RunConfig) -> list:
    """One CheckResult per verification, deterministically ordered."""
    out = []
    s3 = sample_momenta(3, cfg.samples, cfg.seed)
    s3_x8 = sample_momenta(3, 8, cfg.seed)
    s2 = sample_momenta(2, cfg.samples, cfg.seed)
    s2_x8 = sample_momenta(2, 8, cfg.seed)
    s4 = sample_momenta(4, cfg.samples, cfg.seed)

    # Clifford relations
    for name in ("rep26", "weyl"):
        out.append(CheckResult(f"clifford/{name}",
                               verify_clifford(gamma_set(name)), 1e-12))

    # unitarity, exponential/closed equality, wired transforms
    for name in eqs.UNITARY_NAMES:
        u = eqs.catalog_unitary(name, m=cfg.mass)
        out.append(CheckResult(f"unitary/{name}",
                               eqs.unitarity_residual(u, s3), 1e-10))
        if u.exponential is not None:
            out.append(CheckResult(f"exp_vs_closed/{name}",
                                   eqs.exp_closed_residual(u, s3), cfg.tol))
        if u.source is not None and u.target is not None:
            out.append(CheckResult(
                f"transform/{name}",
                eqs.verify_transform(u, s3, m=cfg.mass, kappa=cfg.kappa,
                                     corrupt_reduction=cfg.corrupt_reduction), cfg.tol))
    tu = eqs.composed_tu(m=cfg.mass)
    out.append(CheckResult("transform/tU2*tU1",
                           eqs.verify_transform(tu, s3), cfg.tol))
    out.append(CheckResult("transform/tU2_alt_norm_p3pos",
                           eqs.tu2_alt_normalization_residual(s3), cfg.tol))

    # projector identities
    for key, val in eqs.verify_projectors(s3, m=cfg.mass).items():
        out.append(CheckResult(f"projector/{key}", val, cfg.tol))
    for key, val in verify_projection_relations(seed=cfg.seed).items():
        out.append(CheckResult(f"projection_relations/{key}", val, cfg.tol))

    # Poincare algebra closure
    for name in ("psi", "chi", "phi", "phi_pos", "phi_neg", "chi2"):
        gs = poincare.generator_set(name)
        samples = s2_x8 if gs.d == 2 else s3_x8
        resid, second = poincare.algebra_residual(gs, samples)
        out.append(CheckResult(f"algebra/{name}", resid, 1e-8))
        out.append(CheckResult(f"algebra_second_order/{name}", second, 1e-10))
    for name in ("flat", "weyl"):
        gs = poincare.generator_set(name, m=cfg.mass)
        samples = s2_x8 if gs.d == 2 else s3_x8
        resid, second = poincare.algebra_residual(gs, samples)
        out.append(CheckResult(f"algebra/{name}", resid, 1e-8))
        out.append(CheckResult(f"algebra_second_order/{name}", second, 1e-10))

    u2 = eqs.catalog_unitary("U2").closed
    out.append(CheckResult(
        "covariance/chi_to_phi_by_U2",
        poincare.set_covariance_residual(poincare.generator_set("chi"),
                                         poincare.generator_set("phi"),
                                         u2, s3_x8[:4]), 1e-8))

    # position operators
    for name in position.POSITION_NAMES:
        rep = position.verify_position(name, s3)
        out.append(CheckResult(f"position/{name}",
                               rep["closed_vs_conjugation"], cfg.tol))
        out.append(CheckResult(f"position_canonical/{name}",
                               rep["canonical_commutator"], 1e-10))

    # irrep content
    psi_content = poincare.irrep_content(
        eqs.catalog_equation("dirac_massless"),
        poincare.generator_set("psi"), s3)
    expected_psi = ((-1, -0.5), (-1, 0.5), (1, -0.5), (1, 0.5))
    out.append(CheckResult("content/dirac_massless",
                           0.0 if psi_content == expected_psi else 1.0, 0.5))
    weyl_content = poincare.irrep_content(
        eqs.catalog_equation("weyl_plus"),
        poincare.generator_set("weyl"), s3)
    out.append(CheckResult("content/weyl_plus",
                           0.0 if len(weyl_content) == 2 else 1.0, 0.5))

    # dispersion identities and remaining structural checks
    for name in eqs.EQUATION_NAMES:
        eq = eqs.catalog_equation(name, m=cfg.mass, kappa=cfg.kappa)
        out.append(CheckResult(f"dispersion/{name}",
                               eqs.dispersion_residual(
                                   eq, s4 if eq.d == 4 else
                                   (s2 if eq.d == 2 else s3)), 1e-10))
    out.append(CheckResult("structure/chi_4c_block_reduction",
                           eqs.block_reduction_residual(s3), cfg.tol))
    out.append(CheckResult("structure/lambda_minus_2i",
                           eqs.lambda_consistency_residual(s3), 1e-14))
    return out
