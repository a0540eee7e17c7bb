"""The named catalog of Hamiltonians, unitary transformations and projectors.

Several signs and normalizations are only fixed by demanding that the
verified identities close; the choices made here (see README "Conventions"):

* the two-component reduction of the block Hamiltonian expands
  i*s3*s_a*p_a = -s2*p1 + s1*p2 (the p2 coefficient is sigma_1, matching the
  massive two-component pair);
* the tU2 map is normalized with sqrt(2E(E+p3)), which makes it unitary on
  both p3 branches; on p3 > 0 it coincides with the |p3| normalization;
* the tU2*tU1 composition is verified against the target gamma0*E;
* the De Sitter Hamiltonian uses the fifth anticommuting element i*gamma4
  (unit square -1), which is what makes H Hermitian with dispersion
  p^2 + kappa^2;
* the kappa pair carries a genuinely non-Hermitian constraint term
  -kappa*gamma0*(1 +- e3*gamma4); the pair is kept in the catalog for the
  discrete-symmetry classifier only and is flagged non-Hermitian.

The ``corrupt_reduction`` flag intentionally rebuilds the two-component
reduction with the inconsistent sigma_2*p2 coefficient; it exists as a
negative control for the verification suite and must never be used otherwise.
"""

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import dual
from .clifford import gamma_set, pauli, spin_matrix
from .linalg import dagger, mat_max, unitarity_defect
from .opcalc import ExpField, OperatorField, sample_momenta

_REP = gamma_set("rep26")
G0, G1, G2, G3, G4 = _REP.gammas
S1, S2, S3 = pauli(1), pauli(2), pauli(3)
I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)


# -- scalar building blocks ----------------------------------------------

def energy(p):
    return dual.sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2])


def abs_p3(p):
    return dual.absval(p[2])


def e3(p):
    return dual.sign(p[2])


def p_perp(p):
    return dual.sqrt(p[0] * p[0] + p[1] * p[1])


def q3_of(m):
    return lambda p: dual.sqrt(p[2] * p[2] + m * m)


# -- equation catalog ------------------------------------------------------

@dataclass(frozen=True)
class EquationSpec:
    name: str
    dim: int
    d: int
    hamiltonian: OperatorField
    params: dict = field(default_factory=dict)
    claims: tuple = ()                 # (element label, invariant?) pairs
    hermitian: bool = True
    dispersion: Optional[object] = None   # scalar fn of p: H^2 = fn(p)*1


def _all_invariant_claims(d):
    # every element of the 2^d x 2 x 2 group; labels canonicalized later
    labels = []
    for mask in range(2 ** d):
        flips = [str(k + 1) for k in range(d) if mask >> k & 1]
        base = "*".join("P" + f for f in flips)
        for tc in ("", "T2", "T1", "C"):
            lab = "*".join(x for x in (base, tc) if x) or "Id"
            labels.append((lab, True))
    return tuple(labels)


_CHI_CLAIMS = (
    ("P3", True), ("C", True),
    ("P1", False), ("P2", False), ("T1", False), ("T2", False),
    ("P3*C", True), ("P1*P2*P3*C", True),
    ("P1*C*T1", True), ("P2*C*T2", True),
    ("P3*C*T1", False), ("P3*C*T2", False),
    ("P1*C", False), ("P2*C", False),
)

_WEYL_CLAIMS = (
    ("P1*P2*P3", False), ("C", False),
    ("P1*P2*P3*C", True), ("T1", True),
)

_FLAT_CLAIMS = (
    ("P1*P2", True), ("C", True), ("P1*P2*C", True),
    ("P1*C*T1", True), ("P1*C*T2", True), ("P2*C*T1", True), ("P2*C*T2", True),
    ("P1", False), ("P2", False), ("T1", False), ("T2", False),
    ("P1*C", False), ("P2*C", False), ("C*T1", False), ("C*T2", False),
)

_DESITTER_CLAIMS = (
    ("T1", True), ("T2*C", True),
    ("P1", False), ("P2", False), ("P3", False), ("P4", False),
    ("T2", False), ("C", False),
)

_KAPPA_CLAIMS = (
    ("P3", True), ("C", True),
    ("P1", False), ("P2", False), ("T1", False), ("T2", False),
)

_MASSIVE_CLAIMS = (
    ("P1", True), ("P2", True), ("P3", True), ("P1*P2*P3", True),
    ("T1", True), ("T2", True), ("C", True),
)


def _two_component_reduction(sign: float, mass_fn, corrupt_reduction=False):
    """-s2*p1 + s1*p2 + sign*s3*m(p); the negative control uses s2*p2."""
    second = S2 if corrupt_reduction else S1
    return [
        (lambda p: p[0], -S2),
        (lambda p: p[1], second),
        (lambda p, _f=mass_fn, _s=sign: _s * _f(p), S3),
    ]


def catalog_equation(name: str, m: float = 1.0, kappa: float = 1.0,
                     corrupt_reduction: bool = False) -> EquationSpec:
    """Build a catalog equation by its stable public name."""
    if m < 0:
        raise ValueError("mass must be non-negative")
    disp_massless = lambda p: dual.value(p[0]) ** 2 + dual.value(p[1]) ** 2 + dual.value(p[2]) ** 2

    if name == "dirac_massless":
        terms = [(lambda p, _k=k: p[_k], G0 @ _REP.gamma(k + 1)) for k in range(3)]
        return EquationSpec(name, 4, 3, OperatorField(4, 3, terms),
                            claims=_all_invariant_claims(3),
                            dispersion=disp_massless)

    if name in ("weyl_plus", "weyl_minus"):
        s = 1.0 if name.endswith("plus") else -1.0
        terms = [(lambda p, _k=k: p[_k], s * pauli(k + 1)) for k in range(3)]
        return EquationSpec(name, 2, 3, OperatorField(2, 3, terms),
                            claims=_WEYL_CLAIMS, dispersion=disp_massless)

    if name == "chi_4c":
        terms = [(lambda p: p[0], G0 @ G1), (lambda p: p[1], G0 @ G2),
                 (abs_p3, G0)]
        return EquationSpec(name, 4, 3, OperatorField(4, 3, terms),
                            claims=_all_invariant_claims(3),
                            dispersion=disp_massless)

    if name in ("chi_plus", "chi_minus"):
        s = 1.0 if name.endswith("plus") else -1.0
        terms = _two_component_reduction(s, abs_p3, corrupt_reduction)
        return EquationSpec(name, 2, 3, OperatorField(2, 3, terms),
                            claims=_CHI_CLAIMS,
                            dispersion=None if corrupt_reduction else disp_massless)

    if name == "phi_diag":
        return EquationSpec(name, 4, 3,
                            OperatorField(4, 3, [(energy, G0)]),
                            dispersion=disp_massless)

    if name == "weyl_canonical":
        return EquationSpec(
            name, 2, 3,
            OperatorField(2, 3, [(lambda p: e3(p) * energy(p), S3)]),
            dispersion=disp_massless)

    if name in ("flat_plus", "flat_minus"):
        s = 1.0 if name.endswith("plus") else -1.0
        terms = [(lambda p: p[0], -S2), (lambda p: p[1], S1),
                 (lambda p, _s=s: _s * m, S3)]
        return EquationSpec(
            name, 2, 2, OperatorField(2, 2, terms), params={"m": m},
            claims=_FLAT_CLAIMS,
            dispersion=lambda p: dual.value(p[0]) ** 2 + dual.value(p[1]) ** 2 + m * m)

    if name == "desitter":
        g4p = 1j * G4         # fifth anticommuting element with square -1
        mats = (G0 @ G1, G0 @ G2, G0 @ G3, G0 @ g4p)
        terms = [(lambda p, _k=k: p[_k], mats[k]) for k in range(4)]
        terms.append((lambda p: kappa, G0))
        return EquationSpec(
            name, 4, 4, OperatorField(4, 4, terms), params={"kappa": kappa},
            claims=_DESITTER_CLAIMS,
            dispersion=lambda p: sum(dual.value(c) ** 2 for c in p) + kappa ** 2)

    if name == "dirac_massive":
        terms = [(lambda p, _k=k: p[_k], G0 @ _REP.gamma(k + 1)) for k in range(3)]
        terms.append((lambda p: m, G0))
        return EquationSpec(
            name, 4, 3, OperatorField(4, 3, terms), params={"m": m},
            claims=_MASSIVE_CLAIMS,
            dispersion=lambda p: disp_massless(p) + m * m)

    if name == "hprime":
        terms = [(lambda p: p[0], G0 @ G1), (lambda p: p[1], G0 @ G2),
                 (q3_of(m), G0)]
        return EquationSpec(
            name, 4, 3, OperatorField(4, 3, terms), params={"m": m},
            dispersion=lambda p: disp_massless(p) + m * m)

    if name in ("spinless_plus", "spinless_minus"):
        s = 1.0 if name.endswith("plus") else -1.0
        terms = _two_component_reduction(s, q3_of(m))
        return EquationSpec(
            name, 2, 3, OperatorField(2, 3, terms), params={"m": m},
            dispersion=lambda p: disp_massless(p) + m * m)

    if name in ("kappa_plus", "kappa_minus"):
        s = 1.0 if name.endswith("plus") else -1.0
        terms = [(lambda p, _k=k: p[_k], G0 @ _REP.gamma(k + 1)) for k in range(3)]
        terms.append((lambda p: -kappa, G0))
        terms.append((lambda p, _s=s: -_s * kappa * e3(p), G0 @ G4))
        return EquationSpec(name, 4, 3, OperatorField(4, 3, terms),
                            params={"kappa": kappa}, claims=_KAPPA_CLAIMS,
                            hermitian=False,
                            dispersion=disp_massless)

    raise ValueError(f"unknown equation {name!r}")


EQUATION_NAMES = (
    "dirac_massless", "weyl_plus", "weyl_minus", "chi_4c", "chi_plus",
    "chi_minus", "phi_diag", "weyl_canonical", "flat_plus", "flat_minus",
    "desitter", "dirac_massive", "hprime", "spinless_plus", "spinless_minus",
    "kappa_plus", "kappa_minus",
)

TWO_BY_TWO_NAMES = tuple(n for n in EQUATION_NAMES
                         if catalog_equation(n).dim == 2)


# -- unitary catalog -------------------------------------------------------

@dataclass(frozen=True)
class UnitarySpec:
    name: str
    dim: int
    d: int
    closed: OperatorField
    exponential: Optional[ExpField] = None
    source: Optional[str] = None
    target: Union[str, OperatorField, None] = None


def _u2_like_norm(p):
    E = energy(p)
    return dual.sqrt(2.0 * E * (E + abs_p3(p)))


def catalog_unitary(name: str, m: float = 1.0) -> UnitarySpec:
    """Build a catalog transformation by its stable public name."""
    if name == "U1":
        closed = OperatorField(4, 3, [
            (lambda p: 1.0 / np.sqrt(2.0), I4),
            (lambda p: e3(p) / np.sqrt(2.0), G3),
        ])
        expo = ExpField(OperatorField(4, 3, [
            (lambda p: 0.25 * np.pi * e3(p), G3)]))
        return UnitarySpec("U1", 4, 3, closed, expo,
                           source="dirac_massless", target="chi_4c")

    if name == "U2":
        closed = OperatorField(4, 3, [
            (lambda p: (energy(p) + abs_p3(p)) / _u2_like_norm(p), I4),
            (lambda p: p[0] / _u2_like_norm(p), G1),
            (lambda p: p[1] / _u2_like_norm(p), G2),
        ])
        # generator (theta/2) * gamma_a p_a / |p_perp|, theta = atan(|p_perp|/|p3|)
        def theta_half_over_pp(p):
            return 0.5 * dual.atan(p_perp(p) / abs_p3(p)) / p_perp(p)
        expo = ExpField(OperatorField(4, 3, [
            (lambda p: theta_half_over_pp(p) * p[0], G1),
            (lambda p: theta_half_over_pp(p) * p[1], G2),
        ]))
        return UnitarySpec("U2", 4, 3, closed, expo,
                           source="chi_4c", target="phi_diag")

    if name == "tU1":
        closed = OperatorField(4, 3, [
            (lambda p: 1.0 / np.sqrt(2.0), I4),
            (lambda p: 1.0 / np.sqrt(2.0), G3),
        ])
        return UnitarySpec("tU1", 4, 3, closed, source="dirac_massless")

    if name == "tU2":
        def norm(p):
            E = energy(p)
            return dual.sqrt(2.0 * E * (E + p[2]))
        closed = OperatorField(4, 3, [
            (lambda p: (energy(p) + p[2]) / norm(p), I4),
            (lambda p: p[0] / norm(p), G1),
            (lambda p: p[1] / norm(p), G2),
        ])
        return UnitarySpec("tU2", 4, 3, closed, target="phi_diag")

    if name == "V1":
        closed = OperatorField(2, 3, [
            (lambda p: (energy(p) + abs_p3(p)) / _u2_like_norm(p), I2),
            (lambda p: 1j * p[0] / _u2_like_norm(p), S1),
            (lambda p: 1j * p[1] / _u2_like_norm(p), S2),
        ])
        def theta_half_over_pp(p):
            return 0.5 * dual.atan(p_perp(p) / abs_p3(p)) / p_perp(p)
        expo = ExpField(OperatorField(2, 3, [
            (lambda p: 1j * theta_half_over_pp(p) * p[0], S1),
            (lambda p: 1j * theta_half_over_pp(p) * p[1], S2),
        ]))
        target = OperatorField(2, 3, [(energy, S3)])     # diagonal s3*E
        return UnitarySpec("V1", 2, 3, closed, expo,
                           source="chi_plus", target=target)

    if name == "V":
        xi = (
            lambda p: p[0] - p[1] * e3(p),
            lambda p: p[1] + e3(p) * p[0],
            lambda p: e3(p) * (energy(p) + abs_p3(p)),
        )
        def norm(p):
            E = energy(p)
            return 2.0 * dual.sqrt(E * (E + abs_p3(p)))   # = 2 sqrt(xi.p)
        terms = [(lambda p: (energy(p) + abs_p3(p)) / norm(p), I2)]
        for k in range(3):
            terms.append((lambda p, _x=xi[k]: 1j * _x(p) / norm(p), pauli(k + 1)))
        return UnitarySpec("V", 2, 3, OperatorField(2, 3, terms),
                           source="weyl_plus", target="weyl_canonical")

    if name == "V2":
        q3 = q3_of(m)
        def norm(p):
            q = q3(p)
            return dual.sqrt(2.0 * q * (q + m))
        closed = OperatorField(4, 3, [
            (lambda p: (q3(p) + m) / norm(p), I4),
            (lambda p: p[2] / norm(p), G3),
        ])
        return UnitarySpec("V2", 4, 3, closed,
                           source="dirac_massive", target="hprime")

    raise ValueError(f"unknown transformation {name!r}")


UNITARY_NAMES = ("U1", "U2", "tU1", "tU2", "V1", "V", "V2")


def composed_tu(m: float = 1.0) -> UnitarySpec:
    """tU2*tU1: maps the massless four-component equation onto gamma0*E."""
    u1 = catalog_unitary("tU1").closed
    u2 = catalog_unitary("tU2").closed
    return UnitarySpec("tU2*tU1", 4, 3, u2 @ u1,
                       source="dirac_massless", target="phi_diag")


def _resolve_target(t, m, kappa, corrupt_reduction=False):
    if isinstance(t, OperatorField):
        return t
    return catalog_equation(t, m=m, kappa=kappa,
                            corrupt_reduction=corrupt_reduction).hamiltonian


def verify_transform(u: UnitarySpec, samples, m: float = 1.0,
                     kappa: float = 1.0, corrupt_reduction: bool = False) -> float:
    """max_p | u H_src u^-1 - H_tgt |; the conjugation uses u^-1 = u^dagger."""
    if u.source is None or u.target is None:
        raise ValueError(f"{u.name} has no source/target wiring")
    hs = catalog_equation(u.source, m=m, kappa=kappa,
                          corrupt_reduction=corrupt_reduction).hamiltonian
    ht = _resolve_target(u.target, m, kappa)
    worst = 0.0
    for p in samples:
        up = u.closed(p)
        if unitarity_defect(up) > 1e-8:
            raise ValueError(f"{u.name} is not unitary at {p}")
        worst = max(worst, mat_max(up @ hs(p) @ dagger(up) - ht(p)))
    return worst


def unitarity_residual(u: UnitarySpec, samples) -> float:
    return max(unitarity_defect(u.closed(p)) for p in samples)


def exp_closed_residual(u: UnitarySpec, samples) -> float:
    if u.exponential is None:
        raise ValueError(f"{u.name} has no exponential form")
    return max(mat_max(u.closed(p) - u.exponential(p)) for p in samples)


def tu2_alt_normalization_residual(samples) -> float:
    """On p3 > 0 the catalog tU2 equals the |p3|-normalized variant."""
    tu2 = catalog_unitary("tU2").closed
    alt = OperatorField(4, 3, [
        (lambda p: (energy(p) + p[2]) / _u2_like_norm(p), I4),
        (lambda p: p[0] / _u2_like_norm(p), G1),
        (lambda p: p[1] / _u2_like_norm(p), G2),
    ])
    pos = [p for p in samples if p[2] > 0]
    if not pos:
        raise ValueError("need at least one p3 > 0 sample")
    return max(mat_max(tu2(p) - alt(p)) for p in pos)


# -- projectors ------------------------------------------------------------

Q_PLUS = 0.5 * (I4 + G3 @ G4)
Q_MINUS = 0.5 * (I4 - G3 @ G4)


def chirality_projector_field(sign: float) -> OperatorField:
    """(1 -+ e3*gamma4)/2, the momentum-dependent subsidiary projectors."""
    return OperatorField(4, 3, [
        (lambda p: 0.5, I4),
        (lambda p, _s=sign: -0.5 * _s * e3(p), G4),
    ])


def massive_constraint_field(m: float) -> OperatorField:
    """K(p) = (gamma3 gamma4 m + gamma4 p3)/q3 with K^2 = 1."""
    q3 = q3_of(m)
    return OperatorField(4, 3, [
        (lambda p: m / q3(p), G3 @ G4),
        (lambda p: p[2] / q3(p), G4),
    ])


def verify_projectors(samples, m: float = 1.0) -> dict:
    """Residuals of every projector identity in the catalog."""
    res = {}
    res["q_idempotent"] = max(mat_max(Q_PLUS @ Q_PLUS - Q_PLUS),
                              mat_max(Q_MINUS @ Q_MINUS - Q_MINUS))
    res["q_orthogonal"] = mat_max(Q_PLUS @ Q_MINUS)
    res["q_complete"] = mat_max(Q_PLUS + Q_MINUS - I4)

    hchi = catalog_equation("chi_4c").hamiltonian
    res["q_commutes_hchi"] = max(
        mat_max(Q_PLUS @ hchi(p) - hchi(p) @ Q_PLUS) for p in samples)

    kf = massive_constraint_field(m)
    res["k_squares_to_one"] = max(mat_max(kf(p) @ kf(p) - I4) for p in samples)
    proj = [0.5 * (I4 - kf(p)) for p in samples]
    res["k_projector_idempotent"] = max(mat_max(q @ q - q) for q in proj)
    hm = catalog_equation("dirac_massive", m=m).hamiltonian
    res["k_commutes_massive"] = max(
        mat_max(kf(p) @ hm(p) - hm(p) @ kf(p)) for p in samples)

    cp = chirality_projector_field(+1.0)
    cm = chirality_projector_field(-1.0)
    res["chirality_idempotent"] = max(
        max(mat_max(cp(p) @ cp(p) - cp(p)), mat_max(cm(p) @ cm(p) - cm(p)))
        for p in samples)
    res["chirality_complementary"] = max(
        max(mat_max(cp(p) + cm(p) - I4), mat_max(cp(p) @ cm(p)))
        for p in samples)
    return res


# -- structural identities --------------------------------------------------

def block_reduction_residual(samples) -> float:
    """chi_4c restricted to the Q+- blocks equals chi_plus / chi_minus."""
    h4 = catalog_equation("chi_4c").hamiltonian
    hp = catalog_equation("chi_plus").hamiltonian
    hm = catalog_equation("chi_minus").hamiltonian
    worst = 0.0
    for p in samples:
        full = h4(p)
        worst = max(worst,
                    mat_max(full[:2, :2] - hp(p)),
                    mat_max(full[2:, 2:] - hm(p)),
                    mat_max(full[:2, 2:]), mat_max(full[2:, :2]))
    return worst


def dispersion_residual(eq: EquationSpec, samples) -> float:
    if eq.dispersion is None:
        raise ValueError(f"{eq.name} has no dispersion contract")
    eye = np.eye(eq.dim)
    worst = 0.0
    for p in samples:
        h = eq.hamiltonian(p)
        worst = max(worst, mat_max(h @ h - eq.dispersion(p) * eye))
    return worst


def lambda_consistency_residual(samples) -> float:
    """lambda*S_0l*p_l with lambda = -2i reproduces the massless operator."""
    s0l = [spin_matrix(_REP, 0, l).value for l in (1, 2, 3)]
    h = catalog_equation("dirac_massless").hamiltonian
    worst = 0.0
    for p in samples:
        op = sum((-2j) * s0l[l] * p[l] for l in range(3))
        worst = max(worst, mat_max(op - h(p)))
    return worst


def hermiticity_residual(eq: EquationSpec, samples) -> float:
    return max(mat_max(eq.hamiltonian(p) - dagger(eq.hamiltonian(p)))
               for p in samples)


def default_samples(d: int, n: int = 12, seed: int = 42) -> list:
    return sample_momenta(d, n, seed)
