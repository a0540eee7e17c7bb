"""Poincare generator realizations, algebra closure, helicity, irrep content.

Each realization is a family of first-order operators

    P_0 = H(p),  P_k = p_k,
    J_kl = x_k p_l - x_l p_k + (spin part),
    J_0k = x0 p_k - (1/2)[x_k, H]_+ + (spin part),

with x_k = i d/dp_k and the anticommutator expanded to H x_k + (i/2) dH/dp_k.

The structure constants of the algebra are never assumed: they are calibrated
once per momentum dimension on the pure orbital scalar realization (identity
matrices, H = E) and the calibrated signs are then required of every matrix
realization.
"""

from dataclasses import dataclass

import numpy as np

from .clifford import gamma_set, pauli, spin_matrix
from .equations import abs_p3, catalog_equation, e3, energy
from .linalg import mat_max
from .opcalc import (DiffOp1, OperatorField, conjugate_by_unitary,
                     diffop_commutator)

_REP = gamma_set("rep26")
G0 = _REP.gamma(0)

X0_VALUES = (0.0, 1.37)


class ContentNotInvariant(Exception):
    """Irrep content differed across sample momenta (construction bug)."""


@dataclass(frozen=True)
class GeneratorSet:
    name: str
    dim: int
    d: int
    P: dict          # index 0..d -> DiffOp1 (P[0] is the Hamiltonian)
    J: dict          # (mu, nu) with mu < nu -> DiffOp1

    def members(self):
        out = [(f"P{k}", op) for k, op in sorted(self.P.items())]
        out += [(f"J{mu}{nu}", op) for (mu, nu), op in sorted(self.J.items())]
        return out

    def j(self, mu: int, nu: int) -> DiffOp1:
        if mu == nu:
            raise ValueError("J indices must differ")
        if (mu, nu) in self.J:
            return self.J[(mu, nu)]
        return self.J[(nu, mu)].scale(-1.0)


def _orbital_rotation(k: int, l: int, dim: int, d: int) -> DiffOp1:
    """x_k p_l - x_l p_k, normal ordered (1-based spatial indices)."""
    b = [OperatorField.zero(dim, d) for _ in range(d)]
    b[k - 1] = OperatorField.momentum(l - 1, dim, d)
    b[l - 1] = OperatorField.momentum(k - 1, dim, d).scale(-1.0)
    return DiffOp1(OperatorField.zero(dim, d), tuple(b))


def _boost(h: OperatorField, k: int) -> DiffOp1:
    """x0 p_k - (1/2)[x_k, H]_+ = x0 p_k - H x_k - (i/2) dH/dp_k."""
    dim, d = h.dim, h.d
    a = h.partial(k - 1).scale(-0.5j)
    b = [OperatorField.zero(dim, d) for _ in range(d)]
    b[k - 1] = h.scale(-1.0)
    return DiffOp1(a, tuple(b), OperatorField.momentum(k - 1, dim, d))


def _spin_const(mat, dim, d) -> DiffOp1:
    return DiffOp1.from_field(OperatorField.constant(mat, d))


def _momenta_ops(dim, d, h):
    P = {0: DiffOp1.from_field(h)}
    for k in range(1, d + 1):
        P[k] = DiffOp1.from_field(OperatorField.momentum(k - 1, dim, d))
    return P


def _over_e_plus_p3(p):
    return 1.0 / (energy(p) + abs_p3(p))


def generator_set(name: str, m: float = 1.0) -> GeneratorSet:
    """Build one of the named realizations.

    ``phi_pos`` / ``phi_neg`` are the diagonal realization with the matrix
    gamma0 replaced by the scalar +1 / -1.
    """
    if name == "psi":
        h = catalog_equation("dirac_massless").hamiltonian
        J = {}
        for k in range(1, 4):
            for l in range(k + 1, 4):
                J[(k, l)] = _orbital_rotation(k, l, 4, 3) \
                    + _spin_const(spin_matrix(_REP, k, l).value, 4, 3)
        for k in range(1, 4):
            J[(0, k)] = _boost(h, k)
        return GeneratorSet(name, 4, 3, _momenta_ops(4, 3, h), J)

    if name == "chi":
        h = catalog_equation("chi_4c").hamiltonian
        s12 = spin_matrix(_REP, 1, 2).value
        J = {(1, 2): _orbital_rotation(1, 2, 4, 3) + _spin_const(s12, 4, 3)}
        for a in (1, 2):
            # - e3 * S_a3 * gamma3 = + (i/2) e3 gamma_a
            spin = OperatorField(4, 3, [(lambda p: 0.5j * e3(p),
                                         _REP.gamma(a))])
            J[(a, 3)] = _orbital_rotation(a, 3, 4, 3) + DiffOp1.from_field(spin)
        for k in range(1, 4):
            J[(0, k)] = _boost(h, k)
        return GeneratorSet(name, 4, 3, _momenta_ops(4, 3, h), J)

    if name in ("phi", "phi_pos", "phi_neg"):
        if name == "phi":
            g0 = G0
        else:
            g0 = (1.0 if name == "phi_pos" else -1.0) * np.eye(4, dtype=complex)
        h = OperatorField(4, 3, [(energy, g0)])
        s12 = spin_matrix(_REP, 1, 2).value
        J = {(1, 2): _orbital_rotation(1, 2, 4, 3) + _spin_const(s12, 4, 3)}
        # S_{a b} p_b for a = 1, 2 reduces to +-S12 p_{2,1}
        sab_pb = {
            1: OperatorField(4, 3, [(lambda p: p[1], s12)]),
            2: OperatorField(4, 3, [(lambda p: -p[0], s12)]),
        }
        for a in (1, 2):
            spin = sab_pb[a].scale(lambda p: -e3(p) * _over_e_plus_p3(p))
            J[(a, 3)] = _orbital_rotation(a, 3, 4, 3) + DiffOp1.from_field(spin)
            extra = (OperatorField.constant(g0, 3) @ sab_pb[a]) \
                .scale(lambda p: -_over_e_plus_p3(p))
            J[(0, a)] = _boost(h, a) + DiffOp1.from_field(extra)
        J[(0, 3)] = _boost(h, 3)
        return GeneratorSet(name, 4, 3, _momenta_ops(4, 3, h), J)

    if name == "chi2":
        # two-component reduction of the "chi" set on the upper block:
        # J_a3 spin part is -(1/2) e3 sigma_a
        h = catalog_equation("chi_plus").hamiltonian
        J = {(1, 2): _orbital_rotation(1, 2, 2, 3)
             + _spin_const(0.5 * pauli(3), 2, 3)}
        for a in (1, 2):
            spin = OperatorField(2, 3, [(lambda p: -0.5 * e3(p), pauli(a))])
            J[(a, 3)] = _orbital_rotation(a, 3, 2, 3) + DiffOp1.from_field(spin)
        for k in range(1, 4):
            J[(0, k)] = _boost(h, k)
        return GeneratorSet(name, 2, 3, _momenta_ops(2, 3, h), J)

    if name == "flat":
        h = catalog_equation("flat_plus", m=m).hamiltonian
        J = {(1, 2): _orbital_rotation(1, 2, 2, 2)
             + _spin_const(0.5 * pauli(3), 2, 2)}
        for a in (1, 2):
            J[(0, a)] = _boost(h, a)
        return GeneratorSet(name, 2, 2, _momenta_ops(2, 2, h), J)

    if name == "weyl":
        h = catalog_equation("weyl_plus").hamiltonian
        eps = {(1, 2): 3, (1, 3): -2, (2, 3): 1}
        J = {}
        for (k, l), s in eps.items():
            mat = 0.5 * np.sign(s) * pauli(abs(s))
            J[(k, l)] = _orbital_rotation(k, l, 2, 3) + _spin_const(mat, 2, 3)
        for k in range(1, 4):
            J[(0, k)] = _boost(h, k)
        return GeneratorSet(name, 2, 3, _momenta_ops(2, 3, h), J)

    raise ValueError(f"unknown generator set {name!r}")


GENERATOR_NAMES = ("psi", "chi", "phi", "phi_pos", "phi_neg", "chi2",
                   "flat", "weyl")


# -- structure-constant calibration -----------------------------------------

def _scalar_orbital_set(d: int) -> GeneratorSet:
    def e_d(p):
        from . import dual
        return dual.sqrt(sum(c * c for c in p))
    h = OperatorField.scalar(e_d, 1, d)
    J = {}
    for k in range(1, d + 1):
        for l in range(k + 1, d + 1):
            J[(k, l)] = _orbital_rotation(k, l, 1, d)
        J[(0, k)] = _boost(h, k)
    return GeneratorSet("orbital", 1, d, _momenta_ops(1, d, h), J)


def _metric(d: int):
    g = -np.ones(d + 1)
    g[0] = 1.0
    return g


def _jj_rhs(gs: GeneratorSet, mu, nu, rho, sig, sign: float) -> DiffOp1:
    g = _metric(gs.d)
    zero = DiffOp1.from_field(OperatorField.zero(gs.dim, gs.d))
    out = zero
    for coeff, a, b in ((g[nu] if nu == rho else 0.0, mu, sig),
                        (g[mu] if mu == sig else 0.0, nu, rho),
                        (-(g[mu] if mu == rho else 0.0), nu, sig),
                        (-(g[nu] if nu == sig else 0.0), mu, rho)):
        if coeff != 0.0 and a != b:
            out = out + gs.j(a, b).scale(1j * sign * coeff)
    return out


def _jp_rhs(gs: GeneratorSet, mu, nu, lam, sign: float) -> DiffOp1:
    g = _metric(gs.d)
    zero = DiffOp1.from_field(OperatorField.zero(gs.dim, gs.d))
    out = zero
    if nu == lam:
        out = out + gs.P[mu].scale(1j * sign * g[nu])
    if mu == lam:
        out = out - gs.P[nu].scale(1j * sign * g[mu])
    return out


def _relation_list(gs: GeneratorSet):
    """All (lhs1, lhs2, rhs builder) commutator relations for the set."""
    jkeys = sorted(gs.J.keys())
    pkeys = sorted(gs.P.keys())
    rels = []
    for i, (mu, nu) in enumerate(jkeys):
        for rho, sig in jkeys[i:]:
            rels.append((("J", mu, nu), ("J", rho, sig)))
        for lam in pkeys:
            rels.append((("J", mu, nu), ("P", lam)))
    for i, lam1 in enumerate(pkeys):
        for lam2 in pkeys[i:]:
            rels.append((("P", lam1), ("P", lam2)))
    return rels


def _get(gs, key):
    return gs.J[(key[1], key[2])] if key[0] == "J" else gs.P[key[1]]


def _rhs(gs, k1, k2, sign_jj, sign_jp):
    if k1[0] == "J" and k2[0] == "J":
        return _jj_rhs(gs, k1[1], k1[2], k2[1], k2[2], sign_jj)
    if k1[0] == "J" and k2[0] == "P":
        return _jp_rhs(gs, k1[1], k1[2], k2[1], sign_jp)
    return DiffOp1.from_field(OperatorField.zero(gs.dim, gs.d))


def _closure_residual(gs, samples, sign_jj, sign_jp,
                      x0_values=X0_VALUES):
    worst = 0.0
    worst_second = 0.0
    for k1, k2 in _relation_list(gs):
        op1, op2 = _get(gs, k1), _get(gs, k2)
        rhs = _rhs(gs, k1, k2, sign_jj, sign_jp)
        for p in samples:
            comm = diffop_commutator(op1, op2, p)
            worst_second = max(worst_second, comm.second_order)
            for x0v in x0_values:
                ac, bc = comm.fold(x0v)
                ae, be = rhs.at(p, x0v)
                worst = max(worst, mat_max(ac - ae))
                for bck, bek in zip(bc, be):
                    worst = max(worst, mat_max(bck - bek))
    return worst, worst_second


_CALIBRATION = {}


def structure_signs(d: int):
    """Calibrate the [J,J] and [J,P] sign conventions on the orbital scalar set."""
    if d not in _CALIBRATION:
        from .opcalc import sample_momenta
        gs = _scalar_orbital_set(d)
        samples = sample_momenta(d, 3, seed=1234)
        best = None
        for sjj in (1.0, -1.0):
            for sjp in (1.0, -1.0):
                r, _ = _closure_residual(gs, samples, sjj, sjp)
                if best is None or r < best[0]:
                    best = (r, sjj, sjp)
        if best[0] > 1e-10:
            raise RuntimeError(
                f"orbital calibration failed at d={d}: residual {best[0]:.3e}")
        _CALIBRATION[d] = (best[1], best[2])
    return _CALIBRATION[d]


def algebra_residual(gs: GeneratorSet, samples,
                     x0_values=X0_VALUES):
    """(closure residual, second-order residual) under the calibrated relations."""
    sjj, sjp = structure_signs(gs.d)
    return _closure_residual(gs, samples, sjj, sjp, x0_values)


def set_covariance_residual(gs_src: GeneratorSet, gs_tgt: GeneratorSet,
                            u: OperatorField, samples,
                            x0_values=X0_VALUES) -> float:
    """max | u G_src u^-1 - G_tgt | over members, samples, x0 values."""
    worst = 0.0
    for (name1, op1), (name2, op2) in zip(gs_src.members(), gs_tgt.members()):
        conj = conjugate_by_unitary(u.adjoint(), op1, probe=samples[:2])
        for p in samples:
            for x0v in x0_values:
                a1, b1 = conj.at(p, x0v)
                a2, b2 = op2.at(p, x0v)
                worst = max(worst, mat_max(a1 - a2))
                for x, y in zip(b1, b2):
                    worst = max(worst, mat_max(x - y))
    return worst


# -- helicity and irrep content ----------------------------------------------

def helicity_field(gs: GeneratorSet, check_points) -> OperatorField:
    """h = sum_k p_k J_k / E with J_k = (1/2) eps_klm J_lm.

    The orbital derivative parts cancel identically (p x p = 0); this is
    asserted at the check points and the surviving matrix field is returned.
    """
    if gs.d != 3:
        raise ValueError("helicity requires d = 3")
    jvec = {1: gs.j(2, 3), 2: gs.j(3, 1), 3: gs.j(1, 2)}
    h_op = None
    for k in (1, 2, 3):
        term = jvec[k].scale_field(
            lambda p, _k=k: p[_k - 1] / energy(p))
        h_op = term if h_op is None else h_op + term
    for p in check_points:
        for bf in h_op.b:
            if mat_max(bf(p)) > 1e-10:
                raise RuntimeError("not a scalar helicity")
        if h_op.x0 is not None and mat_max(h_op.x0(p)) > 1e-12:
            raise RuntimeError("helicity acquired an x0 part")
    return h_op.a


def _half_integer(x, tol=1e-7) -> float:
    r = round(2.0 * x) / 2.0
    if abs(x - r) > tol:
        raise ContentNotInvariant(f"helicity {x} is not a half-integer")
    return r


def irrep_content(eq, gs: GeneratorSet, samples) -> tuple:
    """Multiset of (energy sign, helicity) labels, identical at every sample.

    H(p) is diagonalized at each sample; within each energy-sign eigenspace
    the helicity field is jointly diagonalized.  A content that varies across
    samples raises ContentNotInvariant.
    """
    h_field = helicity_field(gs, samples[:2])
    contents = set()
    content = None
    for p in samples:
        hmat = eq.hamiltonian(p)
        w, v = np.linalg.eigh(hmat)
        labels = []
        for sign in (1.0, -1.0):
            idx = np.where(np.sign(w) == sign)[0]
            if idx.size == 0:
                continue
            q = v[:, idx]
            hel = np.linalg.eigvalsh(q.conj().T @ h_field(p) @ q)
            labels.extend((int(sign), _half_integer(x)) for x in hel)
        content = tuple(sorted(labels))
        contents.add(content)
    if len(contents) != 1:
        raise ContentNotInvariant(
            f"{eq.name}: content not invariant across samples: {contents}")
    return content


def irrep_content_by_branch(eq, gs: GeneratorSet, samples) -> dict:
    """Content computed separately on the p3 > 0 and p3 < 0 sample branches."""
    out = {}
    for sign, key in ((1.0, "+"), (-1.0, "-")):
        branch = [p for p in samples if np.sign(p[2]) == sign]
        if branch:
            out[key] = irrep_content(eq, gs, branch)
    return out


def conjugated_content(eq, gs: GeneratorSet, u: OperatorField,
                       samples) -> tuple:
    """Content of the realization conjugated by a catalog unitary field."""
    h_field = helicity_field(gs, samples[:2])
    contents = set()
    content = None
    for p in samples:
        up = u(p)
        hmat = up @ eq.hamiltonian(p) @ up.conj().T
        hel_mat = up @ h_field(p) @ up.conj().T
        w, v = np.linalg.eigh(hmat)
        labels = []
        for sign in (1.0, -1.0):
            idx = np.where(np.sign(w) == sign)[0]
            if idx.size == 0:
                continue
            q = v[:, idx]
            hel = np.linalg.eigvalsh(q.conj().T @ hel_mat @ q)
            labels.extend((int(sign), _half_integer(x)) for x in hel)
        content = tuple(sorted(labels))
        contents.add(content)
    if len(contents) != 1:
        raise ContentNotInvariant("conjugated content not invariant")
    return content
