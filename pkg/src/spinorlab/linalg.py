"""Dense complex matrix kernel: products, adjoints, exponentials, nullspaces, polar forms.

Everything downstream works on small (2x2 .. 8x8) dense complex matrices, so
the kernel simply wraps numpy/scipy LAPACK routines behind the contracts the
rest of the package relies on.
"""

from typing import NamedTuple

import numpy as np
import scipy.linalg

# Default tolerance constants: double precision with short flop chains on
# norm-O(10) matrices.
TOL_EQ = 1e-9           # entrywise equality of verified identities
TOL_NULLSPACE = 1e-8    # relative singular-value cutoff for nullspaces
TOL_UNITARY = 1e-10     # unitarity defect


def as_cmatrix(m) -> np.ndarray:
    return np.asarray(m, dtype=complex)


def dagger(m) -> np.ndarray:
    return np.conj(np.swapaxes(np.asarray(m), -1, -2))


def mat_max(m) -> float:
    """Max absolute entry; the residual measure used throughout."""
    m = np.asarray(m)
    return 0.0 if m.size == 0 else float(np.max(np.abs(m)))


def commute_residual(a, b) -> float:
    return mat_max(a @ b - b @ a)


def expm(m) -> np.ndarray:
    """Matrix exponential (scaling-and-squaring via scipy)."""
    m = as_cmatrix(m)
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError("non-finite matrix")
    return scipy.linalg.expm(m)


class NullspaceResult(NamedTuple):
    vectors: list          # orthonormal right-nullspace basis vectors
    rank_zero: bool        # input was (numerically) the zero matrix


def svd_nullspace(m, tol: float = TOL_NULLSPACE) -> NullspaceResult:
    """Orthonormal basis of the right singular subspace with sigma < tol*sigma_max.

    ``m`` may be rectangular (stacked constraints).  A zero matrix returns the
    full standard basis, flagged rank_zero.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = as_cmatrix(np.atleast_2d(m))
    _, s, vh = np.linalg.svd(m)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        return NullspaceResult([np.eye(m.shape[1], dtype=complex)[i]
                                for i in range(m.shape[1])], True)
    nnz = int(np.sum(s >= tol * smax))
    return NullspaceResult([vh[i].conj() for i in range(nnz, m.shape[1])], False)


def polar_unitary(m) -> np.ndarray:
    """Unitary factor U of m = U.H with H positive definite."""
    m = as_cmatrix(m)
    s = np.linalg.svd(m, compute_uv=False)
    if s[-1] <= 1e-10 * s[0]:
        raise ValueError("no unitary representative")
    u, _ = scipy.linalg.polar(m)
    return u


def unitarity_defect(u) -> float:
    u = np.asarray(u)
    return mat_max(u @ dagger(u) - np.eye(u.shape[0]))


def cond2(m) -> float:
    s = np.linalg.svd(as_cmatrix(m), compute_uv=False)
    return np.inf if s[-1] == 0.0 else float(s[0] / s[-1])


def proportional(a, b, tol: float = TOL_EQ) -> bool:
    """True when a = c*b for some complex scalar c (projective equality)."""
    a = as_cmatrix(a)
    b = as_cmatrix(b)
    denom = np.vdot(b, b)
    if denom == 0:
        return mat_max(a) <= tol
    c = np.vdot(b, a) / denom
    return mat_max(a - c * b) <= tol * max(1.0, mat_max(a))
