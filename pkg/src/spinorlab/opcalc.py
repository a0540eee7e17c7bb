"""Momentum-space operator calculus.

Matrix-valued fields of the momentum with exact derivatives, first-order
differential operators A(p) + sum_k B_k(p) (i d/dp_k) + x0*C(p), their
commutators, and conjugation by unitary fields.

A field is stored as a finite sum of scalar coefficient functions times
constant matrices.  Coefficient functions accept components that are plain
floats or :class:`spinorlab.dual.Dual` scalars; the latter is how derivatives
are taken, so the pass/fail paths never touch finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import dual
from .linalg import dagger, mat_max

Point = Sequence[float]


DEFAULT_EXCLUSIONS = {"abs_p3": 0.05, "perp2": 0.0025}


def sample_momenta(d: int, n: int, seed: int = 42,
                   exclusions: Optional[dict] = None,
                   low: float = 0.1, high: float = 10.0) -> list:
    """Deterministic seeded momenta with components in +-[low, high].

    Points respect the exclusion rules (|p3| >= abs_p3, p1^2+p2^2 >= perp2;
    defaults keep every catalog field regular).  Component magnitudes never
    drop below ``low`` = 0.1, so the default rules are met by construction
    and rejection only triggers for stricter custom rules.  For d >= 3 and
    n >= 4 the sign of the third component alternates so both p3 branches
    are always exercised.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rules = dict(DEFAULT_EXCLUSIONS, **(exclusions or {}))
    rng = np.random.default_rng(seed)

    def admissible(comps):
        if d >= 3 and abs(comps[2]) < rules["abs_p3"]:
            return False
        if d >= 2 and comps[0] ** 2 + comps[1] ** 2 < rules["perp2"]:
            return False
        return True

    pts = []
    for i in range(n):
        for _ in range(1000):
            comps = [float(s * m) for s, m in zip(
                np.where(rng.uniform(size=d) < 0.5, 1.0, -1.0),
                rng.uniform(low, high, size=d))]
            if d >= 3 and n >= 4:
                comps[2] = abs(comps[2]) * (1.0 if i % 2 == 0 else -1.0)
            if admissible(comps):
                break
        else:
            raise ValueError("exclusion rules too strict for the sample box")
        pts.append(tuple(comps))
    return pts


def _dcoeff(fn: Callable, k: int) -> Callable:
    def dfn(p, _fn=fn, _k=k):
        return dual.eps(_fn(dual.seed(p, _k)))
    return dfn


class OperatorField:
    """Matrix field  sum_i c_i(p) * M_i  with constant matrices M_i."""

    __slots__ = ("dim", "d", "terms")

    def __init__(self, dim: int, d: int, terms):
        self.dim = dim
        self.d = d
        self.terms = tuple((fn, np.asarray(mat, dtype=complex))
                           for fn, mat in terms)

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, mat, d: int) -> "OperatorField":
        mat = np.asarray(mat, dtype=complex)
        return cls(mat.shape[0], d, [(lambda p: 1.0, mat)])

    @classmethod
    def zero(cls, dim: int, d: int) -> "OperatorField":
        return cls(dim, d, [])

    @classmethod
    def scalar(cls, fn: Callable, dim: int, d: int) -> "OperatorField":
        """fn(p) times the identity."""
        return cls(dim, d, [(fn, np.eye(dim, dtype=complex))])

    @classmethod
    def momentum(cls, k: int, dim: int, d: int) -> "OperatorField":
        """p_k times the identity (k is 0-based)."""
        return cls.scalar(lambda p, _k=k: p[_k], dim, d)

    # -- evaluation --------------------------------------------------------
    def __call__(self, p: Point) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for fn, mat in self.terms:
            c = fn(p)
            if c != 0:
                out = out + c * mat
        return out

    def deriv(self, p: Point, k: int) -> np.ndarray:
        """Exact partial derivative d/dp_k at p."""
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for fn, mat in self.terms:
            e = dual.eps(fn(dual.seed(p, k)))
            if e != 0:
                out = out + e * mat
        return out

    def partial(self, k: int) -> "OperatorField":
        """The derivative as a field (differentiable again via nested duals)."""
        return OperatorField(self.dim, self.d,
                             [(_dcoeff(fn, k), mat) for fn, mat in self.terms])

    # -- algebra -----------------------------------------------------------
    def __add__(self, other: "OperatorField") -> "OperatorField":
        self._check(other)
        return OperatorField(self.dim, self.d, self.terms + other.terms)

    def __neg__(self) -> "OperatorField":
        return self.scale(-1.0)

    def __sub__(self, other: "OperatorField") -> "OperatorField":
        return self + (-other)

    def __matmul__(self, other: "OperatorField") -> "OperatorField":
        self._check(other)
        terms = []
        for f, a in self.terms:
            for g, b in other.terms:
                terms.append((lambda p, _f=f, _g=g: _f(p) * _g(p), a @ b))
        return OperatorField(self.dim, self.d, terms)

    def scale(self, c) -> "OperatorField":
        """Multiply by a constant or by a scalar function of p (on the left)."""
        if callable(c):
            return OperatorField(
                self.dim, self.d,
                [(lambda p, _f=fn, _c=c: _c(p) * _f(p), mat)
                 for fn, mat in self.terms])
        return OperatorField(self.dim, self.d,
                             [(fn, c * mat) for fn, mat in self.terms])

    def adjoint(self) -> "OperatorField":
        return OperatorField(
            self.dim, self.d,
            [(lambda p, _f=fn: dual.conj(_f(p)), dagger(mat))
             for fn, mat in self.terms])

    def _check(self, other):
        if self.dim != other.dim or self.d != other.d:
            raise ValueError("field dimension mismatch")


class ExpField:
    """exp of a matrix field, evaluated pointwise.

    Supports evaluation only; the catalog never differentiates exponential
    forms (they are checked against closed forms at sample points).
    """

    __slots__ = ("generator", "dim", "d")

    def __init__(self, generator: OperatorField):
        self.generator = generator
        self.dim = generator.dim
        self.d = generator.d

    def __call__(self, p: Point) -> np.ndarray:
        from .linalg import expm
        return expm(self.generator(p))


@dataclass(frozen=True)
class DiffOp1:
    """First-order operator A(p) + sum_k B_k(p) (i d/dp_k) + x0 * C(p).

    x0 is a commuting formal scalar (the explicit time parameter); relations
    involving it are verified at fixed numerical values by folding C into A.
    """

    a: OperatorField
    b: tuple
    x0: Optional[OperatorField] = None

    @property
    def dim(self) -> int:
        return self.a.dim

    @property
    def d(self) -> int:
        return self.a.d

    # -- constructors -----------------------------------------------------
    @staticmethod
    def from_field(f: OperatorField) -> "DiffOp1":
        return DiffOp1(f, tuple(OperatorField.zero(f.dim, f.d)
                                for _ in range(f.d)))

    @staticmethod
    def position_component(k: int, dim: int, d: int) -> "DiffOp1":
        """x_k = i d/dp_k (k is 0-based)."""
        ident = np.eye(dim, dtype=complex)
        b = tuple(OperatorField.constant(ident, d) if j == k
                  else OperatorField.zero(dim, d) for j in range(d))
        return DiffOp1(OperatorField.zero(dim, d), b)

    # -- algebra -----------------------------------------------------------
    def __add__(self, other: "DiffOp1") -> "DiffOp1":
        x0 = _add_opt(self.x0, other.x0, self.dim, self.d)
        return DiffOp1(self.a + other.a,
                       tuple(x + y for x, y in zip(self.b, other.b)), x0)

    def __sub__(self, other: "DiffOp1") -> "DiffOp1":
        return self + other.scale(-1.0)

    def scale(self, c) -> "DiffOp1":
        return DiffOp1(self.a.scale(c), tuple(f.scale(c) for f in self.b),
                       self.x0.scale(c) if self.x0 is not None else None)

    def scale_field(self, fn) -> "DiffOp1":
        """Left-multiply by a scalar function of p (commutes past derivatives)."""
        return DiffOp1(self.a.scale(fn), tuple(f.scale(fn) for f in self.b),
                       self.x0.scale(fn) if self.x0 is not None else None)

    def at(self, p: Point, x0_value: float = 0.0):
        """(A_eff, (B_k,)) matrices at p with x0 folded in at a fixed value."""
        a = self.a(p)
        if self.x0 is not None and x0_value != 0.0:
            a = a + x0_value * self.x0(p)
        return a, tuple(f(p) for f in self.b)


def _add_opt(x, y, dim, d):
    if x is None and y is None:
        return None
    if x is None:
        return y
    if y is None:
        return x
    return x + y


@dataclass
class PointOp:
    """A first-order operator evaluated at one momentum point.

    Carries the x0-linear and x0-quadratic parts separately plus the
    symmetrized second-derivative coefficient norm, so callers can fold at
    any fixed x0 and check that nothing leaks outside first order.
    """

    a: np.ndarray
    b: tuple
    x0_a: np.ndarray
    x0_b: tuple
    x0_sq: np.ndarray
    second_order: float

    def fold(self, x0_value: float):
        a = self.a + x0_value * self.x0_a + x0_value ** 2 * self.x0_sq
        b = tuple(bk + x0_value * xk for bk, xk in zip(self.b, self.x0_b))
        return a, b


def diffop_commutator(g1: DiffOp1, g2: DiffOp1, p: Point) -> PointOp:
    """[g1, g2] at p, normal ordered with derivatives on the right.

    Zeroth order:  [A1,A2] + sum_k (B1k (i dA2/dpk) - B2k (i dA1/dpk))
    First order k: [A1,B2k] - [A2,B1k] + sum_l (B1l (i dB2k/dpl) - B2l (i dB1k/dpl))
    x0 parts are carried linearly; the antisymmetrized second-order
    coefficient is reported as a residual (exactly zero for honest
    first-order algebras).
    """
    if g1.dim != g2.dim or g1.d != g2.d:
        raise ValueError("operator dimension mismatch")
    d = g1.d
    dim = g1.dim
    zero = np.zeros((dim, dim), dtype=complex)

    A1, A2 = g1.a(p), g2.a(p)
    B1 = [f(p) for f in g1.b]
    B2 = [f(p) for f in g2.b]
    dA1 = [g1.a.deriv(p, k) for k in range(d)]
    dA2 = [g2.a.deriv(p, k) for k in range(d)]
    dB1 = [[f.deriv(p, l) for l in range(d)] for f in g1.b]   # dB1[k][l]
    dB2 = [[f.deriv(p, l) for l in range(d)] for f in g2.b]

    a = A1 @ A2 - A2 @ A1
    for k in range(d):
        a = a + 1j * (B1[k] @ dA2[k] - B2[k] @ dA1[k])

    b = []
    for k in range(d):
        bk = (A1 @ B2[k] - B2[k] @ A1) - (A2 @ B1[k] - B1[k] @ A2)
        for l in range(d):
            bk = bk + 1j * (B1[l] @ dB2[k][l] - B2[l] @ dB1[k][l])
        b.append(bk)

    second = 0.0
    for k in range(d):
        for l in range(k, d):
            sym = (B1[k] @ B2[l] - B2[k] @ B1[l]
                   + B1[l] @ B2[k] - B2[l] @ B1[k])
            second = max(second, 0.5 * mat_max(sym))

    if g1.x0 is None and g2.x0 is None:
        x0_a, x0_b, x0_sq = zero, tuple(zero for _ in range(d)), zero
    else:
        zf = OperatorField.zero(dim, d)
        C1f = g1.x0 if g1.x0 is not None else zf
        C2f = g2.x0 if g2.x0 is not None else zf
        C1, C2 = C1f(p), C2f(p)
        dC1 = [C1f.deriv(p, k) for k in range(d)]
        dC2 = [C2f.deriv(p, k) for k in range(d)]
        x0_a = (A1 @ C2 - C2 @ A1) + (C1 @ A2 - A2 @ C1)
        for k in range(d):
            x0_a = x0_a + 1j * (B1[k] @ dC2[k] - B2[k] @ dC1[k])
        x0_b = tuple((B1[k] @ C2 - C2 @ B1[k]) + (C1 @ B2[k] - B2[k] @ C1)
                     for k in range(d))
        x0_sq = C1 @ C2 - C2 @ C1

    return PointOp(a, tuple(b), x0_a, x0_b, x0_sq, second)


def conjugate_by_unitary(u: OperatorField, g: DiffOp1,
                         probe: Sequence[Point] = ()) -> DiffOp1:
    """u^-1 g u for a unitary field u (u^-1 = u^dagger).

    Zeroth part u^-1 A u + sum_k u^-1 B_k (i du/dp_k); derivative
    coefficients u^-1 B_k u; the x0 coefficient conjugates like A.
    """
    for p in probe:
        up = u(p)
        if mat_max(up @ dagger(up) - np.eye(u.dim)) > 1e-8:
            raise ValueError("conjugating field is not unitary at probe point")
    ud = u.adjoint()
    a = ud @ g.a @ u
    for k in range(g.d):
        a = a + ud @ g.b[k] @ u.partial(k).scale(1j)
    b = tuple(ud @ g.b[k] @ u for k in range(g.d))
    x0 = ud @ g.x0 @ u if g.x0 is not None else None
    return DiffOp1(a, b, x0)
