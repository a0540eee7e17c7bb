"""Forward-mode dual scalars for exact derivatives of momentum coefficient functions."""

import cmath
import math


class Dual:
    """A scalar carrying a first derivative along one real direction.

    Both components may themselves be ``Dual``, so nested evaluation yields
    exact second derivatives.  Only the operations the field catalog needs
    are implemented.
    """

    __slots__ = ("val", "eps")

    def __init__(self, val, eps=0.0):
        self.val = val
        self.eps = eps

    def __repr__(self):
        return f"Dual({self.val!r}, {self.eps!r})"

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val + other.val, self.eps + other.eps)
        return Dual(self.val + other, self.eps)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.val, -self.eps)

    def __sub__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val - other.val, self.eps - other.eps)
        return Dual(self.val - other, self.eps)

    def __rsub__(self, other):
        return Dual(other - self.val, -self.eps)

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val * other.val,
                        self.val * other.eps + self.eps * other.val)
        return Dual(self.val * other, self.eps * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val / other.val,
                        (self.eps * other.val - self.val * other.eps)
                        / (other.val * other.val))
        return Dual(self.val / other, self.eps / other)

    def __rtruediv__(self, other):
        # other is a plain scalar: d(c/x) = -c x'/x^2
        return Dual(other / self.val,
                    -other * self.eps / (self.val * self.val))


def value(x):
    """Strip all dual layers, returning the underlying plain scalar."""
    while isinstance(x, Dual):
        x = x.val
    return x


def eps(x):
    """First-derivative part of a possibly-plain scalar (0 for constants)."""
    return x.eps if isinstance(x, Dual) else 0.0


def seed(p, k):
    """Momentum components with a unit derivative seed on axis ``k``."""
    return tuple(Dual(c, 1.0 if j == k else 0.0) for j, c in enumerate(p))


def sqrt(x):
    if isinstance(x, Dual):
        s = sqrt(x.val)
        return Dual(s, x.eps / (2.0 * s))
    if isinstance(x, complex):
        return cmath.sqrt(x)
    return math.sqrt(x)


def atan(x):
    if isinstance(x, Dual):
        return Dual(atan(x.val), x.eps / (1.0 + x.val * x.val))
    return math.atan(x)


def sign(x):
    """Sign of the (real) value; derivative-free, undefined at 0 by contract."""
    v = value(x)
    if isinstance(v, complex):
        v = v.real
    if v == 0:
        raise ValueError("singular point: sign of zero")
    return 1.0 if v > 0 else -1.0


def absval(x):
    """|x| for real scalars, with derivative sign(x) away from the origin."""
    return x * sign(x)


def conj(x):
    if isinstance(x, Dual):
        return Dual(conj(x.val), conj(x.eps))
    return x.conjugate()
