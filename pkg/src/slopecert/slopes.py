"""Exact slope calculus on a torus.

Once a basis of H_1(T; Z) = Z^2 is fixed, a *slope* on the torus T is an
unordered pair {x, -x} of primitive classes, i.e. the homology trace of
an essential simple closed curve.  Classes on a given torus are always
written in a fixed reference basis (E1, E2) for that torus; the
canonical representative (a, b) of a slope has b > 0, or b = 0 and
a = 1.

A *framing* is an ordered basis (mu, lambda) of H_1(T; Z) whose first
member is the meridian class of a knot.  Framings are never
canonicalized: the actual signs of mu and lambda matter.  The ``sign``
field of a Framing records the intersection number lambda . mu in the
orientation the torus carries; it cannot be derived from the coordinates
alone because the reference basis does not by itself orient the torus.
Slope-level computations in this module never consult ``sign``; it is
carried for the homology models, which do.

The numerical slope of <a*mu + b*lambda> relative to a framing is the
exact rational -a/b, with the meridian itself taking the distinguished
value INF.  INF is an atom of its own type, never the fraction 1/0, and
supports no arithmetic.  Changing the framing acts on numerical values
by an affine map s -> epsilon*s + h with epsilon = +-1 and h an integer;
framing_change() computes that map.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union


class _Infinity:
    """The numerical slope of the meridian.  A unique atom, no arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"


INF = _Infinity()

# A numerical slope: an exact rational, or INF for the meridian.
ExtendedRational = Union[Fraction, _Infinity]


@dataclass(frozen=True)
class PrimitiveClass:
    """A primitive element of H_1(T; Z), written in the reference basis."""

    a: int
    b: int

    def __post_init__(self):
        if not (isinstance(self.a, int) and isinstance(self.b, int)):
            raise TypeError("coordinates must be integers")
        if gcd(self.a, self.b) != 1:
            raise ValueError(
                "not a primitive class: gcd(%d, %d) != 1" % (self.a, self.b)
            )

    def __neg__(self):
        return PrimitiveClass(-self.a, -self.b)


@dataclass(frozen=True)
class Slope:
    """An unoriented isotopy class of essential curves: {rep, -rep}.

    The stored representative is canonical (b > 0, or b = 0 and a = 1),
    so equality of slopes is equality of dataclasses.  Construct via
    canonical_slope() unless the input pair is already canonical.
    """

    rep: PrimitiveClass

    def __post_init__(self):
        r = self.rep
        if not (r.b > 0 or (r.b == 0 and r.a == 1)):
            raise ValueError("representative (%d, %d) is not canonical" % (r.a, r.b))

    @property
    def a(self):
        return self.rep.a

    @property
    def b(self):
        return self.rep.b

    def __repr__(self):
        return "Slope(%d, %d)" % (self.rep.a, self.rep.b)


def canonical_slope(a, b):
    """The slope <a*E1 + b*E2>, reduced and sign-normalized.

    The input pair need not be primitive; it is divided by its gcd.  The
    zero pair is rejected: it is not the class of a curve.
    """
    if not (isinstance(a, int) and isinstance(b, int)):
        raise TypeError("coordinates must be integers")
    g = gcd(a, b)
    if g == 0:
        raise ValueError("not a homology class of a curve")
    a, b = a // g, b // g
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    return Slope(PrimitiveClass(a, b))


@dataclass(frozen=True)
class Framing:
    """An ordered basis (mu, lambda_) of H_1(T; Z), mu the meridian class.

    ``sign`` is the intersection number lambda . mu on the oriented
    torus, either +1 or -1.
    """

    mu: PrimitiveClass
    lambda_: PrimitiveClass
    sign: int

    def __post_init__(self):
        d = self.mu.a * self.lambda_.b - self.mu.b * self.lambda_.a
        if d not in (1, -1):
            raise ValueError("not a basis: det(mu, lambda) = %d" % d)
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1, got %r" % (self.sign,))

    @property
    def det(self):
        """det of the (mu, lambda) column matrix in reference coordinates."""
        return self.mu.a * self.lambda_.b - self.mu.b * self.lambda_.a

    def meridian_slope(self):
        return canonical_slope(self.mu.a, self.mu.b)


def _in_basis(f, x):
    """Coordinates (a, b) of the class x with x = a*mu + b*lambda_.

    Exact integer Cramer solve; the framing matrix has det +-1.
    """
    d = f.det
    a = (x.a * f.lambda_.b - f.lambda_.a * x.b) * d
    b = (f.mu.a * x.b - x.a * f.mu.b) * d
    return a, b


def numerical_slope(f, s):
    """The value -a/b of the slope s = <a*mu + b*lambda> in the framing f.

    Returns INF exactly when s is the meridian slope.  The value does
    not depend on the choice of representative of s.
    """
    a, b = _in_basis(f, s.rep)
    if b == 0:
        return INF
    return Fraction(-a, b)


def slope_from_numerical(f, r):
    """The slope with numerical value r in the framing f.

    Inverse of numerical_slope for every framing: r = -a/b in lowest
    terms maps to <a*mu + b*lambda>, and INF maps to the meridian slope.
    """
    if r is INF:
        return canonical_slope(f.mu.a, f.mu.b)
    r = Fraction(r)
    a, b = -r.numerator, r.denominator
    return canonical_slope(
        a * f.mu.a + b * f.lambda_.a,
        a * f.mu.b + b * f.lambda_.b,
    )


def geometric_intersection(s, t):
    """Minimal geometric intersection number of two slopes: |a1*b2 - a2*b1|."""
    return abs(s.a * t.b - t.a * s.b)


@dataclass(frozen=True)
class FramingChange:
    """The affine map s -> epsilon*s + h on numerical slopes.

    Composition of framing changes composes these maps, and they form a
    group: FramingChange(eps, h) has inverse FramingChange(eps, -eps*h).
    """

    epsilon: int
    h: int

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        if not isinstance(self.h, int):
            raise TypeError("h must be an integer")

    def apply(self, r):
        """Apply to a numerical slope; INF is a fixed point."""
        if r is INF:
            return INF
        return self.epsilon * Fraction(r) + self.h

    def compose(self, inner):
        """self after inner, as affine maps."""
        return FramingChange(
            self.epsilon * inner.epsilon,
            self.epsilon * inner.h + self.h,
        )

    def inverse(self):
        return FramingChange(self.epsilon, -self.epsilon * self.h)


def framing_change(f1, f2):
    """The affine map taking f1-values to f2-values of every slope.

    Both framings must frame the same knot on the same torus, i.e. have
    equal meridian slopes.  Writing mu2 = e*mu1 and
    lambda2 = c*mu1 + w*lambda1 (with e, w = +-1), the change of basis
    sends the f1-value s of a slope to e*w*s + e*c, and that pair
    (epsilon, h) = (e*w, e*c) is returned.
    """
    if f1.meridian_slope() != f2.meridian_slope():
        raise ValueError("meridian slopes differ")
    e, z = _in_basis(f1, f2.mu)
    assert z == 0  # guaranteed: the meridian slopes agree
    c, w = _in_basis(f1, f2.lambda_)
    assert w in (1, -1)  # guaranteed: (mu2, lambda2) is a basis
    return FramingChange(e * w, e * c)
