"""Rational polar coordinates on U and the computable part of the place.

A :class:`PolarElem` names the group element ``alpha*u + beta*v`` by its
exact rational coordinates.  The limit maps are only evaluated on such
symbolically presented elements; there is no discrete logarithm here.

Two sign conventions coexist and are kept apart on purpose:

* coordinates: ``lm_U(alpha u + beta v) = -pi alpha - i pi beta``;
* named symbols: ``eps**((p-1) q) -> exp(-2 pi i q)`` and
  ``eps**((p-1) r / i) -> exp(-2 pi r)``, while ``omega = eps**((p-1)/8)``
  is sent to ``exp(+i pi/4)`` so that ``iota * omega -> 1``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput
from .universe import UElem, UniverseParams


class PointAtInfinity:
    """The point added to C by the compactification."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (PointAtInfinity, ())


INFINITY = PointAtInfinity()

# ``complex`` or ``INFINITY``
ComplexExtended = "complex | PointAtInfinity"


@dataclass(frozen=True)
class PolarElem:
    alpha: Fraction
    beta: Fraction
    params: UniverseParams

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))

    def __add__(self, other):
        if other.params != self.params:
            raise InvalidInput("polar elements from different universes")
        return PolarElem(self.alpha + other.alpha, self.beta + other.beta, self.params)

    def __neg__(self):
        return PolarElem(-self.alpha, -self.beta, self.params)

    @property
    def is_integral(self):
        return ((self.alpha * self.params.u).denominator == 1
                and (self.beta * self.params.v).denominator == 1)


@dataclass(frozen=True)
class PlacedSymbol:
    """A named element whose place value is known.

    ``tag`` is one of ``mu``, ``iota``, ``i_sym``, ``omega``,
    ``root_of_unity`` (``eps**((p-1) q)``) and ``radial``
    (``eps**((p-1) r / i)``); ``value`` carries ``q`` or ``r``.
    """

    tag: str
    value: Fraction | None = None

    def __post_init__(self):
        if self.tag not in _SYMBOL_TAGS:
            raise InvalidInput(f"unknown symbol tag {self.tag!r}")
        if self.tag in ("root_of_unity", "radial"):
            if self.value is None:
                raise InvalidInput(f"{self.tag} needs a rational value")
            object.__setattr__(self, "value", Fraction(self.value))


_SYMBOL_TAGS = ("mu", "iota", "i_sym", "omega", "root_of_unity", "radial")


def to_uelem(x: PolarElem) -> UElem:
    """The group element ``alpha*u + beta*v``."""
    a = x.alpha * x.params.u
    b = x.beta * x.params.v
    if a.denominator != 1 or b.denominator != 1:
        raise InvalidInput(f"alpha*u = {a} and beta*v = {b} must be integers")
    return x.params.uelem(a.numerator + b.numerator)


def lm_U(x: PolarElem) -> complex:
    """Standard part of the coordinates, scaled: ``-pi alpha - i pi beta``."""
    return complex(-math.pi * float(x.alpha), -math.pi * float(x.beta))


def _polar_image(alpha, beta, shift=0.0):
    # modulus and angle evaluated separately from cmath.exp on purpose
    r = math.exp(-math.pi * float(alpha) - shift)
    t = math.pi * float(beta)
    return complex(r * math.cos(t), -r * math.sin(t))


def lm_F_polar(x: PolarElem) -> complex:
    """Image of ``exp_p(alpha u + beta v)``: ``e^{-pi alpha} e^{-i pi beta}``."""
    return _polar_image(x.alpha, x.beta)


def place_symbol(s: PlacedSymbol):
    """Place value of a named element; ``mu`` goes to :data:`INFINITY`."""
    if s.tag == "mu":
        return INFINITY
    if s.tag == "iota":
        return cmath.exp(-1j * math.pi / 4)
    if s.tag == "i_sym":
        return cmath.exp(-1j * math.pi / 2)
    if s.tag == "omega":
        return cmath.exp(1j * math.pi / 4)
    if s.tag == "root_of_unity":
        return cmath.exp(-2j * math.pi * float(s.value))
    return complex(math.exp(-2 * math.pi * float(s.value)), 0.0)


def commutation_residual(x: PolarElem) -> float:
    """Floating-point gap between ``exp(lm_U(x))`` and ``lm_F_polar(x)``.

    When the modulus exceeds 1 both sides are divided by it first, so
    the value is an absolute error on the unit disc and a relative one
    outside it; that keeps ``alpha`` down to -10**3 representable.
    """
    z = lm_U(x)
    shift = max(0.0, z.real)
    lhs = cmath.exp(complex(z.real - shift, z.imag))
    rhs = _polar_image(x.alpha, x.beta, shift)
    return abs(lhs - rhs)
