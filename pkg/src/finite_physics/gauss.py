"""Quadratic Gauss sums in F_p: brute force, closed form and place image.

For even ``nu`` with ``2 nu**2 | p - 1`` and ``xi`` of order ``2 nu**2``,

    sum_{0 <= n < nu**2} xi**(n**2) == nu * xi**(nu**2 / 4),

and with ``xi = eps**((p-1)/(2 nu**2))`` the right side is
``nu * omega`` where ``omega = eps**((p-1)/8)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import ModElem, factorize, multiplicative_order
from .errors import InvalidInput
from .parallel import chunk_ranges, ordered_map
from .polar import PlacedSymbol, place_symbol
from .universe import UniverseParams, exp_p

U_SCALE = "U"
V_SCALE = "V"

# numpy int64 path is exact while products of residues stay below 2**63
_NUMPY_P_LIMIT = 1 << 31


@dataclass(frozen=True)
class GaussSumSpec:
    """Scaled sum ``sum_n exp_p(sign * a n**2 / (2 l) * unit)``.

    ``unit`` is ``u`` for ``U_SCALE`` and ``v`` for ``V_SCALE``; ``a``
    must be the square of a rational.  ``sign=+1`` is the orientation
    whose place image is ``1/sqrt(a)`` resp. ``e^{i pi/4}/sqrt(a)``.
    """

    a: Fraction
    scale: str
    params: UniverseParams
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        if self.scale not in (U_SCALE, V_SCALE):
            raise InvalidInput(f"unknown scale {self.scale!r}")
        if self.sign not in (1, -1):
            raise InvalidInput("sign must be +1 or -1")


@dataclass(frozen=True)
class GaussSumReport:
    exact_sum: ModElem
    closed_form: ModElem
    match: bool
    nu: int
    omega: ModElem
    place_image: complex
    sqrt_a: Fraction


def _check_nu(p, nu):
    if nu < 1 or nu % 2:
        raise InvalidInput(f"nu must be a positive even integer, got {nu}")
    if (p - 1) % (2 * nu * nu):
        raise InvalidInput(f"2*nu**2 = {2 * nu * nu} does not divide p-1 = {p - 1}")


def _check_xi_order(p, xi, nu):
    order = 2 * nu * nu
    if xi.modulus != p:
        raise InvalidInput("xi is not an element of F_p")
    if xi.residue == 0 or multiplicative_order(xi, factorize(p - 1)) != order:
        raise InvalidInput(f"xi = {xi.residue} does not have order {order}")


def _power_table(x, length, p):
    """``[x**0, ..., x**(length-1)] mod p`` as int64, built by doubling."""
    table = np.ones(1, dtype=np.int64)
    while table.size < length:
        step = pow(x, int(table.size), p)
        table = np.concatenate([table, table * step % p])
    return table[:length]


def _partial_sum(args):
    p, x, nu, lo, hi = args
    order = 2 * nu * nu
    if p < _NUMPY_P_LIMIT:
        table = _power_table(x, order, p)
        n = np.arange(lo, hi, dtype=np.int64)
        return int(table[(n * n) % order].sum() % p)
    total = 0
    term = pow(x, lo * lo, p)
    inc = pow(x, 2 * lo + 1, p)
    x2 = x * x % p
    for _ in range(lo, hi):
        total += term
        term = term * inc % p
        inc = inc * x2 % p
    return total % p


def gauss_sum_bruteforce(p: int, xi: ModElem, nu: int, workers: int = 1) -> ModElem:
    """``sum_{0 <= n < nu**2} xi**(n**2) mod p`` by direct summation."""
    _check_nu(p, nu)
    _check_xi_order(p, xi, nu)
    jobs = [(p, xi.residue, nu, lo, hi) for lo, hi in chunk_ranges(0, nu * nu)]
    return ModElem(sum(ordered_map(_partial_sum, jobs, workers)) % p, p)


def omega_of(params: UniverseParams) -> ModElem:
    """``eps**((p-1)/8)``, a primitive 8th root of unity."""
    if (params.p - 1) % 8:
        raise InvalidInput("8 does not divide p-1")
    return params.epsilon ** ((params.p - 1) // 8)


def xi_of(params: UniverseParams, nu: int) -> ModElem:
    _check_nu(params.p, nu)
    return params.epsilon ** ((params.p - 1) // (2 * nu * nu))


def gauss_sum_closed_form(params: UniverseParams, nu: int) -> ModElem:
    """``nu * eps**((p-1)/8)`` in F_p."""
    _check_nu(params.p, nu)
    return nu * omega_of(params)


def periodicity_check(p: int, xi: ModElem, nu: int, n: int) -> bool:
    """Whether ``xi**((n + nu**2)**2) == xi**(n**2)``."""
    _check_nu(p, nu)
    _check_xi_order(p, xi, nu)
    return xi ** ((n + nu * nu) ** 2) == xi ** (n * n)


def _exact_sqrt(a: Fraction) -> Fraction:
    if a <= 0:
        raise InvalidInput(f"a must be positive, got {a}")
    d, l = math.isqrt(a.numerator), math.isqrt(a.denominator)
    if d * d != a.numerator or l * l != a.denominator:
        raise InvalidInput(f"a = {a} is not the square of a rational")
    return Fraction(d, l)


def scale_nu(spec: GaussSumSpec) -> int:
    """Period root ``nu = mu iota / sqrt(a)`` (U) or ``mu / sqrt(a)`` (V).

    Raises :class:`InvalidInput` naming the missing divisibility.
    """
    params = spec.params
    root = _exact_sqrt(spec.a)
    base = params.mu * params.iota if spec.scale == U_SCALE else params.mu
    nu = base / root
    if nu.denominator != 1:
        raise InvalidInput(f"nu = {nu} is not an integer for a = {spec.a}, "
                           f"scale {spec.scale}")
    nu = nu.numerator
    if nu % 2:
        raise InvalidInput(f"nu = {nu} is odd for a = {spec.a}, scale {spec.scale}")
    if (params.p - 1) % (2 * nu * nu):
        raise InvalidInput(f"2*nu**2 = {2 * nu * nu} does not divide p-1 = "
                           f"{params.p - 1} for a = {spec.a}, scale {spec.scale}")
    return nu


def scaled_gauss_sum(spec: GaussSumSpec, workers: int = 1) -> GaussSumReport:
    """Exact sum over one period, closed form, and normalized place image.

    The summand step ``a/(2l) * unit`` equals ``(p-1)/(2 nu**2)`` so the
    sum is the quadratic Gauss sum of ``xi = exp_p(sign * that step)``.
    """
    params = spec.params
    nu = scale_nu(spec)
    root = _exact_sqrt(spec.a)
    unit = params.u if spec.scale == U_SCALE else params.v
    step = spec.a * unit / (2 * params.l)
    assert step == Fraction(params.p - 1, 2 * nu * nu)
    xi = exp_p(params, params.uelem(spec.sign * step.numerator))
    exact = gauss_sum_bruteforce(params.p, xi, nu, workers)

    omega = omega_of(params)
    omega_s = omega if spec.sign == 1 else omega.inverse()
    lm_omega = place_symbol(PlacedSymbol("omega"))
    if spec.sign == -1:
        lm_omega = 1 / lm_omega
    # 1/sqrt(a) = l'/d as an element of F_p
    inv_root = ModElem.of(root.denominator, params.p) * ModElem.of(root.numerator, params.p).inverse()
    # the 1/mu normalization cancels the explicit mu before placing
    if spec.scale == U_SCALE:
        closed = params.mu * params.iota * omega_s * inv_root
        image = place_symbol(PlacedSymbol("iota")) * lm_omega / float(root)
    else:
        closed = params.mu * omega_s * inv_root
        image = lm_omega / float(root)
    return GaussSumReport(exact_sum=exact, closed_form=closed, match=exact == closed,
                          nu=nu, omega=omega, place_image=complex(image), sqrt_a=root)


def admissible_nus(p: int) -> list:
    """All even ``nu`` with ``2 nu**2 | p - 1``, ascending."""
    if (p - 1) % 2:
        return []
    half = (p - 1) // 2
    root = math.prod(q ** (e // 2) for q, e in factorize(half).items())
    return [d for d in range(2, root + 1, 2) if root % d == 0]
