"""Truncated Riemann sums of the quadratic-exponent family and their oracles.

Real scale:      (1/mu) sum_{|n| <= l mu} exp(-a pi (n/mu)**2)
Imaginary scale: (1/mu) sum_{|n| <= l mu} exp(-i a pi (n/mu)**2)

The first tends to ``1/sqrt(a)`` and the second to
``exp(-i pi/4)/sqrt(a)``; the finite-field side is oriented the other
way (``exp(+i pi/4)/sqrt(a)``), so comparisons across the two go
through complex conjugation and say so in the report.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from .errors import InvalidInput
from .gauss import U_SCALE, V_SCALE, GaussSumSpec, scaled_gauss_sum
from .parallel import chunk_ranges, ordered_map
from .universe import UniverseParams

CSV_COLUMNS = ("mu", "l", "re_sum", "im_sum", "re_oracle", "im_oracle",
               "abs_error", "arg_sum")

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)


@dataclass(frozen=True)
class TruncatedSumSpec:
    a: Fraction
    l_cut: int
    mesh_mu: int
    scale: str = U_SCALE

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        if self.a <= 0:
            raise InvalidInput("a must be positive")
        if self.l_cut < 1 or self.mesh_mu < 1:
            raise InvalidInput("l_cut and mesh_mu must be >= 1")
        if self.scale not in (U_SCALE, V_SCALE):
            raise InvalidInput(f"unknown scale {self.scale!r}")


@dataclass(frozen=True)
class ConvergenceRow:
    mesh_mu: int
    l_cut: int
    sum_value: complex
    oracle_value: complex
    abs_error: float


@dataclass(frozen=True)
class TailReport:
    full_image: complex
    truncated: complex
    tail_estimate: float
    conjugated: bool
    l_cut: int
    mesh_mu: int


def _terms(args):
    a, mu, scale, lo, hi = args
    x = np.arange(lo, hi, dtype=np.float64) / mu
    phase = a * math.pi * x * x
    if scale == U_SCALE:
        return np.exp(-phase), None
    return np.cos(phase), -np.sin(phase)


def truncated_sum(spec: TruncatedSumSpec, workers: int = 1) -> complex:
    """``(1/mu) sum_{|n| <= l mu}`` of the real- or imaginary-scale term.

    Terms are summed with :func:`math.fsum` (correctly rounded), so the
    value does not depend on chunking or on the worker count.
    """
    half = spec.l_cut * spec.mesh_mu
    jobs = [(float(spec.a), spec.mesh_mu, spec.scale, lo, hi)
            for lo, hi in chunk_ranges(-half, half + 1)]
    parts = ordered_map(_terms, jobs, workers)
    re = math.fsum(np.concatenate([r for r, _ in parts]))
    im = 0.0 if spec.scale == U_SCALE else math.fsum(np.concatenate([i for _, i in parts]))
    return complex(re, im) / spec.mesh_mu


def gaussian_oracle(a, l) -> float:
    """Adaptive quadrature of ``exp(-a pi x**2)`` over ``[-l, l]``."""
    a = float(a)
    if a <= 0:
        raise InvalidInput("a must be positive")
    if l <= 0:
        return 0.0
    f = lambda x: math.exp(-a * math.pi * x * x)  # noqa: E731
    # beyond this point the integrand is below 1e-20
    knee = min(float(l), math.sqrt(46.0 / (a * math.pi)))
    total = integrate.quad(f, 0.0, knee, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
    if l > knee:
        total += integrate.quad(f, knee, float(l), epsabs=1e-15, limit=200)[0]
    return 2.0 * total


def fresnel_oracle(a, l) -> complex:
    """``int_{-l}^{l} exp(-i a pi x**2) dx`` by composite Gauss-Legendre.

    Panels end where the phase crosses a multiple of pi, so each panel
    holds at most half an oscillation and 20 nodes are far more than
    enough.
    """
    a = float(a)
    if a <= 0:
        raise InvalidInput("a must be positive")
    if l <= 0:
        return 0j
    kmax = math.floor(a * l * l)
    edges = np.sqrt(np.arange(kmax + 1, dtype=np.float64) / a)
    edges = np.append(edges[edges < l], float(l))
    lo, hi = edges[:-1], edges[1:]
    mid, rad = (hi + lo) / 2, (hi - lo) / 2
    x = mid[:, None] + rad[:, None] * _GL_NODES[None, :]
    phase = a * math.pi * x * x
    w = rad[:, None] * _GL_WEIGHTS[None, :]
    re = math.fsum((w * np.cos(phase)).ravel())
    im = -math.fsum((w * np.sin(phase)).ravel())
    return 2.0 * complex(re, im)


def oracle(a, l, scale) -> complex:
    return complex(gaussian_oracle(a, l)) if scale == U_SCALE else fresnel_oracle(a, l)


def convergence_study(a, scale, l, mu_list, workers: int = 1) -> list:
    """Truncated sums against the matching oracle for each mesh in ``mu_list``."""
    mu_list = list(mu_list)
    if not mu_list or any(b <= c for c, b in zip(mu_list, mu_list[1:])):
        raise InvalidInput("mu_list must be nonempty and strictly ascending")
    target = oracle(a, l, scale)
    rows = []
    for mu in mu_list:
        value = truncated_sum(TruncatedSumSpec(a, l, mu, scale), workers)
        rows.append(ConvergenceRow(mu, l, value, target, abs(value - target)))
    return rows


def errors_nonincreasing(rows, slack=2.0) -> bool:
    """True if every error is at most ``slack`` times the previous one."""
    return all(b.abs_error <= slack * c.abs_error for c, b in zip(rows, rows[1:]))


def write_convergence_csv(rows, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([r.mesh_mu, r.l_cut, repr(r.sum_value.real), repr(r.sum_value.imag),
                         repr(r.oracle_value.real), repr(r.oracle_value.imag),
                         repr(r.abs_error), repr(cmath.phase(r.sum_value))])


def read_convergence_csv(stream) -> list:
    rows = []
    for rec in csv.DictReader(stream):
        rows.append(ConvergenceRow(
            int(rec["mu"]), int(rec["l"]),
            complex(float(rec["re_sum"]), float(rec["im_sum"])),
            complex(float(rec["re_oracle"]), float(rec["im_oracle"])),
            float(rec["abs_error"])))
    return rows


def tail_cancellation_report(params: UniverseParams, a, scale, l=3, mu=10**4,
                             workers: int = 1) -> TailReport:
    """Distance between the full finite-field image and a truncated numeric sum.

    On the imaginary scale the numeric sum is conjugated before the
    comparison (``conjugated=True``).  ``l = 0`` is the empty domain.
    """
    report = scaled_gauss_sum(GaussSumSpec(a, scale, params), workers)
    full = report.place_image
    if l == 0:
        truncated = 0j
    else:
        truncated = truncated_sum(TruncatedSumSpec(a, l, mu, scale), workers)
    conj = scale == V_SCALE
    compared = truncated.conjugate() if conj else truncated
    return TailReport(full, truncated, abs(full - compared), conj, l, mu)


def wick_rotation_check(a, l, mu) -> float:
    """Max over ``|n| <= l mu`` of ``|term_V(n) - exp(i log term_U(n))|``."""
    if a <= 0:
        raise InvalidInput("a must be positive")
    if l < 0 or mu < 1:
        raise InvalidInput("need l >= 0 and mu >= 1")
    x = np.arange(-l * mu, l * mu + 1, dtype=np.float64) / mu
    phase = float(a) * math.pi * x * x
    term_u = np.exp(-phase)
    if np.any(term_u == 0.0):
        raise InvalidInput("real-scale term underflows; shrink a*l**2")
    term_v = np.cos(phase) - 1j * np.sin(phase)
    rotated = np.exp(1j * np.log(term_u))
    return float(np.max(np.abs(term_v - rotated)))
