"""Grand partition polynomials of small 1D models and their zeros.

Coefficients are exact.  Interacting models have rational weights; the
polynomial is stored cleared by the common denominator ``D`` (recorded
on the :class:`PartitionPoly`), so ``coeffs[0] == D`` and the physical
polynomial is ``coeffs / D``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import factorize, is_prime
from .errors import InvalidInput, NoSolution, ResourceLimit

FREE = "FREE"
LATTICE_GAS_1D = "LATTICE_GAS_1D"
ISING_1D = "ISING_1D"
OPEN = "OPEN"
PERIODIC = "PERIODIC"

MAX_SITES = 30
MAX_SCAN_PRIME = 10**7


@dataclass(frozen=True)
class ModelSpec:
    """``coupling`` is the weight of an occupied adjacent pair (lattice gas)
    or the inverse weight of a disagreeing adjacent pair (Ising)."""

    kind: str
    N: int
    coupling: Fraction = Fraction(1)
    boundary: str = OPEN

    def __post_init__(self):
        object.__setattr__(self, "coupling", Fraction(self.coupling))
        if self.kind not in (FREE, LATTICE_GAS_1D, ISING_1D):
            raise InvalidInput(f"unknown model kind {self.kind!r}")
        if self.boundary not in (OPEN, PERIODIC):
            raise InvalidInput(f"unknown boundary {self.boundary!r}")
        if self.N < 1:
            raise InvalidInput("N must be >= 1")
        if self.coupling <= 0:
            raise InvalidInput("coupling must be positive")

    def bonds(self):
        if self.boundary == OPEN:
            return [(j, j + 1) for j in range(self.N - 1)]
        return [(j, (j + 1) % self.N) for j in range(self.N)]

    def bond_weight(self, s, t):
        if self.kind == LATTICE_GAS_1D:
            return self.coupling if s and t else Fraction(1)
        if self.kind == ISING_1D:
            return 1 / self.coupling if s != t else Fraction(1)
        return Fraction(1)


@dataclass(frozen=True)
class PartitionPoly:
    coeffs: tuple
    denominator: int = 1
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if any(c < 0 for c in self.coeffs):
            raise InvalidInput("coefficients must be non-negative")

    @property
    def degree(self):
        nz = [k for k, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else -1

    def at_one(self):
        return sum(self.coeffs)


@dataclass(frozen=True)
class ZeroSet:
    zeros: tuple
    max_residual: float


@dataclass(frozen=True)
class CircleReport:
    on_circle: bool
    max_deviation: float
    min_distance_to_one: float


@dataclass(frozen=True)
class BoundsReport:
    N: int
    p: int
    upper_ok: bool
    lower_ok: bool

    @property
    def consistent(self):
        return self.upper_ok == self.lower_ok


def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)]


def _transfer_coeffs(model):
    """Rational coefficients by transfer matrix over the last site's state."""
    n = model.N
    if model.kind == FREE:
        return [Fraction(math.comb(n, k)) for k in range(n + 1)]
    w = model.bond_weight
    site = {0: [Fraction(1)], 1: [Fraction(0), Fraction(1)]}
    periodic = model.boundary == PERIODIC
    total = [Fraction(0)]
    for first in ((0, 1) if periodic else (None,)):
        vec = {s: list(site[s]) for s in ((0, 1) if first is None else (first,))}
        for _ in range(n - 1):
            nxt = {}
            for t in (0, 1):
                acc = [Fraction(0)]
                for s, poly in vec.items():
                    wt = w(s, t)
                    shifted = ([Fraction(0)] + poly) if t else poly
                    acc = _padd(acc, [wt * c for c in shifted])
                nxt[t] = acc
            vec = nxt
        for s, poly in vec.items():
            wt = w(s, first) if periodic else Fraction(1)
            total = _padd(total, [wt * c for c in poly])
    total += [Fraction(0)] * (n + 1 - len(total))
    return total[:n + 1]


def enumerate_coeffs(model: ModelSpec) -> list:
    """Rational coefficients by summing over all ``2**N`` configurations."""
    if model.N > 20:
        raise ResourceLimit("brute-force enumeration is limited to N <= 20")
    bonds = model.bonds()
    out = [Fraction(0)] * (model.N + 1)
    for mask in range(1 << model.N):
        wt = Fraction(1)
        for j, k in bonds:
            wt *= model.bond_weight((mask >> j) & 1, (mask >> k) & 1)
        out[bin(mask).count("1")] += wt
    return out


def _clear(coeffs, note=""):
    den = math.lcm(*(c.denominator for c in coeffs))
    return PartitionPoly(tuple(int(c * den) for c in coeffs), den, note)


def grand_partition(model: ModelSpec) -> PartitionPoly:
    """Exact grand partition polynomial in the activity ``y``."""
    if model.N > MAX_SITES:
        raise ResourceLimit(f"N = {model.N} exceeds {MAX_SITES}")
    note = "" if model.kind == FREE else "coefficients cleared by the common denominator"
    return _clear(_transfer_coeffs(model), note)


def lee_yang_normalized(model: ModelSpec) -> PartitionPoly:
    """Lattice gas in the rescaled activity ``z = coupling * y``.

    On a ring every occupied site has two bonds, so rescaling makes the
    full-occupancy weight equal to the empty one and turns the gas into
    an Ising ferromagnet with weight ``coupling**(-1/2)`` per
    disagreeing bond.  For ``coupling >= 1`` all zeros lie on ``|z| = 1``.
    Ising models are already in this form and are returned unchanged.
    """
    if model.N > MAX_SITES:
        raise ResourceLimit(f"N = {model.N} exceeds {MAX_SITES}")
    if model.kind == ISING_1D:
        return grand_partition(model)
    if model.kind != LATTICE_GAS_1D or model.boundary != PERIODIC:
        raise InvalidInput("the normalization needs a periodic lattice gas")
    raw = _transfer_coeffs(model)
    c = model.coupling
    return _clear([q / c**n for n, q in enumerate(raw)],
                  f"activity rescaled by {c}; cleared by the common denominator")


# exact polynomial helpers over Q; coefficient lists ascending

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a, b):
    a, b = _trim(a), _trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        q[k] = f
        for j, c in enumerate(b):
            a[j + k] -= f * c
        a = _trim(a)
    return _trim(q), a


def _pgcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return [c / a[-1] for c in a]


def _pderiv(a):
    return _trim([k * a[k] for k in range(1, len(a))])


def _psub(a, b):
    return _trim(_padd(a, [-c for c in b]))


def squarefree_parts(coeffs) -> list:
    """Yun's algorithm: ``[(factor, multiplicity), ...]`` over Q."""
    f = _trim([Fraction(c) for c in coeffs])
    df = _pderiv(f)
    g = _pgcd(f, df)
    c = _pdivmod(f, g)[0]
    d = _psub(_pdivmod(df, g)[0], _pderiv(c))
    out, k = [], 1
    while len(c) > 1:
        a = _pgcd(c, d)
        if len(a) > 1:
            out.append((a, k))
        c = _pdivmod(c, a)[0]
        d = _psub(_pdivmod(d, a)[0], _pderiv(c))
        k += 1
    return out


def _companion_roots(monic):
    """Eigenvalues of the companion matrix of an ascending monic polynomial."""
    n = len(monic) - 1
    if n == 1:
        return np.array([-float(monic[0])], dtype=complex)
    comp = np.zeros((n, n))
    comp[1:, :-1] = np.eye(n - 1)
    comp[:, -1] = [-float(c) for c in monic[:-1]]
    return np.linalg.eigvals(comp).astype(complex)


def _horner(coeffs, z):
    acc, dacc = 0j, 0j
    for c in reversed(coeffs):
        dacc = dacc * z + acc
        acc = acc * z + c
    return acc, dacc


def _relative_residual(coeffs, z):
    scale = sum(abs(float(c)) * abs(z) ** k for k, c in enumerate(coeffs))
    return abs(_horner([float(c) for c in coeffs], z)[0]) / scale


def partition_zeros(poly: PartitionPoly) -> ZeroSet:
    """All complex zeros with multiplicity.

    The polynomial is split exactly into square-free parts first; each
    part's roots come from its companion matrix followed by one Newton
    step (kept only when it lowers the residual).
    """
    coeffs = _trim(poly.coeffs)
    if not coeffs:
        raise InvalidInput("zero polynomial")
    if len(coeffs) < 2:
        raise InvalidInput("polynomial has degree 0")
    zeros, worst = [], 0.0
    for part, mult in squarefree_parts(coeffs):
        part_f = [float(c) for c in part]
        for z in _companion_roots(part):
            val, dval = _horner(part_f, z)
            if dval != 0:
                polished = z - val / dval
                if abs(_horner(part_f, polished)[0]) < abs(val):
                    z = polished
            z = complex(z)
            worst = max(worst, _relative_residual(coeffs, z))
            zeros.extend([z] * mult)
    zeros.sort(key=lambda z: (round(np.angle(z), 12), abs(z)))
    return ZeroSet(tuple(zeros), worst)


def circle_check(zeros: ZeroSet, tol: float = 1e-9) -> CircleReport:
    zs = np.asarray(zeros.zeros, dtype=complex)
    if zs.size == 0:
        return CircleReport(True, 0.0, math.inf)
    dev = float(np.max(np.abs(np.abs(zs) - 1.0)))
    return CircleReport(dev <= tol, dev, float(np.min(np.abs(zs - 1.0))))


def crit_mod_p(poly: PartitionPoly, p: int) -> list:
    """Every ``y`` in ``F_p`` with ``P(y) = 0 mod p``, by Horner over all of F_p.

    The cleared integer polynomial is scanned; for ``p`` not dividing
    the recorded denominator its roots are those of the physical one.
    """
    if p < 2 or not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if p > MAX_SCAN_PRIME:
        raise ResourceLimit(f"exhaustive scan limited to p <= {MAX_SCAN_PRIME}")
    y = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(poly.coeffs):
        acc = (acc * y + c % p) % p
    return [int(r) for r in np.flatnonzero(acc == 0)]


def crit_prime_search(poly: PartitionPoly) -> list:
    """Primes ``p`` with ``P(1) = 0 mod p``, i.e. the prime divisors of ``P(1)``."""
    total = poly.at_one()
    if total <= 1:
        raise NoSolution(f"P(1) = {total} has no prime divisor", "P(1) >= 2")
    return list(factorize(total))


def bounds_report(N: int, p: int) -> BoundsReport:
    """``p < 2**N`` against ``N > log2 p``, both evaluated exactly."""
    upper = p < (1 << N)
    # log2 p lies in [b-1, b) for b = bit_length, so N > log2 p iff N >= b
    lower = N >= p.bit_length()
    return BoundsReport(N, p, upper, lower)


def model_record(model, poly, zeros=None, primes=None, circle=None) -> dict:
    """JSON-ready record; integers as decimal strings, zeros as [re, im]."""
    rec = {
        "model": {"kind": model.kind, "N": model.N, "coupling": str(model.coupling),
                  "boundary": model.boundary},
        "coeffs": [str(c) for c in poly.coeffs],
        "denominator": str(poly.denominator),
        "note": poly.note,
        "P_at_1": str(poly.at_one()),
    }
    if zeros is not None:
        rec["zeros"] = [[z.real, z.imag] for z in zeros.zeros]
        rec["max_residual"] = zeros.max_residual
    if circle is not None:
        rec["circle"] = {"on_circle": circle.on_circle,
                         "max_deviation": circle.max_deviation,
                         "min_distance_to_one": circle.min_distance_to_one}
    if primes is not None:
        rec["primes"] = [str(q) for q in primes]
    return rec
