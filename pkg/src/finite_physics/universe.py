"""Admissible parameter tuples and the two-sorted structure (U, F_p).

A universe is a prime ``p`` together with a highly divisible square
``l = mu**2``, a square ``i = iota**2`` with ``i*l | p - 1``, a canonical
primitive root ``epsilon`` and the two length units ``u = (p-1)/i`` and
``v = p - 1``.  The additive sort is ``U = Z/((p-1) l)`` and
``exp_p(n) = epsilon**n`` maps it onto ``F_p^*``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arith import ModElem, factorize, find_primitive_root, is_prime
from .errors import InvalidInput, NoSolution
from .parallel import chunk_ranges, ordered_map

MODE_A = "A"  # i**2 + 1 == p
MODE_B = "B"  # i >= l**K, no algebraic relation imposed

INDEPENDENCE_NOTE = "not applicable (finite model)"


@dataclass(frozen=True)
class UniverseParams:
    p: int
    l: int
    i: int
    mu: int
    iota: int
    epsilon: ModElem
    u: int
    v: int
    mode: str
    B: int
    K: int

    @property
    def order(self):
        """Order ``(p - 1) * l`` of the additive sort U."""
        return (self.p - 1) * self.l

    @property
    def independence(self):
        """Status of the algebraic-independence alternative for ``i, l``."""
        return "i**2 + 1 == p" if self.mode == MODE_A else INDEPENDENCE_NOTE

    def uelem(self, n):
        return UElem(n % self.order, self.order)

    def to_record(self):
        """JSON-ready dict; every integer is a decimal string."""
        return {
            "p": str(self.p), "l": str(self.l), "i": str(self.i),
            "mu": str(self.mu), "iota": str(self.iota),
            "epsilon": str(self.epsilon.residue),
            "u": str(self.u), "v": str(self.v),
            "mode": self.mode, "B": str(self.B), "K": str(self.K),
        }

    @classmethod
    def from_record(cls, rec):
        """Inverse of :meth:`to_record`.  Does not validate."""
        p = int(rec["p"])
        ints = {k: int(rec[k]) for k in ("l", "i", "mu", "iota", "u", "v", "B", "K")}
        return cls(p=p, epsilon=ModElem(int(rec["epsilon"]) % p, p),
                   mode=rec["mode"], **ints)


@dataclass(frozen=True)
class UElem:
    """Element of the cyclic additive group ``Z/modulus``."""

    residue: int
    modulus: int

    def __post_init__(self):
        if not 0 <= self.residue < self.modulus:
            raise InvalidInput(
                f"residue {self.residue} not reduced mod {self.modulus}")

    def _check(self, other):
        if other.modulus != self.modulus:
            raise InvalidInput("UElems from different groups")

    def __add__(self, other):
        self._check(other)
        return UElem((self.residue + other.residue) % self.modulus, self.modulus)

    def __sub__(self, other):
        self._check(other)
        return UElem((self.residue - other.residue) % self.modulus, self.modulus)

    def __neg__(self):
        return UElem(-self.residue % self.modulus, self.modulus)

    def __rmul__(self, k: int):
        return UElem(k * self.residue % self.modulus, self.modulus)


@dataclass(frozen=True)
class DimensionSort:
    """Subgroup of U generated by ``d``; it has ``size`` elements."""

    d: int
    size: int

    @classmethod
    def of(cls, order, d):
        if d < 1 or order % d:
            raise InvalidInput(f"generator step {d} does not divide {order}")
        return cls(d, order // d)

    @property
    def order(self):
        return self.d * self.size


def _lcm_upto(b):
    return math.lcm(*range(1, b + 1))


def _square_root(n):
    r = math.isqrt(n)
    return r if r * r == n else None


def validate_universe(params: UniverseParams):
    """Raise :class:`InvalidInput` naming the first violated invariant."""
    p, l, i = params.p, params.l, params.i

    def need(cond, name):
        if not cond:
            raise InvalidInput(f"universe invariant violated: {name} "
                               f"(p={p}, l={l}, i={i})")

    need(p >= 3 and is_prime(p), "p prime")
    need(params.mu >= 1 and params.mu ** 2 == l, "mu**2 == l")
    need(params.iota >= 1 and params.iota ** 2 == i, "iota**2 == i")
    need((p - 1) % (i * l) == 0, "i*l | p-1")
    need(params.u * i == p - 1, "u == (p-1)/i")
    need(params.v == p - 1, "v == p-1")
    need(params.B >= 1 and l % _lcm_upto(params.B) == 0,
         "every m <= B divides l")
    need((p - 1) % 8 == 0, "8 | p-1")
    need(params.mode in (MODE_A, MODE_B), "mode in {A, B}")
    if params.mode == MODE_A:
        need(i * i + 1 == p, "mode A: i**2 + 1 == p")
    need(params.K >= 1 and i >= l ** params.K, "i >= l**K")
    eps = params.epsilon
    need(eps.modulus == p, "epsilon lives in F_p")
    cofactors = [(p - 1) // q for q in factorize(p - 1)]
    need(eps.residue != 0 and all(pow(eps.residue, c, p) != 1 for c in cofactors),
         "epsilon is a primitive root mod p")
    return params


@dataclass(frozen=True)
class SearchConfig:
    B: int = 2
    K: int = 1
    mode: str = MODE_B
    p_min: int = 2
    p_max: int = 10**7
    extra_divisors: tuple = ()
    iota: int | None = None
    workers: int = field(default=1, compare=False)

    def __post_init__(self):
        if self.B < 1 or self.K < 1:
            raise InvalidInput("B and K must be >= 1")
        if self.p_max < self.p_min:
            raise InvalidInput("p_max < p_min")
        if self.mode not in (MODE_A, MODE_B):
            raise InvalidInput(f"unknown mode {self.mode!r}")
        if any(e < 1 for e in self.extra_divisors):
            raise InvalidInput("extra divisors must be positive")
        if self.iota is not None and self.iota < 1:
            raise InvalidInput("iota must be positive")


def _largest_square_divisor_root(n):
    return math.prod(q ** (e // 2) for q, e in factorize(n).items())


# A candidate's "depth" is how many checks it passed; the deepest failure
# is reported when the whole range is rejected.

def _check_mode_b(cfg, l, p):
    if not is_prime(p):
        return 1, "p prime", None
    m = (p - 1) // (2 * l)
    if cfg.iota is not None:
        iota = cfg.iota
        if m % (iota * iota):
            return 2, "2*i*l | p-1 for the pinned iota", None
    else:
        iota = _largest_square_divisor_root(m)
    if iota * iota < l ** cfg.K:
        return 3, "i >= l**K", None
    return 4, None, iota


def _scan_mode_b(args):
    cfg, l, step, k_lo, k_hi = args
    best = (0, "p in range")
    for k in range(k_lo, k_hi):
        depth, failed, iota = _check_mode_b(cfg, l, 1 + k * step)
        if failed is None:
            return (1 + k * step, iota), best
        best = max(best, (depth, failed), key=lambda t: t[0])
    return None, best


def _check_mode_a(cfg, l, iota, p):
    i = iota * iota
    if not cfg.p_min <= p <= cfg.p_max:
        return 0, "p in range"
    if (p - 1) % 8:
        return 1, "8 | p-1"
    if (p - 1) % (i * l):
        return 2, "i*l | p-1"
    for e in cfg.extra_divisors:
        if (p - 1) % e:
            return 3, f"extra divisor {e} | p-1"
    if i < l ** cfg.K:
        return 4, "i >= l**K"
    if not is_prime(p):
        return 5, "p prime"
    return 6, None


def _finish(p, l, iota, cfg):
    i = iota * iota
    eps = find_primitive_root(p)
    params = UniverseParams(p=p, l=l, i=i, mu=math.isqrt(l), iota=iota,
                            epsilon=eps, u=(p - 1) // i, v=p - 1,
                            mode=cfg.mode, B=cfg.B, K=cfg.K)
    return validate_universe(params)


def search_universe(cfg: SearchConfig) -> UniverseParams:
    """Smallest admissible universe for ``cfg``.

    ``l`` is ``lcm(1..B)**2``.  Mode A walks ``iota = 1, 2, ...`` (or the
    pinned value) with ``p = iota**4 + 1``.  Mode B walks primes ``p`` in
    ascending order and takes the largest square ``i`` with
    ``2*i*l | p - 1``, so that the real-scale Gauss sum at ``a = 1`` is
    available; ``i >= l**K`` must then hold.  Every value in
    ``cfg.extra_divisors`` must divide ``p - 1``.

    Raises :class:`NoSolution` carrying the deepest failed constraint.
    """
    mu = _lcm_upto(cfg.B)
    l = mu * mu
    if cfg.mode == MODE_A:
        best = (0, "p in range")
        iotas = [cfg.iota] if cfg.iota is not None else range(1, math.isqrt(math.isqrt(cfg.p_max)) + 2)
        for iota in iotas:
            depth, failed = _check_mode_a(cfg, l, iota, iota**4 + 1)
            if failed is None:
                return _finish(iota**4 + 1, l, iota, cfg)
            if depth >= best[0]:
                best = (depth, failed)
        raise NoSolution(f"no admissible mode-A universe (B={cfg.B}, K={cfg.K}, "
                         f"p <= {cfg.p_max}): first violated constraint "
                         f"'{best[1]}'", best[1])

    step = math.lcm(8, 2 * l, *cfg.extra_divisors)
    k_lo = max(1, -(-(cfg.p_min - 1) // step))
    k_hi = (cfg.p_max - 1) // step + 1
    jobs = [(cfg, l, step, lo, hi) for lo, hi in chunk_ranges(k_lo, k_hi, 4096)]
    best = (0, "p in range")
    # Chunks are independent; the first hit in chunk order is the smallest p.
    batch = max(1, cfg.workers) * 4
    for start in range(0, len(jobs), batch):
        for hit, fail in ordered_map(_scan_mode_b, jobs[start:start + batch], cfg.workers):
            if hit is not None:
                return _finish(hit[0], l, hit[1], cfg)
            if fail[0] >= best[0]:
                best = fail
    raise NoSolution(f"no admissible mode-B universe (B={cfg.B}, K={cfg.K}, "
                     f"{cfg.p_min} <= p <= {cfg.p_max}): first violated "
                     f"constraint '{best[1]}'", best[1])


def exp_p(params: UniverseParams, w: UElem) -> ModElem:
    """``epsilon ** w`` in ``F_p``; the kernel is ``(p-1) U``."""
    if w.modulus != params.order:
        raise InvalidInput("element does not belong to this universe")
    return ModElem(pow(params.epsilon.residue, w.residue % (params.p - 1), params.p),
                   params.p)


def cyclic_less(a: UElem, b: UElem, c: UElem) -> bool:
    """True iff ``b`` lies on the arc from ``a`` to ``c`` walking by ``+1``."""
    if len({a.residue, b.residue, c.residue}) < 3:
        raise InvalidInput("cyclic order needs three distinct elements")
    n = a.modulus
    return (b.residue - a.residue) % n < (c.residue - a.residue) % n


def dimension_product(d1: DimensionSort, d2: DimensionSort, x1: int, x2: int):
    """Bilinear map ``D1 x D2 -> D3`` with ``ker_3 = ker_1 & ker_2``.

    Returns ``(D3, x3)`` where ``D3.size = lcm(|D1|, |D2|)`` and
    ``x3 = x1 * x2 mod |D3|``.
    """
    if d1.order != d2.order:
        raise InvalidInput("dimension sorts live in different universes")
    if not (0 <= x1 < d1.size and 0 <= x2 < d2.size):
        raise InvalidInput(f"coordinates out of range: {x1}, {x2}")
    size = math.lcm(d1.size, d2.size)
    d3 = DimensionSort(d1.order // size, size)
    return d3, x1 * x2 % size
