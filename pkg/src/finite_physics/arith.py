"""Exact modular arithmetic, primality, factorization and primitive roots.

Integers are Python ints and rationals are :class:`fractions.Fraction`,
so nothing here overflows.  Factorizations are plain ``dict`` objects
mapping each prime to its exponent, ordered by increasing prime.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput

__all__ = [
    "Fraction",
    "ModElem",
    "mod_pow",
    "is_prime",
    "factorize",
    "recompose",
    "multiplicative_order",
    "find_primitive_root",
]

# Deterministic Miller-Rabin for n < 3.3e24 (covers 2^64).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_TRIAL_LIMIT = 10**6
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


@dataclass(frozen=True)
class ModElem:
    """Residue class ``residue mod modulus`` with ``0 <= residue < modulus``."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise InvalidInput(f"modulus must be >= 2, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise InvalidInput(
                f"residue {self.residue} not reduced mod {self.modulus}")

    @classmethod
    def of(cls, value, modulus):
        return cls(value % modulus, modulus)

    def _coerce(self, other):
        if isinstance(other, ModElem):
            if other.modulus != self.modulus:
                raise InvalidInput(
                    f"moduli differ: {self.modulus} vs {other.modulus}")
            return other.residue
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return ModElem((self.residue + r) % self.modulus, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return ModElem((self.residue - r) % self.modulus, self.modulus)

    def __rsub__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return ModElem((r - self.residue) % self.modulus, self.modulus)

    def __neg__(self):
        return ModElem(-self.residue % self.modulus, self.modulus)

    def __mul__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return ModElem(self.residue * r % self.modulus, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, exp):
        return mod_pow(self, exp)

    def inverse(self):
        if math.gcd(self.residue, self.modulus) != 1:
            raise InvalidInput(f"{self} is not a unit")
        return ModElem(pow(self.residue, -1, self.modulus), self.modulus)

    def __int__(self):
        return self.residue

    def __str__(self):
        return f"{self.residue} mod {self.modulus}"


def mod_pow(base: ModElem, exp: int) -> ModElem:
    """Return ``base**exp`` at the same modulus (negative ``exp`` inverts)."""
    if exp < 0:
        return mod_pow(base.inverse(), -exp)
    return ModElem(pow(base.residue, exp, base.modulus), base.modulus)


def _miller_rabin(n, bases):
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int, rounds: int = 32) -> bool:
    """Miller-Rabin primality test.

    Deterministic below 2**64 (fixed witness set).  Above that the
    fixed witnesses are followed by ``rounds`` extra bases drawn from a
    generator seeded by ``n``, so the answer is reproducible and the
    error probability is at most ``4**-rounds``.
    """
    if n < 2:
        raise InvalidInput(f"primality is defined for n >= 2, got {n}")
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    if not _miller_rabin(n, _MR_BASES):
        return False
    if n < 1 << 64:
        return True
    rng = random.Random(n)
    return _miller_rabin(n, [rng.randrange(2, n - 1) for _ in range(rounds)])


def _pollard_brent(n):
    """Return a nontrivial factor of the odd composite ``n``."""
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> dict:
    """Prime factorization of ``n >= 1`` as an ordered ``{prime: exponent}``.

    Trial division up to 10**6, then Pollard-Brent rho on the cofactor.
    """
    if n < 1:
        raise InvalidInput(f"factorize needs n >= 1, got {n}")
    out = {}

    def add(q, e=1):
        out[q] = out.get(q, 0) + e

    for q in (2, 3):
        while n % q == 0:
            add(q)
            n //= q
    q = 5
    while q <= _TRIAL_LIMIT and q * q <= n:
        for d in (q, q + 2):
            while n % d == 0:
                add(d)
                n //= d
        q += 6
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            add(m)
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        f = _pollard_brent(m)
        stack += [f, m // f]
    return dict(sorted(out.items()))


def recompose(factors: dict) -> int:
    return math.prod(q**e for q, e in factors.items())


def multiplicative_order(a: ModElem, factored_group_order: dict) -> int:
    """Smallest ``t >= 1`` with ``a**t == 1``.

    ``factored_group_order`` must factor a multiple of the order of the
    unit group (or of the element).
    """
    if math.gcd(a.residue, a.modulus) != 1:
        raise InvalidInput(f"{a} is not a unit")
    t = recompose(factored_group_order)
    if pow(a.residue, t, a.modulus) != 1:
        raise InvalidInput(
            f"{a} does not satisfy a**{t} == 1; group order is wrong")
    for q, e in factored_group_order.items():
        for _ in range(e):
            if pow(a.residue, t // q, a.modulus) == 1:
                t //= q
            else:
                break
    return t


def find_primitive_root(p: int, factored: dict | None = None) -> ModElem:
    """Smallest generator of the multiplicative group of ``F_p``.

    ``factored`` is the factorization of ``p - 1`` (computed when
    omitted).  For ``p == 2`` the trivial group is generated by 1; it is
    returned with modulus 2.
    """
    if p < 2 or not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if p == 2:
        return ModElem(1, 2)
    if factored is None:
        factored = factorize(p - 1)
    if recompose(factored) != p - 1:
        raise InvalidInput(f"factorization does not recompose to {p - 1}")
    cofactors = [(p - 1) // q for q in factored]
    g = 2
    while any(pow(g, c, p) == 1 for c in cofactors):
        g += 1
    return ModElem(g, p)
