"""Coefficient rings: the integers, Z/m, and the rationals.

Elements are ordinary Python objects: ``int`` for the integers and for Z/m
(kept reduced into ``range(m)``), ``fractions.Fraction`` for the rationals.
Arbitrary precision comes for free; fixed-width overflow cannot happen.

A RingSpec bundles the canonical-form, unit and divisibility arithmetic the
normal-form code needs.  Instances are frozen and hashable so they can key
caches.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import TwistcapError

INTEGERS = "Z"
RATIONALS = "Q"
MODULAR = "Zmod"


@dataclass(frozen=True)
class RingSpec:
    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind not in (INTEGERS, RATIONALS, MODULAR):
            raise TwistcapError(f"unknown ring kind {self.kind!r}")
        if self.kind == MODULAR:
            if self.modulus is None or self.modulus < 2:
                raise TwistcapError("modular ring needs modulus >= 2")
        elif self.modulus is not None:
            raise TwistcapError(f"{self.kind} takes no modulus")

    # -- presentation --------------------------------------------------

    def __str__(self):
        if self.kind == MODULAR:
            return f"Z/{self.modulus}"
        return self.kind

    @property
    def two_is_nonzero(self) -> bool:
        """False exactly when 2 = 0, i.e. for Z/2."""
        return not (self.kind == MODULAR and self.modulus == 2)

    @property
    def is_field(self) -> bool:
        if self.kind == RATIONALS:
            return True
        if self.kind == MODULAR:
            m = self.modulus
            return all(m % p for p in range(2, int(m ** 0.5) + 1)) or m in (2, 3)
        return False

    # -- element arithmetic --------------------------------------------

    def normalize(self, x):
        if self.kind == INTEGERS:
            return int(x)
        if self.kind == MODULAR:
            return int(x) % self.modulus
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0) if self.kind == RATIONALS else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == RATIONALS else self.normalize(1)

    def from_int(self, k: int):
        """Image of the integer k, e.g. the signs +-1 used everywhere."""
        return self.normalize(k)

    def is_unit(self, x) -> bool:
        if self.kind == INTEGERS:
            return x in (1, -1)
        if self.kind == MODULAR:
            return gcd(x % self.modulus, self.modulus) == 1
        return x != 0

    def unit_inverse(self, x):
        if self.kind == INTEGERS:
            if x not in (1, -1):
                raise TwistcapError(f"{x} is not a unit in Z")
            return x
        if self.kind == MODULAR:
            return pow(x % self.modulus, -1, self.modulus)
        if x == 0:
            raise TwistcapError("0 is not a unit")
        return 1 / self.normalize(x)

    def divides(self, a, b) -> bool:
        """True when b lies in the ideal generated by a."""
        if self.kind == RATIONALS:
            return a != 0 or b == 0
        if self.kind == INTEGERS:
            if a == 0:
                return b == 0
            return b % a == 0
        m = self.modulus
        g = gcd(a % m, m)
        return (b % m) % g == 0 if g else b % m == 0

    def divide(self, b, a):
        """Some y with a*y = b, or None when no solution exists."""
        if self.kind == RATIONALS:
            if a == 0:
                return self.zero if b == 0 else None
            return self.normalize(b) / self.normalize(a)
        if self.kind == INTEGERS:
            if a == 0:
                return 0 if b == 0 else None
            return b // a if b % a == 0 else None
        m = self.modulus
        a %= m
        b %= m
        if a == 0:
            return 0 if b == 0 else None
        g = gcd(a, m)
        if b % g:
            return None
        mg = m // g
        return (b // g) * pow(a // g, -1, mg) % m if mg > 1 else 0

    def annihilator(self, a):
        """Generator of {r : r*a = 0}; zero over the integers and rationals."""
        if self.kind != MODULAR:
            return self.zero
        m = self.modulus
        a %= m
        if a == 0:
            return 1
        return (m // gcd(a, m)) % m

    def canonical_generator(self, a):
        """Canonical generator of the ideal (a): |a| over Z, gcd(a, m) over Z/m,
        1 over Q for nonzero a."""
        if self.kind == INTEGERS:
            return abs(a)
        if self.kind == RATIONALS:
            return self.one if a != 0 else self.zero
        return gcd(a % self.modulus, self.modulus) % self.modulus

    def unit_scaling_to_canonical(self, a):
        """A unit u with u*a equal to the canonical generator of (a)."""
        if self.kind == INTEGERS:
            return -1 if a < 0 else 1
        if self.kind == RATIONALS:
            return 1 / self.normalize(a) if a != 0 else Fraction(1)
        m = self.modulus
        a %= m
        target = self.canonical_generator(a)
        # m stays small at this artifact's scale, so scanning is fine.
        for u in range(1, m + 1):
            if gcd(u, m) == 1 and (u * a) % m == target:
                return u
        raise TwistcapError(f"no unit scales {a} to {target} mod {m}")


Z = RingSpec(INTEGERS)
Q = RingSpec(RATIONALS)


def Zmod(m: int) -> RingSpec:
    return RingSpec(MODULAR, m)


def parse_ring(text: str) -> RingSpec:
    """Parse 'Z', 'Q', 'Z/5' or 'Zmod5' (also 'Zmod 5')."""
    t = text.strip()
    if t == "Z":
        return Z
    if t == "Q":
        return Q
    for prefix in ("Z/", "Zmod"):
        if t.startswith(prefix):
            body = t[len(prefix):].strip()
            if body.isdigit():
                return Zmod(int(body))
    raise TwistcapError(f"cannot parse ring {text!r}")
