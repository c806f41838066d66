"""Exact modular arithmetic: residues, prime powers, CRT, rational reduction.

Everything here is plain integer arithmetic; no floating point anywhere.
The Residue type normalizes into [0, m) on construction and refuses mixed
moduli, so downstream code never has to reason about representative choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

from .errors import ModulusMismatch, NonCoprimeModuli, NotInvertible, ParameterError

# Exact rational values are carried as fractions.Fraction throughout.
Rational = Fraction


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality, adequate for the sizes here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d <= isqrt(n):
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, as {prime: exponent}."""
    if n < 1:
        raise ParameterError(f"cannot factor {n}: need a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d <= isqrt(n):
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 2 if d % 6 == 5 else 4
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(e == 1 for e in factorize(n).values())


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class Residue:
    """An integer residue with its modulus attached.

    Arithmetic between residues requires equal moduli (ModulusMismatch
    otherwise); plain ints are accepted on either side and reduced.
    """

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ParameterError(f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> "Residue":
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ModulusMismatch(self.modulus, other.modulus)
            return other
        if isinstance(other, int):
            return Residue(other, self.modulus)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Residue(self.value + o.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Residue(self.value - o.value, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Residue(o.value - self.value, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Residue(self.value * o.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __pow__(self, exponent: int):
        return mod_pow(self, exponent)

    def inverse(self) -> "Residue":
        return mod_inverse(self)

    def __repr__(self):
        return f"Residue({self.value} mod {self.modulus})"


@dataclass(frozen=True)
class PrimePower:
    """An odd prime power p**alpha used as a sum modulus."""

    p: int
    alpha: int

    def __post_init__(self):
        if self.p == 2 or not is_prime(self.p):
            raise ParameterError(f"p must be an odd prime, got {self.p}")
        if self.alpha < 1:
            raise ParameterError(f"alpha must be >= 1, got {self.alpha}")

    @property
    def modulus(self) -> int:
        return self.p ** self.alpha

    @property
    def totient(self) -> int:
        return self.p ** (self.alpha - 1) * (self.p - 1)


def mod_pow(base: Residue, exponent: int) -> Residue:
    """base**exponent in the residue ring; negative exponents invert first."""
    if exponent < 0:
        base = mod_inverse(base)
        exponent = -exponent
    return Residue(pow(base.value, exponent, base.modulus), base.modulus)


def mod_inverse(a: Residue) -> Residue:
    g, x, _ = xgcd(a.value, a.modulus)
    if g != 1:
        raise NotInvertible(a.value, a.modulus, g)
    return Residue(x, a.modulus)


def reduce_rational(r: Rational | int, modulus: int) -> Residue:
    """Map a/b to a * b^(-1) in Z/m; NotInvertible when gcd(b, m) > 1."""
    r = Fraction(r)
    num = Residue(r.numerator, modulus)
    if r.denominator == 1:
        return num
    return num * mod_inverse(Residue(r.denominator, modulus))


def crt_combine(parts: Sequence[Residue]) -> Residue:
    """Combine residues over pairwise coprime moduli into one residue.

    Accumulates left to right; each step checks coprimality and raises
    NonCoprimeModuli with the offending pair otherwise.
    """
    if not parts:
        raise ParameterError("crt_combine needs at least one residue")
    acc = parts[0]
    for part in parts[1:]:
        m1, m2 = acc.modulus, part.modulus
        g, x, _ = xgcd(m1, m2)
        if g != 1:
            raise NonCoprimeModuli(m1, m2, g)
        # acc + m1 * (x * (part - acc)) lands in both classes
        diff = (part.value - acc.value) % m2
        lift = acc.value + m1 * ((x * diff) % m2)
        acc = Residue(lift, m1 * m2)
    return acc


def batch_inverse(values: Sequence[int], modulus: int) -> list[int]:
    """Invert many residues with one xgcd via the prefix-product trick."""
    n = len(values)
    if n == 0:
        return []
    prefix = [0] * n
    acc = 1
    for idx, v in enumerate(values):
        acc = acc * (v % modulus) % modulus
        prefix[idx] = acc
    g, x, _ = xgcd(acc, modulus)
    if g != 1:
        # locate the first offending element for a precise report
        for v in values:
            gv = gcd(v, modulus)
            if gv != 1:
                raise NotInvertible(v % modulus, modulus, gv)
        raise NotInvertible(acc, modulus, g)
    inv_acc = x % modulus
    out = [0] * n
    for idx in range(n - 1, -1, -1):
        if idx == 0:
            out[0] = inv_acc
        else:
            out[idx] = inv_acc * prefix[idx - 1] % modulus
            inv_acc = inv_acc * (values[idx] % modulus) % modulus
    return out
