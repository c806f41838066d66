"""Bernoulli numbers three ways.

Exact rationals come from the defining recurrence sum(C(n+1, i) * B_i) = 0
with a memoized prefix.  Residues mod an odd prime come from inverting the
power series (e^x - 1)/x over the field with p elements (valid for index
k <= p - 3), with the Kummer congruence B_k / k = B_{k0} / k0 (mod p)
covering larger indices.  Squarefree composite moduli are assembled by CRT.

Indices k where (p - 1) | k (k > 0) are genuine poles mod p by von
Staudt-Clausen and raise PoleAtIndex; odd k >= 3 gives 0 from every path.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import CapExceeded, ParameterError, PoleAtIndex
from .modarith import Rational, Residue, factorize, is_prime, is_squarefree

EXACT_CAP = 300

_exact_lock = threading.Lock()
_exact_prefix: list[Fraction] = [Fraction(1)]  # B_0


@dataclass(frozen=True)
class BernoulliValue:
    """A Bernoulli number together with how it was computed."""

    index: int
    payload: Rational | Residue
    provenance: str  # one of: recurrence, series, kummer, crt


def bernoulli_exact(k: int, cap: int = EXACT_CAP) -> Rational:
    """Exact B_k as a Fraction; B_1 is -1/2 (the recurrence's own output)."""
    if k < 0:
        raise ParameterError(f"Bernoulli index must be >= 0, got {k}")
    if k > cap:
        raise CapExceeded("bernoulli_exact", k, cap)
    with _exact_lock:
        while len(_exact_prefix) <= k:
            n = len(_exact_prefix)
            # sum_{i=0}^{n} C(n+1, i) B_i = 0, solved for B_n
            acc = Fraction(0)
            for i, b in enumerate(_exact_prefix):
                acc += comb(n + 1, i) * b
            _exact_prefix.append(-acc / (n + 1))
        return _exact_prefix[k]


def von_staudt_clausen_denominator(k: int) -> int:
    """Denominator of B_k for even k: the product of primes r with (r-1) | k."""
    if k == 0:
        return 1
    if k % 2:
        raise ParameterError(f"von Staudt-Clausen applies to even k, got {k}")
    den = 1
    for r in range(2, k + 2):
        if k % (r - 1) == 0 and is_prime(r):
            den *= r
    return den


def _series_mod_p(k: int, p: int) -> int:
    """B_k mod p for even 2 <= k <= p - 3 by inverting (e^x - 1)/x over F_p.

    The series has coefficients 1/(i+1)! which stay invertible because
    i + 1 <= p - 2 < p.  Naive O(k^2) inversion; k < p keeps this small.
    """
    fact = [1] * (k + 2)
    for i in range(1, k + 2):
        fact[i] = fact[i - 1] * i % p
    f = [pow(fact[i + 1], p - 2, p) for i in range(k + 1)]  # f_i = 1/(i+1)!
    g = [0] * (k + 1)  # g = 1/f, so B_i = i! * g_i
    g[0] = 1  # f_0 = 1
    for i in range(1, k + 1):
        acc = 0
        for j in range(1, i + 1):
            acc += f[j] * g[i - j]
        g[i] = -acc % p
    return g[k] * fact[k] % p


def bernoulli_mod_prime(k: int, p: int) -> Residue:
    """B_k mod p via the series (k <= p - 3) or Kummer reduction (k > p - 3)."""
    if k < 0:
        raise ParameterError(f"Bernoulli index must be >= 0, got {k}")
    if p == 2 or not is_prime(p):
        raise ParameterError(f"p must be an odd prime, got {p}")
    if k == 0:
        return Residue(1, p)
    if k == 1:
        return Residue(-pow(2, -1, p), p)
    if k % 2:
        return Residue(0, p)
    if k % (p - 1) == 0:
        raise PoleAtIndex(k, (p,))
    if k <= p - 3:
        return Residue(_series_mod_p(k, p), p)
    # Kummer: B_k / k = B_{k0} / k0 (mod p) with k0 = k mod (p - 1).
    # k0 is even (p - 1 is even), nonzero by the pole check, and <= p - 3.
    k0 = k % (p - 1)
    return Residue(k * pow(k0, -1, p) * _series_mod_p(k0, p), p)


def bernoulli_mod(k: int, modulus: int) -> Residue:
    """B_k mod an odd squarefree modulus, one prime at a time then CRT."""
    from .modarith import crt_combine  # local to keep top imports minimal

    if modulus < 3 or modulus % 2 == 0 or not is_squarefree(modulus):
        raise ParameterError(
            f"modulus must be odd and squarefree, got {modulus}"
        )
    primes = sorted(factorize(modulus))
    if k > 0 and k % 2 == 0:
        poles = [p for p in primes if k % (p - 1) == 0]
        if poles:
            raise PoleAtIndex(k, poles)
    parts = [bernoulli_mod_prime(k, p) for p in primes]
    return crt_combine(parts)


def bernoulli_value(k: int, modulus: int | None = None) -> BernoulliValue:
    """Convenience dispatcher used by the CLI: exact when modulus is None."""
    if modulus is None:
        return BernoulliValue(k, bernoulli_exact(k), "recurrence")
    if is_prime(modulus):
        route = "series" if k <= modulus - 3 else "kummer"
        return BernoulliValue(k, bernoulli_mod_prime(k, modulus), route)
    return BernoulliValue(k, bernoulli_mod(k, modulus), "crt")
