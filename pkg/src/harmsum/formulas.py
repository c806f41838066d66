"""Right-hand sides: every congruence's predicted residue, from Bernoulli data.

Each builder assembles its value from Bernoulli residues (or exact Bernoulli
rationals) and elementary coefficients, then reduces.  Nothing in this module
evaluates a harmonic sum; the verify layer owes its independence guarantee to
that separation, so keep harmonic imports out of here.

Prime-power statements share one scaling step: a claim of the shape
    sum === c * p^(alpha-1) * B_k (mod p^alpha)
with c a p-integral rational only needs c * B_k mod p, because multiplying
by p^(alpha-1) kills the higher digits.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd

from .bernoulli import bernoulli_exact, bernoulli_mod, bernoulli_mod_prime
from .errors import ParameterError, PoleAtIndex
from .modarith import Residue, crt_combine, factorize, reduce_rational


def scaled_prime_power_rhs(
    p: int, alpha: int, coeff: Fraction, k: int
) -> Residue:
    """p^(alpha-1) * (coeff * B_k) as a residue mod p^alpha."""
    c = reduce_rational(coeff, p) * bernoulli_mod_prime(k, p)
    return Residue(p ** (alpha - 1) * c.value, p ** alpha)


def eq1_rhs(p: int) -> Residue:
    """-2 B_{p-3} mod p."""
    return scaled_prime_power_rhs(p, 1, Fraction(-2), p - 3)


def eq2_rhs(p: int, r: int) -> Residue:
    """-2 p^{r-1} B_{p-3} mod p^r."""
    return scaled_prime_power_rhs(p, r, Fraction(-2), p - 3)


def _q_factor(q: int, beta: int) -> Fraction:
    return (1 - Fraction(1, q ** 3)) * q ** (beta - 1)


def eq3_rhs(p: int, alpha: int, q: int, beta: int) -> Residue:
    """2(2-q)(1 - q^-3) p^{alpha-1} q^{beta-1} B_{p-3} mod p^alpha."""
    return scaled_prime_power_rhs(
        p, alpha, 2 * (2 - q) * _q_factor(q, beta), p - 3
    )


def thm1_rhs(p: int, alpha: int, q: int, beta: int) -> Residue:
    """(q-2)(1 - q^-3) p^{alpha-1} q^{beta-1} B_{p-3} mod p^alpha."""
    return scaled_prime_power_rhs(p, alpha, (q - 2) * _q_factor(q, beta), p - 3)


def thm2_rhs(p: int, alpha: int, q: int, beta: int) -> Residue:
    """Half of the thm1 value: the alternating-sum prediction."""
    return scaled_prime_power_rhs(
        p, alpha, Fraction(q - 2, 2) * _q_factor(q, beta), p - 3
    )


def thm3_rhs(p: int, alpha: int, q: int, beta: int) -> Residue:
    """(7/8)(2-q)(1 - q^-3) p^{alpha-1} q^{beta-1} B_{p-3} mod p^alpha."""
    return scaled_prime_power_rhs(
        p, alpha, Fraction(7 * (2 - q), 8) * _q_factor(q, beta), p - 3
    )


def lemma1_rhs(p: int, alpha: int, q: int, beta: int, m: int) -> Residue:
    """m * Z(p^alpha q^beta) mod p^alpha, with Z taken from its closed form."""
    return m * eq3_rhs(p, alpha, q, beta)


def lemma1_strong_rhs(p: int, alpha: int, q: int, beta: int, m: int) -> Residue:
    """Same prediction assembled mod p^alpha q^beta by CRT of both orientations."""
    return crt_combine(
        [m * eq3_rhs(p, alpha, q, beta), m * eq3_rhs(q, beta, p, alpha)]
    )


XIA_CAI_VARIANTS = ("printed", "alt_denom")


def xia_cai_rhs(p: int, variant: str) -> Residue:
    """-12 B_{p-3}/(p-3) - 3 B_{2p-4}/d mod p^2, d = p-4 or 2p-4 by variant."""
    if variant not in XIA_CAI_VARIANTS:
        raise ParameterError(f"unknown xia_cai variant {variant!r}")
    d = p - 4 if variant == "printed" else 2 * p - 4
    value = (
        Fraction(-12, p - 3) * bernoulli_exact(p - 3)
        - Fraction(3, d) * bernoulli_exact(2 * p - 4)
    )
    return reduce_rational(value, p * p)


def zhao_rhs(p: int, r: int, arity: int) -> Residue:
    """-(arity!/(arity+1)) p^r B_{p-arity-1} mod p^{r+1}, exact route."""
    value = (
        Fraction(-factorial(arity), arity + 1)
        * p ** r
        * bernoulli_exact(p - arity - 1)
    )
    return reduce_rational(value, p ** (r + 1))


def remark1_prime_power_rhs(p: int, r: int, which: str) -> Residue:
    """(1/2) p^{r-1} B_{p-3} for the alternating sum, -(7/8) for all-odd."""
    coeff = Fraction(1, 2) if which == "alt" else Fraction(-7, 8)
    return scaled_prime_power_rhs(p, r, coeff, p - 3)


def remark1_composite_rhs(p: int, q: int, which: str) -> tuple[Residue, str]:
    """Composite-n Remark form mod pq, plus a note on the Bernoulli routes.

    The value is (+3/2 or -21/8) * (1 + 3/k)(1 + (phi-1)^-3) * B_k with
    k = phi(pq) - 2.  These signs are the ones the exact oracle confirms;
    see the all-pairs check in the tests.  B_k itself can have a pole at a
    prime of pq that the cofactor cancels, so the value is assembled as an
    exact rational first; a surviving pole raises PoleAtIndex.  When the
    per-prime Kummer/CRT route is pole-free it must agree with the exact
    route, and the note records which routes ran.
    """
    phi = (p - 1) * (q - 1)
    k = phi - 2
    n = p * q
    coeff = Fraction(3, 2) if which == "alt" else Fraction(-21, 8)
    value = (
        coeff
        * (1 + Fraction(3, k))
        * (1 + Fraction(1, (phi - 1) ** 3))
        * bernoulli_exact(k)
    )
    if gcd(value.denominator, n) != 1:
        poles = [r for r in (p, q) if value.denominator % r == 0]
        raise PoleAtIndex(k, poles)
    residue = reduce_rational(value, n)
    try:
        crt_route = bernoulli_mod(k, n)
    except PoleAtIndex as exc:
        note = (
            f"exact route only; per-prime route poles at "
            f"{','.join(map(str, exc.primes))} (cancelled by the coefficient)"
        )
    else:
        exact_route = reduce_rational(bernoulli_exact(k), n)
        if crt_route != exact_route:
            raise ArithmeticError(
                f"Bernoulli route disagreement at k={k}, n={n}: "
                f"{crt_route} vs {exact_route}"
            )
        note = "bernoulli routes agree (kummer/crt vs exact)"
    return residue, note


def conjecture_rhs(n: int, p: int, alpha: int, which: str) -> Residue:
    """Component prediction mod p^alpha for general n.

    (n/2p) B_{p-3} (alternating) or -(7n/8p) B_{p-3} (all-odd), times
    prod over the other primes q | n of (1 - 2/q)(1 - q^-3).
    """
    coeff = Fraction(n, 2 * p) if which == "alt" else Fraction(-7 * n, 8 * p)
    coeff /= p ** (alpha - 1)  # the scaling helper restores this power
    for q in factorize(n):
        if q != p:
            coeff *= (1 - Fraction(2, q)) * (1 - Fraction(1, q ** 3))
    return scaled_prime_power_rhs(p, alpha, coeff, p - 3)
