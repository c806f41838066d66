"""Restricted harmonic triple and tuple sums.

The objects of study are sums of 1/(ijk) over ordered triples i+j+k = n
whose parts are coprime to a squarefree radical, optionally weighted by
(-1)^i and filtered by parity of the parts.  Three evaluators:

* triple_sum_bruteforce: direct O(n^2) double loop, the oracle.
* triple_sum_exact: exact rationals, for proof-identity checks.
* triple_sum_fast: O(n * 2^omega) class-accumulator evaluation for a
  prime-power modulus, with a vectorized path for word-sized moduli and a
  pure-Python path beyond; both produce identical residues.

The fast evaluators share one idea: for fixed i with t = n - i,
sum over j+k=t of 1/(jk) equals (2/t) * sum of 1/j, provided the (j, k)
domain is symmetric under j <-> k (true for every filter here).  The inner
restricted prefix sums are maintained per congruence class with
inclusion-exclusion over the radical's primes knocking out the j for which
k = t - j would hit a forbidden factor.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import gcd, prod

import numpy as np

from .errors import (
    CapExceeded,
    NotInvertible,
    ParameterError,
    UnsupportedFilter,
)
from .modarith import (
    PrimePower,
    Rational,
    Residue,
    factorize,
    is_prime,
    is_squarefree,
)

EXACT_CAP = 5000
QUAD_CAP = 400

# numpy path keeps products of two residues inside int64
_NUMPY_MOD_LIMIT = 2 ** 31


class SignVariant(Enum):
    PLAIN = "plain"
    ALT_FIRST = "alt_first"  # weight each term by (-1)^i


class ParityFilter(Enum):
    ALL = "all"
    ALL_ODD = "all_odd"
    ALL_EVEN = "all_even"
    EXACTLY_ONE_EVEN = "exactly_one_even"
    EXACTLY_ONE_ODD = "exactly_one_odd"


# admissible (i, j, k) parity triples per filter, 1 = odd
_ALLOWED: dict[ParityFilter, frozenset[tuple[int, int, int]]] = {
    ParityFilter.ALL: frozenset(
        (a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)
    ),
    ParityFilter.ALL_ODD: frozenset({(1, 1, 1)}),
    ParityFilter.ALL_EVEN: frozenset({(0, 0, 0)}),
    ParityFilter.EXACTLY_ONE_EVEN: frozenset({(0, 1, 1), (1, 0, 1), (1, 1, 0)}),
    ParityFilter.EXACTLY_ONE_ODD: frozenset({(1, 0, 0), (0, 1, 0), (0, 0, 1)}),
}


@dataclass(frozen=True)
class TripleSumSpec:
    """Domain description: i+j+k = n, gcd(ijk, radical) = 1, sign, parity."""

    n: int
    radical: int
    sign: SignVariant = SignVariant.PLAIN
    parity: ParityFilter = ParityFilter.ALL

    def __post_init__(self):
        if self.n < 3:
            raise ParameterError(f"triple sums need n >= 3, got {self.n}")
        if self.radical < 1 or not is_squarefree(self.radical):
            raise ParameterError(
                f"radical must be a squarefree positive integer, got {self.radical}"
            )


@dataclass
class SumResult:
    residue: Residue | Rational
    term_count: int
    method: str  # bruteforce | fast | exact
    elapsed: float


def _radical_primes(radical: int) -> list[int]:
    return sorted(factorize(radical)) if radical > 1 else []


def _allowed_inner_parities(
    allowed: frozenset, pi: int, t: int
) -> tuple[int, ...]:
    """Parities of j compatible with the filter, given i's parity and t = j + k."""
    return tuple(
        pj for pj in (0, 1) if (pi, pj, (t - pj) & 1) in allowed
    )


def _strip_even_radical(spec: TripleSumSpec) -> TripleSumSpec | None:
    """Reduce an even radical to its odd part, or None if the domain dies.

    A radical containing 2 forces all parts odd, so n must be odd and the
    parity filter collapses onto ALL_ODD (or empties out).
    """
    if spec.radical % 2:
        return spec
    if spec.n % 2 == 0:
        return None
    if spec.parity in (ParityFilter.ALL, ParityFilter.ALL_ODD):
        return TripleSumSpec(
            spec.n, spec.radical // 2, spec.sign, ParityFilter.ALL_ODD
        )
    return None  # ALL_EVEN / EXACTLY_ONE_* cannot meet three odd parts


def _zero_result(spec, method: str, modulus: int | None, start: float) -> SumResult:
    value: Residue | Rational
    value = Fraction(0) if modulus is None else Residue(0, modulus)
    return SumResult(value, 0, method, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# brute force (the oracle)


def _inverse_table(n: int, modulus: int) -> np.ndarray | None:
    """Vectorized inverses of [0, n) mod modulus; zero where not coprime.

    Returns None when the modulus is too wide for the int64 fast path.
    """
    if modulus >= _NUMPY_MOD_LIMIT or n * modulus >= 2 ** 62:
        return None
    phi = prod(
        p ** (e - 1) * (p - 1) for p, e in factorize(modulus).items()
    )
    x = np.arange(n, dtype=np.int64)
    base = x % modulus
    inv = np.ones(n, dtype=np.int64)
    e = phi - 1
    b = base.copy()
    while e:
        if e & 1:
            inv = inv * b % modulus
        b = b * b % modulus
        e >>= 1
    inv[(inv * base) % modulus != 1] = 0
    return inv


def triple_sum_bruteforce(spec: TripleSumSpec, modulus: int) -> SumResult:
    """Direct double loop over (i, j); the correctness oracle for the fast path.

    Raises NotInvertible if some admissible part is not invertible mod the
    modulus (possible when the radical does not cover the modulus's primes).
    """
    start = time.perf_counter()
    n, radical = spec.n, spec.radical
    allowed = _ALLOWED[spec.parity]
    alt = spec.sign is SignVariant.ALT_FIRST

    inv = _inverse_table(n, modulus)
    if inv is None:
        return _brute_python(spec, modulus, start)

    adm = np.ones(n, dtype=bool)
    adm[0] = False
    adm[n - 1] = False  # parts never exceed n - 2
    for p in _radical_primes(radical):
        adm[::p] = False
    # admissible indices must all be invertible
    bad = adm & (inv == 0)
    if bad.any():
        v = int(np.nonzero(bad)[0][0])
        raise NotInvertible(v % modulus, modulus, gcd(v, modulus))

    total = 0
    count = 0
    for i in range(1, n - 1):
        if not adm[i]:
            continue
        t = n - i
        pi = i & 1
        pjs = _allowed_inner_parities(allowed, pi, t)
        if not pjs:
            continue
        j = np.arange(1, t, dtype=np.int64)
        mask = adm[1:t] & adm[t - 1:0:-1]  # j and k = t - j admissible
        if len(pjs) < 2:
            mask = mask & ((j & 1) == pjs[0])
        if not mask.any():
            continue
        inner = inv[1:t][mask] * inv[t - 1:0:-1][mask] % modulus
        s = int(inner.sum() % modulus)
        c = int(mask.sum())
        term = inv[i] * s % modulus
        if alt and pi:
            term = -term
        total += term
        count += c
    return SumResult(
        Residue(total, modulus), count, "bruteforce", time.perf_counter() - start
    )


def _brute_python(spec: TripleSumSpec, modulus: int, start: float) -> SumResult:
    """Arbitrary-precision fallback for wide moduli; same double loop."""
    n, radical = spec.n, spec.radical
    allowed = _ALLOWED[spec.parity]
    alt = spec.sign is SignVariant.ALT_FIRST
    primes = _radical_primes(radical)

    inv = [0] * n
    for x in range(1, n - 1):  # parts never exceed n - 2
        if all(x % p for p in primes):
            g = gcd(x, modulus)
            if g != 1:
                raise NotInvertible(x % modulus, modulus, g)
            inv[x] = pow(x, -1, modulus)

    total = 0
    count = 0
    for i in range(1, n - 1):
        if not inv[i]:
            continue
        t = n - i
        pi = i & 1
        pjs = _allowed_inner_parities(allowed, pi, t)
        if not pjs:
            continue
        s = 0
        c = 0
        for j in range(1, t):
            if not inv[j] or not inv[t - j]:
                continue
            if (j & 1) not in pjs:
                continue
            s += inv[j] * inv[t - j] % modulus
            c += 1
        term = inv[i] * (s % modulus) % modulus
        if alt and pi:
            term = -term
        total += term
        count += c
    return SumResult(
        Residue(total, modulus), count, "bruteforce", time.perf_counter() - start
    )


# ---------------------------------------------------------------------------
# class-accumulator engine (shared by the exact path and the pure fast path)


def _class_engine(n, primes, alt, parity, inv, reduce_fn, zero):
    """O(n * 2^omega) evaluation via per-class prefix sums.

    ``inv`` maps x -> 1/x in the target ring (0/None marking x inadmissible
    is not used here; admissibility is rechecked from ``primes``).  The
    prefix over j in [1, t-1] is kept per (class mod M_D, parity of j) for
    every subset D of the radical primes; inclusion-exclusion over D
    removes the j for which k = t - j is divisible by some radical prime.
    """
    allowed = _ALLOWED[parity]
    subsets = []
    for size in range(len(primes) + 1):
        for combo in combinations(primes, size):
            m_d = prod(combo) if combo else 1
            subsets.append((m_d, -1 if size & 1 else 1, {}, {}))

    def admissible(x: int) -> bool:
        return all(x % p for p in primes)

    def insert(j, delta):
        v = inv[j] if delta > 0 else -inv[j]
        pj = j & 1
        for m_d, _, table, ctable in subsets:
            key = (j % m_d, pj)
            table[key] = reduce_fn(table.get(key, zero) + v)
            ctable[key] = ctable.get(key, 0) + delta

    for j in range(1, n - 1):
        if admissible(j):
            insert(j, 1)

    total = zero
    count = 0
    for i in range(1, n - 1):
        t = n - i
        if i >= 2 and admissible(t):
            insert(t, -1)  # shrink prefix to j <= t - 1
        if not admissible(i):
            continue
        pi = i & 1
        pjs = _allowed_inner_parities(allowed, pi, t)
        if not pjs:
            continue
        u = zero
        c = 0
        for m_d, sgn, table, ctable in subsets:
            cls = t % m_d
            for pj in pjs:
                key = (cls, pj)
                if key in table:
                    u = u + sgn * table[key]
                    c += sgn * ctable[key]
        term = reduce_fn(2 * inv[i] * inv[t] * reduce_fn(u))
        if alt and pi:
            term = -term
        total = reduce_fn(total + term)
        count += c
    return total, count


def triple_sum_exact(spec: TripleSumSpec) -> SumResult:
    """The exact rational value of the sum; n capped (big rationals)."""
    start = time.perf_counter()
    if spec.n > EXACT_CAP:
        raise CapExceeded("triple_sum_exact", spec.n, EXACT_CAP)
    reduced = _strip_even_radical(spec)
    if reduced is None:
        return _zero_result(spec, "exact", None, start)
    inv = [Fraction(0)] + [Fraction(1, x) for x in range(1, reduced.n)]
    value, count = _class_engine(
        reduced.n,
        _radical_primes(reduced.radical),
        reduced.sign is SignVariant.ALT_FIRST,
        reduced.parity,
        inv,
        lambda v: v,
        Fraction(0),
    )
    return SumResult(value, count, "exact", time.perf_counter() - start)


# ---------------------------------------------------------------------------
# fast path mod p^alpha


def _fast_python(n, primes, alt, parity, modulus) -> tuple[int, int]:
    inv = [0] * n
    coprime = [x for x in range(1, n) if gcd(x, modulus) == 1]
    from .modarith import batch_inverse

    for x, ix in zip(coprime, batch_inverse(coprime, modulus)):
        inv[x] = ix
    value, count = _class_engine(
        n, primes, alt, parity, inv, lambda v: v % modulus, 0
    )
    return value % modulus, count


def _fast_numpy(n, primes, alt, parity, pp: PrimePower) -> tuple[int, int]:
    """Vectorized form of the class-accumulator engine.

    Prefix sums per class become strided cumulative sums: lay the inverse
    table out in rows of length 2 * M_D (the factor 2 carries parity; M_D
    is odd so the classes mod 2M_D split cleanly), cumsum down the rows,
    then gather one entry per t.  Everything stays inside int64: the
    modulus is below 2^31 and row sums are reduced before they can grow
    past n * modulus < 2^62.
    """
    m = pp.modulus
    allowed = _ALLOWED[parity]
    p = pp.p

    x = np.arange(n, dtype=np.int64)
    base = x % m
    invp = np.ones(n, dtype=np.int64)
    e = pp.totient - 1
    b = base.copy()
    while e:
        if e & 1:
            invp = invp * b % m
        b = b * b % m
        e >>= 1
    invp[x % p == 0] = 0
    invp[0] = 0
    inv_r = invp.copy()
    for r in primes:
        if r != p:
            inv_r[x % r == 0] = 0
    adm = inv_r != 0

    t = np.arange(2, n, dtype=np.int64)  # i = n - t runs n-2 .. 1
    i = n - t
    pi = (i & 1).astype(np.int64)

    u_acc = np.zeros(n - 2, dtype=np.int64)
    c_acc = np.zeros(n - 2, dtype=np.int64)
    cnt = adm.astype(np.int64)

    for size in range(len(primes) + 1):
        for combo in combinations(primes, size):
            m_d = prod(combo) if combo else 1
            sgn = -1 if size & 1 else 1
            row_len = 2 * m_d
            rows = -(-n // row_len)
            padded = np.zeros(rows * row_len, dtype=np.int64)
            padded[:n] = inv_r
            csum = padded.reshape(rows, row_len).cumsum(axis=0) % m
            cpad = np.zeros(rows * row_len, dtype=np.int64)
            cpad[:n] = cnt
            ccnt = cpad.reshape(rows, row_len).cumsum(axis=0)
            t_mod = t % m_d
            for pj in (0, 1):
                # index < 2*M_D hitting class t_mod (mod M_D) and parity pj
                rho = np.where((t_mod & 1) == pj, t_mod, t_mod + m_d)
                r_idx = (t - 1 - rho) // row_len
                ok = r_idx >= 0
                vals = np.where(ok, csum[r_idx.clip(min=0), rho], 0)
                cvals = np.where(ok, ccnt[r_idx.clip(min=0), rho], 0)
                pk = ((t - pj) & 1).astype(np.int64)
                mask = np.zeros(n - 2, dtype=bool)
                for (a, b_, c) in allowed:
                    if b_ == pj:
                        mask |= (pi == a) & (pk == c)
                u_acc += sgn * np.where(mask, vals, 0)
                c_acc += sgn * np.where(mask, cvals, 0)
            u_acc %= m

    term = inv_r[i] * 2 % m * invp[t] % m * u_acc % m
    if alt:
        term = np.where(pi == 1, -term, term)
    total = int(term.sum() % m) % m
    count = int(np.where(inv_r[i] != 0, c_acc, 0).sum())
    return total, count


def triple_sum_fast(
    spec: TripleSumSpec, pp: PrimePower, cofactor_primes=()
) -> SumResult:
    """Sum mod pp.modulus in O(n * 2^omega); equals brute force by construction.

    Requires radical = pp.p * product(cofactor_primes) and pp.p | n (which
    keeps every t = n - i invertible).  EXACTLY_ONE_* filters are served by
    brute force only.
    """
    start = time.perf_counter()
    if spec.parity in (
        ParityFilter.EXACTLY_ONE_EVEN,
        ParityFilter.EXACTLY_ONE_ODD,
    ):
        raise UnsupportedFilter(
            f"fast path does not evaluate {spec.parity.value}; use brute force"
        )
    cof = sorted(set(cofactor_primes))
    if (
        prod(cof, start=pp.p) != spec.radical
        or pp.p in cof
        or not all(is_prime(r) for r in cof)
    ):
        raise ParameterError(
            f"radical {spec.radical} != {pp.p} * {cof}; "
            "cofactor primes must be the other primes of the radical"
        )
    if spec.n % pp.p:
        raise ParameterError(
            f"fast path needs p | n so that n - i stays invertible "
            f"(p={pp.p}, n={spec.n})"
        )
    reduced = _strip_even_radical(spec)
    if reduced is None:
        return _zero_result(spec, "fast", pp.modulus, start)
    primes = _radical_primes(reduced.radical)
    alt = reduced.sign is SignVariant.ALT_FIRST
    if pp.modulus < _NUMPY_MOD_LIMIT and reduced.n * pp.modulus < 2 ** 62:
        value, count = _fast_numpy(reduced.n, primes, alt, reduced.parity, pp)
    else:
        value, count = _fast_python(
            reduced.n, primes, alt, reduced.parity, pp.modulus
        )
    return SumResult(
        Residue(value, pp.modulus), count, "fast", time.perf_counter() - start
    )


# ---------------------------------------------------------------------------
# tuple sums (arity 2 and 4)


def tuple_sum_bruteforce(
    n: int, arity: int, radical: int, modulus: int
) -> SumResult:
    """Sum of 1/(x_1 ... x_arity) over compositions of n into coprime parts.

    Arity 2 is a single loop.  Arity 4 is evaluated as a convolution of
    pair sums: sum over t of C2(t) * C2(n - t), an exact regrouping of the
    quadruple loop.
    """
    start = time.perf_counter()
    if arity not in (2, 4):
        raise ParameterError(f"arity must be 2 or 4, got {arity}")
    if n < arity:
        raise ParameterError(f"need n >= arity, got n={n}, arity={arity}")
    if radical < 1 or not is_squarefree(radical):
        raise ParameterError(f"radical must be squarefree, got {radical}")
    if arity == 4 and n > QUAD_CAP:
        raise CapExceeded("tuple_sum_bruteforce arity 4", n, QUAD_CAP)

    primes = _radical_primes(radical)
    inv = [0] * n
    for x in range(1, n):
        if all(x % p for p in primes):
            g = gcd(x, modulus)
            if g != 1:
                raise NotInvertible(x % modulus, modulus, g)
            inv[x] = pow(x, -1, modulus)

    def pair(total: int) -> tuple[int, int]:
        s = 0
        c = 0
        for a in range(1, total):
            if inv[a] and inv[total - a]:
                s += inv[a] * inv[total - a] % modulus
                c += 1
        return s % modulus, c

    if arity == 2:
        value, count = pair(n)
    else:
        value = 0
        count = 0
        for t in range(2, n - 1):
            s1, c1 = pair(t)
            s2, c2 = pair(n - t)
            value = (value + s1 * s2) % modulus
            count += c1 * c2
    return SumResult(
        Residue(value, modulus), count, "bruteforce", time.perf_counter() - start
    )
