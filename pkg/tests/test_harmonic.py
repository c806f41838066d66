"""Triple-sum evaluators: brute-force oracle, exact rationals, fast path."""

from fractions import Fraction
from math import gcd, prod

import pytest

from harmsum.errors import (
    CapExceeded,
    NotInvertible,
    ParameterError,
    UnsupportedFilter,
)
from harmsum.harmonic import (
    ParityFilter,
    SignVariant,
    TripleSumSpec,
    _fast_numpy,
    _fast_python,
    triple_sum_bruteforce,
    triple_sum_exact,
    triple_sum_fast,
    tuple_sum_bruteforce,
)
from harmsum.modarith import PrimePower, Residue, factorize

POOL = (3, 5, 7, 11, 13)
FILTERS = (ParityFilter.ALL, ParityFilter.ALL_ODD, ParityFilter.ALL_EVEN)


def _radical(n):
    return prod(factorize(n))


def _naive(spec, mode="exact", modulus=None):
    """Reference triple loop, written independently of the package paths."""
    primes = [r for r in factorize(spec.radical)]
    total = Fraction(0) if mode == "exact" else 0
    count = 0
    for i in range(1, spec.n - 1):
        if any(i % r == 0 for r in primes):
            continue
        for j in range(1, spec.n - i):
            k = spec.n - i - j
            if k < 1:
                continue
            if any(j % r == 0 or k % r == 0 for r in primes):
                continue
            par = (i % 2, j % 2, k % 2)
            odd = sum(par)
            if spec.parity is ParityFilter.ALL_ODD and odd != 3:
                continue
            if spec.parity is ParityFilter.ALL_EVEN and odd != 0:
                continue
            if spec.parity is ParityFilter.EXACTLY_ONE_EVEN and odd != 2:
                continue
            if spec.parity is ParityFilter.EXACTLY_ONE_ODD and odd != 1:
                continue
            sign = -1 if (spec.sign is SignVariant.ALT_FIRST and i % 2) else 1
            if mode == "exact":
                total += Fraction(sign, i * j * k)
            else:
                total = (total + sign * pow(i * j * k, -1, modulus)) % modulus
            count += 1
    return total, count


def test_bruteforce_spots():
    assert triple_sum_bruteforce(TripleSumSpec(3, 3), 3).residue == Residue(1, 3)
    assert triple_sum_bruteforce(TripleSumSpec(5, 5), 5).residue == Residue(3, 5)
    alt = TripleSumSpec(5, 5, SignVariant.ALT_FIRST)
    assert triple_sum_bruteforce(alt, 5).residue == Residue(3, 5)
    odd = TripleSumSpec(15, 15, parity=ParityFilter.ALL_ODD)
    assert triple_sum_bruteforce(odd, 5).residue == Residue(3, 5)


def test_exact_spots():
    assert triple_sum_exact(TripleSumSpec(5, 5)).residue == Fraction(7, 4)
    assert triple_sum_exact(TripleSumSpec(7, 7)).residue == Fraction(29, 15)
    alt = TripleSumSpec(5, 5, SignVariant.ALT_FIRST)
    assert triple_sum_exact(alt).residue == Fraction(-3, 4)
    assert triple_sum_exact(TripleSumSpec(5, 5)).term_count == 6


def test_fast_spots():
    spec = TripleSumSpec(15, 15)
    assert triple_sum_fast(spec, PrimePower(5, 1), [3]).residue == Residue(4, 5)
    alt = TripleSumSpec(15, 15, SignVariant.ALT_FIRST)
    assert triple_sum_fast(alt, PrimePower(5, 1), [3]).residue == Residue(4, 5)
    tiny = TripleSumSpec(3, 3)
    assert triple_sum_fast(tiny, PrimePower(3, 1), []).residue == Residue(1, 3)


def test_methods_and_counts_agree_on_random_spots():
    # one mid-size case per (sign, filter) against the independent loop
    for sign in SignVariant:
        for par in FILTERS:
            spec = TripleSumSpec(105, 105, sign, par)
            want, count = _naive(spec, "mod", modulus=49)
            brute = triple_sum_bruteforce(spec, 49)
            fast = triple_sum_fast(spec, PrimePower(7, 2), [3, 5])
            exact = triple_sum_exact(spec)
            assert brute.residue.value == want
            assert fast.residue.value == want
            assert brute.term_count == count
            assert fast.term_count == count
            assert exact.term_count == count
            assert brute.method == "bruteforce"
            assert fast.method == "fast"
            assert exact.method == "exact"


def test_oracle_equivalence_grid():
    # fast path == brute force on every prime-pair target up to 1000
    cases = 0
    for p in POOL:
        for q in POOL:
            if p == q:
                continue
            a = 1
            while p ** a * q <= 1000:
                b = 1
                while (n := p ** a * q ** b) <= 1000:
                    pp = PrimePower(p, a)
                    for sign in SignVariant:
                        for par in FILTERS:
                            spec = TripleSumSpec(n, p * q, sign, par)
                            brute = triple_sum_bruteforce(spec, pp.modulus)
                            fast = triple_sum_fast(spec, pp, [q])
                            assert brute.residue == fast.residue, (spec, pp)
                            assert brute.term_count == fast.term_count
                            cases += 1
                    b += 1
                a += 1
    assert cases >= 150


def test_fast_engines_agree_bitwise():
    # pure-python and vectorized class engines must match exactly
    for (n, rad, p, a) in [(225, 15, 5, 2), (225, 15, 3, 2), (539, 77, 7, 2),
                           (1125, 15, 5, 3), (3465, 1155, 11, 1)]:
        primes = sorted(factorize(rad))
        pp = PrimePower(p, a)
        for alt in (False, True):
            for par in FILTERS:
                assert _fast_python(n, primes, alt, par, pp.modulus) == \
                    _fast_numpy(n, primes, alt, par, pp)


def test_even_radical_reduces_to_odd_subproblem():
    # radical 30 forces odd parts; fast and brute must agree on that domain
    spec = TripleSumSpec(45, 30)
    brute = triple_sum_bruteforce(spec, 5)
    fast = triple_sum_fast(spec, PrimePower(5, 1), [2, 3])
    assert brute.residue == fast.residue == Residue(4, 5)
    assert brute.term_count == fast.term_count == 30


def test_parity_partition_exact():
    # odd totals split into all-odd and exactly-one-odd triples;
    # even totals (odd radical) into all-even and exactly-one-even
    for n in range(3, 201):
        radical = _radical(n) if n % 2 else prod(r for r in factorize(n) if r != 2)
        whole = triple_sum_exact(TripleSumSpec(n, radical)).residue
        if n % 2:
            parts = (ParityFilter.ALL_ODD, ParityFilter.EXACTLY_ONE_ODD)
        else:
            parts = (ParityFilter.ALL_EVEN, ParityFilter.EXACTLY_ONE_EVEN)
        split = sum(
            triple_sum_exact(TripleSumSpec(n, radical, parity=f)).residue
            for f in parts
        )
        assert whole == split, f"partition fails at n={n}"


def test_even_rescaling_exact():
    # doubling an odd target and restricting to even parts divides by 8
    for n in range(3, 100, 2):
        radical = _radical(n)
        doubled = triple_sum_exact(
            TripleSumSpec(2 * n, radical, parity=ParityFilter.ALL_EVEN)
        ).residue
        base = triple_sum_exact(TripleSumSpec(n, radical)).residue
        assert doubled == base / 8, f"rescaling fails at n={n}"


def test_reflection_antisymmetry():
    # sum over i+j+k = 2N with every part below N is -Z(N) mod N
    for n in (15, 45, 75, 135):
        radical = _radical(n)
        acc = 0
        for i in range(1, n):
            if gcd(i, radical) != 1:
                continue
            for j in range(1, n):
                k = 2 * n - i - j
                if not 1 <= k < n:
                    continue
                if gcd(j, radical) != 1 or gcd(k, radical) != 1:
                    continue
                acc = (acc + pow(i * j * k, -1, n)) % n
        z = triple_sum_bruteforce(TripleSumSpec(n, radical), n).residue.value
        assert acc == (-z) % n, f"reflection fails at N={n}"


def test_empty_domains():
    # even total with even radical: three odd parts cannot reach it
    brute = triple_sum_bruteforce(TripleSumSpec(6, 6), 9)
    assert brute.residue == Residue(0, 9)
    assert brute.term_count == 0
    for spec in (
        TripleSumSpec(9, 3, parity=ParityFilter.ALL_EVEN),
        TripleSumSpec(30, 15, parity=ParityFilter.ALL_ODD),
    ):
        result = triple_sum_exact(spec)
        assert result.residue == 0
        assert result.term_count == 0
    fast = triple_sum_fast(TripleSumSpec(30, 30), PrimePower(5, 1), [2, 3])
    assert fast.residue == Residue(0, 5)
    assert fast.term_count == 0


def test_spec_validation():
    with pytest.raises(ParameterError):
        TripleSumSpec(2, 3)
    with pytest.raises(ParameterError):
        TripleSumSpec(15, 45)  # radical must be squarefree
    with pytest.raises(ParameterError):
        TripleSumSpec(15, 0)


def test_fast_path_validation():
    spec = TripleSumSpec(15, 15)
    with pytest.raises(ParameterError):
        triple_sum_fast(spec, PrimePower(7, 1), [3])  # 7 does not divide 15
    with pytest.raises(ParameterError):
        triple_sum_fast(spec, PrimePower(5, 1), [])  # cofactors must rebuild 15
    with pytest.raises(ParameterError):
        triple_sum_fast(spec, PrimePower(5, 1), [3, 5])
    with pytest.raises(ParameterError):
        triple_sum_fast(TripleSumSpec(45, 15), PrimePower(3, 1), [5, 1])
    with pytest.raises(UnsupportedFilter):
        triple_sum_fast(
            TripleSumSpec(15, 15, parity=ParityFilter.EXACTLY_ONE_EVEN),
            PrimePower(5, 1),
            [3],
        )


def test_bruteforce_requires_invertible_domain():
    with pytest.raises(NotInvertible):
        triple_sum_bruteforce(TripleSumSpec(15, 15), 4)


def test_caps():
    with pytest.raises(CapExceeded):
        triple_sum_exact(TripleSumSpec(5001, 5))
    with pytest.raises(CapExceeded):
        tuple_sum_bruteforce(401, 4, 401, 5)


def test_tuple_sums():
    assert tuple_sum_bruteforce(5, 2, 5, 25).residue == Residue(5, 25)
    assert tuple_sum_bruteforce(3, 2, 3, 9).residue == Residue(1, 9)
    quad = tuple_sum_bruteforce(5, 4, 5, 5)
    assert quad.residue == Residue(2, 5)
    assert quad.term_count == 4  # the permutations of (1,1,1,2)
    with pytest.raises(ParameterError):
        tuple_sum_bruteforce(9, 3, 3, 27)


def test_tuple_quad_matches_direct_loop():
    n, radical, modulus = 14, 7, 49
    acc, count = 0, 0
    for i1 in range(1, n):
        for i2 in range(1, n - i1):
            for i3 in range(1, n - i1 - i2):
                i4 = n - i1 - i2 - i3
                if i4 < 1:
                    continue
                if any(x % 7 == 0 for x in (i1, i2, i3, i4)):
                    continue
                acc = (acc + pow(i1 * i2 * i3 * i4, -1, modulus)) % modulus
                count += 1
    result = tuple_sum_bruteforce(n, 4, radical, modulus)
    assert result.residue.value == acc
    assert result.term_count == count
