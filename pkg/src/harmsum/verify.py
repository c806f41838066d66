"""Statement registry: compute each side of every congruence independently.

Every verifier builds its LHS from the harmonic module (fast path where the
statement's shape allows, brute force otherwise) and its RHS from the
formulas module, then compares residues.  Nothing here assumes the theorem
under test; a failing congruence produces a failing report, never an error.

Statement ids:
    eq1, eq2          Wolstenholme-type Z(p) / Z(p^r) congruences
    xia_cai           Z(p) mod p^2, two denominator variants
    zhao_tuple        arity-2/4 analogues mod p^{r+1}
    eq3               Z(p^alpha q^beta) mod p^alpha
    lemma1            sum at m*N vs m*Z(N)
    lemma2            Z(N) === 0 mod N for criterion pairs
    thm1, thm2, thm3  sums at 2N / alternating / all-odd
    remark1_pq_*      composite-n forms mod pq
    remark1_pr_*      prime-power forms mod p^r
    conjecture_*      general-n component forms mod p^alpha
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd, prod

from . import formulas
from .errors import ParameterError, PoleAtIndex
from .harmonic import (
    ParityFilter,
    SignVariant,
    TripleSumSpec,
    triple_sum_bruteforce,
    triple_sum_fast,
    tuple_sum_bruteforce,
)
from .modarith import PrimePower, Residue, crt_combine, factorize, is_prime

STATEMENTS = (
    "eq1",
    "eq2",
    "xia_cai",
    "zhao_tuple",
    "eq3",
    "lemma1",
    "lemma2",
    "thm1",
    "thm2",
    "thm3",
    "remark1_pq_alt",
    "remark1_pq_odd",
    "remark1_pr_alt",
    "remark1_pr_odd",
    "conjecture_alt",
    "conjecture_odd",
)

ZHAO_VARIANTS = ("arity2", "arity4")
LEMMA1_VARIANTS = ("printed", "strong")

DEFAULT_POOL = (3, 5, 7, 11, 13)
FAST_CAP = 10 ** 5
ORACLE_CAP = 3000


def _need_odd_prime(value, name):
    if value is None or value == 2 or not is_prime(value):
        raise ParameterError(f"{name} must be an odd prime, got {value}")


def _need_positive(value, name):
    if value is None or value < 1:
        raise ParameterError(f"{name} must be a positive integer, got {value}")


def _reject_extras(params, allowed):
    for name in ("p", "q", "alpha", "beta", "r", "m", "n", "variant"):
        if name not in allowed and getattr(params, name) is not None:
            raise ParameterError(
                f"{params.statement} does not take parameter {name!r}"
            )


@dataclass(frozen=True)
class StatementParams:
    """Parameters of one verification; construction validates the signature."""

    statement: str
    p: int | None = None
    q: int | None = None
    alpha: int | None = None
    beta: int | None = None
    r: int | None = None
    m: int | None = None
    n: int | None = None
    variant: str | None = None

    def __post_init__(self):
        if self.statement not in STATEMENTS:
            raise ParameterError(f"unknown statement {self.statement!r}")
        getattr(self, f"_check_{self.statement}")()

    # -- per-statement signatures ------------------------------------------

    def _check_eq1(self):
        _reject_extras(self, {"p"})
        _need_odd_prime(self.p, "p")

    def _check_eq2(self):
        _reject_extras(self, {"p", "r"})
        _need_odd_prime(self.p, "p")
        _need_positive(self.r, "r")

    def _check_xia_cai(self):
        _reject_extras(self, {"p", "variant"})
        _need_odd_prime(self.p, "p")
        if self.p <= 5:
            raise ParameterError(f"xia_cai requires p > 5, got {self.p}")
        if self.variant is None:
            object.__setattr__(self, "variant", "printed")
        if self.variant not in formulas.XIA_CAI_VARIANTS:
            raise ParameterError(f"unknown xia_cai variant {self.variant!r}")

    def _check_zhao_tuple(self):
        _reject_extras(self, {"p", "r", "variant"})
        _need_odd_prime(self.p, "p")
        _need_positive(self.r, "r")
        if self.variant is None:
            object.__setattr__(self, "variant", "arity2")
        if self.variant not in ZHAO_VARIANTS:
            raise ParameterError(f"unknown zhao_tuple variant {self.variant!r}")
        arity = self._zhao_arity()
        # stated for r >= arity/2 and p > arity
        if 2 * self.r < arity:
            raise ParameterError(
                f"zhao_tuple arity {arity} needs r >= {arity // 2}, got {self.r}"
            )
        if self.p <= arity:
            raise ParameterError(
                f"zhao_tuple arity {arity} needs p > {arity}, got {self.p}"
            )

    def _zhao_arity(self) -> int:
        return 2 if self.variant == "arity2" else 4

    def _check_pq_exponents(self):
        _need_odd_prime(self.p, "p")
        _need_odd_prime(self.q, "q")
        if self.p == self.q:
            raise ParameterError("p and q must be distinct")
        _need_positive(self.alpha, "alpha")
        _need_positive(self.beta, "beta")

    def _check_eq3(self):
        _reject_extras(self, {"p", "q", "alpha", "beta"})
        self._check_pq_exponents()

    _check_thm1 = _check_eq3
    _check_thm2 = _check_eq3
    _check_thm3 = _check_eq3

    def _check_lemma1(self):
        _reject_extras(self, {"p", "q", "alpha", "beta", "m", "variant"})
        self._check_pq_exponents()
        _need_positive(self.m, "m")
        if gcd(self.m, self.p * self.q) != 1:
            raise ParameterError(
                f"lemma1 multiplier m={self.m} must be coprime to pq"
            )
        if self.variant is None:
            object.__setattr__(self, "variant", "printed")
        if self.variant not in LEMMA1_VARIANTS:
            raise ParameterError(f"unknown lemma1 variant {self.variant!r}")

    def _check_lemma2(self):
        _reject_extras(self, {"p", "q", "alpha", "beta"})
        self._check_pq_exponents()
        if not lemma2_criterion(self.p, self.q):
            raise ParameterError(
                f"lemma2 criterion is false for ({self.p}, {self.q})"
            )

    def _check_remark1_pq_alt(self):
        _reject_extras(self, {"p", "q"})
        _need_odd_prime(self.p, "p")
        _need_odd_prime(self.q, "q")
        if self.p == self.q:
            raise ParameterError("p and q must be distinct")

    _check_remark1_pq_odd = _check_remark1_pq_alt

    def _check_remark1_pr_alt(self):
        _reject_extras(self, {"p", "r"})
        _need_odd_prime(self.p, "p")
        _need_positive(self.r, "r")

    _check_remark1_pr_odd = _check_remark1_pr_alt

    def _check_conjecture_alt(self):
        _reject_extras(self, {"n", "p"})
        _need_odd_prime(self.p, "p")
        if self.n is None or self.n <= 1:
            raise ParameterError(f"conjecture needs n > 1, got {self.n}")
        if self.n % self.p:
            raise ParameterError(f"p={self.p} must divide n={self.n}")

    _check_conjecture_odd = _check_conjecture_alt


@dataclass
class CongruenceReport:
    params: StatementParams
    modulus: int
    lhs: Residue
    rhs: Residue
    passed: bool
    method: str
    elapsed: float
    extras: dict = field(default_factory=dict)


def lemma2_criterion(p: int, q: int) -> bool:
    """p = q^2+q+1, or q = p^2+p+1, or (p | q^2+q+1 and q | p^2+p+1)."""
    return (
        p == q * q + q + 1
        or q == p * p + p + 1
        or ((q * q + q + 1) % p == 0 and (p * p + p + 1) % q == 0)
    )


def _radical(n: int) -> int:
    return prod(factorize(n))


def _fast_or_brute(spec: TripleSumSpec, pp: PrimePower, use_oracle: bool):
    if use_oracle:
        return triple_sum_bruteforce(spec, pp.modulus)
    cof = set(factorize(spec.radical)) - {pp.p}
    return triple_sum_fast(spec, pp, cof)


def _crt_sum(spec_n, radical, sign, parity, pps, use_oracle):
    """Sum mod a product of prime powers, one fast run per component + CRT."""
    spec = TripleSumSpec(spec_n, radical, sign, parity)
    parts = [_fast_or_brute(spec, pp, use_oracle) for pp in pps]
    residue = crt_combine([part.residue for part in parts])
    method = parts[0].method
    count = parts[0].term_count
    return residue, method, count


# ---------------------------------------------------------------------------
# verifiers


def _make_report(params, lhs, rhs, method, start, extras=None) -> CongruenceReport:
    passed = lhs.modulus == rhs.modulus and lhs.value == rhs.value
    return CongruenceReport(
        params,
        lhs.modulus,
        lhs,
        rhs,
        passed,
        method,
        time.perf_counter() - start,
        extras or {},
    )


def _verify_eq1(params, use_oracle, start):
    p = params.p
    res = _fast_or_brute(TripleSumSpec(p, p), PrimePower(p, 1), use_oracle)
    return _make_report(params, res.residue, formulas.eq1_rhs(p), res.method, start)


def _verify_eq2(params, use_oracle, start):
    p, r = params.p, params.r
    res = _fast_or_brute(TripleSumSpec(p ** r, p), PrimePower(p, r), use_oracle)
    return _make_report(
        params, res.residue, formulas.eq2_rhs(p, r), res.method, start
    )


def _verify_xia_cai(params, use_oracle, start):
    p = params.p
    res = _fast_or_brute(TripleSumSpec(p, p), PrimePower(p, 2), use_oracle)
    rhs = formulas.xia_cai_rhs(p, params.variant)
    return _make_report(params, res.residue, rhs, res.method, start)


def _verify_zhao_tuple(params, use_oracle, start):
    p, r = params.p, params.r
    arity = params._zhao_arity()
    res = tuple_sum_bruteforce(p ** r, arity, p, p ** (r + 1))
    rhs = formulas.zhao_rhs(p, r, arity)
    return _make_report(params, res.residue, rhs, res.method, start)


def _verify_eq3(params, use_oracle, start):
    p, q, a, b = params.p, params.q, params.alpha, params.beta
    n = p ** a * q ** b
    res = _fast_or_brute(TripleSumSpec(n, p * q), PrimePower(p, a), use_oracle)
    rhs = formulas.eq3_rhs(p, a, q, b)
    return _make_report(params, res.residue, rhs, res.method, start)


def _verify_lemma1(params, use_oracle, start):
    p, q, a, b, m = params.p, params.q, params.alpha, params.beta, params.m
    n = m * p ** a * q ** b
    if params.variant == "strong":
        lhs, method, _ = _crt_sum(
            n,
            p * q,
            SignVariant.PLAIN,
            ParityFilter.ALL,
            [PrimePower(p, a), PrimePower(q, b)],
            use_oracle,
        )
        rhs = formulas.lemma1_strong_rhs(p, a, q, b, m)
    else:
        res = _fast_or_brute(TripleSumSpec(n, p * q), PrimePower(p, a), use_oracle)
        lhs, method = res.residue, res.method
        rhs = formulas.lemma1_rhs(p, a, q, b, m)
    return _make_report(params, lhs, rhs, method, start)


def _verify_lemma2(params, use_oracle, start):
    p, q, a, b = params.p, params.q, params.alpha, params.beta
    n = p ** a * q ** b
    lhs, method, _ = _crt_sum(
        n,
        p * q,
        SignVariant.PLAIN,
        ParityFilter.ALL,
        [PrimePower(p, a), PrimePower(q, b)],
        use_oracle,
    )
    return _make_report(params, lhs, Residue(0, n), method, start)


def _verify_thm1(params, use_oracle, start):
    p, q, a, b = params.p, params.q, params.alpha, params.beta
    n = p ** a * q ** b
    res = _fast_or_brute(
        TripleSumSpec(2 * n, p * q, SignVariant.ALT_FIRST),
        PrimePower(p, a),
        use_oracle,
    )
    rhs = formulas.thm1_rhs(p, a, q, b)
    # the printed chain passes through -Z(N)/2; carry that residue too
    z = _fast_or_brute(TripleSumSpec(n, p * q), PrimePower(p, a), use_oracle)
    half = Residue(pow(2, -1, p ** a), p ** a)
    mid = -half * z.residue
    extras = {
        "minus_half_z": mid.value,
        "chain_pass": mid.value == res.residue.value,
    }
    return _make_report(params, res.residue, rhs, res.method, start, extras)


def _verify_thm2(params, use_oracle, start):
    p, q, a, b = params.p, params.q, params.alpha, params.beta
    n = p ** a * q ** b
    res = _fast_or_brute(
        TripleSumSpec(n, p * q, SignVariant.ALT_FIRST),
        PrimePower(p, a),
        use_oracle,
    )
    rhs = formulas.thm2_rhs(p, a, q, b)
    z = _fast_or_brute(TripleSumSpec(n, p * q), PrimePower(p, a), use_oracle)
    quarter = Residue(pow(4, -1, p ** a), p ** a)
    mid = -quarter * z.residue
    extras = {
        "minus_quarter_z": mid.value,
        "chain_pass": mid.value == res.residue.value,
    }
    return _make_report(params, res.residue, rhs, res.method, start, extras)


def _verify_thm3(params, use_oracle, start):
    p, q, a, b = params.p, params.q, params.alpha, params.beta
    n = p ** a * q ** b
    res = _fast_or_brute(
        TripleSumSpec(n, p * q, parity=ParityFilter.ALL_ODD),
        PrimePower(p, a),
        use_oracle,
    )
    rhs = formulas.thm3_rhs(p, a, q, b)
    z = _fast_or_brute(TripleSumSpec(n, p * q), PrimePower(p, a), use_oracle)
    coeff = Residue(7 * pow(16, -1, p ** a), p ** a)
    mid = coeff * z.residue
    extras = {
        "seven_sixteenths_z": mid.value,
        "chain_pass": mid.value == res.residue.value,
    }
    return _make_report(params, res.residue, rhs, res.method, start, extras)


def _verify_remark1_pq(params, which, use_oracle, start):
    p, q = params.p, params.q
    n = p * q
    sign = SignVariant.ALT_FIRST if which == "alt" else SignVariant.PLAIN
    parity = ParityFilter.ALL if which == "alt" else ParityFilter.ALL_ODD
    rhs, note = formulas.remark1_composite_rhs(p, q, which)
    lhs, method, _ = _crt_sum(
        n, n, sign, parity, [PrimePower(p, 1), PrimePower(q, 1)], use_oracle
    )
    return _make_report(
        params, lhs, rhs, method, start, {"bernoulli_note": note}
    )


def _verify_remark1_pr(params, which, use_oracle, start):
    p, r = params.p, params.r
    sign = SignVariant.ALT_FIRST if which == "alt" else SignVariant.PLAIN
    parity = ParityFilter.ALL if which == "alt" else ParityFilter.ALL_ODD
    res = _fast_or_brute(
        TripleSumSpec(p ** r, p, sign, parity), PrimePower(p, r), use_oracle
    )
    rhs = formulas.remark1_prime_power_rhs(p, r, which)
    return _make_report(params, res.residue, rhs, res.method, start)


def _verify_conjecture(params, which, use_oracle, start):
    n, p = params.n, params.p
    alpha = factorize(n)[p]
    sign = SignVariant.ALT_FIRST if which == "alt" else SignVariant.PLAIN
    parity = ParityFilter.ALL if which == "alt" else ParityFilter.ALL_ODD
    rhs = formulas.conjecture_rhs(n, p, alpha, which)
    extras = {}
    if n % 2 == 0:
        # three odd parts cannot sum to an even n: both sides are zero
        extras["vacuous"] = True
    res = _fast_or_brute(
        TripleSumSpec(n, _radical(n), sign, parity),
        PrimePower(p, alpha),
        use_oracle,
    )
    return _make_report(params, res.residue, rhs, res.method, start, extras)


_VERIFIERS = {
    "eq1": _verify_eq1,
    "eq2": _verify_eq2,
    "xia_cai": _verify_xia_cai,
    "zhao_tuple": _verify_zhao_tuple,
    "eq3": _verify_eq3,
    "lemma1": _verify_lemma1,
    "lemma2": _verify_lemma2,
    "thm1": _verify_thm1,
    "thm2": _verify_thm2,
    "thm3": _verify_thm3,
    "remark1_pq_alt": lambda p_, o, s: _verify_remark1_pq(p_, "alt", o, s),
    "remark1_pq_odd": lambda p_, o, s: _verify_remark1_pq(p_, "odd", o, s),
    "remark1_pr_alt": lambda p_, o, s: _verify_remark1_pr(p_, "alt", o, s),
    "remark1_pr_odd": lambda p_, o, s: _verify_remark1_pr(p_, "odd", o, s),
    "conjecture_alt": lambda p_, o, s: _verify_conjecture(p_, "alt", o, s),
    "conjecture_odd": lambda p_, o, s: _verify_conjecture(p_, "odd", o, s),
}


def verify(
    params: StatementParams,
    use_oracle: bool = False,
    oracle_check: bool = False,
) -> CongruenceReport:
    """Run one verification; oracle_check reruns the LHS by brute force."""
    start = time.perf_counter()
    report = _VERIFIERS[params.statement](params, use_oracle, start)
    if oracle_check and not use_oracle and report.method == "fast":
        dup = _VERIFIERS[params.statement](params, True, time.perf_counter())
        if dup.lhs == report.lhs:
            report.extras["oracle"] = "agree"
        else:
            report.extras["oracle"] = (
                f"DIVERGENCE fast={report.lhs.value} brute={dup.lhs.value}"
            )
            report.passed = False
    return report


# ---------------------------------------------------------------------------
# grids and scans


def _statement_size(params: StatementParams) -> int:
    """The n whose sum dominates the verification's cost."""
    s = params.statement
    if s in ("eq1", "xia_cai"):
        return params.p
    if s in ("eq2", "remark1_pr_alt", "remark1_pr_odd"):
        return params.p ** params.r
    if s == "zhao_tuple":
        return params.p ** params.r
    if s in ("conjecture_alt", "conjecture_odd"):
        return params.n
    if s in ("remark1_pq_alt", "remark1_pq_odd"):
        return params.p * params.q
    n = params.p ** params.alpha * params.q ** params.beta
    if s == "thm1":
        return 2 * n
    if s == "lemma1":
        return params.m * n
    return n


def default_grid(
    statement: str,
    pool=DEFAULT_POOL,
    alpha_max: int = 2,
    fast_cap: int = FAST_CAP,
) -> tuple[list[StatementParams], list[str]]:
    """Grid of parameters scanned by default, plus notes on skipped points."""
    out: list[StatementParams] = []
    notes: list[str] = []
    pool = tuple(sorted(pool))

    def pq_grid(maker):
        for p in pool:
            for q in pool:
                if p == q:
                    continue
                for a in range(1, alpha_max + 1):
                    for b in range(1, alpha_max + 1):
                        if p ** a * q ** b <= fast_cap:
                            maker(p, q, a, b)

    if statement == "eq1":
        out = [StatementParams("eq1", p=p) for p in pool]
    elif statement == "eq2":
        for p in pool:
            r = 1
            while p ** r <= fast_cap:
                out.append(StatementParams("eq2", p=p, r=r))
                r += 1
    elif statement == "xia_cai":
        for p in pool:
            if p > 5:
                for variant in formulas.XIA_CAI_VARIANTS:
                    out.append(StatementParams("xia_cai", p=p, variant=variant))
    elif statement == "zhao_tuple":
        for p in pool:
            r = 1
            while p ** r <= 2000:
                out.append(
                    StatementParams("zhao_tuple", p=p, r=r, variant="arity2")
                )
                r += 1
        for p in pool:
            if p > 4:
                r = 2
                while p ** r <= 300:
                    out.append(
                        StatementParams("zhao_tuple", p=p, r=r, variant="arity4")
                    )
                    r += 1
    elif statement in ("eq3", "thm1", "thm2", "thm3"):
        pq_grid(
            lambda p, q, a, b: out.append(
                StatementParams(statement, p=p, q=q, alpha=a, beta=b)
            )
        )
    elif statement == "lemma1":
        # the N in {15, 45, 75} family, both orientations, both moduli
        for p, q, a, b in [
            (3, 5, 1, 1),
            (5, 3, 1, 1),
            (3, 5, 2, 1),
            (5, 3, 1, 2),
            (3, 5, 1, 2),
            (5, 3, 2, 1),
        ]:
            for m in (1, 2, 4, 7, 8):
                out.append(
                    StatementParams(
                        "lemma1", p=p, q=q, alpha=a, beta=b, m=m,
                        variant="printed",
                    )
                )
                if p < q:
                    out.append(
                        StatementParams(
                            "lemma1", p=p, q=q, alpha=a, beta=b, m=m,
                            variant="strong",
                        )
                    )
    elif statement == "lemma2":
        for p in pool:
            for q in pool:
                if p < q and lemma2_criterion(p, q):
                    for a in range(1, alpha_max + 1):
                        for b in range(1, alpha_max + 1):
                            if p ** a * q ** b <= fast_cap:
                                out.append(
                                    StatementParams(
                                        "lemma2", p=p, q=q, alpha=a, beta=b
                                    )
                                )
    elif statement in ("remark1_pq_alt", "remark1_pq_odd"):
        for p in pool:
            for q in pool:
                if p < q:
                    try:
                        formulas.remark1_composite_rhs(
                            p, q, statement.rsplit("_", 1)[1]
                        )
                    except PoleAtIndex as exc:
                        notes.append(f"{statement}(p={p}, q={q}) skipped: {exc}")
                        continue
                    out.append(StatementParams(statement, p=p, q=q))
    elif statement in ("remark1_pr_alt", "remark1_pr_odd"):
        for p in pool:
            if p >= 5:
                for r in (1, 2):
                    out.append(StatementParams(statement, p=p, r=r))
    elif statement in ("conjecture_alt", "conjecture_odd"):
        pass  # served by conjecture_scan
    else:
        raise ParameterError(f"unknown statement {statement!r}")
    return out, notes


def _scan_worker(item):
    params, use_oracle, oracle_check = item
    return verify(params, use_oracle=use_oracle, oracle_check=oracle_check)


def scan(
    statements=None,
    pool=DEFAULT_POOL,
    alpha_max: int = 2,
    fast_cap: int = FAST_CAP,
    oracle_cap: int = ORACLE_CAP,
    oracle_check: bool = False,
    threads: int = 1,
) -> tuple[list[CongruenceReport], list[str]]:
    """Verify default grids for the given statements (all scannable if None).

    Work items run in a process pool when threads != 1; reports come back
    in grid order regardless of completion order.
    """
    if statements is None:
        statements = [
            s for s in STATEMENTS if not s.startswith("conjecture")
        ]
    work: list[tuple[StatementParams, bool, bool]] = []
    notes: list[str] = []
    for statement in statements:
        grid, grid_notes = default_grid(statement, pool, alpha_max, fast_cap)
        notes.extend(grid_notes)
        for params in grid:
            check = oracle_check and _statement_size(params) <= oracle_cap
            if oracle_check and not check:
                notes.append(
                    f"{statement}{_param_tuple(params)} above oracle cap "
                    f"{oracle_cap}; fast path not duplicated"
                )
            work.append((params, False, check))
    if threads == 1:
        reports = [_scan_worker(item) for item in work]
    else:
        workers = threads if threads > 0 else None
        with ProcessPoolExecutor(max_workers=workers) as pool_:
            reports = list(pool_.map(_scan_worker, work, chunksize=4))
    return reports, notes


def _param_tuple(params: StatementParams) -> tuple:
    return tuple(
        (k, v)
        for k, v in (
            ("p", params.p),
            ("q", params.q),
            ("alpha", params.alpha),
            ("beta", params.beta),
            ("r", params.r),
            ("m", params.m),
            ("n", params.n),
            ("variant", params.variant),
        )
        if v is not None
    )


def conjecture_scan(
    n_max: int,
    min_distinct_primes: int = 2,
    include_even: bool = False,
    threads: int = 1,
) -> list[CongruenceReport]:
    """Conjecture reports for every qualifying n <= n_max and odd p | n."""
    work = []
    for n in range(3, n_max + 1):
        if n % 2 == 0 and not include_even:
            continue
        fact = factorize(n)
        if len(fact) < min_distinct_primes:
            continue
        for p in sorted(fact):
            if p == 2:
                continue
            for statement in ("conjecture_alt", "conjecture_odd"):
                work.append((StatementParams(statement, n=n, p=p), False, False))
    if threads == 1:
        return [_scan_worker(item) for item in work]
    workers = threads if threads > 0 else None
    with ProcessPoolExecutor(max_workers=workers) as pool_:
        return list(pool_.map(_scan_worker, work, chunksize=8))
