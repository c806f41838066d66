"""Exact congruence checks for restricted harmonic triple sums.

The package computes sums of 1/(ijk) over ordered triples i + j + k = n
with parts coprime to a squarefree radical (optionally signed by (-1)^i
or filtered by parity), evaluates the matching Bernoulli-number formulas,
and reports whether the two sides agree modulo the claimed prime power.
"""

from .bernoulli import (
    BernoulliValue,
    bernoulli_exact,
    bernoulli_mod,
    bernoulli_mod_prime,
    bernoulli_value,
    von_staudt_clausen_denominator,
)
from .errors import (
    CapExceeded,
    HarmsumError,
    ModulusMismatch,
    NonCoprimeModuli,
    NotInvertible,
    ParameterError,
    PoleAtIndex,
    UnsupportedFilter,
)
from .harmonic import (
    ParityFilter,
    SignVariant,
    SumResult,
    TripleSumSpec,
    triple_sum_bruteforce,
    triple_sum_exact,
    triple_sum_fast,
    tuple_sum_bruteforce,
)
from .modarith import (
    PrimePower,
    Rational,
    Residue,
    batch_inverse,
    crt_combine,
    factorize,
    is_prime,
    is_squarefree,
    mod_inverse,
    mod_pow,
    reduce_rational,
)
from .verify import (
    STATEMENTS,
    CongruenceReport,
    StatementParams,
    conjecture_scan,
    default_grid,
    lemma2_criterion,
    scan,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "BernoulliValue",
    "CapExceeded",
    "CongruenceReport",
    "HarmsumError",
    "ModulusMismatch",
    "NonCoprimeModuli",
    "NotInvertible",
    "ParameterError",
    "ParityFilter",
    "PoleAtIndex",
    "PrimePower",
    "Rational",
    "Residue",
    "STATEMENTS",
    "SignVariant",
    "StatementParams",
    "SumResult",
    "TripleSumSpec",
    "UnsupportedFilter",
    "batch_inverse",
    "bernoulli_exact",
    "bernoulli_mod",
    "bernoulli_mod_prime",
    "bernoulli_value",
    "conjecture_scan",
    "crt_combine",
    "default_grid",
    "factorize",
    "is_prime",
    "is_squarefree",
    "lemma2_criterion",
    "mod_inverse",
    "mod_pow",
    "reduce_rational",
    "scan",
    "triple_sum_bruteforce",
    "triple_sum_exact",
    "triple_sum_fast",
    "tuple_sum_bruteforce",
    "verify",
    "von_staudt_clausen_denominator",
]
