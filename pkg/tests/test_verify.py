"""Statement registry: spot values, parameter validation, grids, scans."""

import ast
import pathlib

import pytest

import harmsum
from harmsum.errors import ParameterError, PoleAtIndex
from harmsum.verify import (
    CongruenceReport,
    StatementParams,
    conjecture_scan,
    default_grid,
    lemma2_criterion,
    scan,
    verify,
)

SRC = pathlib.Path(harmsum.__file__).parent


def _local_imports(name):
    tree = ast.parse((SRC / name).read_text())
    found = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom) and node.level:
            found.add(node.module or "")
            found.update(alias.name for alias in node.names if not node.module)
        elif isinstance(node, ast.Import):
            for alias in node.names:
                if alias.name.startswith("harmsum."):
                    found.add(alias.name.split(".", 1)[1])
    return found


def test_layering_is_structural():
    # RHS builders never see sums; sum evaluators never see Bernoulli data;
    # the registry gets Bernoulli values only through the formulas layer
    assert "harmonic" not in _local_imports("formulas.py")
    assert "bernoulli" not in _local_imports("harmonic.py")
    assert "bernoulli" not in _local_imports("verify.py")
    assert "formulas" in _local_imports("verify.py")


def test_lemma2_criterion():
    assert lemma2_criterion(3, 13)  # 13 = 3^2 + 3 + 1
    assert lemma2_criterion(13, 3)  # 13 = 3^2 + 3 + 1, other order
    assert not lemma2_criterion(5, 3)
    # divisibility clause without either equality: 183 = 3*61, 3783 = 13*291
    assert lemma2_criterion(13, 61) and lemma2_criterion(61, 13)


def _check(report, lhs, rhs, modulus, passed=True):
    assert isinstance(report, CongruenceReport)
    assert report.lhs.value == lhs
    assert report.rhs.value == rhs
    assert report.modulus == modulus
    assert report.passed is passed


def test_spot_values():
    _check(verify(StatementParams("eq1", p=7)), 1, 1, 7)
    _check(verify(StatementParams("eq2", p=5, r=2)), 15, 15, 25)
    _check(verify(StatementParams("eq3", p=5, q=3, alpha=1, beta=1)), 4, 4, 5)
    _check(verify(StatementParams("thm2", p=5, q=3, alpha=1, beta=1)), 4, 4, 5)
    _check(verify(StatementParams("thm3", p=5, q=3, alpha=1, beta=1)), 3, 3, 5)
    _check(verify(StatementParams("thm1", p=5, q=3, alpha=1, beta=1)), 3, 3, 5)
    _check(verify(StatementParams("remark1_pr_alt", p=5, r=1)), 3, 3, 5)
    _check(verify(StatementParams("remark1_pr_odd", p=5, r=1)), 1, 1, 5)


def test_spot_values_survive_oracle():
    for params in (
        StatementParams("eq3", p=5, q=3, alpha=1, beta=1),
        StatementParams("thm1", p=5, q=3, alpha=1, beta=1),
        StatementParams("thm3", p=7, q=5, alpha=1, beta=1),
    ):
        fast = verify(params)
        brute = verify(params, use_oracle=True)
        assert fast.lhs == brute.lhs
        assert brute.method == "bruteforce"
        checked = verify(params, oracle_check=True)
        assert checked.extras.get("oracle") == "agree"


def test_xia_cai_variant_split():
    printed = verify(StatementParams("xia_cai", p=7, variant="printed"))
    _check(printed, 15, 22, 49, passed=False)
    alt = verify(StatementParams("xia_cai", p=7, variant="alt_denom"))
    _check(alt, 15, 15, 49)


def test_lemma2_divisibility():
    report = verify(StatementParams("lemma2", p=3, q=13, alpha=1, beta=1))
    _check(report, 0, 0, 39)
    report = verify(StatementParams("lemma2", p=3, q=13, alpha=1, beta=2))
    _check(report, 0, 0, 507)


def test_lemma1_both_moduli():
    printed = verify(
        StatementParams(
            "lemma1", p=5, q=3, alpha=1, beta=1, m=2, variant="printed"
        )
    )
    assert printed.passed and printed.modulus == 5
    strong = verify(
        StatementParams(
            "lemma1", p=5, q=3, alpha=1, beta=1, m=2, variant="strong"
        )
    )
    assert strong.passed and strong.modulus == 15


def test_consistency_chain_extras():
    # the three theorem sums are fixed multiples of one Z value, so each
    # report carries the Z-derived residue next to the formula rhs
    for statement, key in (
        ("thm1", "minus_half_z"),
        ("thm2", "minus_quarter_z"),
        ("thm3", "seven_sixteenths_z"),
    ):
        report = verify(
            StatementParams(statement, p=13, q=11, alpha=1, beta=1)
        )
        assert report.extras["chain_pass"] is True
        assert report.extras[key] == report.lhs.value


def test_consistency_ratios_between_statements():
    for (p, q, a, b) in [(5, 3, 1, 1), (7, 3, 1, 1), (13, 11, 1, 1),
                         (3, 13, 2, 1), (11, 7, 2, 1)]:
        m = p ** a
        l1 = verify(StatementParams("thm1", p=p, q=q, alpha=a, beta=b)).lhs.value
        l2 = verify(StatementParams("thm2", p=p, q=q, alpha=a, beta=b)).lhs.value
        l3 = verify(StatementParams("thm3", p=p, q=q, alpha=a, beta=b)).lhs.value
        assert (l1 - 2 * l2) % m == 0, f"thm1 != 2*thm2 at {(p, q, a, b)}"
        assert (4 * l3 + 7 * l2) % m == 0, f"thm3 != -7/4*thm2 at {(p, q, a, b)}"


def test_half_z_relation_is_congruence_not_identity():
    # the doubled-target alternating sum only matches -Z/2 as residues,
    # never as exact rationals
    from harmsum.harmonic import SignVariant, TripleSumSpec, triple_sum_exact
    from harmsum.modarith import reduce_rational

    alt = triple_sum_exact(
        TripleSumSpec(30, 15, SignVariant.ALT_FIRST)
    ).residue
    z = triple_sum_exact(TripleSumSpec(15, 15)).residue
    assert alt != -z / 2
    assert reduce_rational(alt, 5) == reduce_rational(-z / 2, 5)


def test_remark1_composite_routes():
    agree = verify(StatementParams("remark1_pq_alt", p=5, q=7))
    assert agree.passed
    assert "routes agree" in agree.extras["bernoulli_note"]
    cancelled = verify(StatementParams("remark1_pq_odd", p=3, q=13))
    assert cancelled.passed
    assert "poles at 3" in cancelled.extras["bernoulli_note"]


def test_remark1_composite_pole_pair():
    # at (3, 11) the constant's denominator carries 3^2: no residue mod 33
    for statement in ("remark1_pq_alt", "remark1_pq_odd"):
        with pytest.raises(PoleAtIndex) as info:
            verify(StatementParams(statement, p=3, q=11))
        assert 3 in info.value.primes


def test_conjecture_matches_theorem_values():
    alt = verify(StatementParams("conjecture_alt", n=15, p=5))
    _check(alt, 4, 4, 5)
    odd = verify(StatementParams("conjecture_odd", n=15, p=5))
    _check(odd, 3, 3, 5)


def test_conjecture_even_n_is_vacuous():
    report = verify(StatementParams("conjecture_alt", n=30, p=5))
    _check(report, 0, 0, 5)
    assert report.extras.get("vacuous") is True


def test_params_validation():
    bad = [
        dict(statement="eq1", p=4),
        dict(statement="eq1", p=9),
        dict(statement="eq1", p=5, q=3),  # stray parameter
        dict(statement="eq2", p=5),  # missing r
        dict(statement="thm1", p=5, q=5, alpha=1, beta=1),
        dict(statement="thm1", p=5, alpha=1, beta=1),
        dict(statement="lemma1", p=5, q=3, alpha=1, beta=1, m=6),
        dict(statement="lemma1", p=5, q=3, alpha=1, beta=1, m=2, variant="x"),
        dict(statement="lemma2", p=5, q=3, alpha=1, beta=1),  # criterion false
        dict(statement="xia_cai", p=5),  # needs p > 5
        dict(statement="xia_cai", p=7, variant="bogus"),
        dict(statement="zhao_tuple", p=3, r=1, variant="arity4"),  # p <= 4
        dict(statement="zhao_tuple", p=5, r=1, variant="arity4"),  # r < 2
        dict(statement="zhao_tuple", p=5, r=1, variant="arity3"),
        dict(statement="conjecture_alt", n=15, p=7),  # p does not divide n
        dict(statement="conjecture_alt", n=1, p=3),
        dict(statement="nonsense", p=5),
        dict(statement="eq2", p=5, r=0),
    ]
    for kwargs in bad:
        statement = kwargs.pop("statement")
        with pytest.raises(ParameterError):
            StatementParams(statement, **kwargs)


def test_params_defaults():
    assert StatementParams("xia_cai", p=7).variant == "printed"
    assert StatementParams("zhao_tuple", p=5, r=1).variant == "arity2"
    assert StatementParams("lemma1", p=5, q=3, alpha=1, beta=1, m=2).variant \
        == "printed"


def test_default_grid_shapes():
    grid, notes = default_grid("eq1")
    assert [g.p for g in grid] == [3, 5, 7, 11, 13]
    assert notes == []
    grid, _ = default_grid("xia_cai")
    assert {g.p for g in grid} == {7, 11, 13}
    assert {g.variant for g in grid} == {"printed", "alt_denom"}
    grid, notes = default_grid("remark1_pq_alt")
    pairs = {(g.p, g.q) for g in grid}
    assert (3, 11) not in pairs and (5, 7) in pairs
    assert any("(p=3, q=11)" in note for note in notes)
    grid, _ = default_grid("thm1", pool=(3, 5), fast_cap=500)
    assert all(g.p ** g.alpha * g.q ** g.beta <= 500 for g in grid)


def test_scan_is_deterministic_and_thread_stable():
    first, notes1 = scan(statements=["eq3"], pool=(3, 5, 7))
    second, _ = scan(statements=["eq3"], pool=(3, 5, 7))
    third, _ = scan(statements=["eq3"], pool=(3, 5, 7), threads=2)
    key = lambda r: (r.params, r.modulus, r.lhs, r.rhs, r.passed, r.method)
    assert [key(r) for r in first] == [key(r) for r in second]
    assert [key(r) for r in first] == [key(r) for r in third]
    assert all(r.passed for r in first)


def test_scan_oracle_check_annotates():
    reports, notes = scan(
        statements=["eq3"], pool=(3, 5), oracle_check=True, oracle_cap=100
    )
    assert all(
        r.extras.get("oracle") == "agree"
        for r in reports
        if r.method == "fast" and r.params.p ** r.params.alpha
        * r.params.q ** r.params.beta <= 100
    )
    assert any("above oracle cap" in n for n in notes)


def test_conjecture_scan_first_composite_case():
    reports = conjecture_scan(105)
    assert all(r.passed for r in reports)
    sides = {
        (r.params.n, r.params.p, r.params.statement)
        for r in reports
    }
    assert (105, 5, "conjecture_alt") in sides
    assert (105, 7, "conjecture_odd") in sides
    assert all(n % 2 for n, _, _ in sides)
