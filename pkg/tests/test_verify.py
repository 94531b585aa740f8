"""Claim records, the exponent ledger, slope fits, and report output."""

import json
from fractions import Fraction

import pytest

from sumprodlab.sets import ArithSet
from sumprodlab.families import FamilySpec
from sumprodlab.report import (
    exit_code,
    jsonable,
    rows_to_csv,
    run_suite,
    write_report,
)
from sumprodlab.verify import (
    CLAIMS,
    basis_chain_check,
    difference_count_check,
    doubling_energy_check,
    exponent_chain_check,
    exponent_ledger,
    fit_loglog_slope,
    identity_battery,
    popular_ratio_check,
    ratio_energy_check,
    ratio_set_bounds_check,
    run_claim,
    sextuple_check,
    shift_bound_check,
    stats_record,
    sumset_energy_check,
)


def fset(*xs):
    return ArithSet(xs)


def gp(n, q=2):
    return ArithSet([Fraction(q) ** i for i in range(n)])


def test_exponent_ledger_boundary():
    ledger = exponent_ledger(Fraction(1, 26))
    assert ledger.basis_exponent == Fraction(1, 2) + Fraction(1, 442)
    assert ledger.at_boundary
    assert ledger.popular_ratio_exponents == (8, 14)
    assert ledger.chain_exponents == (10, 17)


def test_exponent_ledger_interior_values():
    assert exponent_ledger(Fraction(13, 442)).basis_exponent == Fraction(1, 2) + Fraction(1, 578)
    small = exponent_ledger(Fraction(1, 1000))
    assert small.basis_exponent == Fraction(1, 2) + Fraction(1, 17000)
    for bad in (0, Fraction(1, 25), -1):
        with pytest.raises(ValueError):
            exponent_ledger(bad)


def test_exponent_chain_check_passes():
    rec = exponent_chain_check()
    assert rec.verdict == "pass"
    assert rec.lhs == "111/221"  # 1/2 + 1/442 in lowest terms


def test_stats_record_worked():
    rec = stats_record(fset(1, 2, 4))
    d = rec.details
    assert d["sumset"] == 6
    assert d["product_set"] == 5
    assert d["doubling"] == Fraction(5, 3)
    assert d["additive_energy"] == 15
    assert d["multiplicative_energy"] == 19
    assert d["quotient_set"] == 7
    single = stats_record(fset(9))
    assert single.details["additive_energy"] == 1


def test_ratio_energy_check_gp_closed_form():
    rec = ratio_energy_check(gp(8))
    m = 3 * 8 - 2  # quotient set of a ratio-2 progression
    assert rec.size_b == m
    assert rec.lhs == 2 * m * m - m
    assert rec.verdict == "info"


def test_sumset_energy_check():
    rec = sumset_energy_check(fset(0, 1), "plus")
    assert rec.lhs == 31  # E_x({0,1,2}): five zero products alone give 25 quadruples
    assert rec.rhs == 64
    rec = sumset_energy_check(ArithSet(range(8)), "minus")
    assert rec.details["sumset_size"] == 15


def test_doubling_energy_check():
    rec = doubling_energy_check(gp(16))
    assert rec.lhs == 2 * 256 - 16
    assert rec.details["doubling"] == Fraction(31, 16)
    assert rec.verdict == "info"
    gated = doubling_energy_check(gp(16), ratio_threshold=100.0)
    assert gated.verdict == "pass"


def test_basis_chain_micro():
    rec = basis_chain_check(fset(1, 2, 3), fset(0, 1, 2))
    assert rec.verdict == "pass"
    assert rec.details["ratio_count"] == 4
    assert rec.details["cauchy_schwarz_ok"]
    assert rec.lhs >= rec.rhs  # energy above the generated floor


def test_basis_chain_default_basis_gp():
    rec = basis_chain_check(gp(8))
    assert rec.verdict == "pass"


def test_popular_ratio_check_micro():
    rec = popular_ratio_check(fset(1, 2, 3), fset(0, 1, 2), tau=2)
    assert rec.verdict == "pass"
    assert rec.lhs <= rec.rhs  # (sum n)^2 <= |R| Q


def test_sextuple_check():
    rec = sextuple_check(fset(0, 1, 2))
    assert rec.verdict == "pass"
    assert rec.lhs == rec.rhs == 48


def test_shift_bound_check_gp():
    rec = shift_bound_check(gp(8))
    assert rec.verdict == "pass"
    assert rec.size_b == len(gp(8)) ** 2 - len(gp(8))  # nonzero differences checked


def test_difference_count_check():
    rec = difference_count_check(fset(1), fset(0, 1, 2))
    assert rec.lhs == 2
    assert rec.details["hypothesis_ok"]
    rec = difference_count_check(gp(4), gp(4))
    assert not rec.details["hypothesis_ok"]  # top element is not a difference


def test_ratio_set_bounds_check():
    rec = ratio_set_bounds_check(fset(0, 1), fset(2, 3))
    assert rec.verdict == "pass"
    assert rec.details["x_size"] == 4


def test_identity_battery_small():
    rec = identity_battery(seed=5, trials=200)
    assert rec.verdict == "pass"
    assert rec.lhs == rec.rhs == 400


def test_run_claim_unknown_and_ceiling():
    with pytest.raises(ValueError):
        run_claim("nonsense", fset(1))
    rec = run_claim("ratio_energy", ArithSet(range(1, 200)), {"ceiling": 100})
    assert rec.verdict == "ceiling"


def test_fit_loglog_slope_recovers_power():
    sizes = [8, 16, 32, 64]
    values = [3 * n**2 for n in sizes]
    fit = fit_loglog_slope(sizes, values)
    assert abs(fit["slope"] - 2.0) < 1e-9
    assert fit["max_residual"] < 1e-9


def test_all_claims_have_runners():
    a = fset(1, 2, 3)
    for claim in CLAIMS:
        rec = run_claim(claim, a, {"trials": 20})
        assert rec.verdict in ("pass", "fail", "info", "ceiling"), claim


def test_run_suite_and_writers(tmp_path):
    specs = [FamilySpec("gp", {"q": "2", "n": str(n)}) for n in (8, 16)]
    rows, summary = run_suite(specs, ["stats", "ratio_energy"])
    assert len(rows) == 4
    assert summary["verdicts"]["info"] == 4
    assert "gp" in summary["slopes"]["ratio_energy"]
    csv_text = rows_to_csv(rows)
    header = csv_text.splitlines()[0]
    assert header == "claim_id,anchor,card_a,card_b,lhs,rhs,ratio,verdict,millis"
    csv_path, json_path = write_report(rows, summary, tmp_path)
    payload = json.loads(json_path.read_text())
    assert payload["summary"]["rows"] == 4
    assert exit_code(rows) == 0


def test_jsonable_fractions_and_sets():
    assert jsonable(Fraction(3, 7)) == "3/7"
    assert jsonable(Fraction(4, 2)) == 2
    assert jsonable(fset(1, Fraction(1, 2))) == ["1/2", 1]
    assert jsonable({Fraction(1, 2): [fset(3)]}) == {"1/2": [[3]]}
