import random

import pytest

from cess.audit import (
    bandwidth_audit, check_linear, reliability_exhaustive, run_audit, secrecy_cost, secrecy_exhaustive,
)
from cess.core import SchemeParams
from cess.errors import BudgetExceeded
from cess.random_code import CeRandom, sample_scheme, verify_scheme
from cess.rs import CeRs
from cess.shamir import CeShamir


def test_rs_secrecy_full():
    s = CeRs(SchemeParams(3, 1, 1, 7))
    assert secrecy_cost(s) == 7**4
    verdicts = secrecy_exhaustive(s)
    assert len(verdicts) == 3 and all(v.independent for v in verdicts)


def test_shamir_secrecy_full():
    s = CeShamir(SchemeParams(3, 1, 1, 5), [2, 3])
    assert all(v.independent for v in secrecy_exhaustive(s))


def test_span_agrees_with_full():
    s = CeShamir(SchemeParams(3, 1, 1, 5), [2, 3])
    full = [v.independent for v in secrecy_exhaustive(s, messages="all")]
    span = [v.independent for v in secrecy_exhaustive(s, messages="span")]
    assert full == span


def test_keyless_scheme_leaks(keyless_rs):
    verdicts = secrecy_exhaustive(keyless_rs)
    assert not any(v.independent for v in verdicts)
    w = verdicts[0].witness
    assert w is not None and w.table_a != w.table_b
    assert not run_audit(keyless_rs).passed


def test_keyless_leak_found_in_span_mode(keyless_rs):
    assert not any(v.independent for v in secrecy_exhaustive(keyless_rs, messages="span"))


def test_budget():
    s = CeRs(SchemeParams(3, 1, 1, 7))
    with pytest.raises(BudgetExceeded):
        secrecy_exhaustive(s, budget=100)
    report = run_audit(s, secrecy="auto", budget=100)
    assert report.secrecy is None and "budget" in report.secrecy_note


def test_seven_node_reliability_counts():
    s = CeShamir(SchemeParams(7, 4, 1, 11), [3, 4, 7])
    verdicts = reliability_exhaustive(s, random.Random(0))
    sizes = [len(v.subset) for v in verdicts]
    assert (sizes.count(3), sizes.count(4), sizes.count(7)) == (35, 35, 1)
    assert all(v.ok for v in verdicts)


def test_bandwidth_rows():
    s = CeShamir(SchemeParams(7, 4, 1, 11), [3, 4, 7])
    rows = {row.d: row for row in bandwidth_audit(s)}
    assert [rows[d].measured for d in (3, 4, 7)] == [9, 8, 7]
    assert all(rows[d].tight for d in (3, 4, 7))
    assert not rows[5].supported and not rows[5].tight
    assert all(row.measured == row.symbols_read_from_disk for row in rows.values())


def test_random_scheme_audit():
    params = SchemeParams(3, 1, 1, 13)
    gens = next(g for g in (sample_scheme(params, i.to_bytes(32, "little")) for i in range(50))
                if verify_scheme(g).passed)
    s = CeRandom(params, gens=gens)
    assert check_linear(s)
    report = run_audit(s, secrecy="span")
    assert report.passed
    assert report.secrecy_note == "linear span reduction"
    text = report.render()
    assert text.endswith("PASS") and "3/3 coalitions independent" in text
    assert {r["check"] for r in report.rows()} == {"secrecy", "reliability", "bandwidth"}
