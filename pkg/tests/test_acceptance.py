"""One test per acceptance criterion, at the stated tolerance (exact) and
runtime limit.  Each prints a single pass/fail line; run with -s to see them.
"""

import time

import pytest

from zsl import certify

CRITERIA = {name: (fn, limit) for name, fn, limit in certify.CRITERIA}


def _run(name):
    fn, limit = CRITERIA[name]
    start = time.monotonic()
    try:
        details = fn()
    except Exception:
        print(f"FAIL {name}")
        raise
    elapsed = time.monotonic() - start
    line = f"PASS {name} ({elapsed:.2f}s, limit {limit:.0f}s)"
    print(line)
    assert elapsed <= limit, f"{name} exceeded its runtime limit: {elapsed:.1f}s"
    return details


def test_criterion_01_rank2_hypercube():
    details = _run("01-rank2-hypercube")
    assert details["davenport"] == 3
    assert details["elementary_davenport"] == 3
    assert details["max_catenary"] == 3
    assert details["max_tame"] == 3


def test_criterion_02_rank3_hypercube():
    details = _run("02-rank3-hypercube")
    assert details["davenport"] == 5
    assert details["length5_atoms"] == 8
    assert details["catenary_witness"] == 5
    assert details["u2"] == [2, 3, 4, 5]
    assert details["rho4"] == 10
    assert details["rho5"] == 11


def test_criterion_03_fibonacci_witnesses():
    details = _run("03-fibonacci-witnesses")
    assert details["atom_lengths"] == {1: 2, 2: 3, 3: 5, 4: 8, 5: 13, 6: 21}


def test_criterion_04_davenport_equals_elementary():
    details = _run("04-davenport-equals-elementary")
    assert details["values"] == {2: 3, 3: 5}


def test_criterion_05_upper_bounds_and_decomposition():
    details = _run("05-upper-bounds-and-decomposition")
    assert details["samples_per_rank"] == 100
    assert details["bounds"][3]["hadamard"] == 27


def test_criterion_06_atom_multiplicity_gap():
    details = _run("06-atom-multiplicity-gap")
    assert details["atoms_checked"][2] == 2
    assert details["atoms_checked"][3] == 34


def test_criterion_07_finitely_primary_rank1():
    details = _run("07-finitely-primary-rank1")
    groups = details["groups"]
    assert groups["trivial"]["factorial"]
    for name in ("Z/2", "Z/3", "Z/2+Z/2"):
        assert not groups[name]["factorial"]
        assert groups[name]["catenary"] == 2
        assert groups[name]["tame"] == 2


def test_criterion_08_unit_pinned_product():
    details = _run("08-unit-pinned-product")
    assert details["theta_splits"] > 50
    assert details["catenary_elements"] >= 50


def test_criterion_09_almost_constant_monoid():
    details = _run("09-almost-constant-monoid")
    assert details["atoms"] == 12
    assert details["tame"] == 5
    assert details["one_tower_group"] == "Z/2"


def test_criterion_10_tower_data_monoids():
    details = _run("10-tower-data-monoids")
    assert details["two_towers_tame"] == 5
    assert details["dedekind_factorial"]


def test_criterion_11_oracle_equivalence():
    details = _run("11-oracle-equivalence")
    assert details["ground_sets"] == 30
    assert details["omega_atoms_checked"] >= 20


def test_certify_suite_all_green():
    results = certify.run_suite()
    assert len(results) == 11
    for res in results:
        assert res.passed, f"{res.name}: {res.error}"
