"""Acceptance gate: every criterion at its stated scale and tolerance.

Each test prints one PASS/FAIL line (visible with -s or on failure) and
asserts the criterion.  Scales follow the stated runtime budgets; seeds are
fixed so the whole gate is reproducible.
"""

import subprocess
import sys
import time

from sepminor.acceptance import (
    check_bounds_table_spots,
    check_clique_separator_law,
    check_dichotomy_certification,
    check_exponent_fits,
    check_grid_slab_witnesses,
    check_oracle_equivalence,
    check_subdivided_clique_witnesses,
    check_subdivided_grid_planarity,
    check_treewidth_vs_separator_bound,
    check_witness_fault_injection,
)

SEED = 42


def report(result, budget_s):
    elapsed = getattr(result, "_elapsed", None)
    print(result.line())
    assert result.passed, result.measured
    if elapsed is not None:
        assert elapsed < budget_s, f"{result.name} took {elapsed:.1f}s > {budget_s}s"


def timed(fn):
    t0 = time.time()
    result = fn(False, SEED)
    object.__setattr__(result, "_elapsed", time.time() - t0)
    return result


def test_criterion_oracle_equivalence():
    report(timed(check_oracle_equivalence), budget_s=120)


def test_criterion_clique_separator_law():
    report(timed(check_clique_separator_law), budget_s=30)


def test_criterion_treewidth_bound():
    report(timed(check_treewidth_vs_separator_bound), budget_s=300)


def test_criterion_dichotomy_certification():
    report(timed(check_dichotomy_certification), budget_s=300)


def test_criterion_grid_constructions():
    report(timed(check_grid_slab_witnesses), budget_s=300)


def test_criterion_subdivided_clique_constructions():
    report(timed(check_subdivided_clique_witnesses), budget_s=30)


def test_criterion_planarity_cap():
    report(timed(check_subdivided_grid_planarity), budget_s=180)


def test_criterion_exponent_fits():
    report(timed(check_exponent_fits), budget_s=600)


def test_criterion_bounds_table():
    report(timed(check_bounds_table_spots), budget_s=5)


def test_criterion_witness_fault_injection():
    report(timed(check_witness_fault_injection), budget_s=30)


def test_criterion_verify_quick_byte_identical():
    cmd = [sys.executable, "-m", "sepminor.cli", "verify", "--quick", "--seed", "42"]
    first = subprocess.run(cmd, capture_output=True, text=True, timeout=600)
    second = subprocess.run(cmd, capture_output=True, text=True, timeout=600)
    passed = first.returncode == 0 and first.stdout == second.stdout and first.stdout
    print(f"{'PASS' if passed else 'FAIL'} verify-quick-byte-identical: "
          f"exit={first.returncode}, identical={first.stdout == second.stdout}")
    assert first.returncode == 0
    assert first.stdout == second.stdout
