import math
import random
from fractions import Fraction

import pytest

from sepminor import prs_parameters, prs_separator_or_minor, verify_minor_witness
from sepminor.generators import (
    complete,
    cycle,
    king_grid,
    path,
    planar_grid,
    random_graph,
    random_tree,
    star,
)
from sepminor.intmath import le_log2_mul


def check_outcome(g, out):
    if out.branch == "separator":
        assert out.certificate is not None
        assert out.certificate.revalidate(g)
        excess = out.l * out.certificate.size - g.n
        assert le_log2_mul(excess, 2 * out.h**2 * out.l**2, g.n)
    else:
        assert out.witness is not None
        ok, reason = verify_minor_witness(g, out.witness)
        assert ok, reason
        assert out.witness.target == complete(out.h)
        assert out.witness.r == out.depth_cap


def test_k10_minor_branch():
    g = complete(10)
    out = prs_separator_or_minor(g, 1, 3)
    assert out.branch == "minor"
    check_outcome(g, out)
    # singleton branch sets suffice on a clique
    assert all(len(b) == 1 for b in out.witness.branch_sets.values())


def test_p100_separator_branch():
    g = path(100)
    out = prs_separator_or_minor(g, 2, 4)
    assert out.branch == "separator"
    check_outcome(g, out)
    assert out.certificate.size <= 100 / 2 + 2 * 16 * 2 * math.log2(100)


def test_star_separator_size_one():
    g = star(50)
    out = prs_separator_or_minor(g, 5, 3)
    assert out.branch == "separator"
    assert out.certificate.size == 1
    check_outcome(g, out)


def test_depth_cap_is_exact_ceiling():
    out = prs_separator_or_minor(complete(8), 1, 2)
    # least d with 2^d >= 8^2
    assert out.depth_cap == 6


def test_forests_always_separator():
    rng = random.Random(31)
    for i in range(12):
        t = random_tree(rng.randint(5, 120), rng.getrandbits(32))
        for l, h in ((1, 3), (2, 4), (3, 5)):
            out = prs_separator_or_minor(t, l, h)
            assert out.branch == "separator"
            check_outcome(t, out)


def test_cycles_and_grids_verified():
    for g in (cycle(30), planar_grid(6), king_grid(5, 2)):
        for l, h in ((1, 3), (2, 2), (2, 5)):
            check_outcome(g, prs_separator_or_minor(g, l, h))


def test_random_corpus_always_verifies():
    rng = random.Random(55)
    for _ in range(30):
        n = rng.randint(5, 150)
        m = rng.randint(n - 1, min(4 * n, n * (n - 1) // 2))
        g = random_graph(n, m, rng.getrandbits(32))
        l = rng.choice([1, 2, 3, 5])
        h = rng.choice([1, 2, 3, 4, 5])
        check_outcome(g, prs_separator_or_minor(g, l, h))


def test_h_one_returns_single_vertex_minor():
    out = prs_separator_or_minor(path(10), 2, 1)
    assert out.branch == "minor"
    assert out.witness.target.n == 1


def test_invalid_parameters():
    with pytest.raises(ValueError):
        prs_separator_or_minor(path(5), 0, 2)
    with pytest.raises(ValueError):
        prs_separator_or_minor(complete(1), 1, 1)


def test_prs_parameters_power_of_two():
    params = prs_parameters(2**20, Fraction(1, 2))
    assert params.n == (2**40) // 20**4
    log_n = math.log2(params.n)
    assert params.l == math.floor(2**20 / (2 * log_n))
    assert params.h == math.floor(math.sqrt(params.n) / (2 * params.l * log_n))
    assert params.all_inequalities_hold


def test_prs_parameters_eps_one():
    r = 5000
    params = prs_parameters(r, Fraction(1))
    assert params.n == math.floor(r / math.log2(r) ** 2)


def test_prs_parameters_depth_window_holds_when_feasible():
    for r in (2**14, 2**17, 2**20):
        for eps in (Fraction(1, 2), Fraction(2, 3), Fraction(1)):
            try:
                params = prs_parameters(r, eps)
            except ValueError:
                continue
            log_n = math.log2(params.n)
            assert 2 * params.l * log_n <= r
            assert params.inequalities["depth_window"]


def test_prs_parameters_infeasible_small_r():
    with pytest.raises(ValueError):
        prs_parameters(8, Fraction(1, 2))
