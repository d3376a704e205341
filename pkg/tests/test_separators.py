import random
from fractions import Fraction
from itertools import combinations

import pytest

from sepminor import (
    BudgetExceeded,
    balance_threshold,
    components,
    exact_expansion_constant,
    expansion_upper_estimate,
    is_alpha_expander_exact,
    is_balanced_separator,
    min_balanced_separator_exact,
    separator_heuristic,
)
from sepminor.generators import (
    complete,
    cycle,
    path,
    planar_grid,
    random_graph,
    random_regular,
    star,
)


def brute_min_separator(g):
    threshold = balance_threshold(g.n)
    for k in range(g.n + 1):
        for combo in combinations(range(g.n), k):
            if components(g, combo).largest() <= threshold:
                return k
    raise AssertionError


def test_balanced_examples():
    assert is_balanced_separator(path(5), {2})
    assert not is_balanced_separator(complete(6), {0})
    assert not is_balanced_separator(cycle(6), {0})
    assert is_balanced_separator(cycle(6), {0, 3})


def test_exact_path5():
    cert = min_balanced_separator_exact(path(5))
    assert cert.size == 1 and cert.revalidate(path(5))


def test_exact_k6():
    assert min_balanced_separator_exact(complete(6)).size == 2


def test_exact_c6():
    assert min_balanced_separator_exact(cycle(6)).size == 2


def test_exact_clique_law():
    for n in range(3, 13):
        assert min_balanced_separator_exact(complete(n)).size == -(-n // 3)


def test_exact_budget_enforced():
    with pytest.raises(BudgetExceeded):
        min_balanced_separator_exact(path(30))


def test_exact_matches_brute_force_random():
    rng = random.Random(21)
    for _ in range(80):
        n = rng.randint(2, 8)
        g = random_graph(n, rng.randint(0, n * (n - 1) // 2), rng.getrandbits(32))
        assert min_balanced_separator_exact(g).size == brute_min_separator(g)


def test_heuristic_path100():
    assert separator_heuristic(path(100)).size == 1


def test_heuristic_k9():
    assert separator_heuristic(complete(9)).size == 3
    assert separator_heuristic(complete(9), "recursive-bisection").size == 3


def test_heuristic_grid10_middleish():
    cert = separator_heuristic(planar_grid(10))
    assert cert.size <= 10 and cert.revalidate(planar_grid(10))


def test_heuristic_never_beats_exact():
    rng = random.Random(2)
    for _ in range(60):
        n = rng.randint(2, 10)
        g = random_graph(n, rng.randint(0, n * (n - 1) // 2), rng.getrandbits(32))
        exact = min_balanced_separator_exact(g).size
        for strategy in ("bfs-layer", "recursive-bisection"):
            cert = separator_heuristic(g, strategy)
            assert cert.revalidate(g)
            assert cert.size >= exact


def test_heuristic_vs_exact_grid4():
    exact = min_balanced_separator_exact(planar_grid(4)).size
    assert separator_heuristic(planar_grid(4)).size >= exact


def test_expander_k4():
    assert is_alpha_expander_exact(complete(4), Fraction(1)).is_expander


def test_expander_p8_violator():
    res = is_alpha_expander_exact(path(8), Fraction(1, 2))
    assert not res.is_expander
    assert res.violating == frozenset({0, 1, 2})
    # returned set really violates
    nbr = {3}
    assert len(nbr) * 2 < 1 * len(res.violating)


def test_expander_c6_third():
    assert is_alpha_expander_exact(cycle(6), Fraction(1, 3)).is_expander


def test_expansion_estimate_path_prefix():
    est = expansion_upper_estimate(path(40), samples=50, seed=3)
    assert est <= Fraction(1, 10)


def test_expansion_estimate_clique_at_least_one():
    assert expansion_upper_estimate(complete(8), samples=30, seed=1) >= 1


def test_expansion_estimate_bounds_exact():
    g = random_regular(20, 3, seed=17)
    exact = exact_expansion_constant(g, budget=20)
    est = expansion_upper_estimate(g, samples=120, seed=9)
    assert est >= exact


def test_expansion_estimate_deterministic():
    g = random_regular(16, 3, seed=4)
    assert expansion_upper_estimate(g, 50, 7) == expansion_upper_estimate(g, 50, 7)


def test_star_exact_is_one():
    assert min_balanced_separator_exact(star(12)).size == 1
