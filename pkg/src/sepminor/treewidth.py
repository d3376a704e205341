"""Exact treewidth for small graphs and the separator <-> treewidth bounds.

The exact solver is the classic dynamic program over vertex subsets (optimal
elimination ordering); the min-fill heuristic provides labeled upper bounds
above the exact budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Union

from .errors import AlgorithmFailure, BudgetExceeded, GraphError
from .graph import Graph, components
from .intmath import ceil_pow
from .separators import (
    SeparatorCertificate,
    _balanced_mask,
    _certificate,
    balance_threshold,
)

__all__ = [
    "TreewidthResult",
    "treewidth_exact",
    "minfill_upper",
    "tw_upper_from_separators",
    "hereditary_separator_number",
    "separator_from_treewidth",
    "subdivided_separator_bound",
    "invert_subdivided_size",
]

EXACT_TW_BUDGET = 18


@dataclass(frozen=True)
class TreewidthResult:
    value: int
    method: str  # exact-dp | minfill-upper | separator-derived-upper
    elimination_order: Optional[tuple[int, ...]] = None


def _reach_boundary_size(masks: tuple[int, ...], through_mask: int, v: int) -> int:
    """Number of vertices outside through_mask+{v} reachable from v through it."""
    comp = 1 << v
    frontier = comp
    nbr = 0
    while frontier:
        x = (frontier & -frontier).bit_length() - 1
        frontier &= frontier - 1
        ax = masks[x]
        nbr |= ax
        new = ax & through_mask & ~comp
        comp |= new
        frontier |= new
    return (nbr & ~through_mask & ~(1 << v)).bit_count()


def treewidth_exact(g: Graph, budget: int = EXACT_TW_BUDGET) -> TreewidthResult:
    """Exact treewidth by dynamic programming over elimination prefixes.

    State S is the set of vertices eliminated first; the recurrence chooses the
    last vertex of the prefix.  O(2^n * n * n), so n is capped (default 18).
    """
    if g.n > budget:
        raise BudgetExceeded(f"exact treewidth needs n <= {budget}, got {g.n}")
    if g.n == 0:
        return TreewidthResult(value=-1, method="exact-dp", elimination_order=())
    masks = g.adjacency_masks()
    full = (1 << g.n) - 1
    tw = [-1] * (full + 1)
    choice = [0] * (full + 1)
    for s in range(1, full + 1):
        best = g.n
        best_v = -1
        ss = s
        while ss:
            v = (ss & -ss).bit_length() - 1
            ss &= ss - 1
            prev = s & ~(1 << v)
            width = tw[prev]
            q = _reach_boundary_size(masks, prev, v)
            if q > width:
                width = q
            if width < best:
                best = width
                best_v = v
        tw[s] = best
        choice[s] = best_v
    order_rev = []
    s = full
    while s:
        v = choice[s]
        order_rev.append(v)
        s &= ~(1 << v)
    return TreewidthResult(
        value=tw[full], method="exact-dp", elimination_order=tuple(reversed(order_rev))
    )


def minfill_upper(g: Graph) -> TreewidthResult:
    """Min-fill elimination heuristic; an upper bound, labeled as such."""
    if g.n == 0:
        return TreewidthResult(value=-1, method="minfill-upper", elimination_order=())
    adj = {v: set(g.neighbors(v)) for v in range(g.n)}
    alive = set(range(g.n))
    order = []
    width = 0
    while alive:
        def fill_count(v: int) -> int:
            nbrs = [w for w in adj[v] if w in alive]
            return sum(
                1
                for a, b in combinations(nbrs, 2)
                if b not in adj[a]
            )

        v = min(alive, key=lambda u: (fill_count(u), u))
        nbrs = [w for w in adj[v] if w in alive]
        width = max(width, len(nbrs))
        for a, b in combinations(nbrs, 2):
            adj[a].add(b)
            adj[b].add(a)
        alive.remove(v)
        order.append(v)
    return TreewidthResult(value=width, method="minfill-upper", elimination_order=tuple(order))


def tw_upper_from_separators(g: Graph, k: int) -> int:
    """Treewidth bound 15*k from a witness that every induced subgraph has a
    balanced separator of size at most k."""
    if k < 0:
        raise ValueError(f"separator bound must be >= 0, got {k}")
    return 15 * k


def hereditary_separator_number(g: Graph, budget: int = 9) -> int:
    """max over all induced subgraphs H of the exact minimum balanced
    separator size of H.  Double-exhaustive, so hosts are capped at n <= 9."""
    if g.n > budget:
        raise BudgetExceeded(f"hereditary separator number needs n <= {budget}, got {g.n}")
    if g.n == 0:
        return 0
    masks = g.adjacency_masks()
    worst = 0
    for vmask in range(1, 1 << g.n):
        vertices = [v for v in range(g.n) if vmask >> v & 1]
        threshold = balance_threshold(len(vertices))
        found = None
        for k in range(len(vertices) + 1):
            for combo in combinations(vertices, k):
                removed = 0
                for v in combo:
                    removed |= 1 << v
                if _balanced_mask(masks, vmask, removed, threshold):
                    found = k
                    break
            if found is not None:
                break
        assert found is not None
        worst = max(worst, found)
    return worst


def _bags_from_elimination(g: Graph, order: tuple[int, ...]) -> list[frozenset[int]]:
    adj = {v: set(g.neighbors(v)) for v in range(g.n)}
    alive = set(range(g.n))
    bags = []
    for v in order:
        nbrs = {w for w in adj[v] if w in alive}
        bags.append(frozenset(nbrs | {v}))
        for a in nbrs:
            for b in nbrs:
                if a < b:
                    adj[a].add(b)
                    adj[b].add(a)
        alive.remove(v)
    return bags


def separator_from_treewidth(
    g: Graph,
    c: Optional[int] = None,
    result: Optional[TreewidthResult] = None,
) -> SeparatorCertificate:
    """Balanced separator of size at most c+1 taken from a width-c
    tree decomposition's bags (decomposition from the exact solver).

    Some bag of any tree decomposition is balanced, so the search over bags
    always succeeds; the winner is revalidated before being returned.
    """
    if result is None:
        result = treewidth_exact(g)
    if result.elimination_order is None:
        raise GraphError("no elimination order available")
    if c is None:
        c = result.value
    if result.value > c:
        raise GraphError(f"no decomposition of width <= {c} available (width {result.value})")
    bags = _bags_from_elimination(g, result.elimination_order)
    threshold = balance_threshold(g.n)
    for bag in sorted(set(bags), key=lambda b: (len(b), sorted(b))):
        if components(g, bag).largest() <= threshold:
            if len(bag) > c + 1:
                continue
            return _certificate(g, bag)
    raise AlgorithmFailure("no bag of the decomposition is balanced")


def invert_subdivided_size(y: int, eps: Fraction) -> int:
    """Largest integer x >= 1 with x * ceil(x ** (eps/(1-eps))) <= y (clamped at 1).

    This inverts the vertex count of a subdivided graph back to the order of
    its base subgraph; the product is strictly increasing, so binary search on
    exact integers suffices.
    """
    eps = Fraction(eps)
    if not (0 < eps < 1):
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    exponent = eps / (1 - eps)

    def product(x: int) -> int:
        return x * ceil_pow(x, exponent)

    if product(1) > y:
        return 1
    lo, hi = 1, max(1, y)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if product(mid) <= y:
            lo = mid
        else:
            hi = mid - 1
    return lo


def subdivided_separator_bound(
    n_prime: int,
    eps: Fraction,
    profile: tuple[Union[int, Fraction], Union[int, Fraction]] = (1, 1),
) -> Union[Fraction, float]:
    """Predicted separator bound 15*f(p(2*n')) + 1 for induced subgraphs of
    eps-subdivided members of a class with separator profile f(x) = coef * x^power.

    p is the exact integer inverse of x -> x * ceil(x**(eps/(1-eps))).
    Monotone non-decreasing in n'.
    """
    if n_prime < 1:
        raise ValueError(f"subgraph order must be >= 1, got {n_prime}")
    coef, power = profile
    base = invert_subdivided_size(2 * n_prime, eps)
    power = Fraction(power)
    if power.denominator == 1:
        return 15 * Fraction(coef) * Fraction(base) ** power + 1
    return 15 * float(coef) * float(base) ** float(power) + 1
