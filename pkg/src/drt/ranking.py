"""Rankings that maximize consistent edges: exact DP, brute force, heuristics.

A ranking assigns each vertex a rank 1..n (rank 1 first); an edge x -> y is
consistent when x is ranked before y.  The exact optimum over all n! rankings
comes from a subset dynamic program over the 2^n prefix sets:

    best(S) = max over v in S of  best(S \\ {v})  +  |{u in S \\ {v} : u -> v}|

where S is the set of earliest-ranked |S| vertices and v the last among them.
The value table is one uint16 per subset (2^(n+1) bytes: 2 MiB at n = 20,
16 MiB at n = 23, 33.5 MiB at the default cap 24), and the layers are swept
with vectorized popcounts, so n = 20 takes about a second and n = 23 well
under a minute.  Reconstruction backtracks through the table, breaking ties
toward the smallest vertex index.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .rng import derive_seed
from .tourney import Tournament, random_tournament

DP_CAP = 24
BRUTE_CAP = 9


@dataclass(frozen=True)
class RankingResult:
    """A ranking plus its consistent-edge count.

    `ranking[v]` is the rank of vertex v (1-based).  `work` counts the states
    or candidates the method examined: 2^n subsets for the DP, n! rankings for
    brute force, n for the out-degree pass, evaluated moves for local search.
    """

    value: int
    ranking: tuple[int, ...]
    method: str
    work: int


def _result(t: Tournament, ranking: tuple[int, ...], method: str, work: int,
            claimed: int | None = None) -> RankingResult:
    """Every result is re-counted from scratch and range-checked on the way out."""
    value = count_consistent(t, ranking)
    if claimed is not None and claimed != value:
        raise AssertionError(
            f"{method}: claimed value {claimed} != recount {value}"
        )
    total = t.n * (t.n - 1) // 2
    if not (total <= 2 * value and value <= total):
        raise AssertionError(
            f"{method}: value {value} outside [binom/2, binom] = [{total}/2, {total}]"
        )
    return RankingResult(value, ranking, method, work)


def check_ranking(t: Tournament, ranking) -> tuple[int, ...]:
    ranking = tuple(ranking)
    if sorted(ranking) != list(range(1, t.n + 1)):
        raise ValueError(
            f"ranking must be a bijection onto 1..{t.n}, got {ranking}"
        )
    return ranking


def count_consistent(t: Tournament, ranking) -> int:
    """Number of edges x -> y with ranking[x] < ranking[y]."""
    ranking = check_ranking(t, ranking)
    order = [0] * t.n  # order[r-1] = vertex with rank r
    for v, r in enumerate(ranking):
        order[r - 1] = v
    later = 0
    count = 0
    for r in range(t.n - 1, -1, -1):
        v = order[r]
        count += (t.rows[v] & later).bit_count()
        later |= 1 << v
    return count


def reverse_ranking(ranking) -> tuple[int, ...]:
    """Mirror image: rank r becomes n - r + 1."""
    n = len(ranking)
    return tuple(n - r + 1 for r in ranking)


def dp_table_nbytes(n: int) -> int:
    """Bytes in the DP value table at size n (uint16 per subset)."""
    return 2 << n


def exact_max_consistent(t: Tournament, cap: int = DP_CAP) -> RankingResult:
    """Exact maximum consistency by subset DP; see the module docstring.

    Raises for n above `cap` — the table doubles per vertex, so use the
    heuristics beyond it.
    """
    n = t.n
    if n > cap:
        raise ValueError(
            f"exact DP capped at n = {cap} (table would need"
            f" {dp_table_nbytes(n)} bytes); use heuristic_rank for n = {n}"
        )
    size = 1 << n
    best = np.zeros(size, dtype=np.uint16)
    pc = np.bitwise_count(np.arange(size, dtype=np.uint32))
    order = np.argsort(pc, kind="stable").astype(np.uint32)
    layer_sizes = np.bincount(pc, minlength=n + 1)
    bounds = np.concatenate(([0], np.cumsum(layer_sizes)))
    del pc
    in_rows = [np.uint32(m) for m in t.in_rows]
    for k in range(1, n + 1):
        layer = order[bounds[k] : bounds[k + 1]]
        for v in range(n):
            bit = np.uint32(1 << v)
            masks = layer[(layer & bit) != 0]
            if masks.size == 0:
                continue
            prev = masks ^ bit
            cand = best[prev] + np.bitwise_count(prev & in_rows[v]).astype(np.uint16)
            np.maximum(best[masks], cand, out=cand)
            best[masks] = cand
    value = int(best[size - 1])

    # Backtrack: peel off the last-ranked vertex, smallest index on ties.
    in_rows_py = t.in_rows
    ranks = [0] * n
    s = size - 1
    for r in range(n, 0, -1):
        target = int(best[s])
        rest = s
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            prev = s & ~(1 << v)
            if int(best[prev]) + (in_rows_py[v] & prev).bit_count() == target:
                ranks[v] = r
                s = prev
                break
        else:  # unreachable: some vertex always attains the max
            raise AssertionError("DP backtrack found no predecessor")
    return _result(t, tuple(ranks), "exact-dp", size, claimed=value)


def brute_force_max(t: Tournament, cap: int = BRUTE_CAP) -> RankingResult:
    """Reference optimum by enumerating all n! rank sequences.

    Kept deliberately independent of the DP (it is the oracle for it).  Ties
    resolve to the lexicographically least rank sequence because candidates
    are generated in lex order and only strict improvements replace.
    """
    n = t.n
    if n > cap:
        raise ValueError(f"brute force capped at n = {cap}, got n = {n}")
    rows = t.rows
    best = -1
    best_ranking: tuple[int, ...] | None = None
    work = 0
    order = [0] * n
    for ranking in itertools.permutations(range(1, n + 1)):
        work += 1
        for v, r in enumerate(ranking):
            order[r - 1] = v
        later = 0
        count = 0
        for i in range(n - 1, -1, -1):
            v = order[i]
            count += (rows[v] & later).bit_count()
            later |= 1 << v
        if count > best:
            best = count
            best_ranking = ranking
    assert best_ranking is not None
    return _result(t, best_ranking, "brute-force", work, claimed=best)


def _order_to_ranking(order: list[int]) -> tuple[int, ...]:
    ranks = [0] * len(order)
    for pos, v in enumerate(order):
        ranks[v] = pos + 1
    return tuple(ranks)


def _out_degree_order(t: Tournament) -> list[int]:
    """Vertices by descending wins, index ascending on ties — reversed wholesale
    if the mirror ranking scores higher, so the result never drops below half
    the edges."""
    order = sorted(range(t.n), key=lambda v: (-t.out_degree(v), v))
    value = count_consistent(t, _order_to_ranking(order))
    if 2 * value < t.n * (t.n - 1) // 2:
        order.reverse()
    return order


def heuristic_rank(t: Tournament, strategy: str = "local-search") -> RankingResult:
    """Fast rankings without optimality: 'out-degree' or 'local-search'.

    Local search starts from the out-degree order and repeatedly applies the
    best single-vertex reinsertion (ties: smallest moved vertex, then smallest
    target position) until no move improves the count.
    """
    n = t.n
    if strategy == "out-degree":
        order = _out_degree_order(t)
        return _result(t, _order_to_ranking(order), "out-degree", n)
    if strategy != "local-search":
        raise ValueError(
            f"unknown strategy {strategy!r}: expected 'out-degree' or 'local-search'"
        )
    order = _out_degree_order(t)
    rows, in_rows = t.rows, t.in_rows
    work = 0
    while True:
        best_delta = 0
        best_key: tuple[int, int] | None = None  # (vertex, target position)
        best_move: tuple[int, int] | None = None  # (from position, to position)
        for i, v in enumerate(order):
            # Moving v rightward to position j flips its pairs with the
            # vertices formerly at i+1..j, which then precede v; each pair
            # gains an edge iff it points at v.  Leftward is the mirror.
            delta = 0
            for j in range(i + 1, n):
                u = order[j]
                delta += 1 if (in_rows[v] >> u) & 1 else -1
                work += 1
                if delta > best_delta or (
                    delta == best_delta and best_delta > 0 and (v, j) < best_key
                ):
                    best_delta, best_key, best_move = delta, (v, j), (i, j)
            delta = 0
            for j in range(i - 1, -1, -1):
                u = order[j]
                delta += 1 if (rows[v] >> u) & 1 else -1
                work += 1
                if delta > best_delta or (
                    delta == best_delta and best_delta > 0 and (v, j) < best_key
                ):
                    best_delta, best_key, best_move = delta, (v, j), (i, j)
        if best_move is None:
            break
        i, j = best_move
        order.insert(j, order.pop(i))
    return _result(t, _order_to_ranking(order), "local-search", work)


@dataclass(frozen=True)
class BaselineSummary:
    """Exact optima of `trials` seeded random tournaments, as ratios of binom(n,2)."""

    n: int
    trials: int
    seed: int
    values: tuple[int, ...]
    min_value: int
    max_value: int
    min_ratio: float
    mean_ratio: float
    max_ratio: float
    max_epsilon: float  # max_ratio - 1/2: the observed excess over half


def random_baseline(
    n: int, trials: int, seed: int, cap: int = DP_CAP
) -> BaselineSummary:
    """Distribution of C(T) over seeded random tournaments (exact DP per trial)."""
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    total = n * (n - 1) // 2
    values = []
    for i in range(trials):
        t = random_tournament(n, derive_seed(seed, i))
        values.append(exact_max_consistent(t, cap=cap).value)
    ratios = [v / total for v in values]
    return BaselineSummary(
        n=n,
        trials=trials,
        seed=seed,
        values=tuple(values),
        min_value=min(values),
        max_value=max(values),
        min_ratio=min(ratios),
        mean_ratio=math.fsum(ratios) / trials,
        max_ratio=max(ratios),
        max_epsilon=max(ratios) - 0.5,
    )
