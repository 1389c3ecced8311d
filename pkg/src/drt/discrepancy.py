"""Subset mixing checks and the global ranking-gap bounds.

For disjoint vertex sets A, B the discrepancy d = e(A,B) - e(B,A) of a doubly
regular tournament satisfies d <= sqrt(n |A| |B|); every check here verifies
the squared form d <= 0 or d^2 <= n |A| |B| in exact integers.  Normalized
discrepancy is reported as the exact rational d_+^2 / (n |A| |B|), so
"violation" and "normalized value > 1" are the same statement.

The global statements tie a ranking sigma to its mirror: the consistency gap
C(T, sigma) - C(T, sigma') is at most n^1.5 * log2(2n), which bounds the
maximum consistency by binom(n,2)/2 + n^1.5 * log2(2n) — vacuously for small
n, and the checks say when that is the case.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

import numpy as np

from .ranking import check_ranking, count_consistent, reverse_ranking
from .rng import trit_block
from .tourney import Tournament, signed_adjacency

SWEEP_CAP = 16
_SAMPLED_N_CAP = 900  # keeps the int64 cross-multiplied fraction compares exact


def vertex_mask(vertices: Iterable[int]) -> int:
    """Pack an iterable of vertex indices into a bitmask."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def mask_vertices(mask: int) -> list[int]:
    """Unpack a bitmask into a sorted vertex list."""
    out = []
    while mask:
        v = (mask & -mask).bit_length() - 1
        out.append(v)
        mask &= mask - 1
    return out


def _check_mask(t: Tournament, mask: int, name: str) -> None:
    if not (0 <= mask < (1 << t.n)):
        raise ValueError(f"{name} has bits outside vertices 0..{t.n - 1}")


def edge_count(t: Tournament, a_mask: int, b_mask: int) -> int:
    """e(A,B): edges from A into B (the masks need not be disjoint)."""
    _check_mask(t, a_mask, "A")
    _check_mask(t, b_mask, "B")
    count = 0
    rest = a_mask
    while rest:
        a = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        count += (t.rows[a] & b_mask).bit_count()
    return count


class MixingCheck(NamedTuple):
    d: int
    holds: bool


def check_mixing(t: Tournament, a_mask: int, b_mask: int) -> MixingCheck:
    """d = e(A,B) - e(B,A) and whether d <= sqrt(n |A| |B|), in exact integers.

    A and B must be disjoint; an empty side makes the bound degenerate and the
    check reports (0, True).
    """
    _check_mask(t, a_mask, "A")
    _check_mask(t, b_mask, "B")
    overlap = a_mask & b_mask
    if overlap:
        raise ValueError(f"A and B overlap in vertices {mask_vertices(overlap)}")
    if a_mask == 0 or b_mask == 0:
        return MixingCheck(0, True)
    d = edge_count(t, a_mask, b_mask) - edge_count(t, b_mask, a_mask)
    if d <= 0:
        return MixingCheck(d, True)
    return MixingCheck(d, d * d <= t.n * a_mask.bit_count() * b_mask.bit_count())


@dataclass(frozen=True)
class MixingReport:
    """Aggregate of many mixing checks.

    The worst pair maximizes the exact rational d_+^2 / (n |A| |B|) (stored as
    max_numerator / max_denominator); ties resolve to the smallest (A, B)
    bitmask pair.  `violations` counts pairs whose normalized discrepancy
    exceeds 1, so violations == 0 iff max_numerator <= max_denominator.
    """

    method: str
    pairs_checked: int
    violations: int
    max_numerator: int
    max_denominator: int
    worst_pair: Optional[tuple[int, int]]

    def __post_init__(self):
        if (self.violations == 0) != (self.max_numerator <= self.max_denominator):
            raise AssertionError(
                f"inconsistent report: {self.violations} violations but worst"
                f" fraction {self.max_numerator}/{self.max_denominator}"
            )

    @property
    def max_normalized(self) -> float:
        return self.max_numerator / self.max_denominator


def exhaustive_mixing_check(t: Tournament, cap: int = SWEEP_CAP) -> MixingReport:
    """Check every assignment of vertices to (A, B, neither) with A, B nonempty.

    That is 3^n - 2^(n+1) + 1 ordered pairs; n is capped because of it.  For
    each A the subsets of the complement are walked in Gray-code order so the
    discrepancy updates in O(1) per pair.
    """
    n = t.n
    if n > cap:
        raise ValueError(
            f"exhaustive sweep capped at n = {cap} (3^n assignments), got n = {n};"
            f" use sampled_mixing_check instead"
        )
    srows = [
        [
            1 if (t.rows[i] >> j) & 1 else (-1 if (t.rows[j] >> i) & 1 else 0)
            for j in range(n)
        ]
        for i in range(n)
    ]
    pairs = 0
    violations = 0
    best_num, best_den = 0, 1
    best_pair: Optional[tuple[int, int]] = None
    for a_mask in range(1, 1 << n):
        col = [0] * n  # col[j] = sum over i in A of sign(i -> j)
        rest = a_mask
        na = 0
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            na += 1
            si = srows[i]
            for j in range(n):
                col[j] += si[j]
        comp = [j for j in range(n) if not (a_mask >> j) & 1]
        n_na = n * na
        d = 0
        b_mask = 0
        size = 0
        for g in range(1, 1 << len(comp)):
            j = comp[(g & -g).bit_length() - 1]
            bit = 1 << j
            if b_mask & bit:
                b_mask ^= bit
                size -= 1
                d -= col[j]
            else:
                b_mask |= bit
                size += 1
                d += col[j]
            pairs += 1
            den = n_na * size
            dd = d * d if d > 0 else 0
            if dd > den:
                violations += 1
            if dd:
                if dd * best_den > best_num * den:
                    best_num, best_den, best_pair = dd, den, (a_mask, b_mask)
                elif dd * best_den == best_num * den and (a_mask, b_mask) < best_pair:
                    best_num, best_den, best_pair = dd, den, (a_mask, b_mask)
            elif best_num == 0 and (
                best_pair is None or (a_mask, b_mask) < best_pair
            ):
                best_den, best_pair = den, (a_mask, b_mask)
    return MixingReport("exhaustive", pairs, violations, best_num, best_den, best_pair)


def sampled_mixing_check(
    t: Tournament, samples: int, seed: int, threads: int = 1
) -> MixingReport:
    """Seeded uniform sampling of (A, B, neither) assignments.

    Each vertex independently draws a trit from the seeded stream (1 -> A,
    2 -> B, 0 -> neither); assignments with an empty side are skipped and do
    not count toward `samples`.  Chunks may be generated by several workers,
    but they merge in candidate order, so the report does not depend on
    `threads`.
    """
    n = t.n
    if n < 2:
        raise ValueError("sampling needs at least two vertices")
    if n > _SAMPLED_N_CAP:
        raise ValueError(f"sampled check supports n <= {_SAMPLED_N_CAP}, got {n}")
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    if threads < 1:
        raise ValueError(f"thread count must be >= 1, got {threads}")
    signed = signed_adjacency(t)
    chunk_rows = 1 << 15

    def produce(start_candidate: int, rows: int):
        trits = trit_block(seed, start_candidate * n, rows * n).reshape(rows, n)
        a_ind = trits == 1
        b_ind = trits == 2
        na = a_ind.sum(axis=1).astype(np.int64)
        nb = b_ind.sum(axis=1).astype(np.int64)
        # d_i = sum_{j in A_i, k in B_i} signed[j, k] = e(A,B) - e(B,A)
        d = ((a_ind.astype(np.int64) @ signed) * b_ind).sum(axis=1)
        return trits, na, nb, d

    collected = 0
    violations = 0
    best_num, best_den = 0, 1
    best_pair: Optional[tuple[int, int]] = None
    max_candidates = 64 * samples + 1024  # unreachable for n >= 2; loop guard
    next_candidate = 0

    def consume(trits, na, nb, d) -> None:
        nonlocal collected, violations, best_num, best_den, best_pair
        valid = np.flatnonzero((na > 0) & (nb > 0))[: samples - collected]
        if valid.size == 0:
            return
        collected += int(valid.size)
        nav, nbv, dv = na[valid], nb[valid], d[valid]
        den = n * nav * nbv
        dd = np.where(dv > 0, dv * dv, 0)
        violations += int((dd > den).sum())
        flagged = np.flatnonzero(dd * best_den >= best_num * den)
        for r in flagged:
            num_r, den_r = int(dd[r]), int(den[r])
            if num_r == 0 and best_num > 0:
                continue
            row = trits[valid[r]]
            pair = (
                vertex_mask(int(i) for i in np.flatnonzero(row == 1)),
                vertex_mask(int(i) for i in np.flatnonzero(row == 2)),
            )
            if (
                best_pair is None
                or num_r * best_den > best_num * den_r
                or (num_r * best_den == best_num * den_r and pair < best_pair)
            ):
                best_num, best_den, best_pair = num_r, den_r, pair

    if threads == 1:
        while collected < samples:
            if next_candidate >= max_candidates:
                raise RuntimeError("sampling failed to find enough valid assignments")
            consume(*produce(next_candidate, chunk_rows))
            next_candidate += chunk_rows
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            while collected < samples:
                if next_candidate >= max_candidates:
                    raise RuntimeError(
                        "sampling failed to find enough valid assignments"
                    )
                starts = [
                    next_candidate + i * chunk_rows for i in range(threads)
                ]
                next_candidate += threads * chunk_rows
                for out in pool.map(lambda s: produce(s, chunk_rows), starts):
                    consume(*out)  # merge order = candidate order
    return MixingReport("sampled", samples, violations, best_num, best_den, best_pair)


def gap_bound(n: int) -> float:
    """n^1.5 * log2(2n): the mixing-derived cap on C(T,sigma) - C(T,sigma')."""
    return n**1.5 * math.log2(2 * n)


class GapCheck(NamedTuple):
    gap: int
    bound: float
    holds: bool


def check_sigma_gap(t: Tournament, ranking) -> GapCheck:
    """Gap between a ranking and its mirror against the n^1.5 log2(2n) bound."""
    ranking = check_ranking(t, ranking)
    c = count_consistent(t, ranking)
    c_rev = count_consistent(t, reverse_ranking(ranking))
    total = t.n * (t.n - 1) // 2
    if c + c_rev != total:  # complementary counts; cannot fail
        raise AssertionError(f"count identity broken: {c} + {c_rev} != {total}")
    gap = c - c_rev
    bound = gap_bound(t.n)
    return GapCheck(gap, bound, gap <= bound)


class BoundCheck(NamedTuple):
    lhs: int
    rhs: float
    holds: bool
    vacuous: bool


def bound_is_vacuous(n: int) -> bool:
    """True when binom(n,2)/2 + gap_bound(n) >= binom(n,2), i.e. the cap says
    nothing beyond the trivial C(T) <= binom(n,2)."""
    total = math.comb(n, 2)
    return total / 2 + gap_bound(n) >= total


def check_theorem_bound(t: Tournament, c_value: int) -> BoundCheck:
    """C(T) <= binom(n,2)/2 + n^1.5 log2(2n), with an honest vacuousness flag.

    `c_value` may be the exact maximum consistency or any lower bound for it.
    """
    total = t.n * (t.n - 1) // 2
    if not (0 <= c_value <= total):
        raise ValueError(f"c_value {c_value} outside 0..{total}")
    rhs = total / 2 + gap_bound(t.n)
    return BoundCheck(c_value, rhs, c_value <= rhs, rhs >= total)
