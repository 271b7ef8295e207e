"""Directionality invariants of tournaments and the weight functions built on them.

Local directionality of an order-n tournament is the sum of squared signed
degrees over its vertices; it always equals 2*C(n+1, 3) - 8*c3 where c3 is
the number of directed 3-cycles. Shifting by 2*C(n, 3) makes it monotone
along faces, which is what the filtration weight uses.
"""

from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache
from math import comb
from typing import Callable

from .digraph import Digraph, signed_degree
from .errors import ParameterError
from .tournaments import Tournament, Tournaplex, _pair_index, _restrict_bits, vertex_pairs


@lru_cache(maxsize=None)
def _triple_bits(n: int) -> tuple[tuple[int, int, int], ...]:
    """For each position triple p < q < r, the bit indices of (p,q), (p,r), (q,r)."""
    idx = _pair_index(n)
    return tuple(
        (idx[(p, q)], idx[(p, r)], idx[(q, r)])
        for p in range(n)
        for q in range(p + 1, n)
        for r in range(q + 1, n)
    )


def _bits_c3(bits: int, n: int) -> int:
    # triple p<q<r is a 3-cycle iff bit(p,q) == bit(q,r) != bit(p,r)
    count = 0
    for bpq, bpr, bqr in _triple_bits(n):
        a = bits >> bpq & 1
        if a == (bits >> bqr & 1) and a != (bits >> bpr & 1):
            count += 1
    return count


def local_directionality(t: Tournament) -> int:
    """Sum of squared signed degrees inside the tournament."""
    return sum(sd * sd for sd in t.signed_degrees())


def three_cycle_count(t: Tournament) -> int:
    """Number of 3-vertex faces that are directed 3-cycles."""
    return _bits_c3(t.bits, t.order)


def directionality_identity_holds(t: Tournament) -> bool:
    """Cross-check of Dr == 2*C(n+1, 3) - 8*c3; must hold for every tournament."""
    n = t.order
    return local_directionality(t) == 2 * comb(n + 1, 3) - 8 * three_cycle_count(t)


def directionality_weight(t: Tournament) -> int:
    """Local directionality plus 2*C(n, 3); monotone along faces."""
    return local_directionality(t) + 2 * comb(t.order, 3)


def three_cycle_weight(t: Tournament) -> int:
    """The 3-cycle count as a filtration weight (monotone along faces)."""
    return three_cycle_count(t)


def global_directionality_weight(skeleton: Digraph, t: Tournament) -> int:
    """Sum over the tournament's vertices of squared signed degree in `skeleton`."""
    return sum(signed_degree(skeleton, v) ** 2 for v in t.vertices)


MOTIF_ORDER_CAP = 5


@lru_cache(maxsize=None)
def _perms(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.permutations(range(n)))


@lru_cache(maxsize=None)
def _canonical_bits(bits: int, n: int) -> int:
    """Minimum orientation bitmask over all vertex relabelings (n <= 5)."""
    idx = _pair_index(n)
    pairs = vertex_pairs(n)
    best: int | None = None
    for perm in _perms(n):
        relabeled = 0
        for pos, (p, q) in enumerate(pairs):
            a, b = perm[p], perm[q]
            if a < b:
                bit = bits >> idx[(a, b)] & 1
            else:
                bit = 1 - (bits >> idx[(b, a)] & 1)
            relabeled |= bit << pos
        if best is None or relabeled < best:
            best = relabeled
    return best


def motif_count_weight(t: Tournament, pattern: Tournament) -> int:
    """Number of faces of `t` isomorphic to `pattern` as digraphs."""
    m = pattern.order
    if m > MOTIF_ORDER_CAP:
        raise ParameterError(f"motif patterns are capped at order {MOTIF_ORDER_CAP}")
    if m > t.order:
        return 0
    target = _canonical_bits(pattern.bits, m)
    n = t.order
    count = 0
    for keep in itertools.combinations(range(n), m):
        if _canonical_bits(_restrict_bits(t.bits, n, keep), m) == target:
            count += 1
    return count


def weight_function(
    kind: str,
    *,
    skeleton: Digraph | None = None,
    pattern: Tournament | None = None,
) -> Callable[[Tournament], int]:
    """Weight function factory for the kinds 'dr', 'c3', 'global' and 'motif'."""
    if kind == "dr":
        return directionality_weight
    if kind == "c3":
        return three_cycle_weight
    if kind == "global":
        if skeleton is None:
            raise ParameterError("the 'global' weight needs a skeleton digraph")
        return lambda t: global_directionality_weight(skeleton, t)
    if kind == "motif":
        if pattern is None:
            raise ParameterError("the 'motif' weight needs a pattern tournament")
        if pattern.order > MOTIF_ORDER_CAP:
            raise ParameterError(f"motif patterns are capped at order {MOTIF_ORDER_CAP}")
        return lambda t: motif_count_weight(t, pattern)
    raise ParameterError(f"unknown weight kind {kind!r}")


# ---------------------------------------------------------------------------
# counting tables and expectations
# ---------------------------------------------------------------------------

# Labeled n-tournaments on a fixed vertex set with exactly j directed
# 3-cycles, for n <= 5. Verified against enumerate_tournament_counts in the
# test suite; the literal is authoritative at runtime for speed.
_COUNTS_BY_C3: dict[int, dict[int, int]] = {
    1: {0: 1},
    2: {0: 2},
    3: {0: 6, 1: 2},
    4: {0: 24, 1: 16, 2: 24},
    5: {0: 120, 1: 120, 2: 240, 3: 240, 4: 280, 5: 24},
}


def tournament_counts_by_c3(n: int) -> dict[int, int]:
    """Counts of labeled n-tournaments grouped by 3-cycle count (1 <= n <= 5)."""
    if n not in _COUNTS_BY_C3:
        raise ParameterError("the count table covers 1 <= n <= 5")
    return dict(_COUNTS_BY_C3[n])


def enumerate_tournament_counts(n: int) -> dict[int, int]:
    """Brute-force c3 histogram over all 2^C(n, 2) orientation masks (n <= 6)."""
    if not 1 <= n <= 6:
        raise ParameterError("enumeration supported for 1 <= n <= 6")
    hist: Counter[int] = Counter()
    for mask in range(1 << comb(n, 2)):
        hist[_bits_c3(mask, n)] += 1
    return dict(sorted(hist.items()))


def max_three_cycles(n: int) -> int:
    """Sharp upper bound for the 3-cycle count of an n-tournament."""
    if n < 1:
        raise ParameterError("n must be at least 1")
    return (n**3 - n) // 24 if n % 2 else (n**3 - 4 * n) // 24


def expected_tournament_counts(n: int, k: int, p: float) -> tuple[float, dict[int, float]]:
    """Expected number of k-tournaments, total and split by 3-cycle count,
    in a random digraph on n vertices where each of the n(n-1) directed
    edges appears independently with probability p.
    """
    if not 1 <= k <= 5:
        raise ParameterError("k must be between 1 and 5 (count table limit)")
    if not 0.0 <= p <= 1.0:
        raise ParameterError("p must lie in [0, 1]")
    base = comb(n, k) * p ** comb(k, 2)
    table = tournament_counts_by_c3(k)
    return base * 2 ** comb(k, 2), {j: base * cnt for j, cnt in table.items()}


def tournament_histogram(k: Tournaplex) -> dict[tuple[int, int], int]:
    """(order, c3) -> count over all tournaments of a tournaplex."""
    hist: Counter[tuple[int, int]] = Counter()
    for t in k:
        hist[(t.order, three_cycle_count(t))] += 1
    return dict(sorted(hist.items()))
