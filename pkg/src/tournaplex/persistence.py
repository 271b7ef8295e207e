"""Filtration assembly, mod-2 boundary reduction, barcodes, and Betti grids.

Reduction follows the standard column algorithm over Z/2 with the clearing
twist: dimensions are processed top down, and any simplex that appeared as a
pivot row of a higher-dimensional column is skipped, since its own column
must reduce to zero. Columns are Python integers used as bit vectors over
row indices, so a column addition is a single XOR.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .directionality import directionality_weight, three_cycle_weight
from .errors import InvariantError, ParameterError
from .tournaments import Tournament, Tournaplex, _face_bit_map


@dataclass(frozen=True)
class PersistencePair:
    """One barcode interval [birth, death); death None means the class never dies."""

    dimension: int
    birth: int
    death: int | None

    @property
    def infinite(self) -> bool:
        return self.death is None

    def sort_key(self) -> tuple:
        return (self.dimension, self.birth, self.death is None, self.death or 0)


@dataclass(frozen=True)
class BettiGridCell:
    dr_threshold: int
    c3_threshold: int
    betti: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class FilteredComplex:
    """Simplices in reduction order with weights, dimensions, and codim-1 faces.

    The order is ascending (weight, dimension, vertex tuple, orientation
    bits), a linear extension of the face partial order.
    """

    simplices: tuple[Tournament, ...]
    weights: tuple[int, ...]
    dimensions: tuple[int, ...]
    face_indices: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.simplices)


def build_filtration(
    tournaments: Iterable[Tournament],
    weight: Callable[[Tournament], int],
    *,
    validate: bool = True,
) -> FilteredComplex:
    """Sort a tournaplex (or any face-closed collection) by a monotone weight.

    With validate on, a weight decrease along any codim-1 face raises an
    InvariantError naming the offending pair.
    """
    weighted = [(int(weight(t)), t) for t in tournaments]
    weighted.sort(key=lambda wt: (wt[0], wt[1].order, wt[1].vertices, wt[1].bits))
    index = {(t.vertices, t.bits): i for i, (_, t) in enumerate(weighted)}
    if len(index) != len(weighted):
        raise InvariantError("duplicate simplices in filtration input")
    simplices, weights, dims, faces = [], [], [], []
    for w, t in weighted:
        simplices.append(t)
        weights.append(w)
        dims.append(t.dimension)
        order = t.order
        if order == 1:
            faces.append(())
            continue
        verts, bits = t.vertices, t.bits
        row = []
        for i in range(order):
            # face key assembled in place; avoids building Tournament objects
            sub = 0
            for pos, src in enumerate(_face_bit_map(order, i)):
                sub |= (bits >> src & 1) << pos
            fi = index.get((verts[:i] + verts[i + 1 :], sub))
            if fi is None:
                raise InvariantError(
                    f"face {t.face(i)} of {t} is missing: input is not face-closed"
                )
            if validate and weighted[fi][0] > w:
                raise InvariantError(
                    f"weight not monotone: W({t.face(i)}) = {weighted[fi][0]} "
                    f"exceeds W({t}) = {w}"
                )
            row.append(fi)
        faces.append(tuple(row))
    return FilteredComplex(tuple(simplices), tuple(weights), tuple(dims), tuple(faces))


def compute_persistence(
    fc: FilteredComplex, *, include_zero_length: bool = False
) -> list[PersistencePair]:
    """Z/2 barcode of the sublevel filtration.

    Zero-length bars are suppressed unless requested; dimension 0 gets one
    infinite bar per connected component of the full complex.
    """
    weights = fc.weights
    dims = fc.dimensions
    n = len(weights)
    by_dim: dict[int, list[int]] = {}
    for j in range(n):
        by_dim.setdefault(dims[j], []).append(j)
    max_dim = max(by_dim, default=-1)

    pairs: list[PersistencePair] = []
    pivot_of_row: dict[int, int] = {}  # pivot row -> reduced column bitmask
    cleared: set[int] = set()
    positive_unpaired: list[int] = []

    for d in range(max_dim, 0, -1):
        for j in by_dim.get(d, ()):
            if j in cleared:
                continue
            col = 0
            for f in fc.face_indices[j]:
                col |= 1 << f
            while col:
                low = col.bit_length() - 1
                other = pivot_of_row.get(low)
                if other is None:
                    break
                col ^= other
            if col:
                low = col.bit_length() - 1
                pivot_of_row[low] = col
                cleared.add(low)
                birth, death = weights[low], weights[j]
                if include_zero_length or birth != death:
                    pairs.append(PersistencePair(d - 1, birth, death))
            else:
                positive_unpaired.append(j)

    for j in by_dim.get(0, ()):
        if j not in cleared:
            positive_unpaired.append(j)
    for j in positive_unpaired:
        if j not in cleared:
            pairs.append(PersistencePair(dims[j], weights[j], None))

    pairs.sort(key=PersistencePair.sort_key)
    return pairs


def barcode_betti(pairs: Iterable[PersistencePair], threshold: int) -> dict[int, int]:
    """Betti numbers implied by a barcode at a threshold: bars alive there."""
    alive: Counter[int] = Counter()
    for p in pairs:
        if p.birth <= threshold and (p.death is None or p.death > threshold):
            alive[p.dimension] += 1
    return dict(alive)


def format_barcode(pairs: Iterable[PersistencePair], *, csv: bool = False) -> str:
    """One `dim birth death` line per bar, 'inf' for endless bars, sorted."""
    rows = sorted(pairs, key=PersistencePair.sort_key)
    if csv:
        lines = ["dim,birth,death"]
        lines += [f"{p.dimension},{p.birth},{'inf' if p.death is None else p.death}" for p in rows]
    else:
        lines = [f"{p.dimension} {p.birth} {'inf' if p.death is None else p.death}" for p in rows]
    return "\n".join(lines) + ("\n" if lines else "")


def _betti_of(tournaments: Iterable[Tournament]) -> tuple[int, ...]:
    ts = list(tournaments)
    if not ts:
        return ()
    fc = build_filtration(ts, lambda t: 0, validate=False)
    betti = [0] * (max(t.dimension for t in ts) + 1)
    for p in compute_persistence(fc):
        if p.death is None:
            betti[p.dimension] += 1
    while betti and betti[-1] == 0:
        betti.pop()
    return tuple(betti)


def betti_numbers(k: Tournaplex) -> tuple[int, ...]:
    """Z/2 Betti numbers of the unfiltered complex, trailing zeros trimmed."""
    return _betti_of(k)


def bifiltration_betti(
    k: Tournaplex,
    dr_levels: Sequence[int],
    c3_levels: Sequence[int],
) -> list[list[BettiGridCell]]:
    """Betti vectors of the sub-tournaplexes cut by simultaneous thresholds
    on the directionality weight and the 3-cycle weight.

    Both weights are monotone, so each cell's subset is face-closed. Every
    cell is computed by a fresh reduction.
    """
    dr_levels = list(dr_levels)
    c3_levels = list(c3_levels)
    if dr_levels != sorted(dr_levels) or c3_levels != sorted(c3_levels):
        raise ParameterError("threshold levels must be ascending")
    annotated = [(directionality_weight(t), three_cycle_weight(t), t) for t in k]
    grid: list[list[BettiGridCell]] = []
    for r in dr_levels:
        row = []
        for c in c3_levels:
            sub = [t for wd, wc, t in annotated if wd <= r and wc <= c]
            row.append(BettiGridCell(r, c, _betti_of(sub)))
        grid.append(row)
    return grid


def combined_filtration_value(t: Tournament, a: int, b: int) -> int:
    """max(a * dr-weight, b * c3-weight); monotone as a max of monotone maps."""
    if a <= 0 or b <= 0:
        raise ParameterError("combined weight factors must be positive")
    return max(a * directionality_weight(t), b * three_cycle_weight(t))


def distinct_weight_levels(
    k: Tournaplex, weight: Callable[[Tournament], int]
) -> list[int]:
    """Sorted distinct weight values taken on a tournaplex."""
    return sorted({int(weight(t)) for t in k})
