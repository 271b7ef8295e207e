"""Feature matrices from barcodes and Betti numbers, k-means, and ARI.

Feature construction counts, per input graph, how often each (dimension,
birth, death) bar triple occurs in the directionality-filtered barcode of its
flag tournaplex, then keeps the columns with the largest standard deviation.
The spike variants do the same per transmission-response time bin, or use the
leading Betti numbers of the directed flag complex instead of bar counts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np
from sklearn.cluster import KMeans

from .digraph import Digraph, SpikeTrain, active_subgraph, bin_count, transmission_response
from .directionality import directionality_weight
from .errors import ParameterError
from .persistence import betti_numbers, build_filtration, compute_persistence
from .tournaments import directed_flag_complex, flag_tournaplex

BarTriple = tuple[int, int, "int | None"]


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """Rows are inputs, columns the selected highest-deviation candidates.

    Columns appear in selection order (descending standard deviation, ties
    broken by candidate label order).
    """

    values: np.ndarray
    column_labels: tuple[str, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


def _triple_key(t: BarTriple) -> tuple:
    return (t[0], t[1], t[2] is None, t[2] or 0)


def _triple_label(t: BarTriple) -> str:
    dim, birth, death = t
    return f"dim{dim}_b{birth}_d{'inf' if death is None else death}"


def barcode_triples(g: Digraph, max_order: int) -> Counter:
    """Multiset of (dimension, birth, death) bars of the flag tournaplex of `g`
    under the local directionality weight."""
    k = flag_tournaplex(g, max_order)
    fc = build_filtration(k, directionality_weight, validate=False)
    return Counter((p.dimension, p.birth, p.death) for p in compute_persistence(fc))


def _select_columns(matrix: np.ndarray, tiebreak_keys: list, m: int) -> list[int]:
    # population standard deviation; ties broken by candidate label order
    stds = matrix.std(axis=0)
    order = sorted(range(matrix.shape[1]), key=lambda i: (-stds[i], tiebreak_keys[i]))
    return order[:m]


def directionality_features(
    graphs: Sequence[Digraph], d: int, max_order: int = 8
) -> FeatureMatrix:
    """Bar-count feature matrix over a batch of digraphs, d columns."""
    graphs = list(graphs)
    if not graphs:
        raise ParameterError("need at least one digraph")
    if d < 1:
        raise ParameterError("d must be at least 1")
    counts = [barcode_triples(g, max_order) for g in graphs]
    universe = sorted({t for c in counts for t in c}, key=_triple_key)
    if d > len(universe):
        raise ParameterError(f"d = {d} exceeds the {len(universe)} distinct bar triples")
    matrix = np.array([[c[t] for t in universe] for c in counts], dtype=float)
    selected = _select_columns(matrix, list(range(len(universe))), d)
    labels = tuple(_triple_label(universe[i]) for i in selected)
    return FeatureMatrix(matrix[:, selected], labels)


def _tr_graph_grid(
    spike_sets: Sequence[SpikeTrain], g: Digraph, t1: float, t2: float
) -> tuple[list[list[Digraph]], int]:
    trains = list(spike_sets)
    if not trains:
        raise ParameterError("need at least one spike train")
    durations = {st.duration for st in trains}
    if len(durations) != 1:
        raise ParameterError("spike trains must share a single duration")
    nbins = bin_count(trains[0].duration, t1)
    return [transmission_response(g, st, t1, t2) for st in trains], nbins


def spike_directionality_features(
    spike_sets: Sequence[SpikeTrain],
    g: Digraph,
    m: int,
    t1: float,
    t2: float,
    max_order: int = 8,
) -> FeatureMatrix:
    """Bar-count features of per-bin transmission-response graphs, m columns.

    Isolated vertices are dropped from each transmission-response graph
    before its complex is built, so silent bins contribute nothing.
    """
    if m < 1:
        raise ParameterError("m must be at least 1")
    grids, nbins = _tr_graph_grid(spike_sets, g, t1, t2)
    bars = [
        [barcode_triples(active_subgraph(tr), max_order) for tr in row] for row in grids
    ]
    universe = sorted({t for row in bars for c in row for t in c}, key=_triple_key)
    if not universe:
        raise ParameterError(
            "degenerate features: no persistence bars in any transmission-response graph"
        )
    columns = [(j, t) for j in range(nbins) for t in universe]
    if m > len(columns):
        raise ParameterError(f"m = {m} exceeds the {len(columns)} candidate columns")
    matrix = np.array([[row[j][t] for j, t in columns] for row in bars], dtype=float)
    keys = [(_triple_key(t), j) for j, t in columns]
    selected = _select_columns(matrix, keys, m)
    labels = tuple(f"bin{columns[i][0]}_{_triple_label(columns[i][1])}" for i in selected)
    return FeatureMatrix(matrix[:, selected], labels)


def spike_betti_features(
    spike_sets: Sequence[SpikeTrain],
    g: Digraph,
    d: int,
    m: int,
    t1: float,
    t2: float,
    max_order: int = 8,
) -> FeatureMatrix:
    """Per-bin leading Betti numbers of directed flag complexes, m columns."""
    if d < 1:
        raise ParameterError("d must be at least 1")
    if m < 1:
        raise ParameterError("m must be at least 1")
    grids, nbins = _tr_graph_grid(spike_sets, g, t1, t2)
    rows = []
    for row in grids:
        feats: list[float] = []
        for tr in row:
            betti = betti_numbers(directed_flag_complex(active_subgraph(tr), max_order))
            feats.extend((list(betti) + [0] * d)[:d])
        rows.append(feats)
    matrix = np.array(rows, dtype=float)
    if matrix.size == 0 or not matrix.any():
        raise ParameterError("degenerate features: all Betti numbers are zero")
    columns = [(j, dim) for j in range(nbins) for dim in range(d)]
    if m > len(columns):
        raise ParameterError(f"m = {m} exceeds the {len(columns)} candidate columns")
    keys = [(dim, j) for j, dim in columns]
    selected = _select_columns(matrix, keys, m)
    labels = tuple(f"bin{columns[i][0]}_betti{columns[i][1]}" for i in selected)
    return FeatureMatrix(matrix[:, selected], labels)


def kmeans(
    features: FeatureMatrix | np.ndarray,
    k: int,
    seed: int,
    restarts: int = 10,
) -> list[int]:
    """Lloyd's algorithm with k-means++ starts, best of `restarts` runs by
    within-cluster sum of squares.

    Clusters the raw feature values: per-column z-scoring was tried and
    measurably degrades the classification experiments by amplifying
    high-variance noise columns. Uniform positive rescaling of all entries
    leaves the labels unchanged since every step of the algorithm is
    scale-equivariant.
    """
    x = features.values if isinstance(features, FeatureMatrix) else np.asarray(features, float)
    if x.ndim != 2:
        raise ParameterError("feature matrix must be 2-dimensional")
    n = x.shape[0]
    if not 1 <= k <= n:
        raise ParameterError(f"k must be between 1 and the number of rows ({n})")
    if restarts < 1:
        raise ParameterError("restarts must be at least 1")
    model = KMeans(
        n_clusters=k,
        init="k-means++",
        n_init=restarts,
        algorithm="lloyd",
        random_state=seed & 0xFFFFFFFF,
    )
    return model.fit_predict(x).tolist()


def adjusted_rand_index(labels_a: Sequence, labels_b: Sequence) -> float:
    """Chance-corrected agreement of two labelings via pair counting."""
    a = list(labels_a)
    b = list(labels_b)
    if len(a) != len(b):
        raise ParameterError("label sequences differ in length")
    n = len(a)
    if n == 0:
        raise ParameterError("cannot compare empty labelings")
    if n == 1:
        return 1.0
    cells = Counter(zip(a, b))
    rows = Counter(a)
    cols = Counter(b)
    sum_cells = sum(comb(c, 2) for c in cells.values())
    sum_rows = sum(comb(c, 2) for c in rows.values())
    sum_cols = sum(comb(c, 2) for c in cols.values())
    expected = sum_rows * sum_cols / comb(n, 2)
    maximum = (sum_rows + sum_cols) / 2
    if maximum == expected:
        return 1.0
    return (sum_cells - expected) / (maximum - expected)
