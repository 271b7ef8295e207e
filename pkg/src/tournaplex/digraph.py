"""Digraph representation, file I/O, random generation, and spike-train handling."""

from __future__ import annotations

import bisect
import csv
import math
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import IO, Sequence

import numpy as np

from .errors import ParameterError, ParseError, RangeError, ValidationError


@dataclass(frozen=True)
class Digraph:
    """A finite simple digraph.

    Simple means loop-free with at most one edge per ordered pair; a
    reciprocal pair (u, v) plus (v, u) is allowed. Vertices are the
    integers 0..vertex_count-1 and instances are immutable.
    """

    vertex_count: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        edges = frozenset((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.vertex_count < 0:
            raise ParameterError("vertex_count must be non-negative")
        for u, v in edges:
            if u == v:
                raise ValidationError(f"self-loop ({u}, {v}) is not allowed")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise RangeError(
                    f"edge ({u}, {v}) out of range for {self.vertex_count} vertices"
                )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.vertex_count:
            raise RangeError(f"vertex {v} out of range for {self.vertex_count} vertices")

    @cached_property
    def out_adjacency(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            out[u].append(v)
        return tuple(tuple(sorted(vs)) for vs in out)

    @cached_property
    def in_adjacency(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            inc[v].append(u)
        return tuple(tuple(sorted(us)) for us in inc)

    @cached_property
    def undirected_masks(self) -> tuple[int, ...]:
        """Per-vertex bitmask of neighbours with orientation ignored."""
        masks = [0] * self.vertex_count
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def out_degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.out_adjacency[v])

    def in_degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.in_adjacency[v])


def signed_degree(g: Digraph, v: int) -> int:
    """In-degree minus out-degree; a reciprocal pair contributes to both."""
    g._check_vertex(v)
    return len(g.in_adjacency[v]) - len(g.out_adjacency[v])


def active_subgraph(g: Digraph) -> Digraph:
    """The induced subgraph on non-isolated vertices, indices compacted."""
    used = sorted({w for e in g.edges for w in e})
    remap = {v: i for i, v in enumerate(used)}
    return Digraph(len(used), frozenset((remap[u], remap[v]) for u, v in g.edges))


# ---------------------------------------------------------------------------
# file format
#
# A digraph file holds a `dim 0` line, one line of per-vertex weights (the
# weights are ignored here, their count fixes vertex_count), a `dim 1` line,
# and one `u v` pair per line. Lines starting with `#` are comments.
# ---------------------------------------------------------------------------


def parse_digraph(source: str | IO[str]) -> Digraph:
    """Parse the digraph file format; raises ParseError with a line number."""
    text = source.read() if hasattr(source, "read") else str(source)
    rows = [
        (no, line.strip())
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    pos = 0

    def expect_header(label: str) -> None:
        nonlocal pos
        if pos >= len(rows) or rows[pos][1].split() != ["dim", label]:
            line = rows[pos][0] if pos < len(rows) else None
            raise ParseError(f"expected 'dim {label}' header", line=line)
        pos += 1

    expect_header("0")
    if pos >= len(rows):
        raise ParseError("expected a line of vertex weights")
    no, weight_line = rows[pos]
    pos += 1
    tokens = weight_line.split()
    try:
        for tok in tokens:
            float(tok)
    except ValueError:
        raise ParseError(f"bad vertex weight {tok!r}", line=no) from None
    n = len(tokens)

    expect_header("1")
    edges: set[tuple[int, int]] = set()
    for no, line in rows[pos:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", line=no)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer edge endpoint in {line!r}", line=no) from None
        if u == v:
            raise ValidationError(f"line {no}: self-loop ({u}, {v})")
        if not (0 <= u < n and 0 <= v < n):
            raise RangeError(f"line {no}: edge ({u}, {v}) out of range for {n} vertices")
        if (u, v) in edges:
            raise ValidationError(f"line {no}: duplicate edge ({u}, {v})")
        edges.add((u, v))
    return Digraph(n, frozenset(edges))


def digraph_to_text(g: Digraph) -> str:
    """Serialise a digraph in the file format accepted by parse_digraph."""
    if g.vertex_count == 0:
        raise ParameterError("cannot serialise a digraph with no vertices")
    lines = ["dim 0", " ".join(["0"] * g.vertex_count), "dim 1"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def load_digraph(path: str | Path) -> Digraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_digraph(fh)


def save_digraph(g: Digraph, path: str | Path) -> None:
    Path(path).write_text(digraph_to_text(g), encoding="utf-8")


def bundled_digraph(name: str) -> Digraph:
    """Load one of the digraph fixtures shipped with the package (e.g. 'g1')."""
    ref = resources.files(__package__) / "data" / f"{name}.flag"
    try:
        text = ref.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ParameterError(f"no bundled digraph named {name!r}") from None
    return parse_digraph(text)


# ---------------------------------------------------------------------------
# random generation
# ---------------------------------------------------------------------------


def er_biased(n: int, p: float, q: float, seed: int) -> Digraph:
    """Random digraph with orientation-biased edge probabilities.

    Edge (i, j) is present with probability p when i > j and probability q
    when i < j, all draws independent. Draws come from a PCG64 generator
    seeded with `seed` producing one n-by-n row-major uniform matrix, so the
    same (n, p, q, seed) always yields the same graph.
    """
    if n < 0:
        raise ParameterError("n must be non-negative")
    if not (0.0 <= p <= 1.0 and 0.0 <= q <= 1.0):
        raise ParameterError("p and q must lie in [0, 1]")
    if n == 0:
        return Digraph(0, frozenset())
    rng = np.random.Generator(np.random.PCG64(seed & 0xFFFFFFFFFFFFFFFF))
    u = rng.random((n, n))
    i = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    mask = ((i > j) & (u < p)) | ((i < j) & (u < q))
    us, vs = np.nonzero(mask)
    return Digraph(n, frozenset(zip(us.tolist(), vs.tolist())))


# ---------------------------------------------------------------------------
# spike trains and transmission-response graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpikeTrain:
    """Spike events (time in milliseconds, neuron index) over a recording window."""

    events: tuple[tuple[float, int], ...]
    duration: float

    def __post_init__(self):
        events = tuple((float(t), int(g)) for t, g in self.events)
        object.__setattr__(self, "events", events)
        object.__setattr__(self, "duration", float(self.duration))
        if self.duration < 0:
            raise ParameterError("duration must be non-negative")
        for t, g in events:
            if not 0.0 <= t <= self.duration:
                raise ValidationError(f"spike time {t} outside [0, {self.duration}]")
            if g < 0:
                raise RangeError(f"negative neuron index {g}")

    def times_by_neuron(self) -> dict[int, list[float]]:
        per: dict[int, list[float]] = {}
        for t, g in self.events:
            per.setdefault(g, []).append(t)
        for times in per.values():
            times.sort()
        return per


def read_spikes_csv(source: str | Path | IO[str], duration: float | None = None) -> SpikeTrain:
    """Read a `time,neuron` CSV; duration defaults to the latest spike time."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return read_spikes_csv(fh, duration)
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty spike file, expected 'time,neuron' header") from None
    if [h.strip().lower() for h in header] != ["time", "neuron"]:
        raise ParseError("expected 'time,neuron' header", line=1)
    events = []
    for no, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 2:
            raise ParseError(f"expected two fields, got {row!r}", line=no)
        try:
            events.append((float(row[0]), int(row[1])))
        except ValueError:
            raise ParseError(f"bad spike row {row!r}", line=no) from None
    if duration is None:
        duration = max((t for t, _ in events), default=0.0)
    return SpikeTrain(tuple(events), duration)


def write_spikes_csv(train: SpikeTrain, dest: str | Path | IO[str]) -> None:
    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            write_spikes_csv(train, fh)
            return
    writer = csv.writer(dest)
    writer.writerow(["time", "neuron"])
    for t, g in train.events:
        writer.writerow([f"{t:g}", g])


def poisson_spike_train(rates_hz: Sequence[float], duration: float, seed: int) -> SpikeTrain:
    """Independent homogeneous Poisson spiking, one rate per neuron, PCG64 seeded."""
    if duration < 0:
        raise ParameterError("duration must be non-negative")
    rng = np.random.Generator(np.random.PCG64(seed & 0xFFFFFFFFFFFFFFFF))
    events: list[tuple[float, int]] = []
    for g, rate in enumerate(rates_hz):
        if rate < 0:
            raise ParameterError("firing rates must be non-negative")
        count = int(rng.poisson(rate * duration / 1000.0))
        times = rng.uniform(0.0, duration, count) if duration > 0 else np.zeros(0)
        events.extend((float(t), g) for t in times)
    events.sort()
    return SpikeTrain(tuple(events), duration)


def bin_count(duration: float, t1: float) -> int:
    """Number of t1-millisecond bins covering [0, duration)."""
    if t1 <= 0:
        raise ParameterError("t1 must be positive")
    if duration <= 0:
        return 0
    # tolerate float error when duration is an exact multiple of t1
    return int(math.ceil(duration / t1 - 1e-9))


def transmission_response(g: Digraph, spikes: SpikeTrain, t1: float, t2: float) -> list[Digraph]:
    """One digraph per t1-bin: edge (i, j) survives when (i, j) is structural,
    i fired at some t0 inside the bin, and j fired in the window (t0, t0 + t2].

    The response spike may land in a later bin; simultaneous spikes (t == t0)
    do not create an edge.
    """
    if t1 <= 0 or t2 <= 0:
        raise ParameterError("t1 and t2 must be positive")
    per = spikes.times_by_neuron()
    for neuron in per:
        if neuron >= g.vertex_count:
            raise RangeError(
                f"spike neuron {neuron} not in digraph with {g.vertex_count} vertices"
            )
    nbins = bin_count(spikes.duration, t1)
    graphs = []
    for r in range(nbins):
        lo, hi = r * t1, (r + 1) * t1
        edges: set[tuple[int, int]] = set()
        for i, times_i in per.items():
            a = bisect.bisect_left(times_i, lo)
            b = bisect.bisect_left(times_i, hi)
            if a == b:
                continue
            sources = times_i[a:b]
            for j in g.out_adjacency[i]:
                times_j = per.get(j)
                if not times_j:
                    continue
                for t0 in sources:
                    k = bisect.bisect_right(times_j, t0)
                    if k < len(times_j) and times_j[k] <= t0 + t2:
                        edges.add((i, j))
                        break
        graphs.append(Digraph(g.vertex_count, frozenset(edges)))
    return graphs
