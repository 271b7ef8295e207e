"""Tournaments (oriented cliques), tournaplexes, and flag enumeration.

An order-n tournament is stored as a strictly increasing vertex tuple plus
one orientation bit per vertex pair. A tournaplex is a face-closed,
duplicate-free collection of tournaments graded by order; an order-n
tournament sits in dimension n - 1.
"""

from __future__ import annotations

import warnings
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb
from typing import Callable, Iterable, Iterator, Mapping

from .digraph import Digraph
from .errors import ParameterError, RangeError, ValidationError


class OrientationBlowupWarning(UserWarning):
    """A clique with many reciprocal pairs expands into very many tournaments."""


@lru_cache(maxsize=None)
def vertex_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Position pairs (p, q), p < q, in lexicographic order; one orientation bit each."""
    return tuple((p, q) for p in range(n) for q in range(p + 1, n))


@lru_cache(maxsize=None)
def _pair_index(n: int) -> dict[tuple[int, int], int]:
    return {pq: i for i, pq in enumerate(vertex_pairs(n))}


@lru_cache(maxsize=None)
def _face_bit_map(n: int, drop: int) -> tuple[int, ...]:
    """For each orientation bit of the face missing position `drop`, the
    source bit position in the parent tournament."""
    keep = [p for p in range(n) if p != drop]
    idx = _pair_index(n)
    out = []
    for a in range(n - 1):
        for b in range(a + 1, n - 1):
            out.append(idx[(keep[a], keep[b])])
    return tuple(out)


def _restrict_bits(bits: int, n: int, keep: tuple[int, ...]) -> int:
    """Orientation bits of the sub-tournament induced on sorted positions `keep`."""
    idx = _pair_index(n)
    sub = 0
    pos = 0
    for a in range(len(keep)):
        for b in range(a + 1, len(keep)):
            sub |= (bits >> idx[(keep[a], keep[b])] & 1) << pos
            pos += 1
    return sub


def _bits_out_degrees(bits: int, n: int) -> list[int]:
    degs = [0] * n
    for i, (p, q) in enumerate(vertex_pairs(n)):
        degs[p if bits >> i & 1 else q] += 1
    return degs


@dataclass(frozen=True)
class Tournament:
    """An oriented clique on a strictly increasing vertex tuple.

    Bit i of `bits` orients pair `vertex_pairs(order)[i] = (p, q)`: 1 means
    the edge runs from vertices[p] to vertices[q], 0 the other way round.
    """

    vertices: tuple[int, ...]
    bits: int = 0

    def __post_init__(self):
        vs = tuple(int(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if any(v < 0 for v in vs):
            raise RangeError("vertex indices must be non-negative")
        if any(vs[i] >= vs[i + 1] for i in range(len(vs) - 1)):
            raise ValidationError(f"vertices must be strictly increasing, got {vs}")
        if not 0 <= self.bits < (1 << comb(len(vs), 2)):
            raise ValidationError(f"orientation bits {self.bits} out of range for order {len(vs)}")

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1

    @cached_property
    def out_degrees(self) -> tuple[int, ...]:
        return tuple(_bits_out_degrees(self.bits, self.order))

    def signed_degrees(self) -> tuple[int, ...]:
        # indeg + outdeg = order - 1 at every vertex of a tournament
        n1 = self.order - 1
        return tuple(n1 - 2 * d for d in self.out_degrees)

    def directed_edges(self) -> tuple[tuple[int, int], ...]:
        vs, bits = self.vertices, self.bits
        return tuple(
            (vs[p], vs[q]) if bits >> i & 1 else (vs[q], vs[p])
            for i, (p, q) in enumerate(vertex_pairs(self.order))
        )

    def face(self, i: int) -> "Tournament":
        """Sub-tournament dropping the i-th vertex in increasing vertex order."""
        n = self.order
        if n < 2:
            raise RangeError("a single vertex has no faces")
        if not 0 <= i < n:
            raise RangeError(f"face index {i} out of range for order {n}")
        vs = self.vertices[:i] + self.vertices[i + 1 :]
        sub = 0
        bits = self.bits
        for pos, src in enumerate(_face_bit_map(n, i)):
            sub |= (bits >> src & 1) << pos
        return Tournament(vs, sub)

    def faces(self) -> tuple["Tournament", ...]:
        if self.order < 2:
            return ()
        return tuple(self.face(i) for i in range(self.order))

    def restrict(self, positions: Iterable[int]) -> "Tournament":
        """Induced sub-tournament on the given (sorted) vertex positions."""
        keep = tuple(positions)
        return Tournament(
            tuple(self.vertices[p] for p in keep),
            _restrict_bits(self.bits, self.order, keep),
        )


def is_transitive(t: Tournament) -> bool:
    """True when the orientation defines a linear order on the vertices.

    Equivalent to the out-degree multiset being {0, 1, ..., order - 1}.
    """
    return sorted(t.out_degrees) == list(range(t.order))


def is_regular(t: Tournament) -> bool:
    return all(sd == 0 for sd in t.signed_degrees())


def is_semiregular(t: Tournament) -> bool:
    return all(abs(sd) <= 1 for sd in t.signed_degrees())


def transitive_tournament(vertices: Iterable[int]) -> Tournament:
    """The tournament whose edges all point from lower to higher vertex."""
    vs = tuple(vertices)
    return Tournament(vs, (1 << comb(len(vs), 2)) - 1)


def tournament_from_edges(edges: Iterable[tuple[int, int]]) -> Tournament:
    """Build a tournament from explicit oriented edges covering every pair once."""
    edge_set = {(int(u), int(v)) for u, v in edges}
    vs = tuple(sorted({w for e in edge_set for w in e}))
    pos = {v: i for i, v in enumerate(vs)}
    bits = 0
    for (u, v) in edge_set:
        if (v, u) in edge_set:
            raise ValidationError(f"reciprocal pair between {u} and {v}")
        if pos[u] < pos[v]:
            bits |= 1 << _pair_index(len(vs))[(pos[u], pos[v])]
    if len(edge_set) != comb(len(vs), 2):
        raise ValidationError("edges do not cover every vertex pair exactly once")
    return Tournament(vs, bits)


@dataclass(frozen=True)
class Tournaplex:
    """A face-closed collection of tournaments, graded by order."""

    grades: Mapping[int, tuple[Tournament, ...]]

    @classmethod
    def build(cls, tournaments: Iterable[Tournament], *, close_faces: bool = False) -> "Tournaplex":
        seen: set[Tournament] = set()
        if close_faces:
            stack = list(tournaments)
            while stack:
                t = stack.pop()
                if t in seen:
                    continue
                seen.add(t)
                if t.order > 1:
                    stack.extend(t.faces())
        else:
            seen.update(tournaments)
        grades: dict[int, list[Tournament]] = defaultdict(list)
        for t in seen:
            grades[t.order].append(t)
        return cls(
            {
                n: tuple(sorted(ts, key=lambda t: (t.vertices, t.bits)))
                for n, ts in sorted(grades.items())
            }
        )

    def __iter__(self) -> Iterator[Tournament]:
        for n in sorted(self.grades):
            yield from self.grades[n]

    def __len__(self) -> int:
        return sum(len(ts) for ts in self.grades.values())

    @cached_property
    def _member_sets(self) -> dict[int, frozenset[Tournament]]:
        return {n: frozenset(ts) for n, ts in self.grades.items()}

    def __contains__(self, t: object) -> bool:
        if not isinstance(t, Tournament):
            return False
        return t in self._member_sets.get(t.order, frozenset())

    @property
    def dimension(self) -> int:
        return max(self.grades, default=0) - 1

    def grade(self, order: int) -> tuple[Tournament, ...]:
        return self.grades.get(order, ())

    def counts(self) -> dict[int, int]:
        return {n: len(ts) for n, ts in sorted(self.grades.items())}

    def one_skeleton(self) -> Digraph:
        """The 1-skeleton as a digraph; reciprocal pairs contribute both edges."""
        verts = self.grade(1)
        n = max((t.vertices[0] for t in verts), default=-1) + 1
        edges = {t.directed_edges()[0] for t in self.grade(2)}
        return Digraph(n, frozenset(edges))

    def is_face_closed(self) -> bool:
        return all(f in self for t in self for f in t.faces())


def flag_tournaplex(
    g: Digraph,
    max_order: int = 8,
    *,
    blowup_warn_threshold: int = 4096,
) -> Tournaplex:
    """All tournament subgraphs of `g` with at most `max_order` vertices.

    A clique whose vertex set carries r reciprocal pairs expands into 2^r
    orientation variants; a warning is emitted the first time a single clique
    exceeds `blowup_warn_threshold` variants.
    """
    return _flag_complex(g, max_order, transitive_only=False, warn_threshold=blowup_warn_threshold)


def directed_flag_complex(g: Digraph, max_order: int = 8) -> Tournaplex:
    """The sub-tournaplex of the flag tournaplex spanned by transitive tournaments."""
    return _flag_complex(g, max_order, transitive_only=True, warn_threshold=0)


def _flag_complex(g: Digraph, max_order: int, transitive_only: bool, warn_threshold: int) -> Tournaplex:
    if max_order < 1:
        raise ParameterError("max_order must be at least 1")
    n = g.vertex_count
    masks = g.undirected_masks
    higher = [masks[v] & ~((1 << (v + 1)) - 1) for v in range(n)]
    edge_set = g.edges
    found: list[Tournament] = []
    warned = False

    def expand(clique: tuple[int, ...]) -> None:
        nonlocal warned
        k = len(clique)
        forced = 0
        free: list[int] = []
        for b, (p, q) in enumerate(vertex_pairs(k)):
            u, v = clique[p], clique[q]
            fwd = (u, v) in edge_set
            if fwd and (v, u) in edge_set:
                free.append(b)
            elif fwd:
                forced |= 1 << b
        if warn_threshold and not warned and (1 << len(free)) > warn_threshold:
            warnings.warn(
                f"clique {clique} has {len(free)} reciprocal pairs "
                f"({1 << len(free)} orientation variants)",
                OrientationBlowupWarning,
                stacklevel=3,
            )
            warned = True
        score = list(range(k))
        for combo in range(1 << len(free)):
            bits = forced
            rem = combo
            for b in free:
                bits |= (rem & 1) << b
                rem >>= 1
            if transitive_only and sorted(_bits_out_degrees(bits, k)) != score:
                continue
            found.append(Tournament(clique, bits))

    def grow(clique: tuple[int, ...], cand: int) -> None:
        expand(clique)
        if len(clique) >= max_order:
            return
        m = cand
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            grow(clique + (v,), cand & higher[v])

    for v in range(n):
        grow((v,), higher[v])

    grades: dict[int, list[Tournament]] = defaultdict(list)
    for t in found:
        grades[t.order].append(t)
    return Tournaplex(
        {
            k: tuple(sorted(ts, key=lambda t: (t.vertices, t.bits)))
            for k, ts in sorted(grades.items())
        }
    )


def dump_tournaplex(k: Tournaplex, weight: Callable[[Tournament], int] | None = None) -> str:
    """Debug dump, one `dim d : v0 ... vn : bitmask-hex : weight` line per tournament."""
    lines = []
    for t in k:
        w = weight(t) if weight is not None else 0
        verts = " ".join(map(str, t.vertices))
        lines.append(f"dim {t.dimension} : {verts} : {t.bits:#x} : {w}")
    return "\n".join(lines) + ("\n" if lines else "")
