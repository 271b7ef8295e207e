import itertools
import random
from math import comb

import pytest

from tournaplex.digraph import Digraph, er_biased
from tournaplex.errors import ParameterError, RangeError, ValidationError
from tournaplex.tournaments import (
    OrientationBlowupWarning,
    Tournament,
    Tournaplex,
    directed_flag_complex,
    dump_tournaplex,
    flag_tournaplex,
    is_regular,
    is_semiregular,
    is_transitive,
    tournament_from_edges,
    transitive_tournament,
)

CYCLIC3 = tournament_from_edges([(0, 1), (1, 2), (2, 0)])
TRANS3 = transitive_tournament((0, 1, 2))
FIG_CONE = Digraph(3, {(0, 1), (1, 2), (0, 2), (2, 0)})


def random_tournament(rng, order, base=0):
    vertices = tuple(range(base, base + order))
    return Tournament(vertices, rng.randrange(1 << comb(order, 2)))


# --- tournament basics -------------------------------------------------------


def test_tournament_validation():
    with pytest.raises(ValidationError):
        Tournament((0, 0), 0)
    with pytest.raises(ValidationError):
        Tournament((1, 0), 0)
    with pytest.raises(ValidationError):
        Tournament((0, 1), 2)
    with pytest.raises(RangeError):
        Tournament((-1, 0), 0)


def test_directed_edges_of_cyclic_triangle():
    assert set(CYCLIC3.directed_edges()) == {(0, 1), (1, 2), (2, 0)}


def test_face_of_cyclic_triangle():
    face = CYCLIC3.face(1)
    assert face.vertices == (0, 2)
    assert face.directed_edges() == ((2, 0),)


def test_face_of_transitive_triangle():
    face = TRANS3.face(0)
    assert face.vertices == (1, 2)
    assert face.directed_edges() == ((1, 2),)


def test_face_index_errors():
    with pytest.raises(RangeError):
        TRANS3.face(3)
    with pytest.raises(RangeError):
        Tournament((4,), 0).face(0)


def test_simplicial_identity():
    rng = random.Random(5)
    for _ in range(50):
        t = random_tournament(rng, rng.randrange(3, 8))
        n = t.order
        for i, j in itertools.combinations(range(n), 2):
            assert t.face(j).face(i) == t.face(i).face(j - 1)


def test_restrict_matches_iterated_faces():
    rng = random.Random(6)
    for _ in range(20):
        t = random_tournament(rng, 6)
        sub = t.restrict((0, 2, 5))
        assert sub == t.face(4).face(3).face(1)


# --- tournament classes ------------------------------------------------------


def test_classification_examples():
    assert not is_transitive(CYCLIC3)
    assert is_regular(CYCLIC3)
    assert is_semiregular(CYCLIC3)
    t4 = transitive_tournament(range(4))
    assert is_transitive(t4)
    assert not is_regular(t4)
    assert not is_semiregular(t4)


def test_transitive_iff_linear_order_exhaustive():
    # score-sequence test against the definition via some vertex permutation
    for n in range(2, 5):
        for bits in range(1 << comb(n, 2)):
            t = Tournament(tuple(range(n)), bits)
            edges = set(t.directed_edges())
            linear = any(
                all((perm[i], perm[j]) in edges for i in range(n) for j in range(i + 1, n))
                for perm in itertools.permutations(range(n))
            )
            assert is_transitive(t) == linear


def test_regular_properties_exhaustive():
    for n in range(1, 6):
        for bits in range(1 << comb(n, 2)):
            t = Tournament(tuple(range(n)), bits)
            if is_regular(t):
                assert n % 2 == 1
                assert is_semiregular(t)


def test_tournament_from_edges_rejects_bad_input():
    with pytest.raises(ValidationError):
        tournament_from_edges([(0, 1), (1, 0)])
    with pytest.raises(ValidationError):
        tournament_from_edges([(0, 1), (1, 2)])


# --- flag tournaplex ---------------------------------------------------------


def test_flag_of_reciprocal_pair():
    k = flag_tournaplex(Digraph(2, {(0, 1), (1, 0)}), 8)
    assert k.counts() == {1: 2, 2: 2}
    assert {t.directed_edges()[0] for t in k.grade(2)} == {(0, 1), (1, 0)}


def test_flag_of_cyclic_triangle():
    k = flag_tournaplex(Digraph(3, {(0, 1), (1, 2), (2, 0)}), 8)
    assert k.counts() == {1: 3, 2: 3, 3: 1}
    (top,) = k.grade(3)
    assert is_regular(top)


def test_flag_of_cone_digraph():
    # triangle with one reciprocal pair: two 3-tournaments sharing two edges
    k = flag_tournaplex(FIG_CONE, 8)
    assert k.counts() == {1: 3, 2: 4, 3: 2}
    tops = k.grade(3)
    shared = set(tops[0].faces()) & set(tops[1].faces())
    assert len(shared) == 2


def test_directed_flag_complex_examples():
    hollow = directed_flag_complex(Digraph(3, {(0, 1), (1, 2), (2, 0)}), 8)
    assert hollow.counts() == {1: 3, 2: 3}
    filled = directed_flag_complex(Digraph(3, {(0, 1), (0, 2), (1, 2)}), 8)
    assert filled.counts() == {1: 3, 2: 3, 3: 1}


def test_directed_flag_complex_is_subcomplex():
    rng = random.Random(3)
    for _ in range(10):
        g = er_biased(10, rng.random() * 0.8, rng.random() * 0.8, seed=rng.randrange(10**6))
        tfl = flag_tournaplex(g, 5)
        dfl = directed_flag_complex(g, 5)
        assert all(t in tfl for t in dfl)
        assert all(is_transitive(t) for t in dfl)
        assert all(t in dfl for t in tfl if is_transitive(t))


def test_no_reciprocal_edges_matches_undirected_clique_counts():
    g = er_biased(12, 0.5, 0.0, seed=9)  # q = 0: no reciprocal pairs
    k = flag_tournaplex(g, 6)
    und = [set() for _ in range(12)]
    for u, v in g.edges:
        und[u].add(v)
        und[v].add(u)
    for order in range(1, 7):
        cliques = [
            c
            for c in itertools.combinations(range(12), order)
            if all(b in und[a] for a, b in itertools.combinations(c, 2))
        ]
        assert len(k.grade(order)) == len(cliques)


def test_orientation_count_law():
    # 2^r tournaments per clique with r reciprocal pairs
    rng = random.Random(8)
    for _ in range(10):
        g = er_biased(8, 0.7, 0.5, seed=rng.randrange(10**6))
        k = flag_tournaplex(g, 8)
        by_support = {}
        for t in k:
            by_support.setdefault(t.vertices, []).append(t)
        for support, ts in by_support.items():
            recip = sum(
                1
                for a, b in itertools.combinations(support, 2)
                if (a, b) in g.edges and (b, a) in g.edges
            )
            assert len(ts) == 1 << recip


def test_face_closure():
    g = er_biased(10, 0.6, 0.4, seed=4)
    assert flag_tournaplex(g, 5).is_face_closed()
    assert directed_flag_complex(g, 5).is_face_closed()


def test_max_order_cap():
    g = er_biased(10, 1.0, 1.0, seed=0)
    k = flag_tournaplex(g, 3)
    assert max(k.counts()) == 3
    with pytest.raises(ParameterError):
        flag_tournaplex(g, 0)


def test_blowup_warning():
    g = er_biased(5, 1.0, 1.0, seed=0)  # complete digraph: r = 10 on the 5-clique
    with pytest.warns(OrientationBlowupWarning):
        flag_tournaplex(g, 5, blowup_warn_threshold=100)


# --- tournaplex container ----------------------------------------------------


def test_build_closes_faces():
    k = Tournaplex.build([TRANS3], close_faces=True)
    assert k.counts() == {1: 3, 2: 3, 3: 1}
    assert k.is_face_closed()
    assert TRANS3 in k
    assert CYCLIC3 not in k


def test_one_skeleton_round_trip():
    g = er_biased(9, 0.5, 0.3, seed=12)
    assert flag_tournaplex(g, 4).one_skeleton() == g


def test_dump_format():
    k = Tournaplex.build([CYCLIC3], close_faces=True)
    text = dump_tournaplex(k, weight=lambda t: t.order)
    lines = text.strip().splitlines()
    assert len(lines) == 7
    assert lines[0] == "dim 0 : 0 : 0x0 : 1"
    assert lines[-1] == "dim 2 : 0 1 2 : 0x5 : 3"
