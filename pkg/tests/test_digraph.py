import io
import math
import random

import pytest

from tournaplex.digraph import (
    Digraph,
    SpikeTrain,
    active_subgraph,
    bin_count,
    digraph_to_text,
    er_biased,
    parse_digraph,
    poisson_spike_train,
    read_spikes_csv,
    signed_degree,
    transmission_response,
    write_spikes_csv,
)
from tournaplex.errors import (
    ParameterError,
    ParseError,
    RangeError,
    ValidationError,
)

CYCLE3 = Digraph(3, {(0, 1), (1, 2), (2, 0)})
TRANSITIVE3 = Digraph(3, {(0, 1), (0, 2), (1, 2)})


# --- construction -----------------------------------------------------------


def test_rejects_self_loop():
    with pytest.raises(ValidationError):
        Digraph(2, {(0, 0)})


def test_rejects_out_of_range_edge():
    with pytest.raises(RangeError):
        Digraph(2, {(0, 2)})


def test_reciprocal_pair_allowed():
    g = Digraph(2, {(0, 1), (1, 0)})
    assert g.edge_count == 2


# --- parsing ----------------------------------------------------------------


def test_parse_triangle():
    g = parse_digraph("dim 0\n0 0 0\ndim 1\n0 1\n1 2\n2 0")
    assert g.vertex_count == 3
    assert g.edges == frozenset({(0, 1), (1, 2), (2, 0)})


def test_parse_reciprocal_pair():
    g = parse_digraph("dim 0\n0 0\ndim 1\n0 1\n1 0")
    assert g.vertex_count == 2
    assert g.edges == frozenset({(0, 1), (1, 0)})


def test_parse_self_loop_fails():
    with pytest.raises(ValidationError):
        parse_digraph("dim 0\n0\ndim 1\n0 0")


def test_parse_duplicate_edge_fails_with_line():
    with pytest.raises(ValidationError, match="line 6"):
        parse_digraph("dim 0\n0 0 0\ndim 1\n0 1\n1 2\n0 1")


def test_parse_out_of_range_endpoint():
    with pytest.raises(RangeError, match="line 4"):
        parse_digraph("dim 0\n0 0\ndim 1\n0 5")


def test_parse_malformed_edge_line():
    with pytest.raises(ParseError, match="line 4"):
        parse_digraph("dim 0\n0 0\ndim 1\n0 1 extra")
    with pytest.raises(ParseError):
        parse_digraph("dim 0\n0 0\ndim 1\nx y")


def test_parse_missing_headers():
    with pytest.raises(ParseError):
        parse_digraph("0 0\n0 1")
    with pytest.raises(ParseError):
        parse_digraph("dim 0\n0 0\n0 1")


def test_parse_accepts_comments_and_file_objects():
    text = "# comment\ndim 0\n0 0\n# another\ndim 1\n0 1\n"
    g = parse_digraph(io.StringIO(text))
    assert g.edges == frozenset({(0, 1)})


def test_round_trip():
    g = er_biased(12, 0.4, 0.2, seed=7)
    assert parse_digraph(digraph_to_text(g)) == g


# --- signed degree ----------------------------------------------------------


def test_signed_degree_examples():
    assert signed_degree(CYCLE3, 0) == 0
    assert signed_degree(TRANSITIVE3, 2) == 2
    assert signed_degree(Digraph(2, {(0, 1), (1, 0)}), 0) == 0


def test_signed_degree_out_of_range():
    with pytest.raises(RangeError):
        signed_degree(CYCLE3, 3)


def test_signed_degrees_sum_to_zero():
    rng = random.Random(11)
    for _ in range(25):
        g = er_biased(rng.randrange(1, 30), rng.random(), rng.random(), rng.randrange(10**6))
        assert sum(signed_degree(g, v) for v in range(g.vertex_count)) == 0


# --- biased random digraphs -------------------------------------------------


def test_er_biased_deterministic():
    assert er_biased(40, 0.3, 0.1, seed=5) == er_biased(40, 0.3, 0.1, seed=5)
    assert er_biased(40, 0.3, 0.1, seed=5) != er_biased(40, 0.3, 0.1, seed=6)


def test_er_biased_q_zero_forces_downward_edges():
    g = er_biased(50, 0.25, 0.0, seed=3)
    assert g.edge_count > 0
    assert all(u > v for u, v in g.edges)


def test_er_biased_zero_probabilities():
    assert er_biased(20, 0.0, 0.0, seed=1).edge_count == 0


def test_er_biased_edge_count_within_four_sigma():
    # expected 0.25*C(100,2) + 0.05*C(100,2) = 1485
    g = er_biased(100, 0.25, 0.05, seed=42)
    pairs = math.comb(100, 2)
    mean = 0.25 * pairs + 0.05 * pairs
    var = pairs * 0.25 * 0.75 + pairs * 0.05 * 0.95
    assert abs(g.edge_count - mean) <= 4 * math.sqrt(var)


def test_er_biased_bad_probability():
    with pytest.raises(ParameterError):
        er_biased(5, 1.5, 0.0, seed=0)


# --- spike trains -----------------------------------------------------------


def test_spike_train_validation():
    with pytest.raises(ValidationError):
        SpikeTrain(((300.0, 0),), duration=250.0)
    with pytest.raises(RangeError):
        SpikeTrain(((1.0, -1),), duration=250.0)


def test_spikes_csv_round_trip(tmp_path):
    train = SpikeTrain(((1.5, 0), (3.0, 2), (200.0, 1)), duration=250.0)
    path = tmp_path / "spikes.csv"
    write_spikes_csv(train, path)
    back = read_spikes_csv(path, duration=250.0)
    assert back == train


def test_spikes_csv_infers_duration():
    back = read_spikes_csv(io.StringIO("time,neuron\n1.5,0\n9.25,3\n"))
    assert back.duration == 9.25


def test_spikes_csv_bad_header():
    with pytest.raises(ParseError):
        read_spikes_csv(io.StringIO("t,g\n1,0\n"))


def test_poisson_spike_train_deterministic_and_plausible():
    a = poisson_spike_train([40.0] * 20, 1000.0, seed=9)
    b = poisson_spike_train([40.0] * 20, 1000.0, seed=9)
    assert a == b
    # 20 neurons at 40 Hz for 1 s: about 800 spikes
    assert 600 < len(a.events) < 1000
    assert all(0 <= t < 1000.0 for t, _ in a.events)


# --- transmission-response graphs -------------------------------------------


def test_tr_basic_edge():
    g = Digraph(2, {(0, 1)})
    spikes = SpikeTrain(((1.0, 0), (3.0, 1)), duration=250.0)
    (out,) = transmission_response(g, spikes, t1=250.0, t2=5.0)
    assert out.edges == frozenset({(0, 1)})


def test_tr_response_outside_window():
    g = Digraph(2, {(0, 1)})
    spikes = SpikeTrain(((1.0, 0), (9.0, 1)), duration=250.0)
    (out,) = transmission_response(g, spikes, t1=250.0, t2=5.0)
    assert out.edges == frozenset()


def test_tr_unsorted_events():
    g = Digraph(2, {(0, 1)})
    spikes = SpikeTrain(((3.0, 1), (1.0, 0)), duration=250.0)
    (out,) = transmission_response(g, spikes, t1=250.0, t2=5.0)
    assert out.edges == frozenset({(0, 1)})


def test_tr_simultaneous_spikes_do_not_count():
    g = Digraph(2, {(0, 1)})
    spikes = SpikeTrain(((1.0, 0), (1.0, 1)), duration=10.0)
    (out,) = transmission_response(g, spikes, t1=10.0, t2=5.0)
    assert out.edges == frozenset()


def test_tr_response_may_fall_in_later_bin():
    g = Digraph(2, {(0, 1)})
    spikes = SpikeTrain(((9.0, 0), (11.0, 1)), duration=20.0)
    first, second = transmission_response(g, spikes, t1=10.0, t2=5.0)
    assert first.edges == frozenset({(0, 1)})
    assert second.edges == frozenset()


def test_tr_bin_count_and_boundaries():
    assert bin_count(250.0, 50.0) == 5
    assert bin_count(251.0, 50.0) == 6
    assert bin_count(0.0, 50.0) == 0
    g = Digraph(2, {(0, 1)})
    spikes = SpikeTrain((), duration=250.0)
    assert len(transmission_response(g, spikes, t1=50.0, t2=5.0)) == 5


def test_tr_requires_positive_windows():
    g = Digraph(2, {(0, 1)})
    spikes = SpikeTrain((), duration=10.0)
    with pytest.raises(ParameterError):
        transmission_response(g, spikes, t1=0.0, t2=5.0)
    with pytest.raises(ParameterError):
        transmission_response(g, spikes, t1=10.0, t2=-1.0)


def test_tr_rejects_unknown_neuron():
    g = Digraph(2, {(0, 1)})
    spikes = SpikeTrain(((1.0, 7),), duration=10.0)
    with pytest.raises(RangeError):
        transmission_response(g, spikes, t1=10.0, t2=5.0)


def test_tr_graphs_are_subgraphs():
    rng = random.Random(23)
    g = er_biased(30, 0.3, 0.3, seed=77)
    events = tuple(
        (rng.uniform(0, 200.0), rng.randrange(30)) for _ in range(400)
    )
    spikes = SpikeTrain(events, duration=200.0)
    outs = transmission_response(g, spikes, t1=40.0, t2=3.0)
    assert len(outs) == 5
    for out in outs:
        assert out.vertex_count == g.vertex_count
        assert out.edges <= g.edges


# --- active subgraph ---------------------------------------------------------


def test_active_subgraph_compacts_indices():
    g = Digraph(6, {(4, 1), (1, 4), (5, 1)})
    sub = active_subgraph(g)
    assert sub.vertex_count == 3
    assert sub.edges == frozenset({(1, 0), (0, 1), (2, 0)})


def test_tr_graphs_serialize_round_trip():
    g = Digraph(3, {(0, 1), (1, 2)})
    spikes = SpikeTrain(((1.0, 0), (2.0, 1), (3.0, 2)), duration=10.0)
    (out,) = transmission_response(g, spikes, t1=10.0, t2=5.0)
    assert parse_digraph(digraph_to_text(out)) == out
