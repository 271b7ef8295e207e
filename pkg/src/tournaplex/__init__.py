"""Tournament complexes of digraphs.

Builds the flag tournaplex (all oriented cliques) and the directed flag
complex (transitive ones only) of a digraph, filters them by directionality
invariants, computes mod-2 persistent homology, and feeds the results into
graph classification pipelines. The `tournaplex` console script exposes the
same machinery for batch use.
"""

from .digraph import (
    Digraph,
    SpikeTrain,
    active_subgraph,
    bin_count,
    bundled_digraph,
    digraph_to_text,
    er_biased,
    load_digraph,
    parse_digraph,
    poisson_spike_train,
    read_spikes_csv,
    save_digraph,
    signed_degree,
    transmission_response,
    write_spikes_csv,
)
from .directionality import (
    directionality_identity_holds,
    directionality_weight,
    enumerate_tournament_counts,
    expected_tournament_counts,
    global_directionality_weight,
    local_directionality,
    max_three_cycles,
    motif_count_weight,
    three_cycle_count,
    three_cycle_weight,
    tournament_counts_by_c3,
    tournament_histogram,
    weight_function,
)
from .errors import (
    InvariantError,
    ParameterError,
    ParseError,
    RangeError,
    TournaplexError,
    ValidationError,
)
from .persistence import (
    BettiGridCell,
    FilteredComplex,
    PersistencePair,
    barcode_betti,
    betti_numbers,
    bifiltration_betti,
    build_filtration,
    combined_filtration_value,
    compute_persistence,
    distinct_weight_levels,
    format_barcode,
)
from .pipeline import (
    FeatureMatrix,
    adjusted_rand_index,
    barcode_triples,
    directionality_features,
    kmeans,
    spike_betti_features,
    spike_directionality_features,
)
from .tournaments import (
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

__version__ = "0.1.0"
