"""Command-line front end: barcodes, Betti grids, generators, features, experiments.

Exit codes: 0 success, 1 usage or parameter problem, 2 parse/validation or
I/O failure, 3 internal invariant violation. Every randomized subcommand
requires an explicit --seed.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .digraph import (
    Digraph,
    SpikeTrain,
    er_biased,
    load_digraph,
    poisson_spike_train,
    read_spikes_csv,
    save_digraph,
)
from .directionality import (
    directionality_weight,
    three_cycle_weight,
    tournament_histogram,
    weight_function,
)
from .errors import (
    InvariantError,
    ParameterError,
    ParseError,
    RangeError,
    ValidationError,
)
from .persistence import (
    betti_numbers,
    bifiltration_betti,
    build_filtration,
    combined_filtration_value,
    compute_persistence,
    distinct_weight_levels,
    format_barcode,
)
from .pipeline import (
    adjusted_rand_index,
    directionality_features,
    kmeans,
    spike_betti_features,
    spike_directionality_features,
)
from .tournaments import Tournament, directed_flag_complex, flag_tournaplex, transitive_tournament

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


# ---------------------------------------------------------------------------
# weight specs and small helpers
# ---------------------------------------------------------------------------


def _named_pattern(name: str) -> Tournament:
    """Motif patterns: c3 (cyclic triangle), t2..t5 (transitive), or ORDER:HEXBITS."""
    if name == "c3":
        return Tournament((0, 1, 2), 0b101)
    if len(name) == 2 and name[0] == "t" and name[1].isdigit():
        order = int(name[1])
        if 2 <= order <= 5:
            return transitive_tournament(range(order))
    if ":" in name:
        order_text, bits_text = name.split(":", 1)
        try:
            order = int(order_text)
            bits = int(bits_text, 16)
        except ValueError:
            raise ParameterError(f"bad motif pattern spec {name!r}") from None
        return Tournament(tuple(range(order)), bits)
    raise ParameterError(f"unknown motif pattern {name!r}")


def resolve_weight(spec: str, complex_):
    """Turn a --weight string (dr, c3, global, motif:<id>, combined:a:b)
    into a weight callable for the given complex."""
    if spec == "dr":
        return directionality_weight
    if spec == "c3":
        return three_cycle_weight
    if spec == "global":
        return weight_function("global", skeleton=complex_.one_skeleton())
    if spec.startswith("motif:"):
        return weight_function("motif", pattern=_named_pattern(spec[len("motif:") :]))
    if spec.startswith("combined:"):
        parts = spec.split(":")
        if len(parts) != 3:
            raise ParameterError("combined weight must look like combined:a:b")
        try:
            a, b = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParameterError("combined weight factors must be integers") from None
        if a <= 0 or b <= 0:
            raise ParameterError("combined weight factors must be positive")
        return lambda t: combined_filtration_value(t, a, b)
    raise ParameterError(f"unknown weight {spec!r}")


def _emit(out: str | None, text: str) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _read_manifest(path: str) -> list[Path]:
    base = Path(path).parent
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    entries = [ln.strip() for ln in lines if ln.strip() and not ln.strip().startswith("#")]
    if not entries:
        raise ParameterError(f"manifest {path} lists no files")
    return [base / entry for entry in entries]


def _parse_number_list(text: str, cast) -> list:
    try:
        return [cast(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise ParameterError(f"bad numeric list {text!r}") from None


def _format_ari(value: float | None) -> str:
    return "undefined" if value is None else f"{value:.6f}"


# ---------------------------------------------------------------------------
# experiment drivers (importable; the subcommands are thin wrappers)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ErExperimentReport:
    q_values: tuple[float, ...]
    labels_true: tuple[int, ...]
    labels_tournaplex: tuple[int, ...]
    labels_betti: tuple[int, ...]
    ari_tournaplex: float | None
    ari_betti: float | None


def run_er_experiment(
    *,
    n: int,
    p: float,
    q_values,
    per_group: int,
    max_order: int,
    d: int,
    k: int,
    seed: int,
    restarts: int = 10,
) -> ErExperimentReport:
    """Generate per_group biased random digraphs per q value, cluster the
    bar-count features and the directed-flag Betti features, report both ARIs
    against the true group labels (None when there is only one group)."""
    if per_group < 1:
        raise ParameterError("per-group must be at least 1")
    q_values = tuple(q_values)
    if not q_values:
        raise ParameterError("need at least one q value")
    rng = np.random.default_rng(seed)
    graphs: list[Digraph] = []
    labels_true: list[int] = []
    for group, q in enumerate(q_values):
        for _ in range(per_group):
            graphs.append(er_biased(n, p, q, int(rng.integers(0, 2**63))))
            labels_true.append(group)

    features = directionality_features(graphs, d, max_order)
    labels_t = kmeans(features, k, seed, restarts)

    betti_rows = []
    for g in graphs:
        betti = betti_numbers(directed_flag_complex(g, max_order))
        betti_rows.append((list(betti) + [0] * d)[:d])
    labels_b = kmeans(np.array(betti_rows, dtype=float), k, seed, restarts)

    defined = len(set(labels_true)) > 1
    return ErExperimentReport(
        q_values=q_values,
        labels_true=tuple(labels_true),
        labels_tournaplex=tuple(labels_t),
        labels_betti=tuple(labels_b),
        ari_tournaplex=adjusted_rand_index(labels_true, labels_t) if defined else None,
        ari_betti=adjusted_rand_index(labels_true, labels_b) if defined else None,
    )


@dataclass(frozen=True)
class SpikeExperimentReport:
    rates_hz: tuple[float, ...]
    labels_true: tuple[int, ...]
    labels_tournaplex: tuple[int, ...]
    labels_betti: tuple[int, ...]
    ari_tournaplex: float | None
    ari_betti: float | None


def run_spike_experiment(
    *,
    n: int,
    p: float,
    rates_hz,
    per_group: int,
    duration: float,
    t1: float,
    t2: float,
    m: int,
    d: int,
    k: int,
    max_order: int,
    seed: int,
    restarts: int = 10,
) -> SpikeExperimentReport:
    """Synthetic spike classes on one structural digraph: per rate profile,
    per_group Poisson spike trains; compares bar-count features against
    per-bin Betti features of the directed flag complex."""
    if per_group < 1:
        raise ParameterError("per-group must be at least 1")
    rates_hz = tuple(rates_hz)
    if not rates_hz:
        raise ParameterError("need at least one firing rate")
    rng = np.random.default_rng(seed)
    structural = er_biased(n, p, p, int(rng.integers(0, 2**63)))
    trains: list[SpikeTrain] = []
    labels_true: list[int] = []
    for group, rate in enumerate(rates_hz):
        for _ in range(per_group):
            trains.append(poisson_spike_train([rate] * n, duration, int(rng.integers(0, 2**63))))
            labels_true.append(group)

    features_t = spike_directionality_features(trains, structural, m, t1, t2, max_order)
    labels_t = kmeans(features_t, k, seed, restarts)
    features_b = spike_betti_features(trains, structural, d, m, t1, t2, max_order)
    labels_b = kmeans(features_b, k, seed, restarts)

    defined = len(set(labels_true)) > 1
    return SpikeExperimentReport(
        rates_hz=rates_hz,
        labels_true=tuple(labels_true),
        labels_tournaplex=tuple(labels_t),
        labels_betti=tuple(labels_b),
        ari_tournaplex=adjusted_rand_index(labels_true, labels_t) if defined else None,
        ari_betti=adjusted_rand_index(labels_true, labels_b) if defined else None,
    )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_ph(args) -> None:
    g = load_digraph(args.graph)
    complex_ = flag_tournaplex(g, args.max_order)
    weight = resolve_weight(args.weight, complex_)
    pairs = compute_persistence(build_filtration(complex_, weight))
    _emit(args.out, format_barcode(pairs, csv=args.csv))


def _cmd_bigrid(args) -> None:
    g = load_digraph(args.graph)
    complex_ = flag_tournaplex(g, args.max_order)
    if args.dr_levels:
        dr_levels = _parse_number_list(args.dr_levels, int)
    else:
        dr_levels = distinct_weight_levels(complex_, directionality_weight)
    if args.c3_levels:
        c3_levels = _parse_number_list(args.c3_levels, int)
    else:
        c3_levels = distinct_weight_levels(complex_, three_cycle_weight)
    grid = bifiltration_betti(complex_, dr_levels, c3_levels)
    width = max((len(cell.betti) for row in grid for cell in row), default=0)
    width = max(width, 1)
    lines = ["dr_level,c3_level," + ",".join(f"b{i}" for i in range(width))]
    for row in grid:
        for cell in row:
            padded = list(cell.betti) + [0] * (width - len(cell.betti))
            lines.append(f"{cell.dr_threshold},{cell.c3_threshold}," + ",".join(map(str, padded)))
    _emit(args.out, "\n".join(lines) + "\n")


def _cmd_stats(args) -> None:
    g = load_digraph(args.graph)
    hist = tournament_histogram(flag_tournaplex(g, args.max_order))
    lines = ["order,c3,count"]
    lines += [f"{order},{c3},{count}" for (order, c3), count in sorted(hist.items())]
    _emit(args.out, "\n".join(lines) + "\n")


def _cmd_gen_er(args) -> None:
    if args.count < 1:
        raise ParameterError("count must be at least 1")
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(args.seed)
    names = []
    for i in range(args.count):
        g = er_biased(args.n_vertices, args.p, args.q, int(rng.integers(0, 2**63)))
        name = f"er_{i:03d}.flag"
        save_digraph(g, outdir / name)
        names.append(name)
    (outdir / "manifest.txt").write_text("\n".join(names) + "\n", encoding="utf-8")
    print(f"wrote {len(names)} digraphs to {outdir}")


def _load_spike_sets(args) -> tuple[list[SpikeTrain], Digraph]:
    if not args.graph:
        raise ParameterError("spike features need --graph for the structural digraph")
    g = load_digraph(args.graph)
    trains = [read_spikes_csv(p) for p in _read_manifest(args.spikes)]
    duration = args.duration
    if duration is None:
        duration = max((st.duration for st in trains), default=0.0)
    trains = [SpikeTrain(st.events, duration) for st in trains]
    return trains, g


def _cmd_features(args) -> None:
    if bool(args.manifest) == bool(args.spikes):
        raise ParameterError("pass exactly one of --manifest (graphs) or --spikes")
    if args.manifest:
        graphs = [load_digraph(p) for p in _read_manifest(args.manifest)]
        matrix = directionality_features(graphs, args.d, args.max_order)
    else:
        if args.t1 is None or args.t2 is None:
            raise ParameterError("spike features need --t1 and --t2")
        trains, g = _load_spike_sets(args)
        if args.betti:
            matrix = spike_betti_features(trains, g, args.d, args.m, args.t1, args.t2, args.max_order)
        else:
            matrix = spike_directionality_features(trains, g, args.m, args.t1, args.t2, args.max_order)
    lines = [",".join(matrix.column_labels)]
    for row in matrix.values:
        lines.append(",".join(f"{v:g}" for v in row))
    _emit(args.out, "\n".join(lines) + "\n")


def _cmd_cluster(args) -> None:
    lines = Path(args.features).read_text(encoding="utf-8").splitlines()
    if len(lines) < 2:
        raise ParseError("feature CSV needs a header and at least one row")
    rows = []
    for no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            rows.append([float(tok) for tok in line.split(",")])
        except ValueError:
            raise ParseError(f"bad feature row {line!r}", line=no) from None
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ParseError("feature rows have inconsistent lengths")
    labels = kmeans(np.array(rows), args.k, args.seed, args.restarts)
    out_lines = ["row_index,cluster"] + [f"{i},{c}" for i, c in enumerate(labels)]
    _emit(args.out, "\n".join(out_lines) + "\n")
    if args.labels:
        truth = [
            ln.strip()
            for ln in Path(args.labels).read_text(encoding="utf-8").splitlines()
            if ln.strip()
        ]
        print(f"ari {_format_ari(adjusted_rand_index(truth, labels))}")


def _cmd_experiment_er(args) -> None:
    report = run_er_experiment(
        n=args.n_vertices,
        p=args.p,
        q_values=_parse_number_list(args.groups, float),
        per_group=args.per_group,
        max_order=args.max_order,
        d=args.d,
        k=args.k,
        seed=args.seed,
        restarts=args.restarts,
    )
    if args.out:
        lines = ["row,q,cluster_tournaplex,cluster_betti"]
        per = len(report.labels_true) // len(report.q_values)
        for i, (lt, lb) in enumerate(zip(report.labels_tournaplex, report.labels_betti)):
            lines.append(f"{i},{report.q_values[i // per]},{lt},{lb}")
        Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"ari_tournaplex {_format_ari(report.ari_tournaplex)}")
    print(f"ari_betti {_format_ari(report.ari_betti)}")


def _cmd_experiment_spikes(args) -> None:
    report = run_spike_experiment(
        n=args.n_vertices,
        p=args.p,
        rates_hz=_parse_number_list(args.groups, float),
        per_group=args.per_group,
        duration=args.duration,
        t1=args.t1,
        t2=args.t2,
        m=args.m,
        d=args.d,
        k=args.k,
        max_order=args.max_order,
        seed=args.seed,
        restarts=args.restarts,
    )
    if args.out:
        lines = ["row,rate_hz,cluster_tournaplex,cluster_betti"]
        per = len(report.labels_true) // len(report.rates_hz)
        for i, (lt, lb) in enumerate(zip(report.labels_tournaplex, report.labels_betti)):
            lines.append(f"{i},{report.rates_hz[i // per]},{lt},{lb}")
        Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"ari_tournaplex {_format_ari(report.ari_tournaplex)}")
    print(f"ari_betti {_format_ari(report.ari_betti)}")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tournaplex",
        description="Tournament complexes of digraphs: persistence, grids, and classification.",
    )
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("ph", help="barcode of the flag tournaplex of a digraph")
    p.add_argument("graph", help="digraph file")
    p.add_argument("--weight", default="dr", help="dr | c3 | global | motif:<id> | combined:a:b")
    p.add_argument("--max-order", type=int, default=8)
    p.add_argument("--csv", action="store_true", help="CSV with header instead of plain lines")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_ph)

    p = sub.add_parser("bigrid", help="Betti grid over dr and c3 thresholds")
    p.add_argument("graph")
    p.add_argument("--max-order", type=int, default=8)
    p.add_argument("--dr-levels", help="comma list; default: all dr weights in the complex")
    p.add_argument("--c3-levels", help="comma list; default: all c3 weights in the complex")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_bigrid)

    p = sub.add_parser("stats", help="histogram of tournaments by order and 3-cycle count")
    p.add_argument("graph")
    p.add_argument("--max-order", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("gen-er", help="generate orientation-biased random digraphs")
    p.add_argument("--n-vertices", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_gen_er)

    p = sub.add_parser("features", help="feature matrix from graphs or spike trains")
    p.add_argument("--manifest", help="file listing digraph files, one per line")
    p.add_argument("--spikes", help="file listing spike-train CSVs, one per line")
    p.add_argument("--graph", help="structural digraph for spike features")
    p.add_argument("--betti", action="store_true", help="per-bin Betti features instead of bar counts")
    p.add_argument("--d", type=int, default=6)
    p.add_argument("--m", type=int, default=6)
    p.add_argument("--t1", type=float)
    p.add_argument("--t2", type=float)
    p.add_argument("--duration", type=float, help="shared duration in ms; default: latest spike")
    p.add_argument("--max-order", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_features)

    p = sub.add_parser("cluster", help="k-means over a feature CSV")
    p.add_argument("--features", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--labels", help="ground-truth labels, one per line; prints ARI")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_cluster)

    p = sub.add_parser("experiment-er", help="end-to-end biased-ER classification run")
    p.add_argument("--n-vertices", type=int, default=100)
    p.add_argument("--p", type=float, default=0.25)
    p.add_argument("--groups", default="0,0.025,0.05,0.075", help="comma list of q values")
    p.add_argument("--per-group", type=int, default=20)
    p.add_argument("--max-order", type=int, default=6)
    p.add_argument("--d", type=int, default=6)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", help="per-row cluster assignment CSV")
    p.set_defaults(func=_cmd_experiment_er)

    p = sub.add_parser("experiment-spikes", help="synthetic spike-train classification run")
    p.add_argument("--n-vertices", type=int, default=100)
    p.add_argument("--p", type=float, default=0.3, help="structural connection probability")
    p.add_argument("--groups", default="20,60", help="comma list of firing rates in Hz")
    p.add_argument("--per-group", type=int, default=5)
    p.add_argument("--duration", type=float, default=250.0)
    p.add_argument("--t1", type=float, default=50.0)
    p.add_argument("--t2", type=float, default=5.0)
    p.add_argument("--m", type=int, default=6)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--max-order", type=int, default=6)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", help="per-row cluster assignment CSV")
    p.set_defaults(func=_cmd_experiment_spikes)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if (exc.code or 0) == 0 else EXIT_USAGE
    if not getattr(args, "func", None):
        parser.print_help()
        return EXIT_USAGE
    try:
        args.func(args)
        return EXIT_OK
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, ValidationError, RangeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
