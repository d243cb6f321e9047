"""Command-line front end: instance generation, solves, benchmarks, oracle queries.

Configuration is a flat key=value file merged as defaults < file < flags.
Every command is deterministic given its configuration and seeds; data goes
to files or standard output, errors to standard error with nonzero exit.
"""

from __future__ import annotations

import argparse
import sys

from .annealing import SimulatedAnnealing
from .benchmark import (
    RunRecord,
    epochs_to_target,
    graph_content_hash,
    records_to_csv,
    run_ensemble,
    stats_as_dict,
    write_results,
)
from .exact import MAX_NODES, exact_max_cut, known_ground_state
from .graphs import GRAPH_FAMILIES, EdgeListError, make_graph, read_edge_list, write_edge_list
from .oscillator import CoherentIsingMachine, default_gains
from .plotting import cut_trajectory_svg
from .tree_search import CoherentIsingTreeSearch

ALGORITHMS = ("sa", "cim", "cits")

# Config keys with their value parsers; unknown keys are rejected by name.
SCHEMA = {
    "alpha": float,
    "beta": float,
    "noise_std": float,
    "noise_epochs": int,
    "depth": int,
    "breadth": int,
    "scheme": str,
    "dynamics": str,
    "t_star": float,
    "n_epochs": int,
    "n_runs": int,
    "seed": int,
    "master_seed": int,
    "family": str,
    "size": int,
    "target": int,
    "target_approx": int,
    "algorithms": str,
}

# alpha/beta default per graph family at use time; family/size/targets have
# no sensible global default and stay None until supplied.
DEFAULTS = {
    "noise_std": 0.1,
    "noise_epochs": 10,
    "depth": 2,
    "breadth": 2,
    "scheme": "naive",
    "dynamics": "poor-man",
    "t_star": 1.0,
    "n_epochs": 100,
    "n_runs": 100,
    "seed": 0,
    "master_seed": 0,
    "algorithms": "sa,cim,cits",
}


class CliError(Exception):
    """User-facing configuration or usage problem."""


def parse_config_value(key: str, text: str):
    if key not in SCHEMA:
        raise CliError(f"unknown config key {key!r}")
    try:
        return SCHEMA[key](text)
    except ValueError:
        raise CliError(
            f"bad value for config key {key!r}: expected {SCHEMA[key].__name__}, got {text!r}"
        ) from None


def load_config_file(path: str) -> dict:
    """Parse flat key=value lines; blank lines and # comments are skipped."""
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise CliError(f"cannot read config file {path!r}: {exc}") from exc
    values = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, text = line.partition("=")
        if not sep:
            raise CliError(f"{path}:{lineno}: expected key=value, got {line!r}")
        values[key.strip()] = parse_config_value(key.strip(), text.strip())
    return values


def merge_config(args: argparse.Namespace) -> dict:
    """defaults < config file < command-line flags."""
    config = {key: None for key in SCHEMA}
    config.update(DEFAULTS)
    if getattr(args, "config", None):
        config.update(load_config_file(args.config))
    for key in SCHEMA:
        flag = getattr(args, key, None)
        if flag is not None:
            config[key] = flag
    return config


def resolve_gains(config: dict, family: str | None) -> tuple[float, float]:
    """Explicit gains win; otherwise the family default (square lattice if unknown)."""
    alpha, beta = default_gains(family if family in GRAPH_FAMILIES else "square-lattice")
    if config["alpha"] is not None:
        alpha = config["alpha"]
    if config["beta"] is not None:
        beta = config["beta"]
    return alpha, beta


def build_solver(algorithm: str, config: dict, family: str | None = None):
    alpha, beta = resolve_gains(config, family)
    common = {"n_epochs": config["n_epochs"], "seed": config["seed"]}
    if algorithm == "sa":
        return SimulatedAnnealing(t_star=config["t_star"], **common)
    if algorithm == "cim":
        return CoherentIsingMachine(
            alpha=alpha,
            beta=beta,
            noise_std=config["noise_std"],
            noise_epochs=config["noise_epochs"],
            dynamics=config["dynamics"],
            **common,
        )
    if algorithm == "cits":
        return CoherentIsingTreeSearch(
            depth=config["depth"],
            breadth=config["breadth"],
            scheme=config["scheme"],
            alpha=alpha,
            beta=beta,
            noise_std=config["noise_std"],
            noise_epochs=config["noise_epochs"],
            t_star=config["t_star"],
            **common,
        )
    raise CliError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")


def read_graph_file(path: str):
    try:
        with open(path) as fh:
            return read_edge_list(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read graph file {path!r}: {exc}") from exc
    except EdgeListError as exc:
        raise CliError(f"{path}: {exc}") from exc


def resolve_target(config: dict, graph, family: str | None, size: int | None) -> int:
    """Exact-cut target: explicit config, known closed form, then enumeration."""
    if config["target"] is not None:
        return config["target"]
    if family is not None and size is not None:
        known = known_ground_state(family, size)
        if known is not None:
            return known
    if graph.n <= MAX_NODES:
        return exact_max_cut(graph).max_cut
    raise CliError(
        f"no cut target known for this {graph.n}-node instance; supply the 'target' "
        f"config key (exhaustive enumeration stops at {MAX_NODES} nodes)"
    )


def cmd_gen(args: argparse.Namespace) -> int:
    graph = make_graph(args.family, args.size)
    try:
        with open(args.out, "w") as fh:
            fh.write(write_edge_list(graph))
    except OSError as exc:
        raise CliError(f"cannot write {args.out!r}: {exc}") from exc
    print(f"wrote {args.out}: {graph.n} nodes, {graph.n_edges} edges")
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    config = merge_config(args)
    graph = read_graph_file(args.graph)
    solver = build_solver(args.algorithm, config).fit(graph)
    print(f"best cut {solver.best_cut_} at epoch {solver.best_epoch_}")
    if args.out:
        record = RunRecord(
            algorithm=args.algorithm,
            instance=args.graph,
            seed=config["seed"],
            cuts_per_epoch=solver.cuts_per_epoch_,
            best_cut=solver.best_cut_,
            best_config=solver.best_config_,
        )
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write(records_to_csv([record]))
        except OSError as exc:
            raise CliError(f"cannot write {args.out!r}: {exc}") from exc
        print(f"wrote trajectory to {args.out}")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    config = merge_config(args)
    family, size = config["family"], config["size"]
    if family is None or size is None:
        missing = "family" if family is None else "size"
        raise CliError(f"bench needs the {missing!r} config key")
    graph = make_graph(family, size)
    instance = f"{family}-{size}"

    algorithms = [name.strip() for name in config["algorithms"].split(",") if name.strip()]
    for name in algorithms:
        if name not in ALGORITHMS:
            raise CliError(f"bad value for config key 'algorithms': {name!r} not in {ALGORITHMS}")
    if not algorithms:
        raise CliError("config key 'algorithms' selects nothing")

    target_exact = resolve_target(config, graph, family, size)
    target_approx = config["target_approx"]
    alpha, beta = resolve_gains(config, family)
    echo = dict(config, alpha=alpha, beta=beta, target=target_exact)

    all_records = []
    summary_algorithms = {}
    for name in algorithms:
        solver = build_solver(name, config, family)
        records = run_ensemble(
            solver,
            graph,
            n_runs=config["n_runs"],
            n_epochs=config["n_epochs"],
            master_seed=config["master_seed"],
            instance=instance,
        )
        all_records.extend(records)
        stats = {"exact": stats_as_dict(epochs_to_target(records, target_exact))}
        if target_approx is not None:
            stats["approx"] = stats_as_dict(epochs_to_target(records, target_approx))
        summary_algorithms[name] = stats

    summary = {
        "config": echo,
        "graph": {
            "family": family,
            "size": size,
            "n": graph.n,
            "n_edges": graph.n_edges,
            "hash": graph_content_hash(graph),
        },
        "n_runs": config["n_runs"],
        "n_epochs": config["n_epochs"],
        "target_exact": target_exact,
        "target_approx": target_approx,
        "algorithms": summary_algorithms,
    }
    csv_path, json_path = write_results(all_records, summary, args.out)
    written = [csv_path, json_path]
    if args.plot:
        targets = {"exact": target_exact}
        if target_approx is not None:
            targets["approx"] = target_approx
        svg_path = f"{args.out}.svg"
        try:
            with open(svg_path, "w") as fh:
                fh.write(cut_trajectory_svg(all_records, title=instance, targets=targets))
        except OSError as exc:
            raise CliError(f"cannot write {svg_path!r}: {exc}") from exc
        written.append(svg_path)

    for name in algorithms:
        stats = summary_algorithms[name]["exact"]
        print(
            f"{name}: q50={stats['q50']} q25={stats['q25']} q75={stats['q75']}"
            f" success_rate={stats['success_rate']:.2f} (target {target_exact})"
        )
    print("wrote " + ", ".join(written))
    return 0


def cmd_exact(args: argparse.Namespace) -> int:
    graph = read_graph_file(args.graph)
    result = exact_max_cut(graph)
    witness = " ".join(f"{s:+d}" for s in result.witness)
    print(f"max cut {result.max_cut}")
    print(f"optimal configurations {result.n_optima}")
    print(f"witness {witness}")
    return 0


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="FILE", help="flat key=value config file")
    for key, kind in SCHEMA.items():
        parser.add_argument(f"--{key}", type=kind, default=None, help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isingtree",
        description="Ising-machine MAX-CUT heuristics and benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a generated instance as an edge list")
    gen.add_argument("family", choices=GRAPH_FAMILIES)
    gen.add_argument("size", type=int)
    gen.add_argument("out")
    gen.set_defaults(func=cmd_gen)

    solve = sub.add_parser("solve", help="run one seeded solve on an edge-list file")
    solve.add_argument("algorithm", choices=ALGORITHMS)
    solve.add_argument("graph")
    solve.add_argument("--out", metavar="CSV", help="write the cut trajectory here")
    _add_config_flags(solve)
    solve.set_defaults(func=cmd_solve)

    bench = sub.add_parser("bench", help="run seeded ensembles and write results")
    bench.add_argument("--out", metavar="PREFIX", default="bench", help="output file prefix")
    bench.add_argument("--plot", action="store_true", help="also write PREFIX.svg")
    _add_config_flags(bench)
    bench.set_defaults(func=cmd_bench)

    exact = sub.add_parser("exact", help="exhaustive max cut of a small edge-list file")
    exact.add_argument("graph")
    exact.set_defaults(func=cmd_exact)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
