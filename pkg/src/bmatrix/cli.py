"""Command-line front end.

Subcommands: ``train``, ``retrieve``, ``experiment``, ``complexity``,
``sitemap`` and ``replay``.  Every artifact-producing command writes a JSON
manifest beside its output; ``bmatrix replay MANIFEST`` re-runs it.

Exit codes: 0 ok, 2 usage, 3 parse, 4 validation, 5 domain, 6 I/O.
"""

from __future__ import annotations

import argparse
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from . import io as bio
from .complexity import cost_report
from .errors import BMatrixError, DomainError, ParseError, ValidationError
from .experiments import ExperimentConfig, run_experiment
from .retrieval import COMBINE_MODES, STRATEGIES, Strategy, retrieve
from .sitemap import render_site_map
from .sites import identify_sites
from .training import GEOMETRIES, GeometryKind, build_proximity, train_hebbian

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VALIDATION, EXIT_DOMAIN, EXIT_IO = 0, 2, 3, 4, 5, 6

WEIGHTS, SITES, POSITIONS, MEMORIES, MANIFEST = (
    "weights.csv", "sites.csv", "positions.csv", "memories.txt", "manifest.json",
)


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _seed(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _spin_list(text):
    spins = {"1": 1, "+1": 1, "0": -1, "-1": -1}
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok not in spins:
            raise argparse.ArgumentTypeError(f"clamp values are 1/0 (or +1/-1), got {tok!r}")
        out.append(spins[tok])
    return out


def _name_list(choices):
    def parse(text):
        names = [v.strip() for v in text.split(",") if v.strip()]
        for v in names:
            if v not in choices:
                raise argparse.ArgumentTypeError(f"unknown choice {v!r}; pick from {choices}")
        return names
    return parse


def _manifest(command, argv, config, seed):
    return {
        "tool": "bmatrix",
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "command": command,
        "argv": list(argv),
        "config": config,
        "master_seed": seed,
    }


def _write(path, text):
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True)
    path.write_text(text)


# commands

def cmd_train(args, argv):
    memories = bio.read_patterns(args.memories)
    geometry = GeometryKind(args.geometry, args.seed)
    prox = build_proximity(memories.n, geometry)
    t = train_hebbian(memories)
    site_map = identify_sites(memories, args.r)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write(out / WEIGHTS, bio.format_weights(t))
    _write(out / SITES, bio.format_site_map(site_map))
    _write(out / POSITIONS, bio.format_positions(prox))
    _write(out / MEMORIES, bio.format_patterns(memories))
    config = {"n": memories.n, "m": memories.m, "r": args.r, "geometry": args.geometry}
    bio.write_manifest(out / MANIFEST, _manifest("train", argv, config, args.seed))
    print(f"trained n={memories.n} m={memories.m}; artifacts in {out}")
    for i, e in enumerate(site_map):
        flag = " (strict)" if e.all_strict else ""
        print(f"  memory {i} level {e.level}: sites {list(e.sites)}{flag}")
    return EXIT_OK


def _load_trained(directory):
    d = Path(directory)
    t = bio.parse_weights((d / WEIGHTS).read_text())
    prox = bio.parse_positions((d / POSITIONS).read_text())
    mem_path = d / MEMORIES
    memories = bio.read_patterns(mem_path) if mem_path.exists() else None
    sizes = [t.n, prox.n] + ([memories.n] if memories is not None else [])
    bio.check_same_n(*sizes)
    return t, prox, memories


def cmd_retrieve(args, argv):
    t, prox, memories = _load_trained(args.artifacts)
    if len(args.sites) != len(args.values):
        raise ValidationError(f"{len(args.sites)} sites but {len(args.values)} values")
    strategy = Strategy(args.strategy, args.seed, args.combine)
    result = retrieve(t, prox, args.sites, args.values, strategy, memories)
    print(f"output:  {bio.format_pattern(result.output)}")
    print(f"matched: {'none' if result.matched is None else result.matched}")
    for s, o in zip(result.clamped_sites if len(result.orders) > 1 else ["*"], result.orders):
        prefix = "order:  " if s == "*" else f"order[{s}]:"
        print(f"{prefix} {' '.join(map(str, o.order))} (clamped {o.clamp_count})")
    if args.out:
        _write(args.out, bio.format_retrieval(result))
        config = {"artifacts": str(args.artifacts), "sites": args.sites, "values": args.values,
                  "strategy": args.strategy, "combine": args.combine}
        bio.write_manifest(f"{args.out}.manifest.json", _manifest("retrieve", argv, config, args.seed))
    return EXIT_OK


def _summary_table(rows):
    head = f"{'strategy':<12} {'n':>4} {'m':>3} {'r':>3} {'trials':>6} {'mean':>7} {'stddev':>7} {'strict':>7} {'any':>7}"
    lines = [head, "-" * len(head)]
    for s in rows:
        c = s.config
        lines.append(
            f"{c.strategy.variant:<12} {c.n:>4} {c.m:>3} {c.r:>3} {c.trials:>6} "
            f"{s.mean_success:>7.3f} {s.stddev:>7.3f} {s.strict_site_rate:>7.3f} {s.mean_any_match:>7.3f}"
        )
    return "\n".join(lines)


def cmd_experiment(args, argv):
    if not args.n_list:
        raise ValidationError("--n-list is empty")
    if args.r > min(args.n_list):
        raise DomainError(f"--r {args.r} exceeds the smallest network size {min(args.n_list)}")
    m_values = args.m_list or [args.m]
    configs = [
        ExperimentConfig(
            n=n, m=m, r=args.r, trials=args.trials,
            strategy=Strategy(s, args.order_seed, args.combine),
            geometry=GeometryKind(args.geometry), master_seed=args.seed,
        )
        for s in args.strategies for m in m_values for n in args.n_list
    ]
    start = time.perf_counter()
    rows = [run_experiment(c) for c in configs]
    elapsed = time.perf_counter() - start
    print(_summary_table(rows))
    print(f"{len(rows)} cells in {elapsed:.1f}s")
    if args.out:
        _write(args.out, bio.format_experiments(rows))
        config = {
            "n_list": args.n_list, "m_list": m_values, "r": args.r, "trials": args.trials,
            "strategies": args.strategies, "geometry": args.geometry,
            "combine": args.combine, "order_seed": args.order_seed,
        }
        bio.write_manifest(f"{args.out}.manifest.json", _manifest("experiment", argv, config, args.seed))
    if args.per_trial:
        lines = ["strategy,n,m,trial,successes"]
        for s in rows:
            c = s.config
            lines += [f"{c.strategy.variant},{c.n},{c.m},{k},{v}" for k, v in enumerate(s.per_trial)]
        _write(args.per_trial, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_complexity(args, argv):
    if args.r > args.n:
        raise DomainError(f"--r {args.r} exceeds --n {args.n}")
    rep = cost_report(args.n, args.r)
    print(f"n={rep.n} r={rep.r}")
    print(f"classical_ops {rep.classical_ops:>20,}")
    print(f"active_ops    {rep.active_ops:>20,}")
    print(f"ratio         {rep.ratio:>20.6f}")
    if args.csv:
        _write(args.csv, bio.format_cost(rep))
        bio.write_manifest(f"{args.csv}.manifest.json",
                           _manifest("complexity", argv, {"n": args.n, "r": args.r}, None))
    return EXIT_OK


def cmd_sitemap(args, argv):
    d = Path(args.artifacts)
    prox = bio.parse_positions((d / POSITIONS).read_text())
    site_map = bio.parse_site_map((d / SITES).read_text())
    svg = render_site_map(prox, site_map)
    _write(args.out, svg)
    bio.write_manifest(f"{args.out}.manifest.json",
                       _manifest("sitemap", argv, {"artifacts": str(d)}, None))
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_replay(args, argv):
    manifest = bio.read_manifest(args.manifest)
    if manifest.get("tool") != "bmatrix" or "argv" not in manifest:
        raise ValidationError(f"{args.manifest} is not a bmatrix manifest")
    return main(manifest["argv"])


def build_parser():
    p = argparse.ArgumentParser(prog="bmatrix", description="B-matrix active-site associative memory")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("train", help="train on a pattern file and identify active sites")
    t.add_argument("memories", help="pattern file, one memory per line of 1/0")
    t.add_argument("--out", required=True, help="artifact directory")
    t.add_argument("--geometry", choices=GEOMETRIES, default="uniform2d")
    t.add_argument("--seed", type=_seed, default=0, help="layout seed (uniform geometries)")
    t.add_argument("--r", type=_positive_int, default=4, help="active sites per memory")
    t.set_defaults(func=cmd_train)

    r = sub.add_parser("retrieve", help="recall from clamped sites of a trained network")
    r.add_argument("artifacts", help="directory written by `train`")
    r.add_argument("--sites", type=_int_list, required=True)
    r.add_argument("--values", type=_spin_list, required=True)
    r.add_argument("--strategy", choices=STRATEGIES, default="independent")
    r.add_argument("--seed", type=_seed, default=0, help="order seed (arbitrary)")
    r.add_argument("--combine", choices=COMBINE_MODES, default="potential")
    r.add_argument("--out", help="write the result as CSV")
    r.set_defaults(func=cmd_retrieve)

    e = sub.add_parser("experiment", help="Monte-Carlo retrieval-capacity sweep")
    e.add_argument("--n-list", type=_int_list, default=[12, 16, 20, 24])
    e.add_argument("--m", type=_positive_int, default=8)
    e.add_argument("--m-list", type=_int_list, default=None, help="sweep memory counts instead of --m")
    e.add_argument("--r", type=_positive_int, default=4)
    e.add_argument("--trials", type=_positive_int, default=250)
    e.add_argument("--strategies", type=_name_list(STRATEGIES), default=["arbitrary", "averaged", "independent"])
    e.add_argument("--geometry", choices=GEOMETRIES, default="uniform2d")
    e.add_argument("--seed", type=_seed, default=0, help="master seed")
    e.add_argument("--order-seed", type=_seed, default=0, help="extra key for arbitrary orders")
    e.add_argument("--combine", choices=COMBINE_MODES, default="potential")
    e.add_argument("--out", help="experiment CSV path")
    e.add_argument("--per-trial", help="per-trial success counts CSV (plot data)")
    e.set_defaults(func=cmd_experiment)

    c = sub.add_parser("complexity", help="retrieval-sweep operation counts")
    c.add_argument("--n", type=_positive_int, required=True)
    c.add_argument("--r", type=_positive_int, required=True)
    c.add_argument("--csv", help="also write the report as CSV")
    c.set_defaults(func=cmd_complexity)

    s = sub.add_parser("sitemap", help="SVG scatter of active sites")
    s.add_argument("artifacts", help="directory written by `train`")
    s.add_argument("--out", required=True, help="SVG path")
    s.set_defaults(func=cmd_sitemap)

    rp = sub.add_parser("replay", help="re-run the command recorded in a manifest")
    rp.add_argument("manifest")
    rp.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, argv)
    except (BMatrixError, OSError) as exc:
        print(f"bmatrix {args.command}: error: {exc}", file=sys.stderr)
        return _exit_code(exc)


def _exit_code(exc) -> int:
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, DomainError):
        return EXIT_DOMAIN
    if isinstance(exc, OSError):
        return EXIT_IO
    return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
