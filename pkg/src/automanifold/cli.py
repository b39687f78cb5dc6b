"""``automanifold`` command-line interface.

Subcommands: ``generate``, ``embed``, ``benchmark``, ``auto`` and ``rerun``.
Every command that writes files also writes ``<output>.manifest.json``;
``rerun <manifest>`` repeats the recorded command line.

Exit codes: 0 success, 2 usage, 3 parse, 4 numerical, 5 io.
"""

import argparse
import dataclasses
import json
import os
import statistics
import sys
import time
from datetime import datetime, timezone

import numpy as np

from . import __version__
from ._io import atomic_write_text, fmt
from .automl import build_search_space, report_json, report_table, run_auto
from .automl.trial import FINAL_EPOCHS, embed_config
from .datagen import (FkdvParams, KsParams, SgParams, SpatialGrid, load_csv_matrix,
                      make_sphere, make_swiss_roll, simulate_fkdv, simulate_ks, simulate_sg,
                      write_dataset_csv)
from .embed import METHODS, config_hash, embed, write_embedding_csv
from .errors import AutomanifoldError, DomainError
from .graph import build_knn_graph
from .qscore import score_embedding

EXIT_CODES = {"usage": 2, "parse": 3, "numerical": 4, "io": 5}
SYSTEMS = ("fkdv", "ks", "sg", "swiss", "sphere")


def default_seed():
    raw = os.environ.get("AUTOMANIFOLD_SEED")
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"AUTOMANIFOLD_SEED must be an integer, got {raw!r}") from None


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _methods(text):
    names = [m.strip() for m in text.split(",") if m.strip()]
    bad = [m for m in names if m not in METHODS]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"unknown method(s) {', '.join(bad) or '(none)'}; valid: {', '.join(METHODS)}")
    return names


def write_manifest(args, argv, outputs, inputs, started, seeds):
    params = {k: v for k, v in vars(args).items() if k != "func"}
    manifest = {"command": ["automanifold", *argv], "argv": list(argv),
                "config_hash": config_hash(params), "config": params, "seeds": seeds,
                "version": __version__, "cwd": os.getcwd(),
                "inputs": [os.path.abspath(p) for p in inputs],
                "outputs": [os.path.abspath(p) for p in outputs],
                "started": started, "finished": _now()}
    atomic_write_text(outputs[0] + ".manifest.json",
                      json.dumps(manifest, indent=2, default=str) + "\n")


def _now():
    return datetime.now(timezone.utc).isoformat()


def _override(params, **values):
    return dataclasses.replace(params, **{k: v for k, v in values.items() if v is not None})


def cmd_generate(args):
    sysname = args.system
    if sysname in ("swiss", "sphere"):
        maker = make_swiss_roll if sysname == "swiss" else make_sphere
        ds = maker(args.n or 1000, args.seed).to_dataset()
    else:
        grid = SpatialGrid(args.grid_points) if args.grid_points else None
        common = {"t_start": args.t_start, "dt": args.dt, "n_snapshots": args.n,
                  "tol": args.tol, "amp": args.amp}
        if sysname == "fkdv":
            ds = simulate_fkdv(grid, _override(FkdvParams(), froude=args.froude, **common),
                               seed=args.seed)
        elif sysname == "ks":
            ds = simulate_ks(grid, _override(KsParams(), nu=args.nu, **common), seed=args.seed)
        else:
            ds = simulate_sg(grid, _override(SgParams(), **common), seed=args.seed)
    write_dataset_csv(ds, args.out)
    print(f"wrote {args.out}: {ds.n_samples} x {ds.n_features} ({ds.source})")
    return [args.out], []


def _method_options(args, method):
    if method == "lle":
        return {"reg": args.reg}
    if method == "mds_smacof":
        return {"max_iter": args.max_iter}
    if method == "deepwalk":
        return {"epochs": args.epochs, "lr": args.lr, "optimizer": args.optimizer,
                "walk_length": args.walk_length}
    return {}


def _embed_once(X, method, k, n_dim, seed, options):
    graph = build_knn_graph(X, k) if method in ("isomap", "se", "deepwalk") else None
    emb = embed(method, X, n_dim, k=k, seed=seed, graph=graph, **options)
    return emb, score_embedding(X, emb)


def cmd_embed(args):
    ds = load_csv_matrix(args.dataset)
    emb, scores = _embed_once(ds.values, args.method, args.k, args.ndim, args.seed,
                              _method_options(args, args.method))
    out = args.out or os.path.splitext(args.dataset)[0] + f".{args.method}.csv"
    score_path = os.path.splitext(out)[0] + ".scores.json"
    write_embedding_csv(emb, out)
    atomic_write_text(score_path, scores.to_json(include_curve=args.curve) + "\n")
    print(f"{args.method}: k_max={scores.k_max} q_local={scores.q_local:.4f} "
          f"q_global={scores.q_global:.4f}")
    return [out, score_path], [args.dataset]


def _benchmark_run(X, method, k, n_dim, seed, options):
    t0 = time.perf_counter()
    _, scores = _embed_once(X, method, k, n_dim, seed, options)
    return scores.q_local, scores.q_global, scores.k_max, time.perf_counter() - t0


def _parallel(tasks, jobs):
    if jobs == 1:
        return [fn(*a) for fn, *a in tasks]
    from joblib import Parallel, delayed
    return Parallel(n_jobs=jobs)(delayed(fn)(*a) for fn, *a in tasks)


def grid_configs(space):
    """Distinct full-graph runs of ``space`` (``subgraph_walk`` plays no role)."""
    seen, out = set(), []
    for cfg in space.enumerate():
        k = cfg.k if cfg.method not in ("pca", "mds_classical", "mds_smacof") else space.k[0]
        cfg = dataclasses.replace(cfg, k=k, subgraph_walk=space.subgraph_walk[0])
        if cfg.key() not in seen:
            seen.add(cfg.key())
            out.append(cfg)
    return out


def run_grid(X, space, seed=0, jobs=1):
    """Fit and score every distinct config on the full data; rows plus total time."""
    def one(cfg):
        cfg = dataclasses.replace(cfg, seed=seed)
        t0 = time.perf_counter()
        graph = build_knn_graph(X, cfg.k)
        emb = embed_config(cfg, graph, FINAL_EPOCHS)
        s = score_embedding(X, emb)
        return cfg, s.q_local, s.q_global, s.k_max, time.perf_counter() - t0
    t0 = time.perf_counter()
    rows = _parallel([(one, c) for c in grid_configs(space)], jobs)
    return rows, time.perf_counter() - t0


def _table(header, rows):
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[j]) for r in cells) for j in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
                     for r in cells) + "\n"


def cmd_benchmark(args):
    ds = load_csv_matrix(args.dataset)
    X = ds.values
    out = args.out or os.path.splitext(args.dataset)[0] + ".benchmark.csv"
    if args.grid:
        space = build_search_space(args.kind or _kind_of(ds), methods=args.methods or METHODS)
        rows, total = run_grid(X, space, args.seed, args.jobs)
        header = ["method", "k", "n_dim", "lr", "optimizer", "walk_length",
                  "q_local", "q_global", "k_max", "time_s"]
        body = [[c.method, c.k, c.n_dim, fmt(c.lr), c.optimizer, c.walk_length, fmt(ql),
                 fmt(qg), km, fmt(t)] for c, ql, qg, km, t in rows]
        print(_table(header, [[r[0], r[1], r[2], r[3], r[4], r[5], f"{float(r[6]):.3f}",
                               f"{float(r[7]):.3f}", r[8], f"{float(r[9]):.2f}"]
                              for r in body]), end="")
        print(f"grid: {len(rows)} configs, total {total:.2f} s")
    else:
        methods = args.methods or ["pca", "mds_classical", "isomap", "lle", "se"]
        header = ["method", "q_local_mean", "q_local_std", "q_global_mean", "q_global_std",
                  "k_max_mean", "k_max_std", "time_mean_s", "time_total_s"]
        body, shown = [], []
        for m in methods:
            opts = _method_options(args, m)
            res = np.array(_parallel([(_benchmark_run, X, m, args.k, args.ndim,
                                       args.seed + r, opts) for r in range(args.repeats)],
                                     args.jobs), dtype=np.float64)
            # pstdev is exact, so identical repeats give a std of exactly 0
            mean = res.mean(axis=0)
            std = np.array([statistics.pstdev(col) for col in res.T.tolist()])
            body.append([m, fmt(mean[0]), fmt(std[0]), fmt(mean[1]), fmt(std[1]), fmt(mean[2]),
                         fmt(std[2]), fmt(mean[3]), fmt(res[:, 3].sum())])
            shown.append([m, f"{mean[0]:.2f} ({std[0]:.2f})", f"{mean[1]:.2f} ({std[1]:.2f})",
                          f"{mean[2]:.1f} ({std[2]:.1f})", f"{mean[3]:.2f}",
                          f"{res[:, 3].sum():.2f}"])
        print(_table(["Model", "Q_local", "Q_global", "K_max", "mean time (s)",
                      "total time (s)"], shown), end="")
    atomic_write_text(out, "\n".join(",".join(str(c) for c in r) for r in [header] + body)
                      + "\n")
    return [out], [args.dataset]


def _kind_of(ds):
    return "static" if ds.grid == "unstructured" else "dynamic"


def cmd_auto(args):
    ds = load_csv_matrix(args.dataset)
    space = build_search_space(args.kind or _kind_of(ds))
    result, _ = run_auto(space, ds.values, args.strategy, args.budget, args.n_init,
                         args.n_iter, args.subgraphs, args.seed, dataset=ds.source)
    out = args.out or os.path.splitext(args.dataset)[0] + f".auto-{args.strategy}.json"
    stem = os.path.splitext(out)[0]
    atomic_write_text(out, report_json(result.report) + "\n")
    table = report_table(result.report)
    atomic_write_text(stem + ".txt", table)
    write_embedding_csv(result.embedding, stem + ".embedding.csv")
    print(table, end="")
    return [out, stem + ".txt", stem + ".embedding.csv"], [args.dataset]


def cmd_rerun(args):
    try:
        with open(args.manifest) as fh:
            manifest = json.load(fh)
        argv = manifest["argv"]
    except (ValueError, KeyError, TypeError) as exc:
        raise _parse_error(f"bad manifest {args.manifest}: {exc}") from None
    if argv and argv[0] == "rerun":
        raise DomainError("a manifest cannot point at another rerun")
    here = os.getcwd()
    os.chdir(manifest.get("cwd", here))
    try:
        code = main(argv)
    finally:
        os.chdir(here)
    if code:
        raise _Exit(code)
    return None


class _Exit(Exception):
    def __init__(self, code):
        super().__init__(code)
        self.code = code


def _parse_error(message):
    from .errors import ParseError
    return ParseError(message)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _Usage(f"{self.prog}: usage error: {message}")


class _Usage(Exception):
    pass


def build_parser():
    p = _Parser(prog="automanifold", description="Manifold learning on proximity graphs.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def seeded(sp):
        sp.add_argument("--seed", type=int, default=None,
                        help="random seed (default: $AUTOMANIFOLD_SEED or 0)")

    g = sub.add_parser("generate", help="simulate or sample a dataset")
    g.add_argument("system", choices=SYSTEMS)
    g.add_argument("--out", required=True)
    g.add_argument("--n", type=_positive, help="snapshots (PDEs) or points (point clouds)")
    g.add_argument("--grid-points", type=_positive)
    g.add_argument("--t-start", type=float)
    g.add_argument("--dt", type=float)
    g.add_argument("--tol", type=float)
    g.add_argument("--amp", type=float)
    g.add_argument("--nu", type=float)
    g.add_argument("--froude", type=float)
    seeded(g)
    g.set_defaults(func=cmd_generate)

    def method_flags(sp):
        sp.add_argument("--k", type=_positive, default=20)
        sp.add_argument("--ndim", type=_positive, default=3)
        sp.add_argument("--reg", type=float, default=1e-3, help="LLE regularization")
        sp.add_argument("--max-iter", type=_positive, default=300, help="SMACOF iterations")
        sp.add_argument("--epochs", type=_positive, default=FINAL_EPOCHS)
        sp.add_argument("--lr", type=float, default=1e-2)
        sp.add_argument("--optimizer", choices=("sgd", "adam"), default="sgd")
        sp.add_argument("--walk-length", type=_positive, default=50)

    e = sub.add_parser("embed", help="embed one dataset and score it")
    e.add_argument("dataset")
    e.add_argument("--method", choices=METHODS, required=True)
    method_flags(e)
    e.add_argument("--out")
    e.add_argument("--curve", action="store_true", help="include the Q-curve in the JSON")
    seeded(e)
    e.set_defaults(func=cmd_embed)

    b = sub.add_parser("benchmark", help="repeated runs per method, or the full grid")
    b.add_argument("dataset")
    b.add_argument("--methods", type=_methods)
    method_flags(b)
    b.add_argument("--repeats", type=_positive, default=10)
    b.add_argument("--grid", action="store_true", help="enumerate the whole search space")
    b.add_argument("--kind", choices=("dynamic", "static"))
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--out")
    seeded(b)
    b.set_defaults(func=cmd_benchmark)

    a = sub.add_parser("auto", help="automated model selection")
    a.add_argument("dataset")
    a.add_argument("--strategy", choices=("random", "bayes"), default="bayes")
    a.add_argument("--budget", type=_positive, default=30, help="random-search trials")
    a.add_argument("--n-init", type=_positive, default=10)
    a.add_argument("--n-iter", type=int, default=20)
    a.add_argument("--subgraphs", type=_positive, default=5)
    a.add_argument("--kind", choices=("dynamic", "static"))
    a.add_argument("--out")
    seeded(a)
    a.set_defaults(func=cmd_auto)

    r = sub.add_parser("rerun", help="repeat the command recorded in a manifest")
    r.add_argument("manifest")
    r.set_defaults(func=cmd_rerun)
    return p


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    started = _now()
    try:
        args = build_parser().parse_args(argv)
        if hasattr(args, "seed") and args.seed is None:
            args.seed = default_seed()
        produced = args.func(args)
        if produced is not None:
            outputs, inputs = produced
            write_manifest(args, argv, outputs, inputs, started, {"seed": args.seed})
        return 0
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return EXIT_CODES["usage"]
    except _Exit as exc:
        return exc.code
    except AutomanifoldError as exc:
        print(f"automanifold: {exc.category} error: {exc}", file=sys.stderr)
        return EXIT_CODES.get(exc.category, 1)
    except OSError as exc:
        print(f"automanifold: io error: {exc}", file=sys.stderr)
        return EXIT_CODES["io"]


if __name__ == "__main__":
    sys.exit(main())
