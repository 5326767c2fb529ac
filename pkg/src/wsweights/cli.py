"""Command-line front-end: ``wsweights {sample,solve,adapt,diag,replay}``.

Every output file starts with ``#`` comment lines, the first of which embeds
a JSON run manifest.  ``wsweights replay FILE`` re-runs the manifest.
Exit codes: 0 success, 1 runtime/solver error, 2 usage/validation error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

import numpy as np

from . import __version__
from .core import SamplerConfig
from .diagnostics import growth_table, pick_one_per_row, qq_data
from .errors import ConfigError, DimensionError, WSWeightsError
from .fileio import InstanceFormatError, load_instance, read_csv, read_weights, write_audit, write_csv
from .pareto import Archive, adaptive_search
from .samplers import (
    WeightBatch,
    enumerate_uniform,
    sample_dirichlet,
    sample_lhs_general,
    sample_lhs_p2,
    sample_random,
    sample_slhs_general,
    sample_slhs_p2,
)
from .scalarise import Status, solve_batch

STRATEGIES = ("uniform", "random", "dirichlet", "lhs", "slhs")
OUTPUT_FLAGS = ("out", "front", "audit")


class UsageError(Exception):
    """Invalid flag combination or unreadable input; maps to exit code 2."""


def _floats(text):
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_range(text):
    """``1..25`` or ``2,3,4``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a list or range of integers, got {text!r}")


def _sampler_flags(sp):
    sp.add_argument("--p", type=int, default=None, help="number of objectives")
    sp.add_argument("--d", type=int, default=None, help="grid depth (1/d spacing)")
    sp.add_argument("--s", type=int, default=1, help="LHS shuffle rounds")
    sp.add_argument("--n", type=int, default=None, help="sample size for random and dirichlet")
    sp.add_argument("--delta", type=float, default=0.05, help="midpoint-sum tolerance, slhs with p >= 3")
    sp.add_argument("--alpha", type=_floats, default=None, help="Dirichlet parameters, comma separated")
    sp.add_argument("--beta", type=_floats, default=None, help="Beta(a,b) law for random with p = 2")
    sp.add_argument("--budget", type=int, default=10**6, help="cap on generated weights")
    sp.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wsweights", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sample", help="generate a weight CSV")
    sp.add_argument("strategy", choices=STRATEGIES)
    _sampler_flags(sp)
    sp.add_argument("--out", default=None)

    sv = sub.add_parser("solve", help="solve an instance for a batch of weights")
    sv.add_argument("--instance", required=True)
    src = sv.add_mutually_exclusive_group(required=True)
    src.add_argument("--weights", help="CSV of weight rows")
    src.add_argument("--strategy", choices=STRATEGIES)
    _sampler_flags(sv)
    sv.add_argument("--jobs", type=int, default=1, help="parallel solver threads")
    sv.add_argument("--out", default=None)
    sv.add_argument("--front", default=None, help="also write the nondominated front here")

    ad = sub.add_parser("adapt", help="adaptive weight refinement")
    ad.add_argument("--instance", required=True)
    ad.add_argument("--d", type=int, default=2)
    ad.add_argument("--tau", type=float, default=0.0, help="split cells whose endpoint images are farther apart")
    ad.add_argument("--rho", type=float, default=0.0, help="stop once N/D drops below this")
    ad.add_argument("--max-depth", type=int, default=12)
    ad.add_argument("--budget", type=int, default=10**6)
    ad.add_argument("--seed", type=int, default=0)
    ad.add_argument("--out", default=None)
    ad.add_argument("--audit", default=None, help="JSON-lines log of every solve")

    dg = sub.add_parser("diag", help="Q-Q and growth diagnostics")
    dsub = dg.add_subparsers(dest="diag", required=True)
    qq = dsub.add_parser("qq")
    qq.add_argument("--d", type=int, required=True)
    qq.add_argument("--s", type=int, default=1)
    qq.add_argument("--seed", type=int, default=0)
    qq.add_argument("--out", default=None)
    gr = dsub.add_parser("growth")
    gr.add_argument("--p", type=_int_range, required=True, help="e.g. 2..6 or 2,3,5")
    gr.add_argument("--d", type=_int_range, required=True)
    gr.add_argument("--out", default=None)

    rp = sub.add_parser("replay", help="re-run the manifest embedded in an output file")
    rp.add_argument("file")
    rp.add_argument("--out", default=None)
    rp.add_argument("--front", default=None)
    rp.add_argument("--audit", default=None)
    return parser


# -- manifest -------------------------------------------------------------------


def _manifest(argv, args) -> dict:
    """Replayable record: argv without output flags, plus the outputs separately."""
    clean, outputs, skip = [], {}, False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        name = tok[2:].split("=")[0] if tok.startswith("--") else None
        if name in OUTPUT_FLAGS:
            if "=" in tok:
                outputs[name] = tok.split("=", 1)[1]
            else:
                outputs[name] = argv[i + 1] if i + 1 < len(argv) else None
                skip = True
            continue
        clean.append(tok)
    config = {k: v for k, v in sorted(vars(args).items()) if k not in OUTPUT_FLAGS}
    return {
        "tool": "wsweights",
        "version": __version__,
        "command": args.command,
        "argv": clean,
        "config": config,
        "seed": getattr(args, "seed", None),
        "outputs": outputs,
    }


def _header(manifest, *extra):
    return ["manifest: " + json.dumps(manifest, sort_keys=True, default=list), *extra]


@contextlib.contextmanager
def _open_out(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


# -- commands ---------------------------------------------------------------------


def _make_batch(strategy, args, p) -> WeightBatch:
    """Dispatch a strategy name to its sampler, validating flag combinations."""
    if p is None or p < 2:
        raise UsageError("--p must be given and >= 2")
    try:
        SamplerConfig(p=p, d=args.d or 1, s=args.s, delta=args.delta, alpha=args.alpha,
                      seed=args.seed, beta=args.beta, budget=args.budget)
    except ConfigError as exc:
        raise UsageError(str(exc)) from exc
    needs_d = strategy in ("uniform", "lhs", "slhs")
    if needs_d and args.d is None:
        raise UsageError(f"strategy {strategy} needs --d")
    if strategy in ("random", "dirichlet") and args.n is None:
        raise UsageError(f"strategy {strategy} needs --n")
    if args.beta is not None and not (strategy == "random" and p == 2):
        raise UsageError("--beta only applies to the random strategy with p = 2")
    if strategy == "uniform":
        return enumerate_uniform(p, args.d, budget=args.budget)
    if strategy == "random":
        cfg = SamplerConfig(p=p, alpha=args.alpha, beta=args.beta, seed=args.seed)
        return sample_random(p, args.n, cfg)
    if strategy == "dirichlet":
        return sample_dirichlet(args.alpha or (1.0,) * p, args.n, args.seed)
    if strategy == "lhs":
        if p == 2:
            return sample_lhs_p2(args.d, args.s, args.seed)
        return sample_lhs_general(p, args.d, args.s, args.seed)
    if p == 2:
        return sample_slhs_p2(args.d, args.seed)
    return sample_slhs_general(p, args.d, args.delta, args.budget, args.seed)


def cmd_sample(args, manifest):
    p = args.p
    if p is None and args.alpha is not None:
        p = len(args.alpha)
    batch = _make_batch(args.strategy, args, p)
    header = [f"w{i + 1}" for i in range(batch.p)]
    with _open_out(args.out) as fh:
        write_csv(fh, header, batch.weights.tolist(),
                  _header(manifest, f"strategy: {batch.strategy.value} seed: {args.seed}"))
    return 0


def _load(path):
    try:
        return load_instance(path)
    except (InstanceFormatError, DimensionError) as exc:
        raise UsageError(str(exc)) from exc


def _summary(archive: Archive) -> str:
    ratio = archive.redundancy_ratio() if archive.solved_count else float("nan")
    return f"N={archive.distinct_count} D={archive.solved_count} N/D={ratio:.6f}"


def _write_front(path, archive, manifest, extra=()):
    p = len(archive.entries[0].point) if archive.entries else 0
    header = [f"y{i + 1}" for i in range(p)] + ["n_weights"]
    rows = [list(e.point) + [len(e.weights)] for e in archive.entries]
    with _open_out(path) as fh:
        write_csv(fh, header, rows, _header(manifest, *extra))


def cmd_solve(args, manifest):
    instance = _load(args.instance)
    if args.weights:
        try:
            weights = read_weights(args.weights, p=instance.p)
        except (OSError, DimensionError) as exc:
            raise UsageError(str(exc)) from exc
        if np.any(weights < 0) or np.any(np.abs(weights.sum(axis=1) - 1) > 1e-12):
            raise UsageError("weights file has rows off the unit simplex")
        batch = [tuple(row) for row in weights]
    else:
        if args.p is not None and args.p != instance.p:
            raise UsageError(f"--p {args.p} disagrees with instance p={instance.p}")
        batch = _make_batch(args.strategy, args, instance.p)
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    solutions = solve_batch(instance, batch, parallelism=args.jobs)
    archive = Archive()
    rows = []
    for sol in solutions:
        if sol.status is Status.OPTIMAL:
            report = str(archive.insert(sol))
            image = list(sol.y)
        else:
            archive.solved_count += 1
            report = "-"
            image = ["nan"] * instance.p
        rows.append(list(sol.weight.weights) + image + [sol.status.value, report])
    header = ([f"w{i + 1}" for i in range(instance.p)] + [f"y{i + 1}" for i in range(instance.p)]
              + ["status", "report"])
    summary = _summary(archive)
    with _open_out(args.out) as fh:
        write_csv(fh, header, rows, _header(manifest))
    if args.front:
        _write_front(args.front, archive, manifest, (summary,))
    print(summary, file=sys.stderr if args.out is None else sys.stdout)
    return 0


def cmd_adapt(args, manifest):
    instance = _load(args.instance)
    try:
        SamplerConfig(p=instance.p, d=args.d, tau=args.tau, rho=args.rho,
                      max_depth=args.max_depth, budget=args.budget, seed=args.seed)
    except ConfigError as exc:
        raise UsageError(str(exc)) from exc
    archive = adaptive_search(instance, args.d, args.tau, args.rho, args.max_depth, args.budget)
    summary = _summary(archive)
    _write_front(args.out, archive, manifest,
                 (f"termination: {archive.termination} rounds: {archive.rounds}", summary))
    if args.audit:
        write_audit(args.audit, archive.log)
    print(f"termination={archive.termination} {summary}",
          file=sys.stderr if args.out is None else sys.stdout)
    return 0


def cmd_diag(args, manifest):
    if args.diag == "qq":
        if args.d < 2 or args.s < 1:
            raise UsageError("diag qq needs --d >= 2 and --s >= 1")
        batch = sample_lhs_p2(args.d, args.s, args.seed)
        # separate stream for the coin flips so the weights match `sample lhs`
        values = pick_one_per_row(batch.weights, seed=[args.seed, 1])
        qq = qq_data(values)
        rows = zip(qq.theoretical.tolist(), qq.observed.tolist())
        with _open_out(args.out) as fh:
            write_csv(fh, ["theoretical", "observed"], rows,
                      _header(manifest, f"pearson: {qq.correlation():.17g}"))
        return 0
    if any(p < 2 for p in args.p) or any(d < 1 for d in args.d):
        raise UsageError("growth table needs p >= 2 and d >= 1")
    table = growth_table(args.p, args.d)
    rows = [(p, d, "" if c is None else c, lg) for p, d, c, lg in table]
    with _open_out(args.out) as fh:
        write_csv(fh, ["p", "d", "count", "log10count"], rows, _header(manifest))
    return 0


def cmd_replay(args, _manifest):
    try:
        comments, _, _ = read_csv(args.file)
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    line = next((c for c in comments if c.startswith("manifest: ")), None)
    if line is None:
        raise UsageError(f"{args.file} carries no run manifest")
    manifest = json.loads(line[len("manifest: "):])
    argv = list(manifest["argv"])
    overrides = {name: getattr(args, name) for name in OUTPUT_FLAGS if getattr(args, name) is not None}
    # recorded paths are reused only when the caller redirects nothing
    targets = overrides or manifest["outputs"]
    for name in OUTPUT_FLAGS:
        if targets.get(name) is not None:
            argv += [f"--{name}", targets[name]]
    return main(argv)


COMMANDS = {"sample": cmd_sample, "solve": cmd_solve, "adapt": cmd_adapt,
            "diag": cmd_diag, "replay": cmd_replay}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    manifest = _manifest(argv, args)
    try:
        return COMMANDS[args.command](args, manifest)
    except UsageError as exc:
        print(f"wsweights {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (WSWeightsError, OverflowError) as exc:
        print(f"wsweights {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
