"""Command-line front end. Each subcommand is a thin adapter over the library.

Exit codes: 0 ok, 2 usage, 3 malformed input, 4 guard exceeded,
5 numerical failure (vanishing Z, broken premise), 6 not certified,
7 search or generation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import clt, dynamics, exact, fisher, interpolation, percolation, region
from .hypergraph import (
    GenerationError,
    Hypergraph,
    StructureError,
    complex_from_json,
    load_hypergraph,
    random_instance,
)

EXIT_USAGE, EXIT_SCHEMA, EXIT_GUARD, EXIT_NUMERIC, EXIT_UNCERTIFIED, EXIT_SEARCH = 2, 3, 4, 5, 6, 7


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return f"{x:.12g}"


def fmt_complex(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.12g}{z.imag:+.12g}i"


def _round(obj):
    """Round every float in a JSON-ready structure to 12 significant digits."""
    if isinstance(obj, float):
        return obj if not math.isfinite(obj) else float(fmt(obj))
    if isinstance(obj, complex):
        return [_round(obj.real), _round(obj.imag)]
    if isinstance(obj, (np.floating, np.integer)):
        return _round(obj.item())
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, out: str | None) -> None:
    _emit(json.dumps(_round(obj), indent=2) + "\n", out)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _weights_arg(value: str | None, key: str, size: int) -> np.ndarray:
    if value is None:
        raise UsageError(f"--{'lambda' if key == 'lambda' else key} is required")
    path = Path(value)
    if path.exists():
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise StructureError(f"invalid JSON in {value}: {exc}") from exc
        if not isinstance(doc, dict) or key not in doc or not isinstance(doc[key], list):
            raise StructureError(f"weights file must be {{\"{key}\": [[re, im], ...]}}")
        vals = [complex_from_json(x) for x in doc[key]]
        if len(vals) != size:
            raise StructureError(f"expected {size} {key} values, got {len(vals)}")
        return np.array(vals, dtype=complex)
    try:
        z = complex(value.replace("i", "j"))
    except ValueError as exc:
        raise UsageError(f"cannot read {key} value {value!r}") from exc
    return np.full(size, z)


def _or(value, default):
    return default if value is None else value


def _hypergraph(args) -> Hypergraph:
    if not args.input:
        raise UsageError("--input is required")
    return load_hypergraph(args.input)


# ---------------------------------------------------------------- commands

def cmd_gen(args) -> int:
    H = random_instance(args.n, args.m, args.k, args.delta_cap, args.seed)
    _emit(json.dumps(H.to_dict()) + "\n", args.out)
    return 0


def cmd_exact(args) -> int:
    H = _hypergraph(args)
    guard = not args.unsafe
    if args.fs:
        beta = _weights_arg(args.beta, "beta", H.m)
        _emit(fmt_complex(exact.partition_fs(H, beta, guard=guard)) + "\n", args.out)
    elif args.sizes:
        a = exact.size_coefficients(H, guard=guard)
        _emit(" ".join(str(int(x)) for x in a) + "\n", args.out)
    elif args.measure:
        lam = _weights_arg(args.lam, "lambda", H.n)
        mu = exact.gibbs(H, lam, guard=guard)
        _emit("config_bits,re,im\n" + "\n".join(mu.to_csv_rows()) + "\n", args.out)
    else:
        lam = _weights_arg(args.lam, "lambda", H.n)
        _emit(fmt_complex(exact.partition_ly(H, lam, guard=guard)) + "\n", args.out)
    return 0


def cmd_certify(args) -> int:
    H = _hypergraph(args)
    lam = _weights_arg(args.lam, "lambda", H.n)
    rep = region.certify(H, lam, _or(args.eps, 1e-4), eta=args.eta)
    _emit_json(rep.to_dict(), args.out)
    if not rep.passed:
        print("not certified: " + "; ".join(rep.failures), file=sys.stderr)
        return EXIT_UNCERTIFIED
    return 0


def cmd_reduce(args) -> int:
    H = _hypergraph(args)
    beta = _weights_arg(args.beta, "beta", H.m)
    _emit_json(fisher.reduce(H, beta).to_dict(), args.out)
    return 0


def cmd_dynamics(args) -> int:
    H = _hypergraph(args)
    lam = _weights_arg(args.lam, "lambda", H.n)
    chain = dynamics.ScanChain(H, lam, guard=not args.unsafe)
    sweeps = (args.T if args.T is not None else 40 * H.n) // max(H.n, 1)
    ind = np.flatnonzero(chain.independent)
    sizes = np.bitwise_count(ind)
    far = int(ind[np.argmax(sizes)])
    mu1 = dynamics.delta_measure(H.n, 0)
    mu2 = dynamics.delta_measure(H.n, far)
    rows = [[0, float(np.abs(mu1 - mu2).sum())]]
    for s in range(1, sweeps + 1):
        # one sweep covers times -n+1..0 relative to the sweep's end
        for t in range(-H.n + 1, 1):
            mu1, mu2 = chain.step(mu1, t), chain.step(mu2, t)
        rows.append([s, float(np.abs(mu1 - mu2).sum())])
    _emit(_csv_text(["sweep", "gap"], rows), args.out)
    return 0


def cmd_approx_count(args) -> int:
    H = _hypergraph(args)
    lam = _weights_arg(args.lam, "lambda", H.n)
    res = percolation.approx_partition(H, lam, _or(args.eps, 1e-4), _or(args.eta, 0.5), gamma=args.gamma)
    _emit_json(res.to_dict(), args.out)
    return 0


def cmd_interpolate(args) -> int:
    H = _hypergraph(args)
    lam = _weights_arg(args.lam, "lambda", H.n)
    res = interpolation.approx_log_partition(H, lam, args.order, args.delta, guard=not args.unsafe)
    _emit_json(res.to_dict(), args.out)
    return 0


def cmd_clt(args) -> int:
    H = _hypergraph(args)
    lam = _weights_arg(args.lam, "lambda", H.n)
    if np.any(lam != lam[0]) or lam[0].imag != 0 or not lam[0].real > 0:
        raise UsageError("clt needs a single positive real --lambda")
    dist = clt.size_distribution(H, lam[0].real, guard=not args.unsafe)
    rows = []
    for t, p in enumerate(dist.probs):
        g = float(clt.gauss_density((t - dist.mean) / dist.sigma) / dist.sigma) if dist.var > 0 else float("nan")
        rows.append([t, float(p), g, abs(float(p) - g)])
    _emit(_csv_text(["t", "P_exact", "gauss_density", "gap"], rows), args.out)
    if dist.var > 0:
        summary = {"mean": dist.mean, "var": dist.var, "kolmogorov_gap": clt.kolmogorov_gap(dist),
                   "lclt_gap": clt.lclt_gap(dist)}
        print(json.dumps(_round(summary)), file=sys.stderr)
    return 0


def cmd_count_size_t(args) -> int:
    H = _hypergraph(args)
    if args.t is None:
        raise UsageError("--t is required")
    res = clt.count_size_t(H, args.t, _or(args.eta, 0.1), mode=args.mode, lam_cap=args.lambda_cap, order=args.order)
    _emit_json(res.to_dict(), args.out)
    return 0


BENCH_HEADER = ["instance", "n", "m", "k", "delta", "Z_exact_re", "Z_exact_im", "Z_perc_re", "Z_perc_im",
                "rel_err_perc", "Z_interp_re", "Z_interp_im", "rel_err_interp", "gamma", "certified", "time_ms"]


def bench_rows(seed: int, count: int, n_min: int, n_max: int, eps: float, eta: float, order: int,
               timing: bool = True) -> list[list]:
    rng = np.random.default_rng(seed)
    region_eps = 0.9 * region.eps_max_ly(2, 3)
    lc = region.counting_lambda_c(2, 3, region_eps, eta)
    rows = []
    for idx in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        m = int(rng.integers(max(1, n // 2), n + 1))
        H = random_instance(n, m, 2, 3, int(rng.integers(2**31)))
        lam = rng.uniform(0, lc, n) + 1j * rng.uniform(-region_eps / 2, region_eps / 2, n)
        start = time.perf_counter()
        z = exact.partition_ly(H, lam)
        perc = percolation.approx_partition(H, lam, eps, eta, region_eps=region_eps)
        try:
            z_int = interpolation.approx_log_partition(H, lam, min(order, n)).Z_est
            err_int = abs(z_int - z) / abs(z)
        except interpolation.PremiseError:
            z_int, err_int = complex("nan"), float("nan")
        ms = (time.perf_counter() - start) * 1e3
        rows.append([idx, n, H.m, H.k_max, H.delta, z.real, z.imag, perc.Z_hat.real, perc.Z_hat.imag,
                     abs(perc.Z_hat - z) / abs(z), z_int.real, z_int.imag, err_int, perc.gamma,
                     int(perc.certified), float(f"{ms:.3f}") if timing else ""])
    return rows


def cmd_bench(args) -> int:
    rows = bench_rows(args.seed, args.count, args.n_min, args.n_max, _or(args.eps, 3e-4), _or(args.eta, 0.5), args.order,
                      timing=not args.no_timing)
    _emit(_csv_text(BENCH_HEADER, rows), args.out)
    return 0


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="hypergraph JSON file")
    common.add_argument("--lambda", dest="lam", help="weights JSON file or a scalar such as 0.01+0.001i")
    common.add_argument("--beta", help="edge weights JSON file or a scalar")
    common.add_argument("--eps", type=float, default=None)
    common.add_argument("--eta", type=float, default=None)
    common.add_argument("--gamma", type=int, default=None)
    common.add_argument("--order", type=int, default=8)
    common.add_argument("--T", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--unsafe", action="store_true", help="lift the size guards")

    p = argparse.ArgumentParser(prog="hyperzeros", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="random k-uniform instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--delta-cap", type=int, required=True)
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("exact", parents=[common], help="brute-force partition functions")
    mode = e.add_mutually_exclusive_group()
    mode.add_argument("--ly", action="store_true", help="vertex-weighted partition function (default)")
    mode.add_argument("--fs", action="store_true", help="edge-weighted partition function")
    mode.add_argument("--measure", action="store_true", help="Gibbs measure as CSV")
    mode.add_argument("--sizes", action="store_true", help="independent-set counts by size")
    e.set_defaults(func=cmd_exact)

    sub.add_parser("certify", parents=[common], help="region and alpha checks").set_defaults(func=cmd_certify)
    sub.add_parser("reduce", parents=[common], help="edge weights to vertex weights").set_defaults(func=cmd_reduce)
    sub.add_parser("dynamics", parents=[common], help="per-sweep l1 gap of two chains").set_defaults(func=cmd_dynamics)

    a = sub.add_parser("approx-count", parents=[common], help="percolation counter")
    a.set_defaults(func=cmd_approx_count)

    i = sub.add_parser("interpolate", parents=[common], help="truncated log-series estimate")
    i.add_argument("--delta", type=float, default=None)
    i.set_defaults(func=cmd_interpolate)

    sub.add_parser("clt", parents=[common], help="size distribution vs Gaussian").set_defaults(func=cmd_clt)

    c = sub.add_parser("count-size-t", parents=[common], help="independent sets of a given size")
    c.add_argument("--t", type=int, default=None)
    c.add_argument("--mode", choices=["exact", "pipeline"], default="exact")
    c.add_argument("--lambda-cap", type=float, default=None)
    c.set_defaults(func=cmd_count_size_t)

    b = sub.add_parser("bench", parents=[common], help="compare counters on a generated corpus")
    b.add_argument("--count", type=int, default=10)
    b.add_argument("--n-min", type=int, default=6)
    b.add_argument("--n-max", type=int, default=12)
    b.add_argument("--no-timing", action="store_true", help="leave time_ms empty for byte-identical reruns")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (StructureError, FileNotFoundError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except exact.GuardError as exc:
        print(f"guard exceeded: {exc} (use --unsafe to override)", file=sys.stderr)
        return EXIT_GUARD
    except (exact.VanishingPartitionError, interpolation.PremiseError, ZeroDivisionError,
            dynamics.MarginalError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (clt.SearchError, GenerationError) as exc:
        print(f"search failed: {exc}", file=sys.stderr)
        return EXIT_SEARCH
    except ValueError as exc:
        print(f"invalid argument: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
