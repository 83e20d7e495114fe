"""Batch command-line front-end.

Subcommands: pdist, kernel, mean, generate.  Collections are read either
from a JSON document {"dtype": "f32"|"f64", "pcfs": [[[t, v], ...], ...]}
or from a directory of two-column CSV files (header "t,v"), one PCF per
file in lexicographic order.  All numbers are serialized with the
shortest round-trip decimal representation, so write-then-read is
bit-exact and identical seeds give identical bytes.

Exit codes: 0 success, 2 parse/validation error, 3 divergent integral,
130 interrupted.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import errors
from .core import Pcf
from .datagen import RngSpec, noisy_trig, synthetic_benchmark
from .matrix import l2_kernel_job, pdist_job
from .reduce import mean as reduce_mean

__all__ = ["main", "entry"]


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _fmt(x):
    # repr of a Python float is its shortest round-trip decimal form.
    return repr(float(x))


def _dtype_tag(dtype):
    return "f32" if np.dtype(dtype) == np.float32 else "f64"


def _tag_dtype(tag):
    if tag == "f32":
        return np.float32
    if tag == "f64":
        return np.float64
    raise CliError(2, f"unknown dtype tag {tag!r} (expected 'f32' or 'f64')")


# -- collection I/O --------------------------------------------------


def load_collection(path):
    """Returns (list of Pcf, format tag 'json' | 'csvdir')."""
    p = Path(path)
    if p.is_dir():
        return _load_csv_dir(p), "csvdir"
    return _load_json(p), "json"


def _load_json(p):
    try:
        doc = json.loads(p.read_text())
    except FileNotFoundError:
        raise CliError(2, f"{p}: no such file")
    except json.JSONDecodeError as exc:
        raise CliError(2, f"{p}: invalid JSON: {exc}")
    if not isinstance(doc, dict) or "pcfs" not in doc:
        raise CliError(2, f"{p}: expected an object with 'dtype' and 'pcfs'")
    dtype = _tag_dtype(doc.get("dtype", "f64"))
    out = []
    for i, rows in enumerate(doc["pcfs"]):
        try:
            out.append(Pcf(np.asarray(rows, dtype=np.float64), dtype=dtype))
        except (errors.PcfError, ValueError) as exc:
            raise CliError(2, f"{p}: pcf #{i}: {exc}")
    if not out:
        raise CliError(2, f"{p}: collection is empty")
    return out


def _load_csv_dir(p):
    files = sorted(f for f in p.iterdir() if f.suffix == ".csv")
    if not files:
        raise CliError(2, f"{p}: no .csv files found")
    out = []
    for f in files:
        out.append(_load_csv(f))
    return out


def _load_csv(f):
    rows = []
    with open(f) as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0].replace(" ", "") != "t,v":
        raise CliError(2, f"{f}: row 1: expected header 't,v'")
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise CliError(2, f"{f}: row {lineno}: expected two columns")
        try:
            rows.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise CliError(2, f"{f}: row {lineno}: not a number: {line!r}")
    try:
        return Pcf(np.asarray(rows, dtype=np.float64))
    except errors.PcfError as exc:
        raise CliError(2, f"{f}: {exc} (rows 2..{len(lines)})")


def _write_pcfs(pcfs, path, fmt):
    path = Path(path)
    if fmt == "csvdir":
        lines = ["t,v"]
        f = pcfs[0]
        for t, v in zip(f.times.tolist(), f.values.tolist()):
            lines.append(f"{_fmt(t)},{_fmt(v)}")
        path.write_text("\n".join(lines) + "\n")
        return
    doc = {
        "dtype": _dtype_tag(pcfs[0].dtype),
        "pcfs": [
            [[t, v] for t, v in zip(f.times.tolist(), f.values.tolist())]
            for f in pcfs
        ],
    }
    path.write_text(json.dumps(doc, separators=(",", ":")) + "\n")


def _write_matrix(mat, path, fmt):
    path = Path(path)
    rows = np.asarray(mat)
    if fmt == "json":
        doc = {
            "dtype": _dtype_tag(rows.dtype),
            "matrix": [[float(x) for x in row] for row in rows],
        }
        path.write_text(json.dumps(doc, separators=(",", ":")) + "\n")
        return
    lines = [",".join(_fmt(x) for x in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")


# -- progress --------------------------------------------------------


def _attach_progress(job, quiet):
    if quiet:
        return
    last = [-1]

    def sink(frac):
        pct = int(frac * 100)
        if pct > last[0]:
            last[0] = pct
            print(f"progress: {pct}%", file=sys.stderr, flush=True)

    job.subscribe(sink)


def _run_matrix_job(job, args):
    _attach_progress(job, args.quiet)
    try:
        return job.run(args.threads)
    except KeyboardInterrupt:
        job.cancel()
        raise CliError(130, "interrupted; partial work discarded")
    except errors.Cancelled:
        raise CliError(130, "interrupted; partial work discarded")
    except errors.DivergentIntegral as exc:
        where = f" (pair {exc.pair[0]}, {exc.pair[1]})" if exc.pair else ""
        raise CliError(3, f"divergent integral{where}: {exc}")
    except errors.PcfError as exc:
        raise CliError(2, str(exc))


# -- subcommands -----------------------------------------------------


def _cmd_pdist(args):
    coll, _ = load_collection(args.input)
    a, b = args.bounds
    try:
        job = pdist_job(coll, p=args.p, a=a, b=b)
    except (errors.PcfError, ValueError) as exc:
        raise CliError(2, str(exc))
    mat = _run_matrix_job(job, args)
    _write_matrix(mat, args.output, args.format)
    return 0


def _cmd_kernel(args):
    coll, _ = load_collection(args.input)
    try:
        job = l2_kernel_job(coll)
    except errors.PcfError as exc:
        raise CliError(2, str(exc))
    mat = _run_matrix_job(job, args)
    _write_matrix(mat, args.output, args.format)
    return 0


def _cmd_mean(args):
    coll, fmt = load_collection(args.input)
    try:
        m = reduce_mean(coll)
    except errors.PcfError as exc:
        raise CliError(2, str(exc))
    _write_pcfs([m], args.output, fmt)
    return 0


def _cmd_generate(args):
    rng = RngSpec(args.seed)
    dtype = _tag_dtype(args.dtype)
    if args.kind == "synthetic":
        pcfs = synthetic_benchmark(args.count, rng, dtype=dtype)
    else:
        arr = noisy_trig((args.count,), args.n_points, kind=args.kind,
                         sigma=args.sigma, rng=rng, dtype=dtype)
        pcfs = arr.to_list()
    _write_pcfs(pcfs, args.output, "json")
    return 0


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="pcflib",
        description="Integrals, distances and reductions over collections "
                    "of piecewise constant functions.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--threads", type=int, default=None,
                        help="worker count (default: MASSPCF_THREADS or CPU count)")
        sp.add_argument("--output", required=True, help="output file path")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--quiet", action="store_true",
                        help="suppress progress output")

    sp = sub.add_parser("pdist", help="pairwise L_p distance matrix")
    sp.add_argument("input", help="collection file (JSON) or CSV directory")
    sp.add_argument("--p", type=float, default=1.0)
    sp.add_argument("--bounds", type=float, nargs=2, default=(0.0, math.inf),
                    metavar=("A", "B"), help="integration bounds (B may be inf)")
    common(sp)
    sp.set_defaults(func=_cmd_pdist)

    sp = sub.add_parser("kernel", help="pairwise L_2 inner product matrix")
    sp.add_argument("input")
    common(sp)
    sp.set_defaults(func=_cmd_kernel)

    sp = sub.add_parser("mean", help="mean PCF of a collection")
    sp.add_argument("input")
    sp.add_argument("--output", required=True)
    sp.set_defaults(func=_cmd_mean)

    sp = sub.add_parser("generate", help="write a synthetic collection")
    sp.add_argument("--kind", choices=("synthetic", "sin", "cos"),
                    default="synthetic")
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--n-points", type=int, default=100, dest="n_points")
    sp.add_argument("--sigma", type=float, default=0.1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--dtype", choices=("f32", "f64"), default="f64")
    sp.add_argument("--output", required=True)
    sp.set_defaults(func=_cmd_generate)

    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except KeyboardInterrupt:
        return 130


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
