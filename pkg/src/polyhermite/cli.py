"""Command-line interface: ``eval``, ``verify``, ``kernel``, ``sample``, ``grid``.

Exit status: 0 on success, 1 when a verification check fails, 2 on usage or
validation errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from . import ginibre, hermite, kernels, quadrature, verify
from .errors import PolyHermiteError, check_tau

SCHEMA_VERSION = "1.0.0"

FAMILIES = ("real", "rescaled", "laguerre", "complex", "phi", "squeezed")


class IncompatibleReport(ValueError):
    """A report was written with a different major schema version."""


def report_schema_version() -> str:
    return SCHEMA_VERSION


def load_report(text: str) -> dict:
    """Parse a JSON report, rejecting a different major schema version."""
    data = json.loads(text)
    version = str(data.get("schema_version", ""))
    if version.split(".")[0] != SCHEMA_VERSION.split(".")[0]:
        raise IncompatibleReport(f"report schema {version!r} is incompatible with {SCHEMA_VERSION}")
    return data


_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"


def parse_complex(token: str) -> complex:
    """Parse ``a+bi``, ``a-bi``, ``a``, ``bi`` or ``i`` (no spaces)."""
    m = re.fullmatch(rf"(?P<re>{_NUM})(?P<im>[+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i", token)
    if m and m.group("im") is not None:
        value = complex(float(m.group("re")), float(m.group("im")))
    elif re.fullmatch(_NUM, token):
        value = complex(float(token), 0.0)
    elif re.fullmatch(rf"(?P<im>{_NUM})i", token):
        value = complex(0.0, float(token[:-1]))
    elif token in ("i", "+i", "-i"):
        value = complex(0.0, -1.0 if token == "-i" else 1.0)
    else:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {token!r} (expected a+bi)")
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise argparse.ArgumentTypeError(f"complex number {token!r} is not finite")
    return value


def _cjson(x: complex) -> dict:
    return {"re": float(x.real), "im": float(x.imag)}


def _g(x: float) -> str:
    return f"{float(x):.17g}"


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace


def _common(p: argparse.ArgumentParser, *, tau_default=0.5):
    p.add_argument("--tau", type=float, default=tau_default)
    p.add_argument("--out", default=None, help="output path (default: standard output)")
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp for byte-identical reports")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyhermite", allow_abbrev=False, description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", allow_abbrev=False, help="evaluate a polynomial family at a point")
    _common(p)
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("-m", type=int, default=0)
    p.add_argument("-n", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.0, help="Laguerre parameter")
    p.add_argument("--z", type=parse_complex, default=complex(0.0))

    p = sub.add_parser("verify", allow_abbrev=False, help="run a verification suite")
    _common(p)
    p.add_argument("--suite", choices=verify.SUITES, default="all")
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--quad", type=int, default=64)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("kernel", allow_abbrev=False, help="closed form against series for the transform kernel")
    _common(p)
    p.add_argument("-n", type=int, default=0)
    p.add_argument("-K", type=int, default=None, help="series truncation (default: adaptive)")
    p.add_argument("--probes", type=int, default=20)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--z", type=parse_complex, default=None)
    p.add_argument("--w", type=parse_complex, default=None)

    p = sub.add_parser("sample", allow_abbrev=False, help="elliptic Ginibre spectra")
    _common(p)
    p.add_argument("-N", "--size", type=int, default=64)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--raw", action="store_true", help="omit the 1/sqrt(2) entry normalization")
    p.add_argument("--summary", default=None, help="also write the JSON summary to this path")

    p = sub.add_parser("grid", allow_abbrev=False, help="export a quadrature grid")
    _common(p)
    p.add_argument("--quad", type=int, default=16)
    p.add_argument("--kind", choices=(quadrature.ELLIPTIC, quadrature.FLAT), default=quadrature.ELLIPTIC)
    return parser


def _header(args, command) -> dict:
    head = {"schema_version": SCHEMA_VERSION, "command": command}
    if not args.no_timestamp:
        head["timestamp"] = datetime.now(timezone.utc).isoformat()
    return head


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _eval(args) -> tuple[str, int]:
    z = args.z
    fam = args.family
    if fam == "real":
        value = hermite.hermite_real(args.m, z)
    elif fam == "rescaled":
        value = hermite.hermite_rescaled(args.m, z, args.tau)
    elif fam == "laguerre":
        value = hermite.laguerre(args.m, args.alpha, z)
    elif fam == "complex":
        value = hermite.complex_hermite(args.m, args.n)(z)
    elif fam == "phi":
        value = hermite.phi_normalized(args.m, args.n, z)
    else:
        value = hermite.squeezed_hermite(args.m, args.n, args.tau)(z)
    value = complex(value)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "m", "n", "tau", "z_re", "z_im", "value_re", "value_im"])
        w.writerow([fam, args.m, args.n, _g(args.tau), _g(z.real), _g(z.imag), _g(value.real), _g(value.imag)])
        return buf.getvalue(), 0
    rec = _header(args, "eval")
    rec.update({"family": fam, "m": args.m, "n": args.n, "tau": args.tau, "z": _cjson(z), "value": _cjson(value)})
    if fam == "laguerre":
        rec["alpha"] = args.alpha
    return _dump_json(rec), 0


def _verify(args) -> tuple[str, int]:
    check_tau(args.tau)
    results = verify.run_suite(
        args.suite,
        tau=args.tau,
        max_degree=args.max_degree,
        n_q=args.quad,
        seed=args.seed,
        trials=args.trials,
        threads=args.threads,
    )
    ok = all(r.passed for r in results)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "max_abs_err", "tol", "direction", "pass"])
        for r in results:
            w.writerow([r.check, _g(r.max_abs_err), _g(r.tol), r.direction, int(r.passed)])
        return buf.getvalue(), 0 if ok else 1
    rec = _header(args, "verify")
    rec.update(
        {
            "suite": args.suite,
            "params": {"tau": args.tau, "max_degree": args.max_degree, "quad": args.quad, "seed": args.seed, "trials": args.trials},
            "pass": ok,
            "failed": [r.check for r in results if not r.passed],
            "checks": [r.to_json() for r in results],
        }
    )
    return _dump_json(rec), 0 if ok else 1


def _kernel(args) -> tuple[str, int]:
    spec = kernels.KernelSpec(args.tau, args.n)
    if args.z is not None or args.w is not None:
        zs = np.array([args.z if args.z is not None else 0j])
        ws = np.array([args.w if args.w is not None else 0j])
    else:
        rng = np.random.default_rng(args.seed)
        r = args.radius * np.sqrt(rng.uniform(0, 1, (2, args.probes)))
        t = rng.uniform(0, 2 * math.pi, (2, args.probes))
        zs, ws = r * np.exp(1j * t)
    rows = []
    for z, w in zip(zs, ws):
        closed = complex(kernels.kernel_w_closed(spec, z, w))
        series = kernels.kernel_w_series(spec, z, w, args.K).value
        rows.append((complex(z), complex(w), closed, series, closed / series))
    if args.format == "json":
        rec = _header(args, "kernel")
        rec.update(
            {
                "tau": args.tau,
                "n": args.n,
                "rows": [
                    {"z": _cjson(z), "w": _cjson(w), "closed": _cjson(c), "series": _cjson(s), "ratio": _cjson(q)}
                    for z, w, c, s, q in rows
                ],
            }
        )
        return _dump_json(rec), 0
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["z_re", "z_im", "w_re", "w_im", "closed_re", "closed_im", "series_re", "series_im", "ratio_re", "ratio_im"])
    for row in rows:
        wr.writerow([_g(part) for x in row for part in (x.real, x.imag)])
    return buf.getvalue(), 0


def _stats_json(st: ginibre.SpectralStats) -> dict:
    return {
        "mean": _cjson(st.mean),
        "second_moment_over_N": _cjson(st.second_moment_over_N),
        "ellipse_fraction": st.ellipse_fraction,
    }


def _sample(args) -> tuple[str, int]:
    seeds = [args.seed] if args.trials == 1 else ginibre.trial_seeds(args.seed, args.trials)
    samples = ginibre.run_trials(args.size, args.tau, seeds, threads=args.threads, raw=args.raw)
    summary = _header(args, "sample")
    summary.update(
        {
            "N": args.size,
            "tau": args.tau,
            "raw": args.raw,
            "generator": ginibre.GENERATOR,
            "per_seed": [{"seed": s.seed, **_stats_json(ginibre.spectral_stats(s))} for s in samples],
            "pooled": _stats_json(ginibre.pooled_stats(samples)),
        }
    )
    if args.summary:
        with open(args.summary, "w", encoding="utf-8") as fh:
            fh.write(_dump_json(summary))
    if args.format == "json":
        return _dump_json(summary), 0
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["seed", "index", "lambda_re", "lambda_im"])
    for s in samples:
        for i, lam in enumerate(s.eigenvalues):
            w.writerow([s.seed, i, _g(lam.real), _g(lam.imag)])
    return buf.getvalue(), 0


def _grid(args) -> tuple[str, int]:
    grid = quadrature.quad_grid(args.quad, args.tau, args.kind)
    if args.format == "json":
        rec = _header(args, "grid")
        rec.update(
            {
                "n_q": args.quad,
                "tau": args.tau,
                "kind": args.kind,
                "x": [float(p.real) for p in grid.points],
                "y": [float(p.imag) for p in grid.points],
                "weight": [float(w) for w in grid.weights],
            }
        )
        return _dump_json(rec), 0
    return grid.to_csv(), 0


_COMMANDS = {"eval": _eval, "verify": _verify, "kernel": _kernel, "sample": _sample, "grid": _grid}


def run(config: RunConfig) -> tuple[str, int]:
    """Execute a parsed command and return ``(text, exit_status)``."""
    return _COMMANDS[config.command](config.args)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", None) is not None and args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        text, status = run(RunConfig(args.command, args))
    except (PolyHermiteError, ValueError) as exc:
        parser.exit(2, f"{parser.prog} {args.command}: error: {type(exc).__name__}: {exc}\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if status == 1 and args.command == "verify":
        sys.stderr.write("verification failed\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
