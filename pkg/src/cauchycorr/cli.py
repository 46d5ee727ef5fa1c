"""Command-line surface.

Subcommands: ``eval`` (model values on a grid as CSV), ``simulate``
(histogram CSV + raw sample spill + run manifest), ``verify`` (the
quantitative check suite, JSON + human text), and ``plot`` (histogram
figure with the limit-density overlay).

Exit codes: 0 success, 1 check failure, 2 usage error.  CSV output is
locale-independent, 17 significant digits, '\\n' newlines, with a header
row.  The master seed resolves flag > CAUCHY_CORR_SEED > built-in default,
so bare invocations are reproducible.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from . import distributions as dist
from . import montecarlo as mc
from . import verification
from .exceptions import DomainError, NotAvailableError, SingularPointError

SEED_ENV_VAR = "CAUCHY_CORR_SEED"

_MODEL_NAMES = tuple(m.value for m in dist.ModelName)


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _parse_triple(text: str, what: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"{what} must look like lo:hi:step, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError as exc:
        raise DomainError(f"{what} has a non-numeric field: {text!r}") from exc
    return lo, hi, step


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    if step <= 0 or hi < lo:
        raise DomainError(f"invalid grid {lo}:{hi}:{step}")
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def _resolve_seed(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise DomainError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from exc
    return mc.DEFAULT_SEED


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

def _eval_rows(model: dist.DistributionModel, fn: str, grid: np.ndarray) -> tuple[str, list[str]]:
    complex_cf = fn == "cf" and model.name in (dist.ModelName.CAUCHY_SQUARED, dist.ModelName.LIMIT_W)
    header = "x,value,im_value" if complex_cf else "x,value"
    rows = []
    for x in grid:
        x = float(x)
        try:
            if fn == "pdf":
                value = model.pdf(x)
            elif fn == "cdf":
                value = model.cdf(x)
            else:
                value = model.cf(x)
        except SingularPointError:
            rows.append(f"{_fmt(x)},SINGULAR")
            continue
        if complex_cf:
            value = complex(value)
            rows.append(f"{_fmt(x)},{_fmt(value.real)},{_fmt(value.imag)}")
        else:
            rows.append(f"{_fmt(x)},{_fmt(float(np.real(value)))}")
    return header, rows


def cmd_eval(args: argparse.Namespace) -> int:
    model = dist.make_model(args.model, a=args.a, n=args.n)
    header, rows = _eval_rows(model, args.fn, _grid(*_parse_triple(args.grid, "--grid")))
    text = "\n".join([header, *rows]) + "\n"
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / f"eval_{model.name.value}_{args.fn}.csv"
        path.write_bytes(text.encode("ascii"))
        print(path)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def histogram_csv_bytes(hist: mc.Histogram) -> bytes:
    edges = hist.edges()
    lines = ["bin_lo,bin_hi,count"]
    for i, count in enumerate(hist.counts):
        lines.append(f"{_fmt(edges[i])},{_fmt(edges[i + 1])},{int(count)}")
    return ("\n".join(lines) + "\n").encode("ascii")


def cmd_simulate(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    binning = _parse_triple(args.bins, "--bins")
    cfg = mc.SimulationConfig(
        n=args.n,
        replications=args.reps,
        master_seed=seed,
        statistic=mc.Statistic(args.stat),
        binning=binning,
    )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    spill = None
    if cfg.replications > mc.SPILL_THRESHOLD and not args.no_raw:
        spill = out_dir / "raw_samples.bin"
    hist, raw = mc.run_simulation(cfg, workers=args.workers, spill_path=spill)
    if spill is not None:
        raw.values.flush()

    outputs = []
    hist_path = out_dir / "histogram.csv"
    hist_path.write_bytes(histogram_csv_bytes(hist))
    outputs.append({"path": hist_path.name, "kind": "histogram-csv",
                    "bytes": hist_path.stat().st_size, "sha256": _sha256(hist_path)})

    if not args.no_raw:
        raw_path = out_dir / "raw_samples.bin"
        if spill is None:
            raw.spill(raw_path)
        outputs.append({"path": raw_path.name, "kind": "raw-f8le",
                        "bytes": raw_path.stat().st_size, "sha256": _sha256(raw_path),
                        "count": int(cfg.replications)})

    manifest = {
        "tool": "cauchycorr",
        "version": __version__,
        "command": "simulate",
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "master_seed": cfg.master_seed,
        "config": cfg.to_dict(),
        "histogram": {
            "underflow": hist.underflow,
            "overflow": hist.overflow,
            "total": hist.total,
        },
        "outputs": outputs,
    }
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {hist_path} ({hist.total} replications, "
          f"underflow={hist.underflow}, overflow={hist.overflow})")
    print(f"wrote {manifest_path}")
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    results = verification.run_checks(args.level, seed=seed, workers=args.workers,
                                      stream=sys.stdout)
    all_passed = all(r.passed for r in results)
    report = {
        "tool": "cauchycorr",
        "version": __version__,
        "level": args.level,
        "master_seed": seed,
        "all_passed": all_passed,
        "checks": [r.to_dict() for r in results],
    }
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / "verify_report.json"
        path.write_text(json.dumps(report, indent=2) + "\n")
        print(f"wrote {path}")
    else:
        print(json.dumps(report, indent=2))
    return 0 if all_passed else 1


# ---------------------------------------------------------------------------
# plot
# ---------------------------------------------------------------------------

def _read_histogram_csv(path: Path) -> tuple[np.ndarray, np.ndarray]:
    lines = path.read_text().strip().split("\n")
    if not lines or lines[0] != "bin_lo,bin_hi,count":
        raise DomainError(f"{path} is not a histogram CSV (missing header)")
    lows, highs, counts = [], [], []
    for line in lines[1:]:
        lo, hi, count = line.split(",")
        lows.append(float(lo))
        highs.append(float(hi))
        counts.append(int(count))
    if not lows:
        raise DomainError(f"{path} contains no bins")
    if not np.allclose(lows[1:], highs[:-1], rtol=1e-12):
        raise DomainError(f"{path} bins are not contiguous")
    edges = np.array([*lows, highs[-1]])
    return edges, np.array(counts, dtype=np.int64)


def _resolve_total(args: argparse.Namespace, csv_path: Path, counts: np.ndarray) -> int:
    if args.total is not None:
        return args.total
    manifest_path = csv_path.parent / "manifest.json"
    if manifest_path.exists():
        manifest = json.loads(manifest_path.read_text())
        return int(manifest["histogram"]["total"])
    return int(counts.sum())


def cmd_plot(args: argparse.Namespace) -> int:
    if args.model != dist.ModelName.ASYMPTOTIC_RC.value:
        raise DomainError(f"plot overlays the {dist.ModelName.ASYMPTOTIC_RC.value} model only")
    model = dist.make_model(args.model, a=args.a, n=args.n)
    csv_path = Path(args.histogram)
    edges, counts = _read_histogram_csv(csv_path)
    total = _resolve_total(args, csv_path, counts)

    from . import plotting  # deferred: pulls in matplotlib

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    out_path = plotting.render_overlay(edges, counts, total, model._a(),
                                       out_dir / "figure.svg")
    print(f"wrote {out_path}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cauchycorr",
        description="Sampling distributions of the centralized correlation of "
                    "Cauchy samples: evaluate models, simulate, verify, plot.",
    )
    parser.add_argument("--version", action="version", version=f"cauchycorr {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a model function on a grid (CSV)")
    p_eval.add_argument("--model", required=True, choices=_MODEL_NAMES)
    p_eval.add_argument("--fn", required=True, choices=("pdf", "cdf", "cf"))
    p_eval.add_argument("--grid", required=True, help="lo:hi:step (inclusive endpoints)")
    p_eval.add_argument("--n", type=int, help="sample size fixing the correction factor (AsymptoticRc)")
    p_eval.add_argument("--a", type=float, help="correction factor in (0, 1] (AsymptoticRc)")
    p_eval.add_argument("--out", help="directory for the CSV (default: stdout)")
    p_eval.set_defaults(func=cmd_eval)

    p_sim = sub.add_parser("simulate", help="run replicated draws of a statistic")
    p_sim.add_argument("--n", type=int, default=400)
    p_sim.add_argument("--reps", type=int, default=100_000)
    p_sim.add_argument("--seed", type=int, help=f"master seed (default: ${SEED_ENV_VAR} or {mc.DEFAULT_SEED})")
    p_sim.add_argument("--stat", default=mc.Statistic.SCALED_CORR.value,
                       choices=tuple(s.value for s in mc.Statistic))
    p_sim.add_argument("--bins", default="-4:4:0.25", help="lo:hi:width (use --bins=-4:4:0.25 form)")
    p_sim.add_argument("--workers", type=int, default=1)
    p_sim.add_argument("--no-raw", action="store_true", help="skip the raw sample spill file")
    p_sim.add_argument("--out", default="cauchycorr_run", help="output directory")
    p_sim.set_defaults(func=cmd_simulate)

    p_verify = sub.add_parser("verify", help="run the quantitative verification suite")
    p_verify.add_argument("--level", default="fast", choices=("fast", "full"))
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--workers", type=int, default=1)
    p_verify.add_argument("--out", help="directory for verify_report.json (default: stdout)")
    p_verify.set_defaults(func=cmd_verify)

    p_plot = sub.add_parser("plot", help="histogram figure with the limit-density overlay")
    p_plot.add_argument("--histogram", required=True, help="histogram CSV from simulate")
    p_plot.add_argument("--model", default=dist.ModelName.ASYMPTOTIC_RC.value)
    p_plot.add_argument("--n", type=int, help="sample size fixing the correction factor")
    p_plot.add_argument("--a", type=float, help="correction factor in (0, 1]")
    p_plot.add_argument("--total", type=int,
                        help="grand total incl. under/overflow (default: from manifest.json)")
    p_plot.add_argument("--out", default=".", help="output directory for figure.svg")
    p_plot.set_defaults(func=cmd_plot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, NotAvailableError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
