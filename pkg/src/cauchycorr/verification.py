"""Quantitative verification gates.

Each check measures one agreement level (identity residual, normalization,
round-trip error, KS distance, ...) and compares it against a fixed
threshold.  The fast level covers the analytic checks; the full level adds
the Monte Carlo and determinism gates.  The CLI ``verify`` command and the
acceptance test suite both run these.
"""

from __future__ import annotations

import io
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import cfnum, distributions as dist, montecarlo as mc, specfun

__all__ = ["CheckResult", "run_checks", "FAST_CHECKS", "FULL_CHECKS"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: float
    threshold: float
    comparison: str = "<="          # measured <comparison> threshold
    detail: str = ""
    runtime_s: float = 0.0
    subchecks: list["CheckResult"] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  [{self.detail}]" if self.detail else ""
        return (f"{status} {self.name}: measured={self.measured:.6g} "
                f"{self.comparison} {self.threshold:.6g}{extra} ({self.runtime_s:.2f}s)")

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "passed": bool(self.passed),
            "measured": float(self.measured),
            "threshold": float(self.threshold),
            "comparison": self.comparison,
            "detail": self.detail,
            "runtime_s": round(self.runtime_s, 3),
        }
        if self.subchecks:
            out["subchecks"] = [c.to_dict() for c in self.subchecks]
        return out


def _timed(fn):
    def wrapper(*args, **kwargs) -> CheckResult:
        start = time.perf_counter()
        result = fn(*args, **kwargs)
        result.runtime_s = time.perf_counter() - start
        return result
    return wrapper


# ---------------------------------------------------------------------------
# analytic checks
# ---------------------------------------------------------------------------

STRUVE_GRID = (0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0, 50.0)


@_timed
def check_struve_identity() -> CheckResult:
    """max_z | (2/pi) int_0^{pi/2} e^{-z sin 2T} dT  -  i0_minus_l0(z) | on the grid."""
    worst = 0.0
    for z in STRUVE_GRID:
        integral = cfnum.integrate(lambda th: math.exp(-z * math.sin(2 * th)), 0.0, math.pi / 2)
        worst = max(worst, abs(2.0 / math.pi * integral.value - specfun.i0_minus_l0(z)))
    return CheckResult("struve-identity", worst <= 1e-10, worst, 1e-10)


@_timed
def check_normalizations() -> CheckResult:
    """Each model pdf integrates to 1 +- 1e-8; the unnormalized half-normal kernel to 1/2."""
    spec = cfnum.QuadratureSpec(abs_tol=1e-12, rel_tol=1e-12, max_subdivisions=2000)
    integrals = {
        "CauchyStd": cfnum.integrate(dist.cauchy_pdf, -math.inf, math.inf, spec).value,
        "CauchySquared": cfnum.integrate(dist.cauchy_sq_pdf, 0.0, math.inf, spec).value,
        "LimitW": cfnum.integrate(dist.sum_sq_limit_pdf, 0.0, math.inf, spec).value,
        "HalfNormalU": cfnum.integrate(dist.half_normal_pdf, 0.0, math.inf, spec).value,
        # even density, integrable log singularity at 0 and removable points at +-1
        "ProductS": 2.0 * (cfnum.integrate(dist.product_pdf, 0.0, 1.0, spec).value
                           + cfnum.integrate(dist.product_pdf, 1.0, math.inf, spec).value),
        "AsymptoticRc": dist.corr_limit_cdf(math.inf, 1.0) - 0.5
                        + (0.5 - dist.corr_limit_cdf(-math.inf, 1.0)),
    }
    subchecks = [
        CheckResult(f"normalization-{name}", abs(value - 1.0) <= 1e-8, value, 1e-8,
                    comparison="|x-1| <=")
        for name, value in integrals.items()
    ]
    broken = cfnum.integrate(dist.half_normal_pdf_unnormalized, 0.0, math.inf, spec).value
    subchecks.append(CheckResult("normalization-guard-unnormalized-kernel",
                                 abs(broken - 0.5) <= 1e-8, broken, 1e-8,
                                 comparison="|x-1/2| <="))
    worst = max(abs(v - 1.0) for v in integrals.values())
    worst = max(worst, abs(broken - 0.5))
    result = CheckResult("normalizations", all(c.passed for c in subchecks), worst, 1e-8)
    result.subchecks = subchecks
    return result


@_timed
def check_inversion_round_trips() -> CheckResult:
    """Cosine inversion of each symmetric CF reproduces its closed-form density."""
    spec = cfnum.QuadratureSpec(abs_tol=1e-11, rel_tol=1e-11, max_subdivisions=2000)
    worst = 0.0
    details = []
    for s in (0.25, 0.5, 2.0, 5.0):
        inv = cfnum.invert_symmetric_cf(dist.product_cf, s, spec)
        err = abs(inv.value - dist.product_pdf(s))
        worst = max(worst, err)
        details.append(f"product@{s}:{err:.1e}")
    for r in (0.5, 1.0, 2.0, 4.0):
        inv = cfnum.invert_symmetric_cf(lambda t: dist.corr_limit_cf(t, 1.0), r, spec)
        err = abs(inv.value - dist.corr_limit_pdf(r, 1.0))
        worst = max(worst, err)
        details.append(f"corr@{r}:{err:.1e}")
    return CheckResult("cf-inversion-round-trips", worst <= 1e-6, worst, 1e-6,
                       detail=" ".join(details))


@_timed
def check_stable_limit() -> CheckResult:
    """|cf_sq(t/n^2)^n - cf_limit(t)| decreases in n and is <= 1e-3 at n = 1e4."""
    worst_final = 0.0
    monotone = True
    for t in (0.5, 1.0, 2.0):
        deviations = [
            abs(dist.cauchy_sq_cf(t / n ** 2) ** n - dist.sum_sq_limit_cf(t))
            for n in (100, 1000, 10_000)
        ]
        monotone = monotone and deviations[0] > deviations[1] > deviations[2]
        worst_final = max(worst_final, deviations[2])
    passed = monotone and worst_final <= 1e-3
    return CheckResult("stable-limit-construction", passed, worst_final, 1e-3,
                       detail=f"monotone={monotone}")


@_timed
def check_limit_rate() -> CheckResult:
    """deviation * ln n bounded within a factor 3 across n in {1e2..1e5} at (1, pi/4)."""
    products = [
        cfnum.product_cf_limit_deviation(1.0, n, math.pi / 4) * math.log(n)
        for n in (100, 1000, 10_000, 100_000)
    ]
    ratio = max(products) / min(products)
    return CheckResult("limit-rate-bounded", ratio <= 3.0, ratio, 3.0, comparison="<=",
                       detail="dev*ln(n)=" + ",".join(f"{p:.4f}" for p in products))


@_timed
def check_tail_law() -> CheckResult:
    """r^2 * corr_limit_pdf(r, 1) within 1% of 2/pi^2 at r = 1e4."""
    target = 2.0 / math.pi ** 2
    measured = 1e4 ** 2 * dist.corr_limit_pdf(1e4, 1.0)
    rel = abs(measured / target - 1.0)
    return CheckResult("tail-law", rel <= 0.01, rel, 0.01, comparison="rel err <=",
                       detail=f"r^2*pdf={measured:.6g} vs 2/pi^2={target:.6g}")


# ---------------------------------------------------------------------------
# Monte Carlo checks
# ---------------------------------------------------------------------------

@_timed
def check_w_limit_ks(seed: int = mc.DEFAULT_SEED, workers: int = 1) -> CheckResult:
    """KS of sum(X^2)/n^2 at n = 30 (2e4 replications) against the stable limit."""
    cfg = mc.SimulationConfig(n=30, replications=20_000, master_seed=seed,
                              statistic=mc.Statistic.SUMSQ_SCALED, binning=(0.0, 10.0, 0.25))
    _, raw = mc.run_simulation(cfg, workers=workers)
    cdf = np.vectorize(dist.sum_sq_limit_cdf)
    ks = mc.ks_test(raw.values, cdf)
    return CheckResult("mc-w-limit-ks", ks.statistic <= 0.03, ks.statistic, 0.03)


def _main_run(seed: int, workers: int) -> tuple[mc.Histogram, mc.RawSamples, mc.SimulationConfig, float]:
    cfg = mc.SimulationConfig(n=400, replications=100_000, master_seed=seed,
                              statistic=mc.Statistic.SCALED_CORR)
    hist, raw = mc.run_simulation(cfg, workers=workers)
    a = float(dist.correction_factor(cfg.n))
    return hist, raw, cfg, a


def check_main_ks_chi2(seed: int = mc.DEFAULT_SEED, workers: int = 1) -> tuple[CheckResult, CheckResult]:
    """KS <= 0.02 and chi2/dof < 2 for the scaled correlation at n = 400, 1e5 reps."""
    start = time.perf_counter()
    hist, raw, cfg, a = _main_run(seed, workers)
    cdf = lambda v: dist.corr_limit_cdf_sorted(np.asarray(v, dtype=float), a)
    report = mc.gof_report(hist, raw, cdf, f"AsymptoticRc(a={a:.5f})", cfg)
    elapsed = time.perf_counter() - start
    ks_check = CheckResult("mc-main-ks", report.ks_statistic <= 0.02,
                           report.ks_statistic, 0.02, runtime_s=elapsed)
    ratio = report.chi2_statistic / report.chi2_dof
    chi2_check = CheckResult("mc-main-chi2-per-dof", ratio < 2.0, ratio, 2.0, comparison="<",
                             detail=f"chi2={report.chi2_statistic:.1f} dof={report.chi2_dof}",
                             runtime_s=elapsed)
    return ks_check, chi2_check


@_timed
def check_independence(seed: int = mc.DEFAULT_SEED) -> CheckResult:
    """All three pairwise rank correlations of the triple at n = 400, 1e4 reps."""
    cfg = mc.SimulationConfig(n=400, replications=10_000, master_seed=seed)
    report = mc.independence_diagnostic(cfg)
    worst = report.max_abs()
    detail = (f"|rho(|T|,U1)|={abs(report.spearman_abs_t_u1):.4f} "
              f"|rho(|T|,U2)|={abs(report.spearman_abs_t_u2):.4f} "
              f"|rho(U1,U2)|={abs(report.spearman_u1_u2):.4f}")
    return CheckResult("mc-independence-diagnostic", worst <= 0.05, worst, 0.05, detail=detail)


@_timed
def check_determinism(seed: int = mc.DEFAULT_SEED, workers: int = 4) -> CheckResult:
    """Byte-identical histogram CSV from repeated runs at different worker counts."""
    from .cli import histogram_csv_bytes  # local import: cli depends on this module

    cfg = mc.SimulationConfig(n=400, replications=100_000, master_seed=seed)
    blobs = []
    for w in (1, 1, workers):
        hist, _ = mc.run_simulation(cfg, workers=w)
        blobs.append(histogram_csv_bytes(hist))
    identical = blobs[0] == blobs[1] == blobs[2]
    return CheckResult("mc-determinism", identical, float(identical), 1.0, comparison="==",
                       detail=f"runs at workers=(1,1,{workers})")


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

FAST_CHECKS = ("struve-identity", "normalizations", "cf-inversion-round-trips",
               "stable-limit-construction", "limit-rate-bounded", "tail-law")
FULL_CHECKS = FAST_CHECKS + ("mc-w-limit-ks", "mc-main-ks", "mc-main-chi2-per-dof",
                             "mc-independence-diagnostic", "mc-determinism")


def run_checks(level: str = "fast", seed: int = mc.DEFAULT_SEED, workers: int = 1,
               stream: io.TextIOBase | None = None) -> list[CheckResult]:
    """Run the verification suite; prints one line per check to ``stream``."""
    if level not in ("fast", "full"):
        raise ValueError(f"level must be 'fast' or 'full', got {level!r}")
    results = [
        check_struve_identity(),
        check_normalizations(),
        check_inversion_round_trips(),
        check_stable_limit(),
        check_limit_rate(),
        check_tail_law(),
    ]
    if level == "full":
        results.append(check_w_limit_ks(seed, workers=workers))
        results.extend(check_main_ks_chi2(seed, workers=workers))
        results.append(check_independence(seed))
        results.append(check_determinism(seed, workers=max(workers, 2)))
    if stream is not None:
        for result in results:
            print(result.line(), file=stream)
    return results
