"""Reproducible, parallel Monte Carlo engine.

Reproducibility contract: replication k derives its own counter-based RNG
stream from the Philox key (k, master_seed).  A result therefore depends
only on the configuration, never on the worker count or scheduling, and
histogram merging is exact integer addition, so all reported outputs are
bit-stable.

Uniform variates are midpoints (j + 1/2) / 2^53, strictly inside (0, 1),
so the inverse-CDF map tan(pi (u - 1/2)) never sees an endpoint.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import spearmanr

from .exceptions import DomainError

__all__ = [
    "DEFAULT_SEED",
    "Statistic",
    "SimulationConfig",
    "Histogram",
    "RawSamples",
    "replication_stream",
    "cauchy_from_uniform",
    "sample_cauchy",
    "centralized_corr",
    "scaled_corr",
    "run_simulation",
    "KsResult",
    "ks_test",
    "chi2_against_binned",
    "GofReport",
    "gof_report",
    "IndependenceReport",
    "independence_diagnostic",
]

DEFAULT_SEED = 424242
SPILL_THRESHOLD = 10_000_000  # raw values above this count go to disk

_U64_MASK = (1 << 64) - 1


class Statistic(enum.Enum):
    """Per-replication statistic computed from fresh Cauchy samples."""

    SCALED_CORR = "scaled_corr"        # (n/ln n) * sum(xy) / sqrt(sum x^2 sum y^2)
    SUMSQ_SCALED = "sumsq_scaled"      # sum(x^2) / n^2
    SINGLE_PRODUCT = "single_product"  # x1 y1 n^2 / sqrt(sum x^2 sum y^2)


@dataclass(frozen=True)
class SimulationConfig:
    n: int
    replications: int
    master_seed: int = DEFAULT_SEED
    statistic: Statistic = Statistic.SCALED_CORR
    binning: tuple[float, float, float] = (-4.0, 4.0, 0.25)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise DomainError(f"sample size must be >= 2, got {self.n}")
        if self.replications < 1:
            raise DomainError(f"replications must be >= 1, got {self.replications}")
        if not 0 <= self.master_seed <= _U64_MASK:
            raise DomainError("master_seed must fit in 64 bits")
        lo, hi, width = self.binning
        if not (width > 0.0 and hi > lo):
            raise DomainError(f"invalid binning {self.binning}")
        nbins = (hi - lo) / width
        if abs(nbins - round(nbins)) > 1e-9 * max(1.0, abs(nbins)):
            raise DomainError(f"bin width {width} does not divide ({lo}, {hi})")

    @property
    def nbins(self) -> int:
        lo, hi, width = self.binning
        return int(round((hi - lo) / width))

    def edges(self) -> np.ndarray:
        lo, _, width = self.binning
        return lo + width * np.arange(self.nbins + 1)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "replications": self.replications,
            "master_seed": self.master_seed,
            "statistic": self.statistic.value,
            "binning": list(self.binning),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SimulationConfig":
        return cls(
            n=int(data["n"]),
            replications=int(data["replications"]),
            master_seed=int(data["master_seed"]),
            statistic=Statistic(data["statistic"]),
            binning=tuple(float(v) for v in data["binning"]),
        )


# ---------------------------------------------------------------------------
# histogram
# ---------------------------------------------------------------------------

@dataclass
class Histogram:
    """Fixed-width bin counts.

    Edge convention: bin i holds values in [lo + i*width, lo + (i+1)*width),
    left-closed right-open; a value exactly at the top edge counts as
    overflow.  Histograms with identical binning merge by integer addition.
    """

    binning: tuple[float, float, float]
    counts: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    underflow: int = 0
    overflow: int = 0

    def __post_init__(self) -> None:
        lo, hi, width = self.binning
        nbins = int(round((hi - lo) / width))
        if self.counts.size == 0:
            self.counts = np.zeros(nbins, dtype=np.int64)
        elif self.counts.size != nbins:
            raise DomainError("count vector does not match binning")

    @property
    def total(self) -> int:
        return int(self.counts.sum()) + self.underflow + self.overflow

    def edges(self) -> np.ndarray:
        lo, _, width = self.binning
        return lo + width * np.arange(self.counts.size + 1)

    @classmethod
    def from_values(cls, values: np.ndarray, binning: tuple[float, float, float]) -> "Histogram":
        lo, hi, width = binning
        hist = cls(binning)
        idx = np.floor((np.asarray(values, dtype=float) - lo) / width).astype(np.int64)
        in_range = (idx >= 0) & (idx < hist.counts.size)
        hist.counts = np.bincount(idx[in_range], minlength=hist.counts.size).astype(np.int64)
        hist.underflow = int(np.count_nonzero(idx < 0))
        hist.overflow = int(np.count_nonzero(idx >= hist.counts.size))
        return hist

    def merge(self, other: "Histogram") -> "Histogram":
        if self.binning != other.binning:
            raise DomainError("cannot merge histograms with different binning")
        return Histogram(
            self.binning,
            self.counts + other.counts,
            self.underflow + other.underflow,
            self.overflow + other.overflow,
        )

    __add__ = merge

    def density(self) -> np.ndarray:
        """Bar heights count / (total * width); sums (times width) to the in-range fraction."""
        width = self.binning[2]
        total = self.total
        if total == 0:
            raise DomainError("histogram is empty")
        return self.counts / (total * width)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def replication_stream(master_seed: int, index: int) -> np.random.Generator:
    """Independent counter-based stream for replication ``index``."""
    key = np.array([index & _U64_MASK, master_seed & _U64_MASK], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _uniform_open(rng: np.random.Generator, count: int) -> np.ndarray:
    return (rng.integers(0, 1 << 53, size=count) + 0.5) * (2.0 ** -53)


def cauchy_from_uniform(u: np.ndarray) -> np.ndarray:
    """Inverse-CDF map x = tan(pi (u - 1/2)) for u in the open unit interval."""
    return np.tan(np.pi * (np.asarray(u, dtype=float) - 0.5))


def sample_cauchy(count: int, stream: np.random.Generator) -> np.ndarray:
    """i.i.d. standard Cauchy values (median 0, quartile deviation 1)."""
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    return cauchy_from_uniform(_uniform_open(stream, count))


# ---------------------------------------------------------------------------
# statistics
# ---------------------------------------------------------------------------

def centralized_corr(x: np.ndarray, y: np.ndarray) -> float:
    """sum(x y) / (sqrt(sum x^2) sqrt(sum y^2)), in [-1, 1].

    The correlation computed without subtracting sample means (the medians
    are known to be zero); identical to cosine similarity.  Scale-invariant:
    rescaling either sequence only flips the sign with the scale factors.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or x.size < 1:
        raise DomainError("sequences must be 1-d, nonempty, and of equal length")
    xx = float(np.dot(x, x))
    yy = float(np.dot(y, y))
    if xx == 0.0 or yy == 0.0:
        raise DomainError("centralized correlation undefined for a zero-norm sequence")
    r = float(np.dot(x, y)) / math.sqrt(xx * yy)
    return min(1.0, max(-1.0, r))


def scaled_corr(x: np.ndarray, y: np.ndarray) -> float:
    """(n / ln n) * centralized_corr(x, y), n = len(x) >= 2."""
    n = len(x)
    if n < 2:
        raise DomainError(f"scaled correlation requires n >= 2, got {n}")
    return n / math.log(n) * centralized_corr(x, y)


def _replication_value(statistic: Statistic, n: int, rng: np.random.Generator) -> float:
    if statistic is Statistic.SUMSQ_SCALED:
        x = sample_cauchy(n, rng)
        return float(np.dot(x, x)) / n ** 2
    x = sample_cauchy(n, rng)
    y = sample_cauchy(n, rng)
    if statistic is Statistic.SCALED_CORR:
        return scaled_corr(x, y)
    # single product: first x*y term times both normalizers
    denom = math.sqrt(float(np.dot(x, x)) * float(np.dot(y, y)))
    return float(x[0] * y[0]) * n ** 2 / denom


def _simulate_range(args: tuple[dict, int, int]) -> np.ndarray:
    cfg_dict, start, stop = args
    cfg = SimulationConfig.from_dict(cfg_dict)
    out = np.empty(stop - start)
    for k in range(start, stop):
        out[k - start] = _replication_value(cfg.statistic, cfg.n, replication_stream(cfg.master_seed, k))
    return out


@dataclass
class RawSamples:
    """Handle to the per-replication statistic values, in replication order."""

    values: np.ndarray

    def spill(self, path) -> int:
        """Write as a flat little-endian float64 file; returns the count."""
        self.values.astype("<f8").tofile(path)
        return int(self.values.size)

    @staticmethod
    def load(path, count: int) -> "RawSamples":
        return RawSamples(np.fromfile(path, dtype="<f8", count=count))


def run_simulation(
    cfg: SimulationConfig,
    workers: int = 1,
    spill_path=None,
) -> tuple[Histogram, RawSamples]:
    """Replicated draws of the configured statistic.

    Deterministic for a given config at any ``workers`` count.  If the
    replication count exceeds SPILL_THRESHOLD and ``spill_path`` is given,
    values are memory-mapped to that file (little-endian float64) instead
    of held in RAM.
    """
    reps = cfg.replications
    if spill_path is not None and reps > SPILL_THRESHOLD:
        values = np.memmap(spill_path, dtype="<f8", mode="w+", shape=(reps,))
    else:
        values = np.empty(reps)

    chunk = max(1, min(50_000, math.ceil(reps / max(workers, 1))))
    ranges = [(cfg.to_dict(), start, min(start + chunk, reps)) for start in range(0, reps, chunk)]
    if workers > 1 and len(ranges) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for (_, start, stop), part in zip(ranges, pool.map(_simulate_range, ranges)):
                values[start:stop] = part
    else:
        for item in ranges:
            values[item[1]:item[2]] = _simulate_range(item)

    hist = Histogram.from_values(np.asarray(values), cfg.binning)
    return hist, RawSamples(np.asarray(values))


# ---------------------------------------------------------------------------
# goodness of fit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KsResult:
    statistic: float
    sample_size: int


def ks_test(sample: np.ndarray, model_cdf) -> KsResult:
    """Exact one-sample Kolmogorov-Smirnov sup-distance.

    ``model_cdf`` must accept an ascending numpy array and return CDF values.
    """
    sample = np.sort(np.asarray(sample, dtype=float))
    n = sample.size
    if n < 10:
        raise DomainError(f"KS test requires at least 10 points, got {n}")
    f = np.asarray(model_cdf(sample), dtype=float)
    i = np.arange(1, n + 1)
    d_plus = float(np.max(i / n - f))
    d_minus = float(np.max(f - (i - 1) / n))
    return KsResult(max(d_plus, d_minus), n)


def chi2_against_binned(hist: Histogram, model_cdf) -> tuple[float, int]:
    """Pearson chi-square of the in-range bins against model bin probabilities.

    Expected counts are total * [F(edge_{i+1}) - F(edge_i)]; dof is the
    number of bins minus one.
    """
    edges = hist.edges()
    f = np.asarray(model_cdf(edges), dtype=float)
    probs = np.diff(f)
    if np.any(probs <= 0.0):
        raise DomainError("model assigns nonpositive probability to a bin")
    expected = hist.total * probs
    chi2 = float(np.sum((hist.counts - expected) ** 2 / expected))
    return chi2, hist.counts.size - 1


@dataclass(frozen=True)
class GofReport:
    """KS and chi-square statistics binding an empirical sample to a model CDF."""

    ks_statistic: float
    ks_sample_size: int
    chi2_statistic: float
    chi2_dof: int
    model: str
    config: SimulationConfig


def gof_report(hist: Histogram, raw: RawSamples, model_cdf, model_label: str,
               cfg: SimulationConfig) -> GofReport:
    ks = ks_test(raw.values, model_cdf)
    chi2, dof = chi2_against_binned(hist, model_cdf)
    return GofReport(ks.statistic, ks.sample_size, chi2, dof, model_label, cfg)


# ---------------------------------------------------------------------------
# empirical independence diagnostic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IndependenceReport:
    """Spearman rank correlations of the numerator/normalizer triple.

    Per replication: T = sum(x y)/(n ln n), U1 = n/sqrt(sum x^2),
    U2 = n/sqrt(sum y^2).  Rank correlations are used because T has no
    finite moments; values near 0 support treating the factors as
    independent.
    """

    spearman_abs_t_u1: float
    spearman_abs_t_u2: float
    spearman_u1_u2: float
    n: int
    replications: int
    master_seed: int

    def max_abs(self) -> float:
        return max(abs(self.spearman_abs_t_u1), abs(self.spearman_abs_t_u2),
                   abs(self.spearman_u1_u2))


def independence_diagnostic(cfg: SimulationConfig) -> IndependenceReport:
    """Rank-correlation report for (|T|, U1), (|T|, U2), (U1, U2)."""
    reps = cfg.replications
    n = cfg.n
    log_n = math.log(n)
    t = np.empty(reps)
    u1 = np.empty(reps)
    u2 = np.empty(reps)
    for k in range(reps):
        rng = replication_stream(cfg.master_seed, k)
        x = sample_cauchy(n, rng)
        y = sample_cauchy(n, rng)
        t[k] = float(np.dot(x, y)) / (n * log_n)
        u1[k] = n / math.sqrt(float(np.dot(x, x)))
        u2[k] = n / math.sqrt(float(np.dot(y, y)))
    return IndependenceReport(
        spearman_abs_t_u1=float(spearmanr(np.abs(t), u1).statistic),
        spearman_abs_t_u2=float(spearmanr(np.abs(t), u2).statistic),
        spearman_u1_u2=float(spearmanr(u1, u2).statistic),
        n=n,
        replications=reps,
        master_seed=cfg.master_seed,
    )
