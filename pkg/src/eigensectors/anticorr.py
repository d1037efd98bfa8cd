"""Cross-correlation between a mode's positive and negative subsectors.

For a mode's sign-split partition we form the two combination series

    I_plus(t)  = sum_{i in positive} u_i r_i(t)
    I_minus(t) = sum_{j in negative} u_j r_j(t)

(signed weights) and summarize their co-movement as the raw time average
<I_plus I_minus> and its Pearson-normalized variant. The reference level is
a random-combination baseline: the same weight magnitudes, all positive,
assigned to random disjoint asset subsets of the same sizes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .corrmatrix import CorrelationMatrix, EigenSpectrum
from .exceptions import ConfigurationError, ValidationError
from .sectors import SubsectorPartition, select_components
from .timeseries import NormalizedReturns

MIN_REPORT_TRIALS = 100


@dataclass
class ModeCorrelation:
    """Rank-one contribution of one mode to the correlation matrix: lam-free outer product u u^T."""

    mode_index: int
    assets: tuple[str, ...]
    values: np.ndarray


class CrossCorrelation(NamedTuple):
    raw: float
    pearson: float


def eigenmode_correlation(spec: EigenSpectrum, alpha: int) -> ModeCorrelation:
    """Per-mode correlation structure C^(alpha)_ij = u_i u_j (unit trace, rank one)."""
    u = spec.vector(alpha)
    return ModeCorrelation(
        mode_index=alpha,
        assets=spec.assets,
        values=np.outer(u, u),
    )


def subsector_series(
    nr: NormalizedReturns,
    partition: SubsectorPartition,
    side: str,
) -> np.ndarray:
    """Combination series of one side, weighted by the signed components."""
    if partition.assets != nr.assets:
        raise ConfigurationError(
            "partition and return panel refer to different asset sets"
        )
    indices = partition.side(side)
    if not indices:
        raise ValidationError(
            f"mode {partition.mode_index} has an empty '{side}' subsector at "
            f"u_c={partition.threshold:g}; lower u_c or skip this mode"
        )
    positive = side in ("+", "positive")
    weights = partition.positive_weights if positive else partition.negative_weights
    return weights @ nr.values[list(indices), :]


def cross_corr_pm(i_plus: np.ndarray, i_minus: np.ndarray) -> CrossCorrelation:
    """Raw time-averaged product of the two series, plus the Pearson variant.

    The Pearson value is NaN when either series has zero variance; the raw
    average is always defined.
    """
    a = np.asarray(i_plus, dtype=float)
    b = np.asarray(i_minus, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ConfigurationError("series must be 1-D and equally long")
    raw = float(np.mean(a * b))
    ac = a - a.mean()
    bc = b - b.mean()
    denom = np.sqrt(np.mean(ac * ac) * np.mean(bc * bc))
    pearson = float(np.mean(ac * bc) / denom) if denom > 0.0 else float("nan")
    return CrossCorrelation(raw=raw, pearson=pearson)


@dataclass
class BaselineStats:
    """Random-combination reference distribution for one partition's shape.

    ``pearson_*`` are the headline statistics (population std over trials);
    the raw-product summaries ride along for like-for-like comparison with
    the raw cross-correlation.
    """

    pearson_mean: float
    pearson_std: float
    raw_mean: float
    raw_std: float
    n_trials: int
    seed: int | None
    pearson_samples: np.ndarray = field(repr=False)
    raw_samples: np.ndarray = field(repr=False)

    @property
    def mean(self) -> float:
        return self.pearson_mean

    @property
    def std(self) -> float:
        return self.pearson_std

    @property
    def samples(self) -> np.ndarray:
        return self.pearson_samples


def random_baseline(
    nr: NormalizedReturns,
    sizes: tuple[int, int],
    weights: tuple[Sequence[float], Sequence[float]],
    trials: int = 1000,
    seed=None,
) -> BaselineStats:
    """Correlation of two randomly drawn, disjoint, positively weighted combinations.

    Each trial draws n_plus + n_minus distinct assets uniformly, splits them
    into two groups, assigns the given weight magnitudes (made positive) to
    the groups in random order, and records the raw and Pearson correlation
    of the two series. ``seed`` may be an int or a numpy SeedSequence.
    """
    n_plus, n_minus = int(sizes[0]), int(sizes[1])
    n = nr.n_assets
    if n_plus < 1 or n_minus < 1:
        raise ConfigurationError(f"subset sizes must be >= 1, got {sizes!r}")
    if n_plus + n_minus > n:
        raise ConfigurationError(
            f"subset sizes {n_plus}+{n_minus} exceed the {n} available assets"
        )
    if trials < 1:
        raise ConfigurationError(f"trials must be >= 1, got {trials!r}")
    w_plus = np.abs(np.asarray(weights[0], dtype=float))
    w_minus = np.abs(np.asarray(weights[1], dtype=float))
    if w_plus.size != n_plus or w_minus.size != n_minus:
        raise ConfigurationError(
            f"weight multiset sizes ({w_plus.size}, {w_minus.size}) "
            f"do not match subset sizes ({n_plus}, {n_minus})"
        )
    rng = np.random.default_rng(seed)
    raw_samples = np.empty(trials)
    pearson_samples = np.empty(trials)
    values = nr.values
    for k in range(trials):
        picked = rng.choice(n, size=n_plus + n_minus, replace=False)
        series_plus = rng.permutation(w_plus) @ values[picked[:n_plus], :]
        series_minus = rng.permutation(w_minus) @ values[picked[n_plus:], :]
        raw_samples[k], pearson_samples[k] = cross_corr_pm(series_plus, series_minus)
    seed_value = seed if isinstance(seed, (int, np.integer)) else None
    return BaselineStats(
        pearson_mean=float(pearson_samples.mean()),
        pearson_std=float(pearson_samples.std()),
        raw_mean=float(raw_samples.mean()),
        raw_std=float(raw_samples.std()),
        n_trials=int(trials),
        seed=int(seed_value) if seed_value is not None else None,
        pearson_samples=pearson_samples,
        raw_samples=raw_samples,
    )


@dataclass
class ModeScanRow:
    """Cross-correlation and baseline for one scanned mode."""

    mode_index: int
    eigenvalue: float
    n_positive: int
    n_negative: int
    c_raw: float
    c_pearson: float
    baseline: BaselineStats


@dataclass
class SkippedMode:
    mode_index: int
    reason: str


@dataclass
class AnticorrReport:
    """Scan of C_plus_minus across modes, with per-mode random baselines."""

    u_c: float
    trials: int
    seed: int
    include_market_mode: bool
    n_assets: int
    n_observations: int
    rows: list[ModeScanRow]
    skipped: list[SkippedMode]

    def __post_init__(self):
        if self.trials < MIN_REPORT_TRIALS:
            raise ConfigurationError(
                f"reports need >= {MIN_REPORT_TRIALS} baseline trials, got {self.trials}"
            )


def mode_scan(
    nr: NormalizedReturns,
    spec: EigenSpectrum,
    u_c: float,
    trials: int = 1000,
    seed: int = 0,
    include_market_mode: bool = False,
) -> AnticorrReport:
    """Scan every mode with both subsectors populated at the given u_c.

    Rows come back ordered by mode index ascending; modes with an empty side
    are listed under ``skipped``. The market mode (0) is excluded by default.
    Per-mode baseline streams derive deterministically from (seed, mode).
    """
    if spec.assets != nr.assets:
        raise ConfigurationError("spectrum and return panel refer to different assets")
    if int(seed) != seed or seed < 0:
        raise ConfigurationError(f"seed must be a non-negative integer, got {seed!r}")
    seed = int(seed)
    n = spec.n_assets
    rows: list[ModeScanRow] = []
    skipped: list[SkippedMode] = []
    first = 0 if include_market_mode else 1
    for alpha in range(first, n):
        part = select_components(spec, alpha, u_c)
        n_pos, n_neg = len(part.positive), len(part.negative)
        if n_pos == 0 or n_neg == 0:
            empty = []
            if n_pos == 0:
                empty.append("positive")
            if n_neg == 0:
                empty.append("negative")
            skipped.append(
                SkippedMode(alpha, f"empty {' and '.join(empty)} side at u_c={u_c:g}")
            )
            continue
        series_plus = subsector_series(nr, part, "+")
        series_minus = subsector_series(nr, part, "-")
        c_raw, c_pearson = cross_corr_pm(series_plus, series_minus)
        baseline = random_baseline(
            nr,
            sizes=(n_pos, n_neg),
            weights=(np.abs(part.positive_weights), np.abs(part.negative_weights)),
            trials=trials,
            seed=np.random.SeedSequence([seed, alpha]),
        )
        rows.append(
            ModeScanRow(
                mode_index=alpha,
                eigenvalue=float(spec.eigenvalues[alpha]),
                n_positive=n_pos,
                n_negative=n_neg,
                c_raw=c_raw,
                c_pearson=c_pearson,
                baseline=baseline,
            )
        )
    return AnticorrReport(
        u_c=float(u_c),
        trials=int(trials),
        seed=seed,
        include_market_mode=include_market_mode,
        n_assets=n,
        n_observations=nr.n_observations,
        rows=rows,
        skipped=skipped,
    )


@dataclass
class BlockAverages:
    """Mean correlations inside and across the two subsectors.

    ``None`` marks an undefined average (a side with fewer than 2 members
    for the within averages, an empty side for the between average).
    """

    within_positive: float | None
    within_negative: float | None
    between: float | None
    n_positive: int
    n_negative: int


def block_averages(c: CorrelationMatrix, partition: SubsectorPartition) -> BlockAverages:
    """Average C_ij over within-positive, within-negative, and cross pairs."""
    if partition.assets != c.assets:
        raise ConfigurationError(
            "partition and correlation matrix refer to different asset sets"
        )
    pos = list(partition.positive)
    neg = list(partition.negative)

    def within(idx: list[int]) -> float | None:
        if len(idx) < 2:
            return None
        sub = c.values[np.ix_(idx, idx)]
        m = len(idx)
        return float((sub.sum() - np.trace(sub)) / (m * (m - 1)))

    between = None
    if pos and neg:
        between = float(c.values[np.ix_(pos, neg)].mean())
    return BlockAverages(
        within_positive=within(pos),
        within_negative=within(neg),
        between=between,
        n_positive=len(pos),
        n_negative=len(neg),
    )


def report_to_dict(report: AnticorrReport) -> dict:
    """JSON-ready dict for an AnticorrReport (deterministic layout)."""
    return {
        "u_c": report.u_c,
        "trials": report.trials,
        "seed": report.seed,
        "include_market_mode": report.include_market_mode,
        "n_assets": report.n_assets,
        "n_observations": report.n_observations,
        "modes": [
            {
                "mode": row.mode_index,
                "eigenvalue": row.eigenvalue,
                "n_positive": row.n_positive,
                "n_negative": row.n_negative,
                "c_raw": row.c_raw,
                "c_pearson": row.c_pearson,
                "baseline_pearson_mean": row.baseline.pearson_mean,
                "baseline_pearson_std": row.baseline.pearson_std,
                "baseline_raw_mean": row.baseline.raw_mean,
                "baseline_raw_std": row.baseline.raw_std,
            }
            for row in report.rows
        ],
        "skipped": [
            {"mode": s.mode_index, "reason": s.reason} for s in report.skipped
        ],
    }


def write_scan_delimited(report: AnticorrReport, path) -> None:
    """Plot-ready file: mode, C raw, C pearson, baseline mean, baseline std."""
    path = Path(path)
    lines = ["mode,c_raw,c_pearson,baseline_mean,baseline_std"]
    for row in report.rows:
        lines.append(
            f"{row.mode_index},{row.c_raw:.17g},{row.c_pearson:.17g},"
            f"{row.baseline.pearson_mean:.17g},{row.baseline.pearson_std:.17g}"
        )
    path.write_text("\n".join(lines) + "\n")


def write_report_json(report: AnticorrReport, path) -> None:
    Path(path).write_text(
        json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"
    )
