"""Random-matrix analysis of financial cross-correlations.

The pipeline: load a price panel, take normalized log-returns, build the
equal-time correlation matrix, compare its spectrum against the pure-noise
eigenvalue band, split significant eigenvectors into sign-defined subsectors,
and measure the anti-correlation between the two sides of each split.
A synthetic market generator with planted block structure closes the loop
for end-to-end validation.
"""

from .anticorr import (
    AnticorrReport,
    BaselineStats,
    BlockAverages,
    CrossCorrelation,
    ModeScanRow,
    SkippedMode,
    block_averages,
    cross_corr_pm,
    eigenmode_correlation,
    mode_scan,
    random_baseline,
    report_to_dict,
    subsector_series,
    write_report_json,
    write_scan_delimited,
)
from .corrmatrix import (
    CorrelationMatrix,
    EigenSpectrum,
    correlation_matrix,
    eigendecompose,
    load_matrix,
    mean_offdiagonal,
    save_matrix,
)
from .exceptions import (
    ConfigurationError,
    DataError,
    DomainError,
    EigensectorsError,
    InsufficientDataError,
    NumericalError,
    ParseError,
    ValidationError,
    ZeroVarianceError,
)
from .rmt import (
    SignificantSet,
    WishartLaw,
    mp_bounds,
    mp_cdf,
    mp_density,
    significant_eigenvalues,
)
from .sectors import (
    DEFAULT_INDEX_THRESHOLDS,
    DEFAULT_STOCK_THRESHOLDS,
    LabelReport,
    SectorRow,
    SubsectorPartition,
    is_single_signed,
    label_subsector,
    sector_table,
    select_components,
)
from .synth import (
    BlockSpec,
    GroundTruth,
    MarketSpec,
    generate,
    load_market_spec,
    metadata_from_truth,
    population_correlation,
    prices_from_returns,
    write_panel_wide,
)
from .timeseries import (
    NormalizedReturns,
    PricePanel,
    ReturnMatrix,
    ShiftRule,
    align_calendar,
    drop_assets,
    forward_fill,
    load_metadata,
    load_prices,
    log_returns,
    normalize_returns,
    trim_to_common_range,
    zero_variance_assets,
)

__version__ = "0.1.0"

__all__ = [
    "AnticorrReport",
    "BaselineStats",
    "BlockAverages",
    "BlockSpec",
    "ConfigurationError",
    "CorrelationMatrix",
    "CrossCorrelation",
    "DEFAULT_INDEX_THRESHOLDS",
    "DEFAULT_STOCK_THRESHOLDS",
    "DataError",
    "DomainError",
    "EigenSpectrum",
    "EigensectorsError",
    "GroundTruth",
    "InsufficientDataError",
    "LabelReport",
    "MarketSpec",
    "ModeScanRow",
    "NormalizedReturns",
    "NumericalError",
    "ParseError",
    "PricePanel",
    "ReturnMatrix",
    "SectorRow",
    "ShiftRule",
    "SignificantSet",
    "SkippedMode",
    "SubsectorPartition",
    "ValidationError",
    "WishartLaw",
    "ZeroVarianceError",
    "align_calendar",
    "block_averages",
    "correlation_matrix",
    "cross_corr_pm",
    "drop_assets",
    "eigendecompose",
    "eigenmode_correlation",
    "forward_fill",
    "generate",
    "is_single_signed",
    "label_subsector",
    "load_market_spec",
    "load_matrix",
    "load_metadata",
    "load_prices",
    "log_returns",
    "mean_offdiagonal",
    "metadata_from_truth",
    "mode_scan",
    "mp_bounds",
    "mp_cdf",
    "mp_density",
    "normalize_returns",
    "population_correlation",
    "prices_from_returns",
    "random_baseline",
    "report_to_dict",
    "save_matrix",
    "sector_table",
    "select_components",
    "significant_eigenvalues",
    "subsector_series",
    "trim_to_common_range",
    "write_panel_wide",
    "write_report_json",
    "write_scan_delimited",
    "zero_variance_assets",
]
