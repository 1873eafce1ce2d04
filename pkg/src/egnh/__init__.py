"""The exponentiated generalized Nadarajah-Haghighi (EGNH) lifetime distribution.

Distribution kernels live in :mod:`egnh.distribution`, series analytics in
:mod:`egnh.series`, likelihood fitting in :mod:`egnh.inference`,
goodness of fit in :mod:`egnh.gof` and the Monte Carlo study in
:mod:`egnh.simulation`.
"""

from .distribution import (
    DensityShape,
    EgnhParams,
    HazardShape,
    ShapeClass,
    bowley_skewness,
    cdf,
    classify_shape,
    hrf,
    log_pdf,
    moors_kurtosis,
    pdf,
    quantile,
    reverse_hrf,
    sample,
    sf,
)
from .errors import (
    BoundaryWarning,
    DataError,
    DegenerateEstimate,
    DomainError,
    EgnhError,
    IdentifiabilityWarning,
    NoConvergence,
    NonConvergence,
    QuadratureFailure,
    SeriesOracleMismatch,
    SeriesPrecisionWarning,
    SingularInformation,
    UndefinedStatistic,
)
from .sample import Sample

__version__ = "0.1.0"
