from .quadrature import FourierResult, QuadratureConfig, QuadratureError, fourier_kernel, fourier_transform
from .series_probe import ProbeResult, SeriesProbeError, series_probe
from .verification import (
    ExpansionVerdict,
    OracleReport,
    expansion_verdicts,
    report_table,
    run_verification,
    verify_rate,
)
