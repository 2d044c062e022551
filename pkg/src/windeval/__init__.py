"""windeval: evaluation toolkit for wind-field super-resolution and
downscaling outputs.

Gridded (u, v) velocity datasets are scored for pixel fidelity (PSNR, SSIM,
MAE), spectral fidelity (radially averaged power spectral density and its
log-energy-ratio score), temporal distribution fidelity (Wasserstein-1 on
per-point wind-speed series), and downstream long-term wind-power accuracy
through a turbine power curve. Ships the coarsening/regridding/interpolation
operators needed to build matched low-/high-resolution task datasets and a
seeded synthetic-field generator for verification.
"""

from .dataset import (
    load_dataset,
    load_manifest,
    read_sample,
    write_dataset,
    write_point_series_csv,
    write_sample,
)
from .distribution import (
    Density,
    default_speed_grid,
    kde,
    scott_bandwidth,
    wasserstein1,
    write_density_csv,
)
from .errors import DataIOError, ValidationError, WindEvalError
from .fidelity import (
    DEFAULT_CONFIG,
    FidelityResult,
    MetricConfig,
    compare_fields,
    mae,
    psnr,
    ssim,
    ssim_components,
)
from .grid import (
    Field2D,
    FieldSeries,
    GridSpec,
    NormStats,
    VelocitySample,
    compute_stats,
    denormalize,
    era5_like_grid,
    extract_patch,
    extract_point_series,
    normalize,
    wind_speed,
)
from .harness import build_task, evaluate
from .power import (
    PowerCurve,
    PowerSeries,
    cumulative_power,
    default_power_curve,
    load_power_curve,
    power_difference,
    power_from_speed,
    write_power_series_csv,
)
from .report import EvalReport, emit_report, report_from_json
from .resample import (
    bicubic_upsample,
    bilinear_upsample,
    decimate,
    nearest_regrid,
    nearest_upsample,
)
from .spectral import (
    Rapsd,
    Spectrum2D,
    melr,
    power_spectrum_2d,
    rapsd,
    spectral_log_ratio,
    write_rapsd_csv,
)
from .synth import SynthConfig, synth_grf

__version__ = "0.1.0"
