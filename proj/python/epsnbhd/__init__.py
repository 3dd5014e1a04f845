"""Nowhere-smooth epsilon-neighbourhood boundaries and their raster verification."""

from ._core import *  # noqa: F401,F403
from ._core import (
    ConfigError,
    CurveSample,
    Error,
    GridSpec,
    ProfileConfig,
    RationalAngle,
    ReconstructionReport,
    WedgeRecord,
)

__version__ = "0.1.0"
