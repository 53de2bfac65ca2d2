"""Cone distribution functions, cone location depth and set-valued cone quantiles in the plane."""
from .depth import (
    DepthResult,
    TUKEY_SEGMENTS,
    cone_cdf,
    cone_cdf_grid,
    cone_cdf_many,
    cone_depth,
    tukey_depth,
    tukey_region,
    w_depth,
)
from .errors import (
    ConeDepthError,
    DegenerateCone,
    EmptyFile,
    EmptyInput,
    InvalidState,
    OutOfRange,
    ParseError,
    UnsupportedCone,
)
from .geometry import (
    EPS,
    ORTHANT,
    AffineMap,
    ConeV,
    DualBase,
    Halfspace,
    Point2,
    Polyhedron2,
    contains,
    dual_base,
    intersect_halfspaces,
    standardizer,
    weight_at,
)
from .quantile import QuantileResult, SweepTrace, cone_quantile, cone_quantiles, level, w_quantile
from .sweep import DataSet

__version__ = "0.1.0"
