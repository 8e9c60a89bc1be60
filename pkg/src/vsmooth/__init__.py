"""Homogeneous-cubic smoothing of concave functions that are non-smooth at 0."""

from vsmooth.functions import (
    FunctionModel,
    combine,
    make_arcsinh_sqrt,
    make_counterexample,
    make_log1p,
    make_root,
    parse_function_spec,
)
from vsmooth.smoothing import (
    CubicSmoothing,
    ShiftedBound,
    build_cubic,
    build_cubic_root,
    build_odd_extension,
    check_tdelta,
    lambda_hat,
    lambda_hat_root,
)

__version__ = "0.1.0"
