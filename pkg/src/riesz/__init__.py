"""Arbitrary-precision evaluation of the Riesz function and its generalizations R_c."""

__version__ = "0.1.0"

from .api import (  # noqa: E402
    MACLAURIN_THRESHOLD,
    QueryMethod,
    RieszQuery,
    ScanRow,
    rh_scan,
    riesz,
    riesz_derivative,
    riesz_general,
    riesz_value,
)
from .errors import (  # noqa: E402
    DomainError,
    NearMultipleZeroError,
    PlannerError,
    PrecisionError,
    RieszError,
    ZeroFormatError,
    ZeroValidationError,
)
from .providers import MOBIUS, UNIT, ZETA, CoefficientProvider, ShiftedProvider  # noqa: E402
from .series import (  # noqa: E402
    EvaluationResult,
    Method,
    SeriesParams,
    kummer_series,
    maclaurin_riesz,
    plan_truncation,
    remainder_F,
    theorem1_series,
)
from .zeros import ZeroRecord, ZeroTable, load_zeros, reconstruct_riesz  # noqa: E402

__all__ = [
    "MACLAURIN_THRESHOLD", "QueryMethod", "RieszQuery", "ScanRow", "rh_scan", "riesz",
    "riesz_derivative", "riesz_general", "riesz_value",
    "DomainError", "NearMultipleZeroError", "PlannerError", "PrecisionError", "RieszError",
    "ZeroFormatError", "ZeroValidationError",
    "MOBIUS", "UNIT", "ZETA", "CoefficientProvider", "ShiftedProvider",
    "EvaluationResult", "Method", "SeriesParams", "kummer_series", "maclaurin_riesz",
    "plan_truncation", "remainder_F", "theorem1_series",
    "ZeroRecord", "ZeroTable", "load_zeros", "reconstruct_riesz",
]
