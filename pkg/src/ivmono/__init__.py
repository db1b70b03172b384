"""Interval arithmetic, admissible orders and monotonicity checks for interval-valued functions."""

__version__ = "0.1.0"

from .checks import (CheckResult, DegenerateVec, RealPairs, SamplingConfig, Status, UniformShift,
                     check_directional_adm, check_directional_km, check_g_weak, check_g_weak_scalar,
                     check_increasing, check_weak_adm, check_weak_km, feasible_max_shift, replay)
from .dsl import parse
from .errors import (ArityError, BadParams, ConstructionError, DirectionError, DomainError,
                     ExprSyntaxError, GContractError, RangeError, UnknownBuiltin)
from .functions import IVFunction, builtin, eval_function, scalar_lift
from .interval import Interval, add, mul_pos, opposite, scale, sub
from .orders import OrderRelation, OrderSpec, cmp, get_order, is_admissible, km_compare

__all__ = [
    "Interval", "add", "opposite", "sub", "mul_pos", "scale",
    "OrderRelation", "OrderSpec", "cmp", "get_order", "is_admissible", "km_compare",
    "IVFunction", "builtin", "eval_function", "scalar_lift", "parse",
    "SamplingConfig", "Status", "CheckResult", "RealPairs", "DegenerateVec", "UniformShift",
    "feasible_max_shift", "check_increasing", "check_directional_km", "check_weak_km",
    "check_weak_adm", "check_directional_adm", "check_g_weak", "check_g_weak_scalar", "replay",
    "ArityError", "BadParams", "ConstructionError", "DirectionError", "DomainError",
    "ExprSyntaxError", "GContractError", "RangeError", "UnknownBuiltin",
]
