from .params import ArthurParameter, condition_A, rho_minus, xms_plus
from .classify import (
    Verdict,
    is_arthur_type,
    enumerate_critical_points,
    classify_critical_point,
)
