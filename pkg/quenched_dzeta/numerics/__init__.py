from quenched_dzeta.numerics.quadrature import (
    integrate_finite,
    integrate_half_line,
    integrate_real_line,
)
from quenched_dzeta.numerics.special import (
    EULER_GAMMA,
    ein_series,
    exp_integral_e1,
    log_gamma,
)
from quenched_dzeta.numerics.summation import NeumaierSum, compensated_sum

__all__ = [
    "integrate_finite",
    "integrate_half_line",
    "integrate_real_line",
    "EULER_GAMMA",
    "ein_series",
    "exp_integral_e1",
    "log_gamma",
    "NeumaierSum",
    "compensated_sum",
]
