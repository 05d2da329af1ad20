"""Numerical laboratory for Bessel-harmonic functions.

Builds harmonic extensions of boundary data through explicit Poisson
kernels, computes the weighted measures and maximal operators that
normalize them, and ships empirical verification suites for the interior
sup-bound inequalities and the maximal-function norm equivalence.
"""

from .backend import backend_name
from .boundary import (
    BoundaryFunction,
    constant,
    gaussian_bump,
    indicator,
    standard_family,
    sum_boundary,
    tent,
)
from .errors import (
    BesselLabError,
    ConfigError,
    NumericalError,
    QuadratureConvergenceError,
    SolverConvergenceError,
)
from .extension import (
    ConjugateGrid,
    HarmonicGrid,
    calibrate_disk_kernel,
    conjugate_via_cr,
    disk_extend,
    disk_kernel,
    halfplane_kernel,
    poisson_extend,
    poisson_values,
    residual_bessel_laplace,
    residual_stats,
)
from .geometry import (
    Interval,
    LambdaParam,
    QuarterBall,
    comparable_measures_check,
    measure_ball,
    measure_interval,
)
from .quadrature import (
    QuadratureRule,
    gamma_fn,
    gauss_jacobi,
    gauss_legendre,
    integrate,
    sine_power_rule,
    sine_weighted_rule,
)

__version__ = "0.1.0"
