"""Secrecy gain of lattices for the Gaussian wiretap channel.

Exact rational gains of extremal even unimodular lattices at y = 1, numeric
secrecy functions for lattices given by Gram matrices, Siegel-Weil lower
bounds, and the wiretap operating-point algebra with a Monte Carlo check of
Eve's correct-decision probability.
"""

from .errors import BudgetError, ConfigError, ConversionError, PrecisionError, UsageError
from .lattice import (
    Lattice,
    ThetaCoeffs,
    catalog,
    dual,
    dual_theta_via_jacobi,
    modular_theta,
    predicates,
    theta_by_enumeration,
    theta_numeric_lattice,
    volume,
)
from .modform import (
    ThetaPoly,
    bernoulli,
    convert_basis,
    delta_eval,
    delta_qexp,
    eisenstein_eval,
    eisenstein_qexp,
    exact_gain_at_one,
    extremal_theta,
    theta_poly_qexp,
)
from .qseries import QSeries, eval_series, nome_square, theta_expansion, theta_numeric
from .secrecy import (
    SecrecyResult,
    asymptotic_bound,
    secrecy_curve,
    secrecy_function,
    secrecy_gain,
    siegel_weil_bound,
)
from .wiretap import (
    WiretapConfig,
    eve_correct_prob_formula,
    monte_carlo_eve,
    operating_point_y,
    required_sigma_for_y1,
    secrecy_rate_unimodular,
)

__version__ = "0.1.0"
