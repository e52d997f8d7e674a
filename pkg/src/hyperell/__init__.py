"""L-functions of semistable hyperelliptic curves.

Computes bad-prime inverse local factors, conductor exponents and the
conductor for curves y^2 + h(x)y = g(x) over the rationals with
everywhere-semistable reduction, expands the Dirichlet coefficients
from the Euler product by exact point counting at good primes, and
numerically verifies the conjectural completed-series symmetry,
reporting the root number. Primes whose analysis would need a field
extension are handled through user-supplied local-data overrides.
"""

from .counting import count_char2, count_cubic, count_odd
from .errors import (
    ConfigurationError,
    CurveError,
    DataIntegrityError,
    HyperellError,
    InsufficientDataError,
    InsufficientMError,
    InternalConsistencyError,
    NotSemistableError,
    NumericError,
    ParseError,
)
from .field import ExtField, PrimeField
from .fpoly import (
    FPoly,
    factor,
    gcd_poly,
    is_square,
    quad_solutions,
    reduce_mod,
    sqrt_mod,
)
from .intpoly import IntPoly, curve_rhs, disc, resultant
from .kernel import FEReport, ThetaEvaluator, phi_g, theta, verify_fe
from .lseries import (
    LSeriesData,
    choose_M,
    conductor,
    dirichlet_coefficients,
    tail_bound,
)
from .pipeline import CurveInput, Override, RunReport, run, search
from .reduction import (
    BadPrimeReport,
    CurveSpec,
    NormalizationEq,
    SingularPoint,
    analyze_bad_prime,
    analyze_p2,
    analyze_podd,
    bad_prime_candidates,
    check_semistable_p2,
    check_semistable_podd,
)
from .zeta import (
    CountVector,
    LocalFactorInv,
    ZetaNumerator,
    bad_local_factor,
    cubic_good_local_factor,
    good_local_factor,
    zeta_numerator_from_counts,
)

__version__ = "0.1.0"
