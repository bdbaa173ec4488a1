"""qpdense: certified decisions for "is the ratio set of an integral form
dense in Q_p?" with machine-checkable certificates and a brute-force
empirical probe."""

from .errors import QpdenseError
from .forms import IntegralForm, LinearSplitForm, SplitPolynomial
from .parser import format_form, parse_form
from .unipoly import (
    UniPoly,
    cyclotomic_poly,
    discriminant,
    factor_mod_p,
    resultant,
    roots_mod_p,
    squarefree_decomposition,
)
from .modular import is_prime, is_qth_power_residue, legendre_symbol
from .padic import (
    INFINITY,
    PadicApprox,
    PadicContext,
    ZpRoot,
    hensel_factor,
    hensel_lift_simple,
    simple_zero_in_zp,
    valuation,
    zp_roots,
)
from .formlab import (
    binary_linear_split,
    is_anisotropic_mod_p,
    linear_factors_mod_p,
    order_of_form,
    smooth_point_mod_p,
)
from .certificates import Certificate, DensityVerdict, Status, verify_certificate
from .spectrum import (
    ValuationSpectrum,
    obstruction_from_spectrum,
    univariate_nonvanishing_obstruction,
    valuation_spectrum,
)
from .density import DecideConfig, ScanConfig, cubic_verdict, decide, quartic_verdict, scan_primes
from .families import (
    FamilySpec,
    composite_counterexample,
    composite_not_dense_primes,
    cyclotomic_norm_form,
    cyclotomic_not_dense_primes,
    finitely_dense_checks,
    finitely_dense_f,
    finitely_dense_g,
)
from .probe import ProbeReport, quotient_probe, valuation_census

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "DecideConfig",
    "DensityVerdict",
    "FamilySpec",
    "INFINITY",
    "IntegralForm",
    "LinearSplitForm",
    "PadicApprox",
    "PadicContext",
    "ProbeReport",
    "QpdenseError",
    "ScanConfig",
    "SplitPolynomial",
    "Status",
    "UniPoly",
    "ValuationSpectrum",
    "ZpRoot",
    "binary_linear_split",
    "composite_counterexample",
    "composite_not_dense_primes",
    "cubic_verdict",
    "cyclotomic_norm_form",
    "cyclotomic_not_dense_primes",
    "cyclotomic_poly",
    "decide",
    "discriminant",
    "factor_mod_p",
    "finitely_dense_checks",
    "finitely_dense_f",
    "finitely_dense_g",
    "format_form",
    "hensel_factor",
    "hensel_lift_simple",
    "is_anisotropic_mod_p",
    "is_prime",
    "is_qth_power_residue",
    "legendre_symbol",
    "linear_factors_mod_p",
    "obstruction_from_spectrum",
    "order_of_form",
    "parse_form",
    "quartic_verdict",
    "quotient_probe",
    "resultant",
    "roots_mod_p",
    "scan_primes",
    "simple_zero_in_zp",
    "smooth_point_mod_p",
    "squarefree_decomposition",
    "univariate_nonvanishing_obstruction",
    "valuation",
    "valuation_census",
    "valuation_spectrum",
    "verify_certificate",
    "zp_roots",
]
