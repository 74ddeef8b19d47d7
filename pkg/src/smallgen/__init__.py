"""Exact construction and certification of small generators of
superelliptic function-field extensions K = F_q(x)[y]/(y^m - f(x)).

The public surface:

- finite fields with deterministic moduli (gf)
- polynomial arithmetic, factorization, irreducible streams (poly)
- the curve model: places, valuations, minimal polynomials (curve)
- divisors, heights, conorms (divisor)
- Riemann-Roch spaces and dimensions (rr)
- the generator pipeline and its certificates (pipeline)
- brute-force validation oracles (oracle)
- the command-line interface (cli)
"""

from .curve import CurveModel, FFElement, INFINITY, Place, curve_new, parse_ff
from .divisor import (
    Divisor,
    base_height,
    conorm,
    height,
    height_bound_check,
    principal_divisor,
)
from .errors import (
    EnumerationCapError,
    InputError,
    PrecisionCapError,
    SearchExhaustedError,
    SmallgenError,
)
from .gf import FieldElement, FiniteField, embed, field_make, frobenius
from .oracle import (
    OracleReport,
    count_places_exhaustive,
    min_generator_exhaustive,
    rr_dim_exhaustive,
)
from .pipeline import (
    AdmissibleDivisor,
    GeneratorCertificate,
    RootSeparatedBound,
    admissible_check,
    castelnuovo_lower_bound,
    certificate_from_json,
    curve_from_input,
    find_admissible_place,
    parse_prime_power,
    place_count_lower_bound,
    small_generator,
    verify_certificate,
    weil_total_lower_bound,
)
from .poly import (
    Poly,
    RationalFunction,
    factor,
    irreducibles,
    is_irreducible,
    is_squarefree,
    parse_poly,
    roots_in,
)
from .rr import RRSpace, rr_contains, rr_dim, rr_space

__version__ = "0.1.0"

__all__ = [
    "AdmissibleDivisor",
    "CurveModel",
    "Divisor",
    "EnumerationCapError",
    "FFElement",
    "FieldElement",
    "FiniteField",
    "GeneratorCertificate",
    "INFINITY",
    "InputError",
    "OracleReport",
    "Place",
    "Poly",
    "PrecisionCapError",
    "RRSpace",
    "RationalFunction",
    "RootSeparatedBound",
    "SearchExhaustedError",
    "SmallgenError",
    "admissible_check",
    "base_height",
    "castelnuovo_lower_bound",
    "certificate_from_json",
    "conorm",
    "count_places_exhaustive",
    "curve_from_input",
    "curve_new",
    "embed",
    "factor",
    "field_make",
    "find_admissible_place",
    "frobenius",
    "height",
    "height_bound_check",
    "irreducibles",
    "is_irreducible",
    "is_squarefree",
    "min_generator_exhaustive",
    "parse_ff",
    "parse_poly",
    "parse_prime_power",
    "place_count_lower_bound",
    "principal_divisor",
    "roots_in",
    "rr_contains",
    "rr_dim",
    "rr_dim_exhaustive",
    "rr_space",
    "small_generator",
    "verify_certificate",
    "weil_total_lower_bound",
]
