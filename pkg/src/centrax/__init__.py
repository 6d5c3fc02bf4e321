"""Finite universal-algebra workbench: congruences, factor congruences,
central elements and the definability checks built on them."""

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    ProductAlgebra,
    QuotientAlgebra,
    Signature,
    make_algebra,
    product,
    quotient,
    validate_algebra,
    validate_homomorphism,
)
from .caps import Caps
from .central import (
    CentralAlgebra,
    analyze_homomorphism,
    central_elements,
    check_dp,
    check_formula_L,
    check_formula_R,
    check_lexdfc,
    check_rexdfc,
)
from .congruence import (
    Congruence,
    MaltsevChain,
    all_congruences,
    cg,
    check_zero_one,
    join,
    maltsev_witness,
    meet,
    solve_system,
)
from .errors import (
    CapExceeded,
    CentralityError,
    CentraxError,
    HomomorphismError,
    InvalidSystem,
    PremiseError,
    ValidationError,
    WitnessError,
)
from .factor import FactorPair, check_fhp, decompose, factor_pairs, factorize
from .formula import PCFormula, eval_pcformula, simple_formula
from .free import FreeAlgebra, free_algebra, synthesize_right_formula
from .transfer import codisjointness_check, pushout_quotient, stability_pushout_check

__version__ = "0.1.0"
