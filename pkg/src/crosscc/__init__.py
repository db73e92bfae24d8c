"""Exact certificates for cross central configurations of six bodies and
six vortices: rational/interval arithmetic, sparse multivariate polynomials,
Groebner bases with resource accounting, Sturm root isolation, dimension
bounds from leading terms, and end-to-end reproduction runs."""

from .certify import (
    CERTIFIED,
    EPS_SCHEDULE,
    FALSIFIED,
    INCONCLUSIVE,
    AlgebraicPointSpec,
    Certificate,
    extension_step,
    mvt_sign_bound,
    sign_at_point,
)
from .dimension import (
    ideal_dimension,
    monomial_ideal_dimension,
    monomial_ideal_dimension_bruteforce,
    plt_bound,
)
from .groebner import (
    GBOptions,
    GBStats,
    GroebnerBasis,
    InconclusiveError,
    buchberger,
    elimination_ideal,
    ideal_membership,
    leading_terms,
    read_ideal_file,
    reduce,
    s_polynomial,
    write_ideal_file,
)
from .mpoly import (
    MPoly,
    PolyMatrix,
    RingMismatchError,
    VarTable,
    exact_div,
    parse_poly,
    poly_det,
    substitute_rational,
)
from .orders import MonomialOrder, block, degrevlex, lex, parse_order
from .pipeline import (
    ReproReport,
    repro_all,
    repro_claim,
    repro_dim_shape,
    repro_example_6bp,
    repro_minor_rank,
    repro_partial_gb,
    repro_vortex,
)
from .rationals import Interval, rat, rat_to_decimal, sqrt_enclosure
from .univar import (
    SturmSequence,
    UPoly,
    count_roots,
    isolate_root,
    resultant_wrt,
    upoly_from_mpoly,
    upoly_to_mpoly,
)

__version__ = "1.0.0"
