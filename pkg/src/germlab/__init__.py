"""germlab: exact invariants of corank-1 holomorphic map germs (C^n, S) -> (C^{n+1}, 0).

Multiple point spaces via divided differences, stability and A-finiteness
verdicts, image Milnor numbers through invariant dimensions of restricted
Milnor algebras, the plane-curve delta route, and one-parameter family
analysis (goodness, excellence, conservation). All arithmetic is exact.
"""

from .errors import (
    DegenerateInputError,
    GermlabError,
    InternalInvariantError,
    JetCapError,
    NonIsolatedError,
    PolyParseError,
    ResourceCapError,
    RingMismatchError,
    SpecValidationError,
    UnsupportedCaseError,
)
from .families import (
    ConservationReport,
    FamilySample,
    FamilyVerdict,
    InstabilityFindings,
    InstabilityPoint,
    conservation_report,
    excellence_verdict,
    instability_locus,
    semicontinuity_check,
    solve_zero_dimensional,
    zero_stable_locus,
)
from .germs import (
    Branch,
    GermSpec,
    UnfoldingSpec,
    WeightData,
    build_one_param_stable_unfolding,
    fiber_germ,
    germ,
    origin_preserving_check,
    parse_germ_file,
    print_germ_file,
    source_ring,
    source_variables,
    unfolding,
    weighted_homogeneity,
)
from .ideals import (
    DEFAULT_LIMITS,
    Ideal,
    Limits,
    QuotientBasis,
    StandardBasis,
    buchberger_criterion_holds,
    colength,
    eliminate,
    groebner_basis,
    ideal,
    is_proper,
    jacobian_rank_at,
    krull_dimension,
    local_standard_basis,
    normal_form,
    normal_form_with_cofactors,
    quotient_basis,
    radical_membership,
    singular_locus_ideal,
    standard_basis,
    translate_ideal,
    with_ordering,
)
from .milnor import (
    AltMilnorTable,
    CurveInvariants,
    ImageEquation,
    MilnorAlgebra,
    alternating_sum_matches_binomial,
    averaging_operator,
    delta_invariant,
    image_equation,
    invariant_dimension,
    milnor_number,
    mu_image,
    mu_image_curve,
    mu_k_alt,
    mu_zero_via_radical,
    quasihomogeneous_milnor,
    restricted_milnor_algebra,
)
from .multipoints import (
    BranchTuple,
    DividedDifferenceSet,
    MararMondReport,
    MultiplePointSpace,
    canonical_tuples,
    divided_differences,
    dk_ideal,
    marar_mond_report,
    s_and_d,
    sigma_orbit_invariance_defect,
    verify_stable_unfolding,
)
from .rings import (
    GLOBAL_DEGREVLEX,
    LEX_ELIMINATION,
    LOCAL_NEGDEGREVLEX,
    Polynomial,
    PolyRing,
    exact_div,
    jacobian_matrix,
    local_ring,
    parse_poly,
    poly_gcd,
    ring,
    squarefree_part,
    sylvester_resultant,
)

__version__ = "0.1.0"
