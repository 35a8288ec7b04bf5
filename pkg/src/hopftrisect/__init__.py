"""Flat-bundle invariants of 4-manifolds from graded Hopf structures."""

__version__ = "0.1.0"

from .diagrams import (
    Coloring,
    Curve,
    DiagCrossing,
    HeegaardDiagram,
    InvalidSlide,
    NoTriangle,
    NotAStabilization,
    NotCancellablePair,
    Presentation,
    TrisectionDiagram,
    UnknownName,
    apply_handle_slide,
    apply_three_point,
    apply_two_point,
    builtin,
    conjugate_coloring,
    connected_sum,
    destabilize,
    enumerate_colorings,
    evaluate_word,
    free_reduce,
    insert_two_point,
    move_basepoint,
    pi1_presentation,
    reverse_orientation,
    stabilize,
    trisection_of_heegaard,
    validate,
    validate_coloring,
    words,
)
from .cli import InvarianceViolation, RunConfig, main
from .errors import HopfTrisectError, ParseError
from .invariants import (
    BracketAssignment,
    CointegralPair,
    ColoringInvalid,
    DegenerateNormalizer,
    GradingClash,
    IntegralBundle,
    InvariantResult,
    NoRoot,
    NotAMonodromy,
    ZeroStabilizer,
    assign_bracket_network,
    bundle_invariant,
    bundle_sum,
    bundle_table,
    heegaard_kuperberg,
    heegaard_virelizier,
    normalized_invariant,
    solve_bundle,
    solve_pair,
    trisection_bracket,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    NotAGroup,
    NotAHom,
    cyclic_group,
    dihedral_group,
    group_from_cayley,
    hom_from_map,
    identity_hom,
    trivial_group,
)
from .examples import (
    CompatibilityFailure,
    FlatBundleReport,
    FourierPairingSpec,
    HypothesisViolated,
    NotCyclic,
    d8_demo,
    d8_homs,
    example_triplet,
    fourier_pairing,
    function_coalgebra,
    function_coalgebra_cointegral,
    function_coalgebra_crossing,
    function_coalgebra_integral,
    group_algebra,
    kronecker_pairing,
    trivial_hom,
)
from .hopf import (
    AmbiguousCointegral,
    AmbiguousIntegral,
    CheckEntry,
    CheckReport,
    Cointegral,
    Crossing,
    DegeneratePairing,
    GCointegral,
    GIntegral,
    HopfGAlgebra,
    HopfGCoalgebra,
    NoCointegral,
    NoIntegral,
    check_antipode_antimorphism,
    check_cosemisimple,
    check_crossing,
    check_cyclicity,
    check_hopf_g_algebra,
    check_hopf_g_coalgebra,
    check_involutory,
    check_ladders,
    coopposite,
    dualize,
    normalize_pair,
    opposite,
    solve_cointegral,
    solve_g_cointegral,
    solve_g_integral,
)
from .io import (
    load_coloring,
    load_diagram,
    load_group,
    load_hom,
    load_structure,
    save_coloring,
    save_diagram,
    save_group,
    save_hom,
    save_structure,
)
from .pairings import (
    FundamentalLemmaReport,
    HopfGDoublet,
    HopfGTriplet,
    HopfPair,
    InvalidRMatrix,
    RMatrix,
    TUVTensors,
    build_tuv,
    check_doublet,
    check_fundamental_lemma,
    check_hopf_pair,
    check_triplet,
    check_tuv_relations,
    derived_pairs,
    drinfeld_double,
    quasitriangular_triplet,
    r_matrix,
    standard_doublet,
)
from .scalars import DEFAULT_TOL, EXACT, FLOAT
from .tensors import (
    DimensionMismatch,
    GradedTensor,
    GradingMismatch,
    Leg,
    TensorNetwork,
    contract,
    plan_contraction,
    tensor_from_matrix,
)
