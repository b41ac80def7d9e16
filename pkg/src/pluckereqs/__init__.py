"""Exact generation, evaluation and verification of the quadratic
coefficient identities cutting out the Grassmannian embedding."""

from .equations import (
    CANONICAL,
    RAW,
    EquationSystem,
    Label,
    QuadraticEquation,
    QuadTerm,
    canonicalize,
    collect_terms,
    dedupe,
    gen_generalized,
    gen_plucker,
    gen_plucker_like,
    linear_combination,
    make_term,
    raw_equation,
    size_ratio,
)
from .multiindex import (
    GrassmannParams,
    MultiIndex,
    as_multiindex,
    difference,
    grassmann_codimension,
    intersection,
    inversion_pairs,
    multinomial,
    ordered_union,
    subsets_of_size,
    symmetric_difference,
)
from .pvectors import (
    GaussianRational,
    PVector,
    Residual,
    evaluate,
    is_simple,
    pvector,
    pvector_from_dict,
    pvector_from_json,
    pvector_to_dict,
    pvector_to_json,
    random_pvector,
    random_simple,
    residual,
    scaled,
    wedge,
)
from .render import (
    equation_latex,
    equation_text,
    render,
    system_from_dict,
    system_from_json,
    system_to_dict,
)
from .structure import (
    CensusReport,
    PairFamily,
    ProbeReport,
    QClass,
    VerifyReport,
    stratum_probe,
    census,
    check_pair_combine,
    check_decomposition,
    classify,
    pair_combine,
    pair_families,
    one_index_decomposition,
    verify_structure,
)

__version__ = "0.1.0"
