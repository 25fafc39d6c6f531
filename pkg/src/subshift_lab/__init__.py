"""Tools for constructing and exactly analyzing low-complexity binary
S-adic subshifts: word generation, factor languages and complexity, special
words and Rauzy graphs, exact spectral recursions and eigenvalue data, the
prime-height doubling construction, and structure recovery from raw symbol
streams."""

from . import errors
from .language import (
    ComplexityProfile,
    LanguageTable,
    RauzyGraph,
    SpecialReport,
    build_table,
    complexity_profile,
    rauzy_graph,
    sft_table,
    special_words,
    stability_check,
    verify_special_accounting,
)
from .recover import RecoveryResult, recover_structure, return_words, unique_bispecial
from .sadic import (
    AdmissibilityReport,
    BlockDecomposition,
    DensityReport,
    DerivedWords,
    SadicParams,
    closed_form_complexity,
    commutation_diff_count,
    constant_params,
    derived_lengths,
    derived_words,
    shift_diff_density,
    syndetic_set,
    unique_decompose,
    validate_params,
)
from .spectrum import (
    BetaReport,
    ConvergentSeq,
    EigenvalueEstimate,
    LengthSeq,
    alpha_enclosure,
    beta_sequence,
    convergent_sequences,
    decay_ratio_bound,
    distance_bound_holds,
    eigenvalue,
    length_sequences,
    weyl_probe,
)
from .substitution import (
    AbelianMatrix,
    Substitution,
    abelian_analysis,
    compose,
    generate_from_seed,
    generate_prefix,
    generate_word,
    identity,
    make_tau,
)
from .weakmix import ExampleBuild, ExampleConfig, build_example, landmark_complexities
from .words import (
    common_power_decomposition,
    is_root,
    max_common_prefix,
    max_common_suffix,
    max_common_suffix_periodic,
    minimal_root,
    render,
    word,
)

__version__ = "0.1.0"
