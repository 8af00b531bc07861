"""cayleyforge: length-reducing string rewriting, confluence checking,
Cayley-graph balls, and digraph isomorphism verification."""

from .cayley import (
    CayleyBall,
    Fingerprint,
    UnlabelledDigraph,
    build_ball,
    edge_target,
    export_dot,
    export_json,
    graph_invariants,
    import_ball_json,
    strip_labels,
)
from .confluence import (
    DEFAULT_SCHEMA_BOUND,
    ConfluenceReport,
    CriticalPair,
    NotConfluentError,
    certify,
    check_local_confluence,
    critical_pairs,
    instantiated_rules,
    words_equal,
)
from .isomorphism import (
    IsoCertificate,
    IsoReport,
    SearchResult,
    SeparationReport,
    find_isomorphism,
    report_json,
    separate_left_graphs,
    validate_certificate,
    verify_explicit_iso,
)
from .normal_forms import (
    ClassificationError,
    MNormalForm,
    NNormalForm,
    ab_to_cd,
    cd_to_ab,
    classify_m,
    classify_n,
    enumerate_normal_forms,
    is_um_word,
    is_un_word,
    m_to_n,
    n_to_m,
)
from .presentations import (
    BUILTIN_SYSTEMS,
    PresentationError,
    load_presentation,
    parse_presentation,
    system_m,
    system_n,
    truncated_system_m,
)
from .rewriting import (
    IncompleteSystemError,
    LengthReport,
    Match,
    ReductionStep,
    RewriteRule,
    RewritingSystem,
    RuleSchema,
    Word,
    apply_match,
    check_length_reducing,
    describe_match,
    find_matches,
    first_match,
    is_irreducible,
    normal_form,
    reduction_steps,
    single_step,
)

__version__ = "0.1.0"
