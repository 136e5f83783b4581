"""Finite automata over sets of words: decision procedures, hyperregular
expressions, canonical forms, and active learning."""

from . import canon, cli, errors, fa, hfa, hre, learn, zipwords
from .canon import (
    CompletenessReport,
    canonical_equal,
    check_complete,
    permutation_closure,
    sequence_closure,
)
from .fa import Fa
from .hfa import (
    Fragment,
    Hyperword,
    Nfh,
    Quantifier,
    complement,
    contains,
    equivalent,
    format_hyperword,
    format_nfh,
    gen_hamiltonian,
    intersect,
    make_nfh,
    member,
    nonempty_exists,
    nonempty_exists_forall,
    nonempty_forall,
    parse_hyperword,
    parse_nfh,
    regular_member,
    union,
)
from .hre import HreAst, PolicyId, compile_hre, format_hre, policy
from .learn import AutomatedTeacher, LearnerConfig, ObservationTable, learn as learn_nfh
from .zipwords import (
    PAD,
    IndexSequence,
    ZipWord,
    apply_sequence,
    concat_tracks,
    is_exact_zip,
    is_legal,
    lift,
    strip_pads,
    unzip,
    zip_words,
)

__version__ = "0.1.0"

__all__ = [
    "AutomatedTeacher",
    "CompletenessReport",
    "Fa",
    "Fragment",
    "HreAst",
    "Hyperword",
    "IndexSequence",
    "LearnerConfig",
    "Nfh",
    "ObservationTable",
    "PAD",
    "PolicyId",
    "Quantifier",
    "ZipWord",
    "apply_sequence",
    "canon",
    "canonical_equal",
    "check_complete",
    "cli",
    "compile_hre",
    "complement",
    "concat_tracks",
    "contains",
    "equivalent",
    "errors",
    "fa",
    "format_hre",
    "format_hyperword",
    "format_nfh",
    "gen_hamiltonian",
    "hfa",
    "hre",
    "intersect",
    "is_exact_zip",
    "is_legal",
    "learn",
    "learn_nfh",
    "lift",
    "make_nfh",
    "member",
    "nonempty_exists",
    "nonempty_exists_forall",
    "nonempty_forall",
    "parse_hyperword",
    "parse_nfh",
    "permutation_closure",
    "policy",
    "regular_member",
    "sequence_closure",
    "strip_pads",
    "union",
    "unzip",
    "zip_words",
    "zipwords",
]
