"""Certification and construction toolkit for Schur and weak Schur numbers."""

from .coloring import (
    Coloring,
    Violation,
    from_subsets,
    is_symmetric,
    min_elements,
    order_subsets,
    verify_sum_free,
    verify_weakly_sum_free,
)
from .bounds import (
    BoundsLedger,
    growth_rate,
    reproduce_tables,
    sandwich_check,
    schur_ledger,
    weak_ledger,
)
from .cnf import (
    CnfInstance,
    ModelViolation,
    decode_model,
    encode_cnf,
    parse_dimacs,
    parse_model_file,
    to_dimacs,
)
from .corpus import CORPUS, CorpusError, check_corpus, load, load_verified
from .docio import ParseError, PartitionDoc, doc_for, parse_doc, serialize_doc
from .expand import (
    ExpansionReport,
    best_additive_constant,
    compose_s_templates,
    compose_s_ws_templates,
    expand_schur,
    expand_schur_with_tail,
    expand_weak,
    expand_weak_with_tail,
    lift_weak_to_ws_template,
)
from .search import (
    IntractableSearch,
    SearchSpec,
    brute_force_schur,
    brute_force_template,
    brute_force_weak_schur,
    enumerate_colorings,
)
from .templates import STemplate, WSTemplate, verify_s_template, verify_ws_template
from .window import lam, pi

__all__ = [
    "BoundsLedger",
    "growth_rate",
    "reproduce_tables",
    "sandwich_check",
    "schur_ledger",
    "weak_ledger",
    "CnfInstance",
    "ModelViolation",
    "decode_model",
    "encode_cnf",
    "parse_dimacs",
    "parse_model_file",
    "to_dimacs",
    "CORPUS",
    "CorpusError",
    "check_corpus",
    "load",
    "load_verified",
    "ExpansionReport",
    "best_additive_constant",
    "compose_s_templates",
    "compose_s_ws_templates",
    "expand_schur",
    "expand_schur_with_tail",
    "expand_weak",
    "expand_weak_with_tail",
    "lift_weak_to_ws_template",
    "IntractableSearch",
    "SearchSpec",
    "brute_force_schur",
    "brute_force_template",
    "brute_force_weak_schur",
    "enumerate_colorings",
    "Coloring",
    "Violation",
    "from_subsets",
    "is_symmetric",
    "min_elements",
    "order_subsets",
    "verify_sum_free",
    "verify_weakly_sum_free",
    "ParseError",
    "PartitionDoc",
    "doc_for",
    "parse_doc",
    "serialize_doc",
    "STemplate",
    "WSTemplate",
    "verify_s_template",
    "verify_ws_template",
    "pi",
    "lam",
]
