"""Temporal DRS construction and finite-model checking for a small
English fragment.

The pipeline: parse_text and resolve_pronouns turn a discourse into
clauses; build_baseline and build_split construct rival DRSs for it;
evaluate checks a DRS against a TemporalModel by embedding
enumeration; oracle_quantify answers the same quantified questions in
closed form for cross-checking.  serialize/deserialize and render_box
give machine and human readable forms.
"""

from .baseline import build_baseline
from .drs import (
    ComplexState,
    Drs,
    Duplex,
    Every,
    EventualityDescription,
    Marker,
    Often,
    Predication,
    Rel,
    RptAssign,
    Sort,
    Temporal,
    alpha_equivalent,
    check_accessibility,
    fresh_marker,
    merge,
    strip_rpt,
)
from .errors import (
    ConstructionError,
    EvaluationError,
    LexicalError,
    MergeError,
    ModelLoadError,
    ParseError,
    ResolutionError,
    TempdrtError,
    TermSyntaxError,
    UnknownWordError,
)
from .evaluate import DerivedState, EvalConfig, Verdict, evaluate
from .fragment import (
    Aspect,
    Clause,
    ParsedDiscourse,
    Sentence,
    Tense,
    parse_text,
    resolve_pronouns,
)
from .model import Interval, ModelEventuality, TemporalModel, load_model, parse_model
from .oracle import ClauseQuery, oracle_quantify
from .render import render_box
from .serial import deserialize, serialize
from .split import build_split, tc_relation
from .suite import run_suite

__version__ = "0.1.0"

__all__ = [
    "Aspect",
    "Clause",
    "ClauseQuery",
    "ComplexState",
    "ConstructionError",
    "DerivedState",
    "Drs",
    "Duplex",
    "EvalConfig",
    "EvaluationError",
    "EventualityDescription",
    "Every",
    "Interval",
    "LexicalError",
    "Marker",
    "MergeError",
    "ModelEventuality",
    "ModelLoadError",
    "Often",
    "ParseError",
    "ParsedDiscourse",
    "Predication",
    "Rel",
    "ResolutionError",
    "RptAssign",
    "Sentence",
    "Sort",
    "Temporal",
    "TemporalModel",
    "TempdrtError",
    "Tense",
    "TermSyntaxError",
    "UnknownWordError",
    "Verdict",
    "alpha_equivalent",
    "build_baseline",
    "build_split",
    "check_accessibility",
    "deserialize",
    "evaluate",
    "fresh_marker",
    "load_model",
    "merge",
    "oracle_quantify",
    "parse_model",
    "parse_text",
    "render_box",
    "resolve_pronouns",
    "run_suite",
    "serialize",
    "strip_rpt",
    "tc_relation",
    "__version__",
]
