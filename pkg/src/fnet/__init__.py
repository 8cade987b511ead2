"""Function-net modelling toolkit.

A textual DSL for automotive logical architectures (function nets) with
views for features, variants, and modes, plus a checker for net
well-formedness and the five view-consistency conditions, variant and
trace analyses, and DOT export.
"""

from .analysis import (
    InconsistentVariantView,
    TraceReport,
    UnknownGroup,
    UnknownSubject,
    VariantReport,
    trace,
    variant_report,
)
from .consistency import check_all, check_net, check_view, identify_view
from .diagnostics import CheckReport, Diagnostic
from .dot import UnknownTarget, export_dot
from .hierarchy import (
    ExpandedNet,
    RecursiveInstantiation,
    UnknownPath,
    UnresolvedDef,
    expand,
    is_ancestor,
    is_ancestor_or_self,
    resolve,
)
from .model import (
    BlockDef,
    BlockNode,
    BlockPath,
    Connector,
    FunctionNet,
    Model,
    ModeBinding,
    ModeMachine,
    SourceSpan,
    Transition,
    VariantGroup,
    ViewDoc,
)
from .modes import DiffReport, UnknownMode, check_machine, mode_diff
from .parser import ParseError, ParseFailure, parse_file, parse_model
from .printer import print_document, print_model

__version__ = "0.1.0"

__all__ = [
    "BlockDef",
    "BlockNode",
    "BlockPath",
    "CheckReport",
    "Connector",
    "Diagnostic",
    "DiffReport",
    "ExpandedNet",
    "FunctionNet",
    "InconsistentVariantView",
    "Model",
    "ModeBinding",
    "ModeMachine",
    "ParseError",
    "ParseFailure",
    "RecursiveInstantiation",
    "SourceSpan",
    "TraceReport",
    "Transition",
    "UnknownGroup",
    "UnknownMode",
    "UnknownPath",
    "UnknownSubject",
    "UnknownTarget",
    "UnresolvedDef",
    "VariantGroup",
    "VariantReport",
    "ViewDoc",
    "check_all",
    "check_machine",
    "check_net",
    "check_view",
    "expand",
    "export_dot",
    "identify_view",
    "is_ancestor",
    "is_ancestor_or_self",
    "mode_diff",
    "parse_file",
    "parse_model",
    "print_document",
    "print_model",
    "resolve",
    "trace",
    "variant_report",
]
