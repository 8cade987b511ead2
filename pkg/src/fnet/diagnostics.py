"""Coded findings and per-target reports."""

from __future__ import annotations

from dataclasses import dataclass

from .model import NO_SPAN, SourceSpan

ERROR = "error"
WARNING = "warning"

# The full diagnostic catalogue. PARSE covers syntax/merge errors surfaced
# through the CLI; WF* are net well-formedness, C1-C5 the view-consistency
# conditions, M* mode-machine findings, V01 a dangling variant/feature ref.
CODES = (
    "PARSE",
    "WF01", "WF02", "WF03", "WF04", "WF05",
    "C1", "C2", "C3", "C4", "C5",
    "M01", "M02", "M03", "M04",
    "V01",
)


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: str
    span: SourceSpan
    subject: str
    message: str

    def format_line(self) -> str:
        return (
            f"{self.code} {self.severity} {self.span} "
            f"{self.subject}: {self.message}"
        )

    def to_json_dict(self) -> dict:
        return {
            "code": self.code,
            "severity": self.severity,
            "file": self.span.file,
            "line": self.span.line,
            "column": self.span.column,
            "subject": self.subject,
            "message": self.message,
        }


@dataclass(frozen=True)
class CheckReport:
    target: str
    diagnostics: tuple[Diagnostic, ...] = ()

    @property
    def verdict(self) -> str:
        if any(d.severity == ERROR for d in self.diagnostics):
            return "inconsistent"
        return "consistent"

    @property
    def error_codes(self) -> list[str]:
        return [d.code for d in self.diagnostics if d.severity == ERROR]


def sort_key(diag: Diagnostic) -> tuple:
    return (diag.span.file, diag.span.line, diag.span.column, diag.code,
            diag.subject)


def make_report(target: str, diagnostics: list[Diagnostic]) -> CheckReport:
    """Report with diagnostics in stable source order."""
    return CheckReport(
        target=target, diagnostics=tuple(sorted(diagnostics, key=sort_key))
    )


def diag(
    code: str,
    severity: str,
    subject: str,
    message: str,
    span: SourceSpan = NO_SPAN,
) -> Diagnostic:
    assert code in CODES, code
    return Diagnostic(
        code=code, severity=severity, span=span, subject=subject, message=message
    )
