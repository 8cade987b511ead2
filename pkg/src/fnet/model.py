"""Semantic model of function nets, views, and mode machines.

All values are immutable after construction; queries are pure functions.
Source spans are carried for diagnostics but excluded from structural
equality, so a reparsed pretty-print compares equal to the original.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union


@dataclass(frozen=True)
class SourceSpan:
    file: str = "<builtin>"
    line: int = 1
    column: int = 1
    length: int = 0

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


NO_SPAN = SourceSpan()


@dataclass(frozen=True, init=False)
class BlockPath:
    """Dotted root-to-node path, e.g. ``left.LockCtrl``."""

    segments: tuple[str, ...]

    def __init__(self, segments: Iterable[str]):
        segs = tuple(segments)
        if not segs:
            raise ValueError("block path needs at least one segment")
        object.__setattr__(self, "segments", segs)

    @classmethod
    def parse(cls, text: str) -> "BlockPath":
        return cls(text.split("."))

    @property
    def name(self) -> str:
        return self.segments[-1]

    @property
    def parent(self) -> "BlockPath | None":
        if len(self.segments) == 1:
            return None
        return BlockPath(self.segments[:-1])

    def child(self, name: str) -> "BlockPath":
        return BlockPath(self.segments + (name,))

    def is_prefix_of(self, other: "BlockPath") -> bool:
        return (
            len(self.segments) <= len(other.segments)
            and other.segments[: len(self.segments)] == self.segments
        )

    def __str__(self) -> str:
        return ".".join(self.segments)

    def __lt__(self, other: "BlockPath") -> bool:
        return self.segments < other.segments


# Block stereotypes (views only).
STEREO_NONE = ""
STEREO_EXT = "ext"
STEREO_ENV = "env"

# Connector stereotypes (views only): mechanical / hydraulic / electrical.
CONNECTOR_STEREOTYPES = ("M", "H", "E")


@dataclass(frozen=True)
class Connector:
    """Directed signal edge between two block paths."""

    source: BlockPath
    target: BlockPath
    signal: str | None = None
    stereotype: str = ""
    span: SourceSpan = field(default=NO_SPAN, compare=False)

    def describe(self) -> str:
        text = f"{self.source} -> {self.target}"
        if self.signal is not None:
            text += f" : {self.signal}"
        return text


@dataclass(frozen=True)
class BlockNode:
    """A node in a block hierarchy.

    ``kind`` is ``plain`` or ``instance``; instances carry a ``def_ref``
    and never declare children of their own.
    """

    name: str
    kind: str = "plain"
    def_ref: str | None = None
    children: tuple["BlockNode", ...] = ()
    stereotype: str = STEREO_NONE
    span: SourceSpan = field(default=NO_SPAN, compare=False)

    @property
    def is_instance(self) -> bool:
        return self.kind == "instance"


@dataclass(frozen=True)
class BlockDef:
    """Reusable block definition; connectors are relative to the def body."""

    name: str
    children: tuple[BlockNode, ...] = ()
    connectors: tuple[Connector, ...] = ()
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True, eq=True)
class FunctionNet:
    """The complete function net: one rooted block forest plus connectors.

    Connector endpoint paths are absolute (root-to-node); connectors
    written inside a nested block are hoisted by the parser.
    """

    name: str
    defs: dict[str, BlockDef] = field(default_factory=dict)
    roots: tuple[BlockNode, ...] = ()
    connectors: tuple[Connector, ...] = ()
    span: SourceSpan = field(default=NO_SPAN, compare=False)


VIEW_KINDS = ("feature", "variant", "mode", "generic")


@dataclass(frozen=True)
class ViewDoc:
    """A view diagram: subset hierarchy with optional ext/env context."""

    name: str
    target_net: str
    kind: str = "generic"
    roots: tuple[BlockNode, ...] = ()
    connectors: tuple[Connector, ...] = ()
    span: SourceSpan = field(default=NO_SPAN, compare=False)


# --- mode machines -------------------------------------------------------


@dataclass(frozen=True)
class Fault:
    signal: str


@dataclass(frozen=True)
class Event:
    name: str


@dataclass(frozen=True)
class Not:
    operand: "TriggerExpr"


@dataclass(frozen=True)
class And:
    terms: tuple["TriggerExpr", ...]


@dataclass(frozen=True)
class Or:
    terms: tuple["TriggerExpr", ...]


TriggerExpr = Union[Fault, Event, Not, And, Or]


def trigger_faults(expr: TriggerExpr) -> Iterator[str]:
    """Yield every signal named by a fault() atom, in syntactic order."""
    if isinstance(expr, Fault):
        yield expr.signal
    elif isinstance(expr, Not):
        yield from trigger_faults(expr.operand)
    elif isinstance(expr, (And, Or)):
        for term in expr.terms:
            yield from trigger_faults(term)


@dataclass(frozen=True)
class ModeBinding:
    """What a mode shows: the complete net (view=None) or a named view."""

    view: str | None = None
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Transition:
    source: str
    target: str
    trigger: TriggerExpr
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class ModeMachine:
    name: str
    target_net: str
    modes: dict[str, ModeBinding] = field(default_factory=dict)
    initial: str = ""
    transitions: tuple[Transition, ...] = ()
    span: SourceSpan = field(default=NO_SPAN, compare=False)


# --- groupings -----------------------------------------------------------


@dataclass(frozen=True)
class ViewRef:
    """Reference to a view by name, with the referencing location."""

    name: str
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class VariantGroup:
    name: str
    target_net: str
    members: tuple[ViewRef, ...] = ()
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class FeaturesDecl:
    target_net: str
    members: tuple[ViewRef, ...] = ()
    span: SourceSpan = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Model:
    """One complete function net plus its views, machines, and groupings."""

    net: FunctionNet
    views: dict[str, ViewDoc] = field(default_factory=dict)
    machines: dict[str, ModeMachine] = field(default_factory=dict)
    variant_groups: dict[str, VariantGroup] = field(default_factory=dict)
    feature_views: tuple[ViewRef, ...] = ()


Document = Union[FunctionNet, ViewDoc, ModeMachine, VariantGroup, FeaturesDecl]


def walk_blocks(
    roots: Iterable[BlockNode], prefix: tuple[str, ...] = ()
) -> Iterator[tuple[tuple[str, ...], BlockNode]]:
    """Depth-first (path, node) pairs over a block forest, source order."""
    for node in roots:
        path = prefix + (node.name,)
        yield path, node
        yield from walk_blocks(node.children, path)


def net_signals(net: FunctionNet) -> set[str]:
    """All signal names carried by connectors of the net and its defs."""
    signals = {c.signal for c in net.connectors if c.signal is not None}
    for blockdef in net.defs.values():
        signals |= {c.signal for c in blockdef.connectors if c.signal is not None}
    return signals
