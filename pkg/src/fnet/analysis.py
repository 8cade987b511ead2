"""Variant coverage reports and feature/change-impact traces."""

from __future__ import annotations

from dataclasses import dataclass

from .consistency import check_view, identify_view
from .hierarchy import ExpandedNet, expand
from .model import Model, ViewDoc, trigger_faults, walk_blocks


class UnknownGroup(Exception):
    def __init__(self, group: str):
        super().__init__(f"unknown variant group '{group}'")
        self.group = group


class InconsistentVariantView(Exception):
    def __init__(self, view: str):
        super().__init__(f"variant view '{view}' is inconsistent")
        self.view = view


class UnknownSubject(Exception):
    def __init__(self, subject: str):
        super().__init__(
            f"'{subject}' is neither a block path nor a signal of the net"
        )
        self.subject = subject


def _view_elements(
    view: ViewDoc, xnet: ExpandedNet
) -> tuple[set[tuple[str, ...]], set[str]]:
    """Covered net block paths (ext/env excluded) and carried signals."""
    ident = identify_view(view, xnet)
    blocks = {
        ident[path]
        for path, node in walk_blocks(view.roots)
        if not node.stereotype and ident[path] is not None
    }
    signals = {
        conn.signal
        for conn in view.connectors
        if conn.signal is not None and not conn.stereotype
    }
    return blocks, signals


@dataclass(frozen=True)
class VariantReport:
    group: str
    per_variant: dict[str, dict[str, tuple[str, ...]]]
    common: tuple[str, ...]
    variant_specific: dict[str, tuple[str, ...]]
    uncovered: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "group": self.group,
            "per_variant": {
                name: {
                    "blocks": list(sets["blocks"]),
                    "signals": list(sets["signals"]),
                }
                for name, sets in self.per_variant.items()
            },
            "common": list(self.common),
            "variant_specific": {
                path: list(variants)
                for path, variants in self.variant_specific.items()
            },
            "uncovered": list(self.uncovered),
        }


def variant_report(group_name: str, model: Model) -> VariantReport:
    """Coverage of the complete net ("150% car") by one variant group."""
    group = model.variant_groups.get(group_name)
    if group is None:
        raise UnknownGroup(group_name)
    xnet = expand(model.net)

    member_blocks: dict[str, set[tuple[str, ...]]] = {}
    member_signals: dict[str, set[str]] = {}
    for member in group.members:
        view = model.views.get(member.name)
        if view is None or check_view(view, model.net).verdict != "consistent":
            raise InconsistentVariantView(member.name)
        blocks, signals = _view_elements(view, xnet)
        member_blocks[member.name] = blocks
        member_signals[member.name] = signals

    union: set[tuple[str, ...]] = set().union(*member_blocks.values()) \
        if member_blocks else set()
    common = (
        set.intersection(*member_blocks.values()) if member_blocks else set()
    )
    variant_specific = {
        path: tuple(
            sorted(n for n, blocks in member_blocks.items() if path in blocks)
        )
        for path in union - common
    }
    uncovered = set(xnet.paths()) - union

    return VariantReport(
        group=group_name,
        per_variant={
            name: {
                "blocks": tuple(
                    ".".join(p) for p in sorted(member_blocks[name])
                ),
                "signals": tuple(sorted(member_signals[name])),
            }
            for name in member_blocks
        },
        common=tuple(".".join(p) for p in sorted(common)),
        variant_specific={
            ".".join(path): variants
            for path, variants in sorted(variant_specific.items())
        },
        uncovered=tuple(".".join(p) for p in sorted(uncovered)),
    )


@dataclass(frozen=True)
class TraceReport:
    subject: str
    kind: str  # "block" or "signal"
    referencing_views: tuple[tuple[str, str], ...]  # (view-name, view-kind)
    referencing_machines: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "subject": self.subject,
            "kind": self.kind,
            "referencing_views": [
                {"view": name, "kind": kind}
                for name, kind in self.referencing_views
            ],
            "referencing_machines": list(self.referencing_machines),
        }


def trace(subject: str, model: Model) -> TraceReport:
    """Every view and machine that references a block path or a signal."""
    xnet = expand(model.net)
    path = tuple(subject.split("."))
    is_block = xnet.has_path(path)
    if not is_block and subject not in xnet.signals():
        raise UnknownSubject(subject)

    views: list[tuple[str, str]] = []
    for name, view in model.views.items():
        if is_block:
            ident = identify_view(view, xnet)
            if path in {p for p in ident.values() if p is not None}:
                views.append((name, view.kind))
        else:
            carried = {
                conn.signal
                for conn in view.connectors
                if conn.signal is not None and not conn.stereotype
            }
            if subject in carried:
                views.append((name, view.kind))

    referencing_view_names = {name for name, _kind in views}
    machines: list[str] = []
    for name, machine in model.machines.items():
        hit = any(
            binding.view in referencing_view_names
            for binding in machine.modes.values()
            if binding.view is not None
        )
        if not hit and not is_block:
            hit = any(
                subject in trigger_faults(trans.trigger)
                for trans in machine.transitions
            )
        if hit:
            machines.append(name)

    return TraceReport(
        subject=subject,
        kind="block" if is_block else "signal",
        referencing_views=tuple(views),
        referencing_machines=tuple(machines),
    )
