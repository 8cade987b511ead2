"""Static validation of mode machines and per-mode element diffs."""

from __future__ import annotations

from dataclasses import dataclass

from .consistency import check_view, identify_view
from .diagnostics import ERROR, CheckReport, Diagnostic, diag, make_report
from .hierarchy import ExpandedNet, expand
from .model import (
    Model,
    ModeBinding,
    ModeMachine,
    net_signals,
    trigger_faults,
    walk_blocks,
)


class UnknownMode(Exception):
    def __init__(self, machine: str, mode: str):
        super().__init__(f"machine '{machine}' has no mode '{mode}'")
        self.machine = machine
        self.mode = mode


def check_machine(machine: ModeMachine, model: Model) -> CheckReport:
    """Emit M01 (missing bound view), M02 (fault names an unknown signal),
    M03 (unreachable mode), M04 (bound view itself inconsistent)."""
    diags: list[Diagnostic] = []

    for mode_name, binding in machine.modes.items():
        if binding.view is None:
            continue
        view = model.views.get(binding.view)
        if view is None:
            diags.append(
                diag(
                    "M01", ERROR, mode_name,
                    f"mode '{mode_name}' binds nonexistent view "
                    f"'{binding.view}'",
                    binding.span,
                )
            )
            continue
        report = check_view(view, model.net)
        errors = report.error_codes
        if errors:
            diags.append(
                diag(
                    "M04", ERROR, mode_name,
                    f"mode '{mode_name}' binds inconsistent view "
                    f"'{binding.view}' ({len(errors)} error(s): "
                    f"{', '.join(sorted(set(errors)))})",
                    binding.span,
                )
            )

    signals = net_signals(model.net)
    for trans in machine.transitions:
        for signal in trigger_faults(trans.trigger):
            if signal not in signals:
                diags.append(
                    diag(
                        "M02", ERROR, f"{trans.source} -> {trans.target}",
                        f"fault({signal}) names a signal that occurs on no "
                        "connector of the complete net",
                        trans.span,
                    )
                )

    reachable = {machine.initial}
    frontier = [machine.initial]
    outgoing: dict[str, list[str]] = {}
    for trans in machine.transitions:
        outgoing.setdefault(trans.source, []).append(trans.target)
    while frontier:
        mode_name = frontier.pop()
        for target in outgoing.get(mode_name, ()):
            if target in machine.modes and target not in reachable:
                reachable.add(target)
                frontier.append(target)
    for mode_name, binding in machine.modes.items():
        if mode_name not in reachable:
            diags.append(
                diag(
                    "M03", ERROR, mode_name,
                    f"mode '{mode_name}' is unreachable from the initial "
                    f"mode '{machine.initial}'",
                    binding.span,
                )
            )

    return make_report(machine.name, diags)


@dataclass(frozen=True)
class DiffSide:
    blocks: tuple[str, ...]
    signals: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {"blocks": list(self.blocks), "signals": list(self.signals)}


@dataclass(frozen=True)
class DiffReport:
    machine: str
    mode_a: str
    mode_b: str
    only_in_a: DiffSide
    only_in_b: DiffSide

    def to_json_dict(self) -> dict:
        return {
            "only_in_a": self.only_in_a.to_json_dict(),
            "only_in_b": self.only_in_b.to_json_dict(),
        }


def _binding_elements(
    binding: ModeBinding, model: Model, xnet: ExpandedNet
) -> tuple[set[tuple[str, ...]], set[str]]:
    """Identified block paths and carried signals of a mode's binding."""
    if binding.view is None:
        return set(xnet.paths()), xnet.signals()
    view = model.views[binding.view]
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


def mode_diff(
    machine: ModeMachine, a: str, b: str, model: Model
) -> DiffReport:
    """Blocks and signals present in mode a's binding but not b's, and
    vice versa; a ``complete`` binding stands for the whole net."""
    for mode_name in (a, b):
        if mode_name not in machine.modes:
            raise UnknownMode(machine.name, mode_name)
    xnet = expand(model.net)
    blocks_a, signals_a = _binding_elements(machine.modes[a], model, xnet)
    blocks_b, signals_b = _binding_elements(machine.modes[b], model, xnet)

    def side(blocks: set, signals: set) -> DiffSide:
        return DiffSide(
            blocks=tuple(".".join(p) for p in sorted(blocks)),
            signals=tuple(sorted(signals)),
        )

    return DiffReport(
        machine=machine.name,
        mode_a=a,
        mode_b=b,
        only_in_a=side(blocks_a - blocks_b, signals_a - signals_b),
        only_in_b=side(blocks_b - blocks_a, signals_b - signals_a),
    )
