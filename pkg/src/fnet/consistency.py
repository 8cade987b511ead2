"""Well-formedness checking of complete nets and view consistency.

Net findings: WF01 duplicate sibling names, WF02 unresolved connector
endpoints (self-connectors are a WF02 warning), WF03 missing signal,
WF04 view-only stereotypes inside a net, WF05 recursive instantiation.

View findings C1-C5 match the five consistency conditions between a view
and its complete net; see ``check_view``.
"""

from __future__ import annotations

from .diagnostics import (
    ERROR,
    WARNING,
    CheckReport,
    Diagnostic,
    diag,
    make_report,
)
from .hierarchy import ExpandedNet, RecursiveInstantiation, try_expand
from .model import (
    STEREO_ENV,
    STEREO_EXT,
    BlockNode,
    Connector,
    FunctionNet,
    Model,
    ViewDoc,
    walk_blocks,
)

NetPath = tuple[str, ...]


# --- complete-net well-formedness ----------------------------------------


def _check_sibling_names(
    siblings: tuple[BlockNode, ...], prefix: NetPath, diags: list[Diagnostic]
) -> None:
    seen: dict[str, BlockNode] = {}
    for node in siblings:
        if node.name in seen:
            where = ".".join(prefix) or "top level"
            diags.append(
                diag(
                    "WF01", ERROR, ".".join(prefix + (node.name,)),
                    f"duplicate sibling block name '{node.name}' in {where}",
                    node.span,
                )
            )
        else:
            seen[node.name] = node
        _check_sibling_names(node.children, prefix + (node.name,), diags)


def _check_net_stereotypes(
    roots: tuple[BlockNode, ...],
    connectors: tuple[Connector, ...],
    diags: list[Diagnostic],
) -> None:
    for path, node in walk_blocks(roots):
        if node.stereotype:
            diags.append(
                diag(
                    "WF04", ERROR, ".".join(path),
                    f"stereotype '{node.stereotype}' is only allowed in views",
                    node.span,
                )
            )
    for conn in connectors:
        if conn.stereotype:
            diags.append(
                diag(
                    "WF04", ERROR, conn.describe(),
                    f"connector stereotype '{conn.stereotype}' is only "
                    "allowed in views",
                    conn.span,
                )
            )


def _check_connector_endpoints(
    xnet: ExpandedNet, diags: list[Diagnostic]
) -> None:
    for conn in xnet.connectors:
        ok = True
        for endpoint in (conn.source, conn.target):
            if not xnet.contains(endpoint):
                ok = False
                prefix = None
                for n in range(len(endpoint.segments) - 1, 0, -1):
                    if xnet.contains(type(endpoint)(endpoint.segments[:n])):
                        prefix = ".".join(endpoint.segments[:n])
                        break
                extra = f" (resolved prefix '{prefix}')" if prefix else ""
                diags.append(
                    diag(
                        "WF02", ERROR, conn.describe(),
                        f"unresolved endpoint '{endpoint}'{extra}",
                        conn.span,
                    )
                )
        if ok and conn.source == conn.target:
            diags.append(
                diag(
                    "WF02", WARNING, conn.describe(),
                    "self-connector (source equals target)",
                    conn.span,
                )
            )


def check_net(net: FunctionNet) -> CheckReport:
    """Well-formedness report for a complete function net."""
    diags: list[Diagnostic] = []
    _check_sibling_names(net.roots, (), diags)
    for blockdef in net.defs.values():
        _check_sibling_names(blockdef.children, (blockdef.name,), diags)
        _check_net_stereotypes(blockdef.children, blockdef.connectors, diags)
        for conn in blockdef.connectors:
            if conn.signal is None and not conn.stereotype:
                diags.append(
                    diag(
                        "WF03", ERROR, conn.describe(),
                        "complete-net connector must carry exactly one signal",
                        conn.span,
                    )
                )
    _check_net_stereotypes(net.roots, net.connectors, diags)
    for conn in net.connectors:
        if conn.signal is None and not conn.stereotype:
            diags.append(
                diag(
                    "WF03", ERROR, conn.describe(),
                    "complete-net connector must carry exactly one signal",
                    conn.span,
                )
            )

    xnet, problems = try_expand(net)
    seen_defs: set[str] = set()
    for problem in problems:
        if isinstance(problem, RecursiveInstantiation):
            if problem.def_name not in seen_defs:
                seen_defs.add(problem.def_name)
                diags.append(
                    diag(
                        "WF05", ERROR, problem.def_name,
                        f"definition '{problem.def_name}' transitively "
                        "instantiates itself",
                        net.defs[problem.def_name].span
                        if problem.def_name in net.defs
                        else net.span,
                    )
                )
        else:
            diags.append(
                diag(
                    "WF02", ERROR, problem.name,
                    f"unresolved block definition '{problem.name}'",
                    net.span,
                )
            )
    _check_connector_endpoints(xnet, diags)
    return make_report(net.name, diags)


# --- view identification ---------------------------------------------------


def _is_subsequence(short: NetPath, long: NetPath) -> bool:
    it = iter(long)
    return all(seg in it for seg in short)


def candidate_net_paths(view_path: NetPath, xnet: ExpandedNet) -> list[NetPath]:
    """Net nodes a view block may denote.

    An exact path match wins outright; otherwise every net path with the
    same final segment of which the view path is a subsequence is a
    candidate, and more than one candidate is an ambiguity.
    """
    if xnet.has_path(view_path):
        return [view_path]
    return [
        p
        for p in xnet.paths()
        if p[-1] == view_path[-1] and _is_subsequence(view_path, p)
    ]


def identify_view(
    view: ViewDoc, xnet: ExpandedNet
) -> dict[NetPath, NetPath | None]:
    """Map each view block path to the net node it denotes, if unique.

    env blocks never identify; ext blocks identify silently when unique.
    """
    ident: dict[NetPath, NetPath | None] = {}
    for path, node in walk_blocks(view.roots):
        if node.stereotype == STEREO_ENV:
            ident[path] = None
            continue
        cands = candidate_net_paths(path, xnet)
        ident[path] = cands[0] if len(cands) == 1 else None
    return ident


# --- view consistency -------------------------------------------------------


def check_view(view: ViewDoc, net: FunctionNet) -> CheckReport:
    """Check the five view-consistency conditions against the complete net.

    C1: unstereotyped view blocks must denote exactly one net node.
    C2: direct containment edges must hold (transitively) in the net.
    C3: net containment between two shown blocks must be shown in the view.
    C4: unstereotyped connectors must match a net connector (any signal if
        the view omits it); M/H/E connectors, env endpoints, and
        unidentified ext endpoints are exempt.
    C5: a connector endpoint may be lifted to a super-block only while the
        exact net endpoint is not itself shown in the view.
    """
    xnet, _ = try_expand(net)
    diags: list[Diagnostic] = []

    _check_sibling_names(view.roots, (), diags)

    blocks = list(walk_blocks(view.roots))
    nodes_by_path = {path: node for path, node in blocks}
    ident: dict[NetPath, NetPath | None] = {}
    for path, node in blocks:
        if node.stereotype == STEREO_ENV:
            ident[path] = None
            continue
        cands = candidate_net_paths(path, xnet)
        ident[path] = cands[0] if len(cands) == 1 else None
        if node.stereotype == STEREO_EXT:
            continue
        if not cands:
            diags.append(
                diag(
                    "C1", ERROR, ".".join(path),
                    f"block '{'.'.join(path)}' is not part of the complete "
                    f"function net '{net.name}'",
                    node.span,
                )
            )
        elif len(cands) > 1:
            diags.append(
                diag(
                    "C1", ERROR, ".".join(path),
                    f"block '{'.'.join(path)}' is ambiguous in the complete "
                    f"net ({len(cands)} candidates); give a fuller path",
                    node.span,
                )
            )

    def is_plain(path: NetPath) -> bool:
        return not nodes_by_path[path].stereotype

    # C2: every direct whole-part edge must hold transitively in the net.
    for path, node in blocks:
        if not is_plain(path) or ident[path] is None:
            continue
        for child in node.children:
            child_path = path + (child.name,)
            if not is_plain(child_path) or ident[child_path] is None:
                continue
            parent_net = ident[path]
            child_net = ident[child_path]
            if not (
                len(parent_net) < len(child_net)
                and child_net[: len(parent_net)] == parent_net
            ):
                diags.append(
                    diag(
                        "C2", ERROR,
                        f"{'.'.join(path)} / {'.'.join(child_path)}",
                        f"'{'.'.join(path)}' contains "
                        f"'{'.'.join(child_path)}' in the view but not in "
                        "the complete net",
                        child.span,
                    )
                )

    # C3: net containment between shown blocks must be shown.
    identified_plain = [
        (path, ident[path])
        for path, _node in blocks
        if is_plain(path) and ident[path] is not None
    ]
    for a_path, a_net in identified_plain:
        for b_path, b_net in identified_plain:
            if a_path == b_path:
                continue
            net_related = (
                len(a_net) < len(b_net) and b_net[: len(a_net)] == a_net
            )
            view_related = (
                len(a_path) < len(b_path)
                and b_path[: len(a_path)] == a_path
            )
            if net_related and not view_related:
                diags.append(
                    diag(
                        "C3", ERROR,
                        f"{'.'.join(a_path)} / {'.'.join(b_path)}",
                        f"'{'.'.join(a_net)}' contains '{'.'.join(b_net)}' "
                        "in the complete net but the view does not show "
                        "this relation",
                        nodes_by_path[b_path].span,
                    )
                )

    # C4/C5: connector matching.
    identified_net_nodes = {p for p in ident.values() if p is not None}

    def strict_endpoint(view_net: NetPath, net_end: NetPath) -> bool:
        if view_net == net_end:
            return True
        return (
            len(view_net) < len(net_end)
            and net_end[: len(view_net)] == view_net
            and net_end not in identified_net_nodes
        )

    def relaxed_endpoint(view_net: NetPath, net_end: NetPath) -> bool:
        return view_net == net_end or (
            len(view_net) < len(net_end)
            and net_end[: len(view_net)] == view_net
        )

    for conn in view.connectors:
        endpoints = []
        broken = False
        for endpoint in (conn.source, conn.target):
            if endpoint.segments not in nodes_by_path:
                diags.append(
                    diag(
                        "WF02", ERROR, conn.describe(),
                        f"unresolved endpoint '{endpoint}' in the view",
                        conn.span,
                    )
                )
                broken = True
            else:
                endpoints.append(endpoint.segments)
        if broken:
            continue
        if conn.source == conn.target:
            diags.append(
                diag(
                    "WF02", WARNING, conn.describe(),
                    "self-connector (source equals target)",
                    conn.span,
                )
            )
        if conn.stereotype:
            continue
        src_path, tgt_path = endpoints
        exempt = False
        unidentified = False
        for endpoint_path in endpoints:
            node = nodes_by_path[endpoint_path]
            if node.stereotype == STEREO_ENV:
                exempt = True
            elif ident[endpoint_path] is None:
                # ext context block outside the net: connector is exempt;
                # a plain unidentified block was already reported under C1.
                if node.stereotype == STEREO_EXT:
                    exempt = True
                else:
                    unidentified = True
        if exempt or unidentified:
            continue
        src_net = ident[src_path]
        tgt_net = ident[tgt_path]
        assert src_net is not None and tgt_net is not None

        def matches(conn_net: Connector, endpoint_rule) -> bool:
            if conn.signal is not None and conn_net.signal != conn.signal:
                return False
            return endpoint_rule(
                src_net, conn_net.source.segments
            ) and endpoint_rule(tgt_net, conn_net.target.segments)

        if any(matches(c, strict_endpoint) for c in xnet.connectors):
            continue
        if any(matches(c, relaxed_endpoint) for c in xnet.connectors):
            diags.append(
                diag(
                    "C5", ERROR, conn.describe(),
                    "connector is drawn to a super-block although the exact "
                    "net endpoint is shown in the view",
                    conn.span,
                )
            )
        else:
            diags.append(
                diag(
                    "C4", ERROR, conn.describe(),
                    "no matching communication exists in the complete "
                    "function net",
                    conn.span,
                )
            )

    return make_report(view.name, diags)


def check_all(model: Model) -> dict[str, CheckReport]:
    """Check the net, every view and machine, and grouping references.

    Reports are keyed by target name and returned sorted by name. View and
    machine checks are skipped while the net itself has errors.
    """
    from .modes import check_machine  # local import: modes uses check_view

    reports: dict[str, CheckReport] = {}
    net_report = check_net(model.net)
    reports[model.net.name] = net_report
    if net_report.verdict == "consistent":
        for name, view in model.views.items():
            reports[name] = check_view(view, model.net)
        for name, machine in model.machines.items():
            reports[name] = check_machine(machine, model)

    for group in model.variant_groups.values():
        diags = [
            diag(
                "V01", ERROR, member.name,
                f"variant '{member.name}' in group '{group.name}' does not "
                "name a view",
                member.span,
            )
            for member in group.members
            if member.name not in model.views
        ]
        reports[group.name] = make_report(group.name, diags)
    if model.feature_views:
        diags = [
            diag(
                "V01", ERROR, member.name,
                f"feature '{member.name}' does not name a view",
                member.span,
            )
            for member in model.feature_views
            if member.name not in model.views
        ]
        reports["features"] = make_report("features", diags)

    return {name: reports[name] for name in sorted(reports)}
