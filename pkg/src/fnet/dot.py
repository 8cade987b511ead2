"""Graphviz DOT export of nets and views.

Containment becomes nested clusters, signal connectors solid labelled
edges, M/H/E stereotypes dashed labelled edges; env blocks get a double
border, ext blocks a grey fill. Output is byte-deterministic.
"""

from __future__ import annotations

from .hierarchy import expand
from .model import Connector, Model

INDENT = "  "


class UnknownTarget(Exception):
    def __init__(self, target: str):
        super().__init__(f"no net or view named '{target}'")
        self.target = target


def _node_attrs(stereotype: str) -> str:
    if stereotype == "env":
        return "shape=box, peripheries=2"
    if stereotype == "ext":
        return "shape=box, style=filled, fillcolor=lightgrey"
    return "shape=box"


def _emit_block(
    name: str,
    path: tuple[str, ...],
    children,
    stereotype: str,
    depth: int,
    out: list[str],
) -> None:
    pad = INDENT * depth
    node_id = ".".join(path)
    if children:
        cluster_id = "_".join(path)
        out.append(f'{pad}subgraph "cluster_{cluster_id}" {{')
        out.append(f'{pad}{INDENT}label="{name}";')
        out.append(f'{pad}{INDENT}"{node_id}" [label="{name}", {_node_attrs(stereotype)}];')
        for child in children:
            _emit_block(
                child.name, path + (child.name,), child.children,
                getattr(child, "stereotype", ""), depth + 1, out,
            )
        out.append(f"{pad}}}")
    else:
        out.append(f'{pad}"{node_id}" [label="{name}", {_node_attrs(stereotype)}];')


def _emit_edge(conn: Connector, out: list[str]) -> None:
    attrs = []
    if conn.stereotype:
        attrs.append(f'label="{conn.stereotype}"')
        attrs.append("style=dashed")
    elif conn.signal is not None:
        attrs.append(f'label="{conn.signal}"')
    attr_text = f" [{', '.join(attrs)}]" if attrs else ""
    out.append(f'{INDENT}"{conn.source}" -> "{conn.target}"{attr_text};')


def export_dot(model: Model, target: str) -> str:
    """Render the complete net or a named view as a DOT digraph."""
    out: list[str] = []
    if target == model.net.name:
        xnet = expand(model.net)
        out.append(f'digraph "{target}" {{')
        out.append(f"{INDENT}compound=true;")
        for root in xnet.roots:
            _emit_block(root.name, (root.name,), root.children, "", 1, out)
        for conn in xnet.connectors:
            _emit_edge(conn, out)
        out.append("}")
    elif target in model.views:
        view = model.views[target]
        out.append(f'digraph "{target}" {{')
        out.append(f"{INDENT}compound=true;")
        for root in view.roots:
            _emit_block(
                root.name, (root.name,), root.children, root.stereotype, 1, out
            )
        for conn in view.connectors:
            _emit_edge(conn, out)
        out.append("}")
    else:
        raise UnknownTarget(target)
    return "\n".join(out) + "\n"
