"""Canonical pretty-printer for models.

parse(print(m)) is structurally equal to m, and print is byte-idempotent:
documents are emitted category by category (defs, blocks, connectors) with
declaration order preserved inside each category, 2-space indents, one
connector per line, LF line endings.
"""

from __future__ import annotations

from .model import (
    And,
    BlockDef,
    BlockNode,
    Connector,
    Document,
    Event,
    Fault,
    FeaturesDecl,
    FunctionNet,
    Model,
    ModeMachine,
    Not,
    Or,
    TriggerExpr,
    VariantGroup,
    ViewDoc,
)

INDENT = "  "


def _block_lines(node: BlockNode, depth: int, out: list[str]) -> None:
    pad = INDENT * depth
    if node.is_instance:
        out.append(f"{pad}use {node.name}: {node.def_ref};")
        return
    prefix = f"{node.stereotype} " if node.stereotype else ""
    if node.children:
        out.append(f"{pad}{prefix}block {node.name} {{")
        for child in node.children:
            _block_lines(child, depth + 1, out)
        out.append(f"{pad}}}")
    else:
        out.append(f"{pad}{prefix}block {node.name};")


def _connector_line(conn: Connector, depth: int) -> str:
    arrow = f"-[{conn.stereotype}]->" if conn.stereotype else "->"
    line = f"{INDENT * depth}{conn.source} {arrow} {conn.target}"
    if conn.signal is not None:
        line += f" : {conn.signal}"
    return line + ";"


def print_trigger(expr: TriggerExpr) -> str:
    if isinstance(expr, Fault):
        return f"fault({expr.signal})"
    if isinstance(expr, Event):
        return expr.name
    if isinstance(expr, Not):
        return f"not {print_trigger(expr.operand)}"
    if isinstance(expr, And):
        return " and ".join(print_trigger(t) for t in expr.terms)
    if isinstance(expr, Or):
        return " or ".join(print_trigger(t) for t in expr.terms)
    raise TypeError(f"not a trigger expression: {expr!r}")


def _print_def(blockdef: BlockDef, out: list[str]) -> None:
    out.append(f"{INDENT}def {blockdef.name} {{")
    for child in blockdef.children:
        _block_lines(child, 2, out)
    for conn in blockdef.connectors:
        out.append(_connector_line(conn, 2))
    out.append(f"{INDENT}}}")


def print_document(doc: Document) -> str:
    out: list[str] = []
    if isinstance(doc, FunctionNet):
        out.append(f"net {doc.name} {{")
        for blockdef in doc.defs.values():
            _print_def(blockdef, out)
        for root in doc.roots:
            _block_lines(root, 1, out)
        for conn in doc.connectors:
            out.append(_connector_line(conn, 1))
        out.append("}")
    elif isinstance(doc, ViewDoc):
        kind = f" {doc.kind}" if doc.kind != "generic" else ""
        out.append(f"view {doc.name}{kind} for {doc.target_net} {{")
        for root in doc.roots:
            _block_lines(root, 1, out)
        for conn in doc.connectors:
            out.append(_connector_line(conn, 1))
        out.append("}")
    elif isinstance(doc, ModeMachine):
        out.append(f"modes {doc.name} for {doc.target_net} {{")
        for mode_name, binding in doc.modes.items():
            prefix = "initial " if mode_name == doc.initial else ""
            uses = "complete" if binding.view is None else f"view {binding.view}"
            out.append(f"{INDENT}{prefix}mode {mode_name} uses {uses};")
        for trans in doc.transitions:
            out.append(
                f"{INDENT}{trans.source} -> {trans.target} "
                f"when {print_trigger(trans.trigger)};"
            )
        out.append("}")
    elif isinstance(doc, VariantGroup):
        out.append(f"variants {doc.name} for {doc.target_net} {{")
        for member in doc.members:
            out.append(f"{INDENT}variant {member.name};")
        out.append("}")
    elif isinstance(doc, FeaturesDecl):
        out.append(f"features for {doc.target_net} {{")
        for member in doc.members:
            out.append(f"{INDENT}feature {member.name};")
        out.append("}")
    else:
        raise TypeError(f"not a document: {doc!r}")
    return "\n".join(out) + "\n"


def print_model(model: Model) -> str:
    """Canonical text of the whole model: net, views, machines, groups."""
    docs: list[Document] = [model.net]
    docs.extend(model.views.values())
    docs.extend(model.machines.values())
    docs.extend(model.variant_groups.values())
    if model.feature_views:
        docs.append(
            FeaturesDecl(
                target_net=model.net.name, members=model.feature_views
            )
        )
    return "\n".join(print_document(doc) for doc in docs)
