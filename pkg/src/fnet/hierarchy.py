"""Instantiation and hierarchy queries over function nets.

``expand`` replaces every instance node by a copy of its definition's
subtree under the instance name; the result carries no def references and
supports unique path resolution and ancestor queries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import (
    BlockDef,
    BlockNode,
    BlockPath,
    Connector,
    FunctionNet,
)


class ExpandError(Exception):
    pass


class RecursiveInstantiation(ExpandError):
    def __init__(self, def_name: str):
        super().__init__(f"definition '{def_name}' transitively instantiates itself")
        self.def_name = def_name


class UnresolvedDef(ExpandError):
    def __init__(self, name: str):
        super().__init__(f"unknown block definition '{name}'")
        self.name = name


class UnknownPath(Exception):
    """Raised when a path does not resolve; carries the longest good prefix."""

    def __init__(self, path: BlockPath, prefix: BlockPath | None):
        where = f" (resolved prefix '{prefix}')" if prefix else ""
        super().__init__(f"unknown path '{path}'{where}")
        self.path = path
        self.prefix = prefix


@dataclass(frozen=True)
class ExpandedBlock:
    name: str
    children: tuple["ExpandedBlock", ...] = ()


@dataclass
class ExpandedNet:
    """Fully instantiated block tree plus connectors with absolute paths."""

    name: str
    roots: tuple[ExpandedBlock, ...]
    connectors: tuple[Connector, ...]
    _index: dict[tuple[str, ...], ExpandedBlock] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        index: dict[tuple[str, ...], ExpandedBlock] = {}

        def visit(node: ExpandedBlock, prefix: tuple[str, ...]) -> None:
            path = prefix + (node.name,)
            index[path] = node
            for child in node.children:
                visit(child, path)

        for root in self.roots:
            visit(root, ())
        self._index = index

    def paths(self) -> list[tuple[str, ...]]:
        return list(self._index)

    def contains(self, path: BlockPath) -> bool:
        return path.segments in self._index

    def has_path(self, segments: tuple[str, ...]) -> bool:
        return segments in self._index

    def resolve(self, path: BlockPath) -> ExpandedBlock:
        node = self._index.get(path.segments)
        if node is None:
            prefix = None
            for n in range(len(path.segments) - 1, 0, -1):
                if path.segments[:n] in self._index:
                    prefix = BlockPath(path.segments[:n])
                    break
            raise UnknownPath(path, prefix)
        return node

    def is_ancestor(self, a: BlockPath, b: BlockPath) -> bool:
        """True iff ``a`` is a proper ancestor of ``b``."""
        self.resolve(a)
        self.resolve(b)
        return len(a.segments) < len(b.segments) and a.is_prefix_of(b)

    def is_ancestor_or_self(self, a: BlockPath, b: BlockPath) -> bool:
        self.resolve(a)
        self.resolve(b)
        return a.is_prefix_of(b)

    def signals(self) -> set[str]:
        return {c.signal for c in self.connectors if c.signal is not None}

    def as_net(self) -> FunctionNet:
        """Plain FunctionNet equivalent (no defs, no instances)."""

        def to_node(node: ExpandedBlock) -> BlockNode:
            return BlockNode(
                name=node.name, children=tuple(to_node(c) for c in node.children)
            )

        return FunctionNet(
            name=self.name,
            defs={},
            roots=tuple(to_node(r) for r in self.roots),
            connectors=self.connectors,
        )


def _expand_children(
    children: tuple[BlockNode, ...],
    defs: dict[str, BlockDef],
    prefix: tuple[str, ...],
    stack: tuple[str, ...],
    out_connectors: list[Connector],
    lenient: bool,
    problems: list[ExpandError],
) -> tuple[ExpandedBlock, ...]:
    expanded = []
    for node in children:
        path = prefix + (node.name,)
        if not node.is_instance:
            expanded.append(
                ExpandedBlock(
                    name=node.name,
                    children=_expand_children(
                        node.children, defs, path, stack, out_connectors,
                        lenient, problems,
                    ),
                )
            )
            continue
        assert node.def_ref is not None
        blockdef = defs.get(node.def_ref)
        if blockdef is None:
            err: ExpandError = UnresolvedDef(node.def_ref)
        elif node.def_ref in stack:
            err = RecursiveInstantiation(node.def_ref)
        else:
            for conn in blockdef.connectors:
                out_connectors.append(
                    Connector(
                        source=BlockPath(path + conn.source.segments),
                        target=BlockPath(path + conn.target.segments),
                        signal=conn.signal,
                        stereotype=conn.stereotype,
                        span=conn.span,
                    )
                )
            expanded.append(
                ExpandedBlock(
                    name=node.name,
                    children=_expand_children(
                        blockdef.children, defs, path, stack + (node.def_ref,),
                        out_connectors, lenient, problems,
                    ),
                )
            )
            continue
        if not lenient:
            raise err
        problems.append(err)
        expanded.append(ExpandedBlock(name=node.name))
    return tuple(expanded)


def expand(net: FunctionNet) -> ExpandedNet:
    """Fully instantiate a net.

    Raises RecursiveInstantiation or UnresolvedDef on bad instance refs.
    """
    xnet, problems = try_expand(net, lenient=False)
    assert not problems
    return xnet


def _walk_nodes(children):
    for node in children:
        yield node
        yield from _walk_nodes(node.children)


def _check_def_graph(net: FunctionNet, problems: list[ExpandError]) -> None:
    """Unresolved def refs inside defs and def-graph cycles, even for
    definitions that are never instantiated from the roots."""
    edges: dict[str, list[str]] = {}
    for name, blockdef in net.defs.items():
        refs = []
        for node in _walk_nodes(blockdef.children):
            if node.is_instance:
                if node.def_ref not in net.defs:
                    problems.append(UnresolvedDef(node.def_ref))
                else:
                    refs.append(node.def_ref)
        edges[name] = refs

    in_cycle: list[str] = []
    for start in net.defs:
        seen = set()
        frontier = list(edges.get(start, ()))
        while frontier:
            name = frontier.pop()
            if name == start:
                in_cycle.append(start)
                break
            if name in seen:
                continue
            seen.add(name)
            frontier.extend(edges.get(name, ()))
    for name in in_cycle:
        problems.append(RecursiveInstantiation(name))


def try_expand(
    net: FunctionNet, lenient: bool = True
) -> tuple[ExpandedNet, list[ExpandError]]:
    """Expand, substituting leaf nodes for broken instances when lenient."""
    problems: list[ExpandError] = []
    _check_def_graph(net, problems)
    if problems and not lenient:
        raise problems[0]
    connectors: list[Connector] = []
    roots = _expand_children(
        net.roots, net.defs, (), (), connectors, lenient, problems
    )
    return (
        ExpandedNet(
            name=net.name,
            roots=roots,
            connectors=tuple(net.connectors) + tuple(connectors),
        ),
        problems,
    )


def resolve(net: ExpandedNet, path: BlockPath) -> ExpandedBlock:
    return net.resolve(path)


def is_ancestor(net: ExpandedNet, a: BlockPath, b: BlockPath) -> bool:
    return net.is_ancestor(a, b)


def is_ancestor_or_self(net: ExpandedNet, a: BlockPath, b: BlockPath) -> bool:
    return net.is_ancestor_or_self(a, b)
