"""Recursive descent parser for .fnet sources.

Recovers from syntax errors by resynchronising on ``;`` / ``}`` (inside a
document body) or on the next document keyword (at top level), so one run
reports every independent error. ``parse_model`` merges the documents of
all given files into a single Model.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lexer import LexError, Token, tokenize
from .model import (
    And,
    BlockDef,
    BlockNode,
    BlockPath,
    Connector,
    Document,
    Event,
    Fault,
    FeaturesDecl,
    FunctionNet,
    Model,
    ModeBinding,
    ModeMachine,
    Not,
    Or,
    SourceSpan,
    Transition,
    TriggerExpr,
    VariantGroup,
    ViewDoc,
    ViewRef,
)

DOCUMENT_KEYWORDS = ("net", "view", "modes", "variants", "features")


@dataclass(frozen=True)
class ParseError:
    span: SourceSpan
    expected: str
    found: str

    @property
    def message(self) -> str:
        return f"expected {self.expected}, found {self.found}"

    def __str__(self) -> str:
        return f"{self.span}: {self.message}"


class ParseFailure(Exception):
    """Raised by parse_model when any file has errors."""

    def __init__(self, errors: list[ParseError]):
        super().__init__("; ".join(str(e) for e in errors))
        self.errors = list(errors)


class _Bail(Exception):
    """Internal: unwind to the nearest recovery point."""


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.errors: list[ParseError] = []

    # -- token plumbing ----------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.type != "EOF":
            self.pos += 1
        return tok

    def at(self, ttype: str, value: str | None = None) -> bool:
        tok = self.peek()
        return tok.type == ttype and (value is None or tok.value == value)

    def at_keyword(self, *words: str) -> bool:
        tok = self.peek()
        return tok.type == "KEYWORD" and tok.value in words

    def _describe(self, tok: Token) -> str:
        if tok.type == "EOF":
            return "end of input"
        return f"'{tok.value}'"

    def error(self, expected: str) -> _Bail:
        tok = self.peek()
        self.errors.append(ParseError(tok.span, expected, self._describe(tok)))
        return _Bail()

    def expect(self, ttype: str, expected: str | None = None) -> Token:
        if self.at(ttype):
            return self.advance()
        raise self.error(expected or f"'{ttype}'")

    def expect_keyword(self, word: str) -> Token:
        if self.at_keyword(word):
            return self.advance()
        raise self.error(f"'{word}'")

    def expect_ident(self, what: str = "identifier") -> Token:
        if self.at("IDENT"):
            return self.advance()
        raise self.error(what)

    _MEMBER_START = frozenset(
        {"block", "use", "ext", "env", "def", "initial", "mode",
         "variant", "feature"}
    )

    def skip_to_member_end(self, start_pos: int) -> None:
        """Recovery inside a body: skip past ';' or stop before '}' or the
        next member-start keyword.

        ``start_pos`` is where the failed member parse began; when the
        parser has not moved since then, at least one token is consumed so
        recovery always makes progress.
        """
        depth = 0
        while True:
            tok = self.peek()
            if tok.type == "EOF":
                return
            if tok.type == "{":
                depth += 1
            elif tok.type == "}":
                if depth == 0:
                    return
                depth -= 1
            elif tok.type == ";" and depth == 0:
                self.advance()
                return
            elif (
                self.pos > start_pos
                and depth == 0
                and tok.type == "KEYWORD"
                and tok.value in self._MEMBER_START
            ):
                return
            self.advance()

    def skip_to_document(self) -> None:
        while not (self.at("EOF") or self.at_keyword(*DOCUMENT_KEYWORDS)):
            self.advance()

    # -- grammar -----------------------------------------------------------

    def parse_documents(self) -> list[Document]:
        docs: list[Document] = []
        if self.at("EOF"):
            self.error("'net', 'view', 'modes', 'variants' or 'features'")
            return docs
        while not self.at("EOF"):
            try:
                if self.at_keyword("net"):
                    docs.append(self.parse_net())
                elif self.at_keyword("view"):
                    docs.append(self.parse_view())
                elif self.at_keyword("modes"):
                    docs.append(self.parse_modes())
                elif self.at_keyword("variants"):
                    docs.append(self.parse_variants())
                elif self.at_keyword("features"):
                    docs.append(self.parse_features())
                else:
                    raise self.error(
                        "'net', 'view', 'modes', 'variants' or 'features'"
                    )
            except _Bail:
                self.advance()
                self.skip_to_document()
        return docs

    def parse_net(self) -> FunctionNet:
        span = self.expect_keyword("net").span
        name = self.expect_ident("net name").value
        self.expect("{")
        defs: dict[str, BlockDef] = {}
        roots: list[BlockNode] = []
        connectors: list[Connector] = []
        while not (self.at("}") or self.at("EOF")):
            start = self.pos
            try:
                if self.at_keyword("def"):
                    blockdef = self.parse_def()
                    if blockdef.name in defs:
                        self.errors.append(
                            ParseError(
                                blockdef.span,
                                "a unique definition name",
                                f"duplicate definition '{blockdef.name}'",
                            )
                        )
                    else:
                        defs[blockdef.name] = blockdef
                else:
                    self.parse_member(roots, connectors, (), in_view=False)
            except _Bail:
                self.skip_to_member_end(start)
        self.expect("}")
        return FunctionNet(
            name=name,
            defs=defs,
            roots=tuple(roots),
            connectors=tuple(connectors),
            span=span,
        )

    def parse_def(self) -> BlockDef:
        span = self.expect_keyword("def").span
        name = self.expect_ident("definition name").value
        self.expect("{")
        children: list[BlockNode] = []
        connectors: list[Connector] = []
        while not (self.at("}") or self.at("EOF")):
            start = self.pos
            try:
                self.parse_member(children, connectors, (), in_view=False)
            except _Bail:
                self.skip_to_member_end(start)
        self.expect("}")
        return BlockDef(
            name=name, children=tuple(children), connectors=tuple(connectors),
            span=span,
        )

    def parse_member(
        self,
        blocks: list[BlockNode],
        connectors: list[Connector],
        prefix: tuple[str, ...],
        in_view: bool,
    ) -> None:
        """One blockdecl or connector; nested connectors are hoisted with
        their enclosing block path as prefix."""
        if self.at_keyword("ext", "env"):
            stereo_tok = self.advance()
            self.expect_keyword("block")
            name_tok = self.expect_ident("block name")
            if not in_view:
                # still parsed; the checker reports WF04 with this span
                pass
            if self.at("{"):
                raise self.error(
                    f"';' ('{stereo_tok.value}' blocks may not declare children)"
                )
            self.expect(";")
            blocks.append(
                BlockNode(
                    name=name_tok.value,
                    stereotype=stereo_tok.value,
                    span=name_tok.span,
                )
            )
            return
        if self.at_keyword("block"):
            self.advance()
            name_tok = self.expect_ident("block name")
            children: list[BlockNode] = []
            if self.at("{"):
                self.advance()
                while not (self.at("}") or self.at("EOF")):
                    start = self.pos
                    try:
                        self.parse_member(
                            children, connectors,
                            prefix + (name_tok.value,), in_view,
                        )
                    except _Bail:
                        self.skip_to_member_end(start)
                self.expect("}")
            else:
                self.expect(";")
            blocks.append(
                BlockNode(
                    name=name_tok.value,
                    children=tuple(children),
                    span=name_tok.span,
                )
            )
            return
        if self.at_keyword("use"):
            use_tok = self.advance()
            if in_view:
                self.errors.append(
                    ParseError(
                        use_tok.span,
                        "'block' (views may not instantiate definitions)",
                        "'use'",
                    )
                )
                raise _Bail()
            name_tok = self.expect_ident("instance name")
            self.expect(":")
            def_tok = self.expect_ident("definition name")
            self.expect(";")
            blocks.append(
                BlockNode(
                    name=name_tok.value,
                    kind="instance",
                    def_ref=def_tok.value,
                    span=name_tok.span,
                )
            )
            return
        if self.at("IDENT"):
            connectors.append(self.parse_connector(prefix))
            return
        raise self.error("'block', 'use', 'ext', 'env' or a connector")

    def parse_path(self, prefix: tuple[str, ...]) -> BlockPath:
        first = self.expect_ident("block path")
        segments = [first.value]
        while self.at("."):
            self.advance()
            segments.append(self.expect_ident("path segment").value)
        return BlockPath(prefix + tuple(segments))

    def parse_connector(self, prefix: tuple[str, ...]) -> Connector:
        start = self.peek().span
        source = self.parse_path(prefix)
        stereotype = ""
        if self.at("-["):
            self.advance()
            tok = self.peek()
            if tok.type == "IDENT" and tok.value in ("M", "H", "E"):
                stereotype = self.advance().value
            else:
                raise self.error("'M', 'H' or 'E'")
            self.expect("]->")
        else:
            self.expect("->", "'->' or '-['")
        target = self.parse_path(prefix)
        signal: str | None = None
        if self.at(":"):
            self.advance()
            signal = self.expect_ident("signal name").value
        self.expect(";")
        return Connector(
            source=source, target=target, signal=signal,
            stereotype=stereotype, span=start,
        )

    def parse_view(self) -> ViewDoc:
        span = self.expect_keyword("view").span
        name = self.expect_ident("view name").value
        kind = "generic"
        if self.at_keyword("feature", "variant", "mode", "generic"):
            kind = self.advance().value
        self.expect_keyword("for")
        target = self.expect_ident("net name").value
        self.expect("{")
        roots: list[BlockNode] = []
        connectors: list[Connector] = []
        while not (self.at("}") or self.at("EOF")):
            start = self.pos
            try:
                self.parse_member(roots, connectors, (), in_view=True)
            except _Bail:
                self.skip_to_member_end(start)
        close = self.expect("}")
        if not roots:
            self.errors.append(
                ParseError(close.span, "at least one block in the view", "'}'")
            )
        return ViewDoc(
            name=name, target_net=target, kind=kind,
            roots=tuple(roots), connectors=tuple(connectors), span=span,
        )

    def parse_modes(self) -> ModeMachine:
        span = self.expect_keyword("modes").span
        name = self.expect_ident("machine name").value
        self.expect_keyword("for")
        target = self.expect_ident("net name").value
        self.expect("{")
        modes: dict[str, ModeBinding] = {}
        initial: str | None = None
        transitions: list[Transition] = []
        while not (self.at("}") or self.at("EOF")):
            start = self.pos
            try:
                if self.at_keyword("initial", "mode"):
                    is_initial = False
                    if self.at_keyword("initial"):
                        tok = self.advance()
                        is_initial = True
                        if initial is not None:
                            self.errors.append(
                                ParseError(
                                    tok.span,
                                    "a single initial mode",
                                    "'initial'",
                                )
                            )
                    self.expect_keyword("mode")
                    mode_tok = self.expect_ident("mode name")
                    self.expect_keyword("uses")
                    if self.at_keyword("complete"):
                        self.advance()
                        binding = ModeBinding(view=None, span=mode_tok.span)
                    elif self.at_keyword("view"):
                        self.advance()
                        view_tok = self.expect_ident("view name")
                        binding = ModeBinding(
                            view=view_tok.value, span=view_tok.span
                        )
                    else:
                        raise self.error("'complete' or 'view'")
                    self.expect(";")
                    if mode_tok.value in modes:
                        self.errors.append(
                            ParseError(
                                mode_tok.span,
                                "a unique mode name",
                                f"duplicate mode '{mode_tok.value}'",
                            )
                        )
                    else:
                        modes[mode_tok.value] = binding
                        if is_initial:
                            initial = mode_tok.value
                elif self.at("IDENT"):
                    transitions.append(self.parse_transition())
                else:
                    raise self.error("'initial', 'mode' or a transition")
            except _Bail:
                self.skip_to_member_end(start)
        close = self.expect("}")
        if initial is None:
            self.errors.append(
                ParseError(close.span, "an 'initial mode' declaration", "'}'")
            )
            initial = next(iter(modes), "")
        for trans in transitions:
            for mode_name, where in ((trans.source, trans.span),
                                     (trans.target, trans.span)):
                if mode_name not in modes:
                    self.errors.append(
                        ParseError(
                            where,
                            "a declared mode name",
                            f"'{mode_name}'",
                        )
                    )
        return ModeMachine(
            name=name, target_net=target, modes=modes,
            initial=initial, transitions=tuple(transitions), span=span,
        )

    def parse_transition(self) -> Transition:
        src = self.expect_ident("mode name")
        self.expect("->")
        tgt = self.expect_ident("mode name")
        self.expect_keyword("when")
        trigger = self.parse_or()
        self.expect(";")
        return Transition(
            source=src.value, target=tgt.value, trigger=trigger, span=src.span
        )

    def parse_or(self) -> TriggerExpr:
        terms = [self.parse_and()]
        while self.at_keyword("or"):
            self.advance()
            terms.append(self.parse_and())
        return terms[0] if len(terms) == 1 else Or(tuple(terms))

    def parse_and(self) -> TriggerExpr:
        terms = [self.parse_atom()]
        while self.at_keyword("and"):
            self.advance()
            terms.append(self.parse_atom())
        return terms[0] if len(terms) == 1 else And(tuple(terms))

    def parse_atom(self) -> TriggerExpr:
        if self.at_keyword("not"):
            self.advance()
            return Not(self.parse_atom())
        if self.at_keyword("fault"):
            self.advance()
            self.expect("(")
            signal = self.expect_ident("signal name")
            self.expect(")")
            return Fault(signal.value)
        if self.at("IDENT"):
            return Event(self.advance().value)
        raise self.error("'fault(...)', 'not' or an event name")

    def parse_variants(self) -> VariantGroup:
        span = self.expect_keyword("variants").span
        name = self.expect_ident("group name").value
        self.expect_keyword("for")
        target = self.expect_ident("net name").value
        self.expect("{")
        members: list[ViewRef] = []
        while not (self.at("}") or self.at("EOF")):
            start = self.pos
            try:
                self.expect_keyword("variant")
                tok = self.expect_ident("view name")
                self.expect(";")
                members.append(ViewRef(tok.value, tok.span))
            except _Bail:
                self.skip_to_member_end(start)
        self.expect("}")
        return VariantGroup(
            name=name, target_net=target, members=tuple(members), span=span
        )

    def parse_features(self) -> FeaturesDecl:
        span = self.expect_keyword("features").span
        self.expect_keyword("for")
        target = self.expect_ident("net name").value
        self.expect("{")
        members: list[ViewRef] = []
        while not (self.at("}") or self.at("EOF")):
            start = self.pos
            try:
                self.expect_keyword("feature")
                tok = self.expect_ident("view name")
                self.expect(";")
                members.append(ViewRef(tok.value, tok.span))
            except _Bail:
                self.skip_to_member_end(start)
        self.expect("}")
        return FeaturesDecl(target_net=target, members=tuple(members), span=span)


def parse_file(path: str, text: str) -> tuple[list[Document], list[ParseError]]:
    """Parse one source file into documents plus recoverable errors."""
    try:
        tokens = tokenize(text, file=path)
    except LexError as exc:
        return [], [ParseError(exc.span, "a valid token", repr(exc.found))]
    parser = _Parser(tokens)
    docs = parser.parse_documents()
    return docs, parser.errors


def assemble_model(
    docs_per_file: list[tuple[str, list[Document]]],
    had_parse_errors: bool = False,
) -> tuple[Model | None, list[ParseError]]:
    """Merge parsed documents into one Model, checking merge invariants."""
    errors: list[ParseError] = []
    net: FunctionNet | None = None
    views: dict[str, ViewDoc] = {}
    machines: dict[str, ModeMachine] = {}
    groups: dict[str, VariantGroup] = {}
    features: list[ViewRef] = []
    feature_decls: list[FeaturesDecl] = []

    for _path, docs in docs_per_file:
        for doc in docs:
            if isinstance(doc, FunctionNet):
                if net is not None:
                    errors.append(
                        ParseError(
                            doc.span,
                            "a single complete function net",
                            f"second net '{doc.name}'",
                        )
                    )
                else:
                    net = doc
            elif isinstance(doc, ViewDoc):
                if doc.name in views:
                    errors.append(
                        ParseError(
                            doc.span, "a unique view name",
                            f"duplicate view '{doc.name}'",
                        )
                    )
                else:
                    views[doc.name] = doc
            elif isinstance(doc, ModeMachine):
                if doc.name in machines:
                    errors.append(
                        ParseError(
                            doc.span, "a unique machine name",
                            f"duplicate machine '{doc.name}'",
                        )
                    )
                else:
                    machines[doc.name] = doc
            elif isinstance(doc, VariantGroup):
                if doc.name in groups:
                    errors.append(
                        ParseError(
                            doc.span, "a unique group name",
                            f"duplicate group '{doc.name}'",
                        )
                    )
                else:
                    groups[doc.name] = doc
            else:
                feature_decls.append(doc)
                features.extend(doc.members)

    if net is None:
        if not errors and not had_parse_errors:
            errors.append(
                ParseError(
                    NO_NET_SPAN, "a complete function net", "no 'net' document"
                )
            )
        return None, errors

    for doc in (
        list(views.values())
        + list(machines.values())
        + list(groups.values())
        + feature_decls
    ):
        if doc.target_net != net.name:
            errors.append(
                ParseError(
                    doc.span,
                    f"the complete net '{net.name}'",
                    f"'{doc.target_net}'",
                )
            )

    if errors:
        return None, errors
    return (
        Model(
            net=net,
            views=views,
            machines=machines,
            variant_groups=groups,
            feature_views=tuple(features),
        ),
        [],
    )


NO_NET_SPAN = SourceSpan(file="<model>", line=1, column=1)


def parse_model(sources: list[tuple[str, str]]) -> Model:
    """Parse and merge a list of (path, text) sources.

    Raises ParseFailure carrying every recoverable error found.
    """
    all_errors: list[ParseError] = []
    docs_per_file: list[tuple[str, list[Document]]] = []
    for path, text in sources:
        docs, errors = parse_file(path, text)
        docs_per_file.append((path, docs))
        all_errors.extend(errors)
    model, merge_errors = assemble_model(
        docs_per_file, had_parse_errors=bool(all_errors)
    )
    all_errors.extend(merge_errors)
    if all_errors or model is None:
        raise ParseFailure(all_errors)
    return model
