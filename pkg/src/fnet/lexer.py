"""Tokenizer for the .fnet textual syntax."""

from __future__ import annotations

from dataclasses import dataclass

from .model import SourceSpan

KEYWORDS = frozenset(
    {
        "net", "def", "block", "use", "ext", "env",
        "view", "for", "feature", "variant", "mode", "generic",
        "modes", "initial", "uses", "complete", "when",
        "not", "and", "or", "fault",
        "variants", "features",
    }
)

# Token types: KEYWORD (value is the keyword), IDENT, and the literal
# punctuation strings below; EOF closes the stream.
PUNCT = ("->", "-[", "]->", "{", "}", ";", ":", ".", "(", ")")


@dataclass(frozen=True)
class Token:
    type: str
    value: str
    span: SourceSpan


class LexError(Exception):
    def __init__(self, span: SourceSpan, found: str):
        super().__init__(f"{span}: unexpected character {found!r}")
        self.span = span
        self.found = found


def _is_ident_start(ch: str) -> bool:
    return ("a" <= ch <= "z") or ("A" <= ch <= "Z")


def _is_ident_char(ch: str) -> bool:
    return _is_ident_start(ch) or ("0" <= ch <= "9") or ch == "_"


def tokenize(text: str, file: str = "<input>") -> list[Token]:
    """Lex a source string; raises LexError on a character outside the syntax."""
    tokens: list[Token] = []
    i = 0
    line = 1
    col = 1
    n = len(text)

    def span(length: int) -> SourceSpan:
        return SourceSpan(file=file, line=line, column=col, length=length)

    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                i += 1
                col += 1
            continue
        if text.startswith("/*", i):
            start = span(2)
            i += 2
            col += 2
            while i < n and not text.startswith("*/", i):
                if text[i] == "\n":
                    line += 1
                    col = 1
                else:
                    col += 1
                i += 1
            if i >= n:
                raise LexError(start, "/*")
            i += 2
            col += 2
            continue
        if _is_ident_start(ch):
            j = i
            while j < n and _is_ident_char(text[j]):
                j += 1
            word = text[i:j]
            ttype = "KEYWORD" if word in KEYWORDS else "IDENT"
            tokens.append(Token(ttype, word, span(j - i)))
            col += j - i
            i = j
            continue
        for punct in PUNCT:
            if text.startswith(punct, i):
                tokens.append(Token(punct, punct, span(len(punct))))
                i += len(punct)
                col += len(punct)
                break
        else:
            raise LexError(span(1), ch)
    tokens.append(Token("EOF", "", SourceSpan(file=file, line=line, column=col)))
    return tokens
