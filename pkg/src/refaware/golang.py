"""Go language adapter: declaration-level scanner and tokenizer.

This is deliberately not a full grammar. Detection only needs line spans,
names, signatures, and token multisets, and it must degrade gracefully on
code that does not parse. The scanner finds top-level `func` and
`type ... struct/interface` declarations by keyword anchors and brace
matching over a "structure text" in which comments and string contents
are blanked out (newlines kept), so braces inside literals never count.

Supported constructs: package clause, top-level functions, methods with
receivers, struct/interface type declarations. Function literals are
tokens of their enclosing function, not separate elements. Grouped
`type (...)` blocks contribute file tokens only.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from collections import Counter

from .model import CodeElement, ElementKind, Signature, TokenBag, file_element, owner_name, register_adapter

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER_RE = re.compile(r"[0-9](?:[0-9a-zA-Z_]|\.[0-9])*")
_DECL_RE = re.compile(r"(?m)^[ \t]*(func|type)\b")

_OPERATORS_3 = ("<<=", ">>=", "&^=", "...")
_OPERATORS_2 = (
    ":=", "<-", "++", "--", "==", "!=", "<=", ">=", "&&", "||",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "&^",
)

# segments whose first word starts a type, never a parameter name
_TYPE_LEADERS = {"chan", "func", "map", "struct", "interface"}


def _scan(text: str, emit, blank=None):
    """Single pass over Go source.

    Calls ``emit(kind, value)`` for each significant token with kind in
    {'word', 'number', 'string', 'op'}; comments and whitespace are
    skipped. When ``blank`` is a list of characters, comment and
    string-literal characters are overwritten with spaces (newlines kept)
    so the caller gets a structure-only view of the text.
    """
    i = 0
    n = len(text)

    def blank_span(start, end):
        if blank is not None:
            for k in range(start, end):
                if blank[k] != "\n":
                    blank[k] = " "

    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch == "/" and i + 1 < n and text[i + 1] == "/":
            j = text.find("\n", i)
            j = n if j == -1 else j
            blank_span(i, j)
            i = j
            continue
        if ch == "/" and i + 1 < n and text[i + 1] == "*":
            j = text.find("*/", i + 2)
            j = n if j == -1 else j + 2
            blank_span(i, j)
            i = j
            continue
        if ch == '"' or ch == "'":
            j = i + 1
            while j < n and text[j] != ch:
                if text[j] == "\\":
                    j += 1
                elif text[j] == "\n":
                    break  # unterminated literal: stop at end of line
                j += 1
            j = min(j + 1, n)
            emit("string", text[i:j])
            blank_span(i, j)
            i = j
            continue
        if ch == "`":
            j = text.find("`", i + 1)
            j = n if j == -1 else j + 1
            emit("string", text[i:j])
            blank_span(i, j)
            i = j
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            emit("word", m.group())
            i = m.end()
            continue
        m = _NUMBER_RE.match(text, i)
        if m:
            emit("number", m.group())
            i = m.end()
            continue
        three = text[i:i + 3]
        if three in _OPERATORS_3:
            emit("op", three)
            i += 3
            continue
        two = text[i:i + 2]
        if two in _OPERATORS_2:
            emit("op", two)
            i += 2
            continue
        emit("op", ch)
        i += 1


def tokenize(text: str) -> TokenBag:
    """Token multiset of a source slice.

    Identifiers, keywords, numbers, and operators count individually;
    each string literal is a single opaque token including its quotes;
    comments and whitespace are discarded.
    """
    bag: TokenBag = Counter()

    def emit(kind, value):
        bag[value] += 1

    _scan(text, emit)
    return bag


def structure_text(text: str) -> str:
    """The source with comments and literal contents blanked, same shape."""
    chars = list(text)

    def emit(kind, value):
        pass

    _scan(text, emit, blank=chars)
    return "".join(chars)


def _split_top_commas(text: str) -> list[str]:
    parts = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p for p in (p.strip() for p in parts) if p]


def _normalize_type(text: str) -> str:
    return " ".join(text.split())


def _parse_params(text: str) -> tuple[tuple[str, str], ...]:
    """Expand a Go parameter list, distributing grouped names.

    'a, b int, c string' -> ((a,int),(b,int),(c,string));
    'int, string' -> (('', int), ('', string)).
    """
    params: list[tuple[str, str]] = []
    pending: list[str] = []
    for seg in _split_top_commas(text):
        words = seg.split()
        head = words[0]
        named = (
            len(words) >= 2
            and _IDENT_RE.fullmatch(head) is not None
            and head not in _TYPE_LEADERS
        )
        if named:
            type_text = _normalize_type(seg[len(head):])
            for name in pending:
                params.append((name, type_text))
            pending = []
            params.append((head, type_text))
        elif len(words) == 1 and _IDENT_RE.fullmatch(head) and "[" not in head:
            # either a grouped name or a bare named type; decided later
            pending.append(head)
        else:
            for name in pending:
                params.append(("", _normalize_type(name)))
            pending = []
            params.append(("", _normalize_type(seg)))
    # trailing singles never received a type: they are unnamed types
    for name in pending:
        params.append(("", _normalize_type(name)))
    return tuple(params)


def _parse_results(text: str, parenthesized: bool) -> tuple[str, ...]:
    text = text.strip()
    if not text:
        return ()
    if not parenthesized:
        return (_normalize_type(text),)
    results = []
    for seg in _split_top_commas(text):
        words = seg.split()
        if (
            len(words) >= 2
            and _IDENT_RE.fullmatch(words[0])
            and words[0] not in _TYPE_LEADERS
        ):
            results.append(_normalize_type(seg[len(words[0]):]))  # named result
        else:
            results.append(_normalize_type(seg))
    return tuple(results)


class _Cursor:
    """Position tracking over the structure text."""

    def __init__(self, struct: str):
        self.s = struct
        self.n = len(struct)
        self.line_starts = [0]
        for i, ch in enumerate(struct):
            if ch == "\n":
                self.line_starts.append(i + 1)

    def line_of(self, index: int) -> int:
        return bisect_right(self.line_starts, index)

    def skip_blank(self, i: int) -> int:
        while i < self.n and self.s[i] in " \t":
            i += 1
        return i

    def balanced(self, i: int, open_ch: str, close_ch: str) -> int:
        """Index just past the bracket matching s[i]; -1 if unbalanced."""
        depth = 0
        while i < self.n:
            ch = self.s[i]
            if ch == open_ch:
                depth += 1
            elif ch == close_ch:
                depth -= 1
                if depth == 0:
                    return i + 1
            i += 1
        return -1


class GoAdapter:
    """Language adapter for Go source files."""

    extensions = (".go",)

    def claims(self, path: str) -> bool:
        return path.lower().endswith(self.extensions)

    def tokenize(self, text: str) -> TokenBag:
        return tokenize(text)

    def parse(self, path: str, text: str) -> list[CodeElement]:
        struct = structure_text(text)
        cur = _Cursor(struct)
        lines = text.splitlines(keepends=True)
        root = file_element(path, text, tokenize(text))
        elements = [root]

        depth_at = self._depths(struct)
        consumed_until = 0
        for m in _DECL_RE.finditer(struct):
            start = m.start(1)
            if start < consumed_until or depth_at[start] != 0:
                continue
            if m.group(1) == "func":
                parsed = self._parse_func(cur, start)
            else:
                parsed = self._parse_type(cur, start)
            if parsed is None:
                continue
            name, signature, end_index, kind = parsed
            start_line = cur.line_of(start)
            end_line = cur.line_of(min(end_index - 1, cur.n - 1)) if cur.n else 1
            body = "".join(lines[start_line - 1:end_line])
            elements.append(CodeElement(
                kind=kind,
                name=name,
                qualified_name="",  # assigned below
                file_path=path,
                start_line=start_line,
                end_line=end_line,
                body_text=body,
                tokens=tokenize(body),
                container=root,
                signature=signature,
            ))
            consumed_until = end_index

        self._assign_qualified_names(path, elements)
        elements.sort(key=lambda e: (e.start_line, e.kind is not ElementKind.FILE))
        return elements

    @staticmethod
    def _depths(struct: str) -> list[int]:
        depths = [0] * (len(struct) + 1)
        d = 0
        for i, ch in enumerate(struct):
            depths[i] = d
            if ch in "({[":
                d += 1
            elif ch in ")}]":
                d = max(0, d - 1)
        depths[len(struct)] = d
        return depths

    def _parse_func(self, cur: _Cursor, start: int):
        s = cur.s
        i = cur.skip_blank(start + len("func"))
        receiver = None
        if i < cur.n and s[i] == "(":
            end = cur.balanced(i, "(", ")")
            if end == -1:
                return None
            receiver = self._receiver_type(s[i + 1:end - 1])
            i = cur.skip_blank(end)
        m = _IDENT_RE.match(s, i)
        if not m:
            return None
        name = m.group()
        i = m.end()
        if i < cur.n and s[i] == "[":  # generic parameter list
            end = cur.balanced(i, "[", "]")
            if end == -1:
                return None
            i = end
        if i >= cur.n or s[i] != "(":
            return None
        end = cur.balanced(i, "(", ")")
        if end == -1:
            return None
        params = _parse_params(s[i + 1:end - 1])
        i = cur.skip_blank(end)
        if i < cur.n and s[i] == "(":
            rend = cur.balanced(i, "(", ")")
            if rend == -1:
                return None
            results = _parse_results(s[i + 1:rend - 1], parenthesized=True)
            i = cur.skip_blank(rend)
        else:
            j = i
            while j < cur.n and s[j] not in "{\n":
                j += 1
            results = _parse_results(s[i:j], parenthesized=False)
            i = j
        signature = Signature(receiver=receiver, parameters=params, results=results)
        if i < cur.n and s[i] == "{":
            body_end = cur.balanced(i, "{", "}")
            if body_end == -1:
                return None  # unbalanced at EOF: drop the malformed tail
            return name, signature, body_end, ElementKind.FUNCTION
        # declaration without a body (assembly stub): span the signature only
        line_end = s.find("\n", i)
        line_end = cur.n if line_end == -1 else line_end
        return name, signature, max(line_end, start + 1), ElementKind.FUNCTION

    def _parse_type(self, cur: _Cursor, start: int):
        s = cur.s
        i = cur.skip_blank(start + len("type"))
        if i < cur.n and s[i] == "(":
            return None  # grouped type block: file tokens only
        m = _IDENT_RE.match(s, i)
        if not m:
            return None
        name = m.group()
        i = m.end()
        if i < cur.n and s[i] == "[":
            end = cur.balanced(i, "[", "]")
            if end == -1:
                return None
            i = end
        i = cur.skip_blank(i)
        m = _IDENT_RE.match(s, i)
        if not m or m.group() not in ("struct", "interface"):
            return None  # alias or defined type: not a refactorable unit here
        i = cur.skip_blank(m.end())
        if i >= cur.n or s[i] != "{":
            return None
        end = cur.balanced(i, "{", "}")
        if end == -1:
            return None
        return name, None, end, ElementKind.TYPE_DECL

    @staticmethod
    def _receiver_type(text: str) -> str:
        words = text.split()
        type_text = words[-1] if len(words) >= 2 else (words[0] if words else "")
        if len(words) > 2:  # e.g. 'c *tree [T]' after odd formatting
            type_text = " ".join(words[1:])
        return _normalize_type(type_text)

    @staticmethod
    def _assign_qualified_names(path: str, elements: list[CodeElement]) -> None:
        seen: dict[str, int] = {}
        for e in elements:
            if e.kind is ElementKind.FILE:
                qn = path
            elif e.kind is ElementKind.TYPE_DECL:
                qn = f"{path}::{e.name}"
            else:
                sig = e.signature or Signature()
                types = ",".join(sig.param_types)
                if sig.receiver:
                    qn = f"{path}::{owner_name(sig.receiver)}::{e.name}({types})"
                else:
                    qn = f"{path}::{e.name}({types})"
            count = seen.get(qn, 0)
            seen[qn] = count + 1
            e.qualified_name = qn if count == 0 else f"{qn}#{count + 1}"


register_adapter(".go", GoAdapter())
