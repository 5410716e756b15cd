"""Code-structure model: files, type declarations, and functions.

Source text is mapped to a flat list of nested code elements through a
pluggable language adapter keyed by file extension. Elements carry line
spans, signatures, and token multisets; everything downstream (matching,
classification, alignment) works on this model only.
"""

from __future__ import annotations

import posixpath
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Protocol

from .errors import AdapterMismatch, KindMismatch

# token -> occurrence count; the carrier for similarity inputs
TokenBag = Counter


class ElementKind(str, Enum):
    FILE = "FILE"
    TYPE_DECL = "TYPE_DECL"
    FUNCTION = "FUNCTION"


@dataclass(frozen=True)
class Signature:
    """Parsed function signature; type texts are whitespace-normalized."""

    receiver: str | None = None
    parameters: tuple[tuple[str, str], ...] = ()
    results: tuple[str, ...] = ()

    @property
    def param_types(self) -> tuple[str, ...]:
        return tuple(t for _, t in self.parameters)


@dataclass
class CodeElement:
    kind: ElementKind
    name: str
    qualified_name: str
    file_path: str
    start_line: int
    end_line: int
    body_text: str
    tokens: TokenBag
    container: "CodeElement | None" = None
    signature: Signature | None = None

    def __post_init__(self):
        if not (1 <= self.start_line <= self.end_line):
            raise ValueError(f"bad span {self.start_line}..{self.end_line} for {self.qualified_name}")

    @property
    def owner(self) -> str | None:
        """Receiver/owner type name, stripped of pointer and generic marks."""
        if self.signature is None or self.signature.receiver is None:
            return None
        return owner_name(self.signature.receiver)

    def __repr__(self):
        return f"CodeElement({self.kind.value} {self.qualified_name} @{self.file_path}:{self.start_line}-{self.end_line})"


def owner_name(receiver_type: str) -> str:
    """'*Server' -> 'Server', 'Queue[T]' -> 'Queue'."""
    text = receiver_type.lstrip("*").strip()
    out = []
    for ch in text:
        if ch.isalnum() or ch == "_":
            out.append(ch)
        else:
            break
    return "".join(out) or text


class LanguageAdapter(Protocol):
    def claims(self, path: str) -> bool: ...

    def parse(self, path: str, text: str) -> list[CodeElement]: ...

    def tokenize(self, text: str) -> TokenBag: ...


_ADAPTERS: dict[str, LanguageAdapter] = {}


def register_adapter(extension: str, adapter: LanguageAdapter) -> None:
    _ADAPTERS[extension.lower()] = adapter


def adapter_for(path: str) -> LanguageAdapter | None:
    _, ext = posixpath.splitext(path.lower())
    return _ADAPTERS.get(ext)


def parse_source(path: str, text: str,
                 adapter: LanguageAdapter | None = None) -> list[CodeElement]:
    """Parse one file into its element list (FILE element first).

    The adapter is looked up by extension when not given. Total over
    malformed input: unparseable regions are skipped, never fatal.
    """
    if adapter is None:
        adapter = adapter_for(path)
        if adapter is None:
            raise AdapterMismatch(f"no language adapter claims {path!r}")
    if not adapter.claims(path):
        raise AdapterMismatch(f"adapter does not claim {path!r}")
    return adapter.parse(path, text)


def signature_of(element: CodeElement) -> Signature:
    if element.kind is not ElementKind.FUNCTION:
        raise KindMismatch(f"{element.qualified_name} is {element.kind.value}, not FUNCTION")
    assert element.signature is not None
    return element.signature


def file_element(path: str, text: str, tokens: TokenBag) -> CodeElement:
    line_count = max(1, len(text.splitlines()))
    return CodeElement(
        kind=ElementKind.FILE,
        name=posixpath.basename(path),
        qualified_name=path,
        file_path=path,
        start_line=1,
        end_line=line_count,
        body_text=text,
        tokens=tokens,
    )
