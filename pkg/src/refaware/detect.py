"""Refactoring detection over the changed files of a revision pair.

The approach is token-based rather than AST-based: every element carries
a bag of lexical tokens, tokens are weighted by inverse document
frequency across the pair (so identifiers shared by everything cost
little and distinctive ones dominate), and elements of the two revisions
are matched by weighted bag overlap. Classification then reads the kind
of refactoring off the matched pairs: same name elsewhere is a move,
different name in the same container is a rename, a new function whose
body soaks up the tokens an existing function lost is an extraction, and
so on.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from .errors import ValidationError
from .model import CodeElement, ElementKind, TokenBag, parse_source
from .repo import ChangeStatus, FileChange, GitRepo, PairLabel, RevisionPair


class RefactoringKind(str, Enum):
    MOVE_FUNCTION = "MOVE_FUNCTION"
    MOVE_AND_RENAME_FUNCTION = "MOVE_AND_RENAME_FUNCTION"
    MOVE_TYPE = "MOVE_TYPE"
    MOVE_FILE = "MOVE_FILE"
    EXTRACT_FUNCTION = "EXTRACT_FUNCTION"
    INLINE_FUNCTION = "INLINE_FUNCTION"
    RENAME_FUNCTION = "RENAME_FUNCTION"
    RENAME_TYPE = "RENAME_TYPE"
    CHANGE_SIGNATURE = "CHANGE_SIGNATURE"
    # Representable for repositories with class hierarchies; the Go
    # classifier never emits them.
    PULL_UP = "PULL_UP"
    PUSH_DOWN = "PUSH_DOWN"


MOVE_KINDS = frozenset({
    RefactoringKind.MOVE_FUNCTION,
    RefactoringKind.MOVE_AND_RENAME_FUNCTION,
    RefactoringKind.MOVE_TYPE,
    RefactoringKind.MOVE_FILE,
})


@dataclass
class DetectorConfig:
    tau_match: float = 0.5
    tau_extract: float = 0.6
    min_extract_tokens: int = 8
    idf_smoothing: float = 1.0

    KEYS = ("tau_match", "tau_extract", "min_extract_tokens", "idf_smoothing")

    def __post_init__(self):
        if not 0.0 < self.tau_match <= 1.0:
            raise ValidationError("tau_match must be in (0, 1]", "tau_match")
        if not 0.0 < self.tau_extract <= 1.0:
            raise ValidationError("tau_extract must be in (0, 1]", "tau_extract")
        if self.min_extract_tokens < 1:
            raise ValidationError("min_extract_tokens must be >= 1", "min_extract_tokens")
        if self.idf_smoothing <= 0.0:
            raise ValidationError("idf_smoothing must be > 0", "idf_smoothing")

    @classmethod
    def from_mapping(cls, data: dict) -> "DetectorConfig":
        unknown = sorted(set(data) - set(cls.KEYS))
        if unknown:
            raise ValidationError(f"unknown config key {unknown[0]!r}", unknown[0])
        kwargs = {}
        for key in ("tau_match", "tau_extract", "idf_smoothing"):
            if key in data:
                try:
                    kwargs[key] = float(data[key])
                except (TypeError, ValueError):
                    raise ValidationError(f"{key} must be a number", key) from None
        if "min_extract_tokens" in data:
            value = data["min_extract_tokens"]
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValidationError("min_extract_tokens must be an integer",
                                      "min_extract_tokens")
            kwargs["min_extract_tokens"] = value
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.KEYS}

    def merged(self, overrides: dict) -> "DetectorConfig":
        data = self.to_dict()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return DetectorConfig.from_mapping(data)


@dataclass(frozen=True)
class Anchor:
    """A clickable location: path plus the element's first line."""

    file_path: str
    line: int


@dataclass
class ElementMatch:
    before: CodeElement
    after: CodeElement
    similarity: float
    exact_name: bool = False  # matched by canonical qualified name


@dataclass
class Refactoring:
    kind: RefactoringKind
    description: str
    before_element: CodeElement
    after_element: CodeElement
    similarity: float
    pair_label: PairLabel
    # For EXTRACT_FUNCTION this is the source function's after-revision
    # form (the body that now calls the helper); for INLINE_FUNCTION the
    # absorbing function's before-revision form. None otherwise.
    aux_element: CodeElement | None = None

    @property
    def before_anchor(self) -> Anchor:
        return Anchor(self.before_element.file_path, self.before_element.start_line)

    @property
    def after_anchor(self) -> Anchor:
        return Anchor(self.after_element.file_path, self.after_element.start_line)

    @property
    def id(self) -> str:
        return (f"{self.pair_label.key}:{self.kind.value}"
                f":{self.before_anchor.file_path}:{self.before_anchor.line}"
                f":{self.after_anchor.file_path}:{self.after_anchor.line}")


def idf_weights(bags: list[TokenBag], smoothing: float = 1.0) -> dict[str, float]:
    """w(t) = ln(1 + N / (df(t) + smoothing)) over the given documents.

    Weights are strictly positive, and rarer tokens weigh more.
    """
    n = len(bags)
    df: Counter = Counter()
    for bag in bags:
        df.update(bag.keys())
    return {t: math.log(1.0 + n / (count + smoothing)) for t, count in df.items()}


def similarity(a: TokenBag, b: TokenBag, weights: dict[str, float]) -> float:
    """Weighted multiset Jaccard: sum of w*min over w*max per token.

    Two empty bags are identical (1.0); tokens missing from `weights`
    fall back to weight 1.0 so the function total-orders any input.
    """
    if not a and not b:
        return 1.0
    num = 0.0
    den = 0.0
    for t in a.keys() | b.keys():
        w = weights.get(t, 1.0)
        ca, cb = a[t], b[t]
        num += w * min(ca, cb)
        den += w * max(ca, cb)
    return num / den if den else 1.0


def _canonical_path(path: str, path_map: dict[str, str]) -> str:
    return path_map.get(path, path)


def _canonical_qname(e: CodeElement, path_map: dict[str, str]) -> str:
    new_path = path_map.get(e.file_path)
    if new_path is None:
        return e.qualified_name
    if e.kind is ElementKind.FILE:
        return new_path
    return new_path + e.qualified_name[len(e.file_path):]


def match_elements(
    before: list[CodeElement],
    after: list[CodeElement],
    cfg: DetectorConfig,
    weights: dict[str, float] | None = None,
    path_map: dict[str, str] | None = None,
) -> list[ElementMatch]:
    """Pair up elements across the two revisions.

    Phase 1 takes every canonical-qualified-name collision of the same
    kind (renamed files contribute their after-path, so a pure file
    rename pairs everything inside it here). Phase 2 greedily pairs the
    remainder by descending weighted similarity, requiring at least
    tau_match; ties break on smaller start-line distance, then on the
    qualified-name pair, so the result is deterministic. Each element
    appears in at most one match.
    """
    path_map = path_map or {}
    if weights is None:
        weights = idf_weights([e.tokens for e in before + after], cfg.idf_smoothing)

    matches: list[ElementMatch] = []
    used_before: set[int] = set()
    used_after: set[int] = set()

    by_after_qname: dict[tuple[str, str], list[int]] = {}
    for j, e in enumerate(after):
        by_after_qname.setdefault((e.kind.value, e.qualified_name), []).append(j)
    for i, b in enumerate(before):
        key = (b.kind.value, _canonical_qname(b, path_map))
        bucket = by_after_qname.get(key)
        if not bucket:
            continue
        j = bucket.pop(0)
        a = after[j]
        matches.append(ElementMatch(b, a, similarity(b.tokens, a.tokens, weights),
                                    exact_name=True))
        used_before.add(i)
        used_after.add(j)

    candidates = []
    for i, b in enumerate(before):
        if i in used_before or b.kind is ElementKind.FILE:
            continue
        for j, a in enumerate(after):
            if j in used_after or a.kind is not b.kind:
                continue
            sim = similarity(b.tokens, a.tokens, weights)
            if sim >= cfg.tau_match:
                candidates.append((-sim, abs(b.start_line - a.start_line),
                                   b.qualified_name, a.qualified_name, i, j))
    candidates.sort()
    for neg_sim, _dist, _bq, _aq, i, j in candidates:
        if i in used_before or j in used_after:
            continue
        used_before.add(i)
        used_after.add(j)
        matches.append(ElementMatch(before[i], after[j], -neg_sim))
    return matches


def _owner_equivalence(matches: list[ElementMatch]) -> dict[str, str]:
    """before-type-name -> after-type-name, from matched type declarations."""
    mapping = {}
    for m in matches:
        if m.before.kind is ElementKind.TYPE_DECL:
            mapping[m.before.name] = m.after.name
    return mapping


def _same_container(m: ElementMatch, owner_map: dict[str, str],
                    path_map: dict[str, str]) -> bool:
    b, a = m.before, m.after
    if b.kind is ElementKind.FUNCTION:
        b_owner, a_owner = b.owner, a.owner
        if b_owner is not None or a_owner is not None:
            if b_owner is None or a_owner is None:
                return False
            return owner_map.get(b_owner, b_owner) == a_owner
    return _canonical_path(b.file_path, path_map) == a.file_path


def _signatures_differ(m: ElementMatch, owner_map: dict[str, str]) -> bool:
    """Signature comparison, reading the before receiver through the
    type-rename map so a renamed receiver type alone is not a signature
    change (the RENAME_TYPE record already covers it)."""
    sb, sa = m.before.signature, m.after.signature
    if sb is None or sa is None:
        return (sb is None) != (sa is None)
    receiver = sb.receiver
    owner = m.before.owner
    if receiver is not None and owner in owner_map:
        receiver = re.sub(rf"\b{re.escape(owner)}\b", owner_map[owner], receiver)
    return (receiver, sb.parameters, sb.results) != (sa.receiver, sa.parameters,
                                                     sa.results)


def _loc(e: CodeElement) -> str:
    return f"{e.file_path}:{e.start_line}"


@dataclass
class _Classification:
    refactorings: list[Refactoring] = field(default_factory=list)
    move_sources: set[int] = field(default_factory=set)  # id() of before elements


def _classify_matches(matches: list[ElementMatch], owner_map: dict[str, str],
                      path_map: dict[str, str], label: PairLabel) -> _Classification:
    out = _Classification()
    for m in matches:
        b, a = m.before, m.after
        if b.kind is ElementKind.FILE:
            continue
        same_name = b.name == a.name
        same_container = _same_container(m, owner_map, path_map)
        kind: RefactoringKind | None = None
        if b.kind is ElementKind.TYPE_DECL:
            if not same_container:
                kind = RefactoringKind.MOVE_TYPE
            elif not same_name:
                kind = RefactoringKind.RENAME_TYPE
        else:
            if not same_container and not same_name:
                kind = RefactoringKind.MOVE_AND_RENAME_FUNCTION
            elif not same_container:
                kind = RefactoringKind.MOVE_FUNCTION
            elif not same_name:
                kind = RefactoringKind.RENAME_FUNCTION
            elif _signatures_differ(m, owner_map):
                kind = RefactoringKind.CHANGE_SIGNATURE
        if kind is None:
            continue
        if kind in MOVE_KINDS:
            out.move_sources.add(id(b))
        out.refactorings.append(Refactoring(
            kind=kind,
            description=_describe(kind, b, a),
            before_element=b,
            after_element=a,
            similarity=m.similarity,
            pair_label=label,
        ))
    return out


def _describe(kind: RefactoringKind, b: CodeElement, a: CodeElement) -> str:
    if kind is RefactoringKind.MOVE_FUNCTION:
        return f"{b.name} moved from {_loc(b)} to {_loc(a)}"
    if kind is RefactoringKind.MOVE_AND_RENAME_FUNCTION:
        return f"{b.name} moved from {_loc(b)} to {_loc(a)} and renamed to {a.name}"
    if kind is RefactoringKind.MOVE_TYPE:
        if b.name != a.name:
            return f"type {b.name} moved from {_loc(b)} to {_loc(a)} and renamed to {a.name}"
        return f"type {b.name} moved from {_loc(b)} to {_loc(a)}"
    if kind is RefactoringKind.MOVE_FILE:
        return f"file {b.file_path} moved to {a.file_path}"
    if kind is RefactoringKind.RENAME_FUNCTION:
        return f"{b.name} renamed to {a.name} at {_loc(a)}"
    if kind is RefactoringKind.RENAME_TYPE:
        return f"type {b.name} renamed to {a.name} at {_loc(a)}"
    if kind is RefactoringKind.CHANGE_SIGNATURE:
        return f"{b.name} signature changed at {_loc(a)}"
    if kind is RefactoringKind.EXTRACT_FUNCTION:
        return f"{a.name} extracted from {b.name} at {_loc(a)}"
    if kind is RefactoringKind.INLINE_FUNCTION:
        return f"{b.name} inlined into {a.name} at {_loc(a)}"
    return f"{b.name}: {kind.value.lower().replace('_', ' ')}"


def _detect_extractions(
    matches: list[ElementMatch],
    unmatched_after: list[CodeElement],
    cls: _Classification,
    cfg: DetectorConfig,
    weights: dict[str, float],
    label: PairLabel,
) -> list[Refactoring]:
    """A new function is an extraction of some matched function m when
    its body covers the tokens m lost (weighted similarity at least
    tau_extract) and m's after-body gained a call to it. The best source
    wins; functions already classified as moved are not eligible sources.
    """
    out = []
    sources = [m for m in matches
               if m.before.kind is ElementKind.FUNCTION
               and id(m.before) not in cls.move_sources]
    for f in unmatched_after:
        if f.kind is not ElementKind.FUNCTION:
            continue
        if sum(f.tokens.values()) < cfg.min_extract_tokens:
            continue
        best: tuple[float, ElementMatch] | None = None
        for m in sources:
            lost = m.before.tokens - m.after.tokens
            if not lost:
                continue
            if m.after.tokens[f.name] <= m.before.tokens[f.name]:
                continue  # source must gain a call to the new function
            sim = similarity(f.tokens, lost, weights)
            if sim >= cfg.tau_extract and (best is None or sim > best[0]):
                best = (sim, m)
        if best is not None:
            sim, m = best
            out.append(Refactoring(
                kind=RefactoringKind.EXTRACT_FUNCTION,
                description=_describe(RefactoringKind.EXTRACT_FUNCTION, m.before, f),
                before_element=m.before,
                after_element=f,
                similarity=sim,
                pair_label=label,
                aux_element=m.after,
            ))
    return out


def _detect_inlines(
    matches: list[ElementMatch],
    unmatched_before: list[CodeElement],
    cls: _Classification,
    cfg: DetectorConfig,
    weights: dict[str, float],
    label: PairLabel,
) -> list[Refactoring]:
    """Mirror image of extraction: a deleted function g was inlined into
    a matched function m when m's body gained g's tokens and lost a call
    to g."""
    out = []
    targets = [m for m in matches
               if m.before.kind is ElementKind.FUNCTION
               and id(m.before) not in cls.move_sources]
    for g in unmatched_before:
        if g.kind is not ElementKind.FUNCTION:
            continue
        if sum(g.tokens.values()) < cfg.min_extract_tokens:
            continue
        best: tuple[float, ElementMatch] | None = None
        for m in targets:
            gained = m.after.tokens - m.before.tokens
            if not gained:
                continue
            if m.before.tokens[g.name] <= m.after.tokens[g.name]:
                continue  # target must lose its call to the gone function
            sim = similarity(g.tokens, gained, weights)
            if sim >= cfg.tau_extract and (best is None or sim > best[0]):
                best = (sim, m)
        if best is not None:
            sim, m = best
            out.append(Refactoring(
                kind=RefactoringKind.INLINE_FUNCTION,
                description=_describe(RefactoringKind.INLINE_FUNCTION, g, m.after),
                before_element=g,
                after_element=m.after,
                similarity=sim,
                pair_label=label,
                aux_element=m.before,
            ))
    return out


def _detect_file_moves(matches: list[ElementMatch], renames: dict[str, str],
                       cfg: DetectorConfig, weights: dict[str, float],
                       label: PairLabel) -> list[Refactoring]:
    out = []
    file_matches = {(m.before.file_path, m.after.file_path): m
                    for m in matches if m.before.kind is ElementKind.FILE}
    for old, new in renames.items():
        m = file_matches.get((old, new))
        if m is None or m.similarity < cfg.tau_match:
            continue
        out.append(Refactoring(
            kind=RefactoringKind.MOVE_FILE,
            description=_describe(RefactoringKind.MOVE_FILE, m.before, m.after),
            before_element=m.before,
            after_element=m.after,
            similarity=m.similarity,
            pair_label=label,
        ))
    return out


def classify(
    matches: list[ElementMatch],
    unmatched_before: list[CodeElement],
    unmatched_after: list[CodeElement],
    file_changes: list[FileChange],
    cfg: DetectorConfig,
    weights: dict[str, float] | None = None,
    label: PairLabel | None = None,
) -> list[Refactoring]:
    """Turn matched and unmatched elements into refactoring records.

    Matched pairs classify by what changed between name, container, and
    signature; unmatched elements feed the extraction/inline rules; file
    renames with similar content become MOVE_FILE.
    """
    if weights is None:
        pool = [m.before.tokens for m in matches] + [m.after.tokens for m in matches]
        pool += [e.tokens for e in unmatched_before + unmatched_after]
        weights = idf_weights(pool, cfg.idf_smoothing)
    label = label or PairLabel("MAIN")
    renames = {c.path_before: c.path_after for c in file_changes
               if c.status is ChangeStatus.RENAMED}
    owner_map = _owner_equivalence(matches)
    cls = _classify_matches(matches, owner_map, renames, label)
    out = list(cls.refactorings)
    out.extend(_detect_extractions(matches, unmatched_after, cls, cfg, weights, label))
    out.extend(_detect_inlines(matches, unmatched_before, cls, cfg, weights, label))
    out.extend(_detect_file_moves(matches, renames, cfg, weights, label))
    out.sort(key=lambda r: (r.after_anchor.file_path, r.after_anchor.line,
                            r.kind.value, r.description))
    return out


@dataclass
class DetectionResult:
    refactorings: list[Refactoring]
    matches: list[ElementMatch]
    unmatched_before: list[CodeElement]
    unmatched_after: list[CodeElement]
    weights: dict[str, float]


def detect_changes(changes: list[FileChange], label: PairLabel,
                   cfg: DetectorConfig | None = None) -> DetectionResult:
    """Pure detection entry point over pre-loaded file changes.

    Files without a registered language adapter, and binary files, are
    ignored. Output order is deterministic: (after path, after line,
    kind, description).
    """
    cfg = cfg or DetectorConfig()
    before_elements: list[CodeElement] = []
    after_elements: list[CodeElement] = []
    renames: dict[str, str] = {}
    for change in changes:
        if change.binary:
            continue
        if change.status is ChangeStatus.RENAMED:
            renames[change.path_before] = change.path_after
        if change.path_before is not None and change.content_before is not None:
            before_elements.extend(_try_parse(change.path_before, change.content_before))
        if change.path_after is not None and change.content_after is not None:
            after_elements.extend(_try_parse(change.path_after, change.content_after))

    weights = idf_weights([e.tokens for e in before_elements + after_elements],
                          cfg.idf_smoothing)
    matches = match_elements(before_elements, after_elements, cfg,
                             weights=weights, path_map=renames)
    matched_before = {id(m.before) for m in matches}
    matched_after = {id(m.after) for m in matches}
    unmatched_before = [e for e in before_elements if id(e) not in matched_before]
    unmatched_after = [e for e in after_elements if id(e) not in matched_after]

    refactorings = classify(matches, unmatched_before, unmatched_after, changes,
                            cfg, weights=weights, label=label)
    return DetectionResult(refactorings, matches, unmatched_before, unmatched_after,
                           weights)


def _try_parse(path: str, text: str) -> list[CodeElement]:
    from .model import adapter_for
    if adapter_for(path) is None:
        return []
    return parse_source(path, text)


def detect(repo: GitRepo, pair: RevisionPair,
           cfg: DetectorConfig | None = None) -> DetectionResult:
    """Detection over a revision pair of a live repository."""
    return detect_changes(repo.changed_files(pair), pair.label, cfg)
