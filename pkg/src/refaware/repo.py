"""Git repository access: revision pairs and per-pair file changes.

All repository access goes through subprocess calls to the system `git`
executable (plumbing commands, no porcelain parsing beyond `-z` record
streams). Calls are read-only and own their subprocess, so concurrent
use needs no coordination.
"""

from __future__ import annotations

import subprocess
from dataclasses import dataclass
from enum import Enum

from .errors import EmptyChangeSet, FileNotFound, RevisionNotFound


@dataclass(frozen=True)
class RevisionRef:
    id: str  # full commit hash
    short_label: str

    def __post_init__(self):
        if not self.id:
            raise ValueError("revision id must be non-empty")


@dataclass(frozen=True)
class PairLabel:
    """MAIN (head vs integration base) or COMMIT(i) with a 1-based index."""

    kind: str  # "MAIN" | "COMMIT"
    index: int | None = None

    @property
    def key(self) -> str:
        return "MAIN" if self.kind == "MAIN" else f"COMMIT_{self.index}"

    def __str__(self):
        return "MAIN" if self.kind == "MAIN" else f"COMMIT {self.index}"


MAIN = PairLabel("MAIN")


@dataclass(frozen=True)
class RevisionPair:
    before: RevisionRef
    after: RevisionRef
    label: PairLabel


class ChangeStatus(str, Enum):
    ADDED = "ADDED"
    DELETED = "DELETED"
    MODIFIED = "MODIFIED"
    RENAMED = "RENAMED"


@dataclass
class FileChange:
    """One differing path between the two trees of a pair.

    Contents are present exactly when the corresponding path is present
    and the blob decodes as text; binary blobs keep their status but
    carry no content.
    """

    status: ChangeStatus
    path_before: str | None = None
    path_after: str | None = None
    content_before: str | None = None
    content_after: str | None = None
    binary: bool = False

    @property
    def display_path(self) -> str:
        return self.path_after or self.path_before or ""


def enumerate_pairs(base: RevisionRef, commits: list[RevisionRef]) -> list[RevisionPair]:
    """The comparison units for a change set: the MAIN pair (last commit
    against the integration base) followed by one pair per commit against
    its predecessor, newest first. Pairs duplicating an earlier
    (before, after) are dropped, so MAIN wins ties.
    """
    if not commits:
        raise EmptyChangeSet("change set has no commits")
    pairs = [RevisionPair(base, commits[-1], MAIN)]
    for i in range(len(commits), 0, -1):
        before = commits[i - 2] if i > 1 else base
        pairs.append(RevisionPair(before, commits[i - 1], PairLabel("COMMIT", i)))
    seen: set[tuple[str, str]] = set()
    unique = []
    for p in pairs:
        key = (p.before.id, p.after.id)
        if key not in seen:
            seen.add(key)
            unique.append(p)
    return unique


class GitRepo:
    """Read-only view of a local git repository (git >= 2.20 on PATH)."""

    def __init__(self, path: str):
        self.path = str(path)

    def _git_bytes(self, *args: str) -> bytes:
        proc = subprocess.run(
            ["git", "-C", self.path, *args],
            capture_output=True,
        )
        if proc.returncode != 0:
            raise subprocess.CalledProcessError(
                proc.returncode, proc.args, proc.stdout, proc.stderr)
        return proc.stdout

    def _git(self, *args: str) -> str:
        return self._git_bytes(*args).decode("utf-8", errors="replace").strip("\n")

    def resolve(self, rev: str, short_label: str | None = None) -> RevisionRef:
        try:
            sha = self._git("rev-parse", "--verify", "--quiet", f"{rev}^{{commit}}")
        except subprocess.CalledProcessError:
            raise RevisionNotFound(f"cannot resolve {rev!r} in {self.path}") from None
        # label with the abbreviated hash, not the argument: "HEAD" or a
        # branch name would make otherwise-identical reports differ by
        # invocation
        return RevisionRef(id=sha, short_label=short_label or sha[:7])

    def commits_between(self, base: str, head: str) -> list[RevisionRef]:
        """Commits on base..head, oldest first, following first parents only."""
        base_ref = self.resolve(base)
        head_ref = self.resolve(head)
        out = self._git("rev-list", "--first-parent", "--reverse",
                        f"{base_ref.id}..{head_ref.id}")
        return [RevisionRef(id=sha, short_label=sha[:7]) for sha in out.split("\n") if sha]

    def enumerate_pairs(self, base: str, commits: list[str] | None = None,
                        head: str | None = None) -> list[RevisionPair]:
        base_ref = self.resolve(base)
        if commits is not None:
            refs = [self.resolve(c) for c in commits]
        elif head is not None:
            refs = self.commits_between(base, head)
        else:
            refs = []
        return enumerate_pairs(base_ref, refs)

    def read_file_bytes(self, rev: RevisionRef, path: str) -> bytes:
        try:
            return self._git_bytes("cat-file", "blob", f"{rev.id}:{path}")
        except subprocess.CalledProcessError:
            raise FileNotFound(f"{path!r} does not exist at {rev.short_label}") from None

    def read_file(self, rev: RevisionRef, path: str) -> str:
        """Blob content at a revision, decoded as UTF-8 with lossy
        replacement; line endings come through verbatim."""
        return self.read_file_bytes(rev, path).decode("utf-8", errors="replace")

    def changed_files(self, pair: RevisionPair) -> list[FileChange]:
        """One entry per path differing between the pair's trees, with
        text contents loaded; rename detection is git's own at its
        default similarity threshold."""
        for rev in (pair.before, pair.after):
            self.resolve(rev.id)
        raw = self._git_bytes("diff-tree", "-r", "-M", "--name-status", "-z",
                              pair.before.id, pair.after.id)
        fields = [f.decode("utf-8", errors="replace") for f in raw.split(b"\0") if f]
        changes = []
        i = 0
        while i < len(fields):
            status = fields[i]
            if status.startswith(("R", "C")):
                change = FileChange(status=ChangeStatus.RENAMED,
                                    path_before=fields[i + 1], path_after=fields[i + 2])
                i += 3
            elif status == "A":
                change = FileChange(status=ChangeStatus.ADDED, path_after=fields[i + 1])
                i += 2
            elif status == "D":
                change = FileChange(status=ChangeStatus.DELETED, path_before=fields[i + 1])
                i += 2
            else:  # M, or T treated as a modification
                change = FileChange(status=ChangeStatus.MODIFIED,
                                    path_before=fields[i + 1], path_after=fields[i + 1])
                i += 2
            self._load_contents(pair, change)
            changes.append(change)
        changes.sort(key=lambda c: c.display_path)
        return changes

    def _load_contents(self, pair: RevisionPair, change: FileChange) -> None:
        before = after = None
        if change.path_before is not None:
            before = self.read_file_bytes(pair.before, change.path_before)
        if change.path_after is not None:
            after = self.read_file_bytes(pair.after, change.path_after)
        if (before is not None and b"\0" in before) or (after is not None and b"\0" in after):
            change.binary = True
            return
        if before is not None:
            change.content_before = before.decode("utf-8", errors="replace")
        if after is not None:
            change.content_after = after.decode("utf-8", errors="replace")
