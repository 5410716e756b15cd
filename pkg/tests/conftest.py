import subprocess
from pathlib import Path

import pytest


class RepoBuilder:
    """Minimal scripted git repository for fixtures."""

    def __init__(self, path: Path):
        self.path = path
        path.mkdir(parents=True, exist_ok=True)
        self._git("init", "-q", "-b", "main")
        self._git("config", "user.email", "fixture@example.invalid")
        self._git("config", "user.name", "Fixture")
        self._git("config", "commit.gpgsign", "false")

    def _git(self, *args: str) -> str:
        out = subprocess.run(["git", "-C", str(self.path), *args],
                             capture_output=True, check=True)
        return out.stdout.decode("utf-8", errors="replace").strip()

    def write(self, relpath: str, content: str | bytes) -> None:
        target = self.path / relpath
        target.parent.mkdir(parents=True, exist_ok=True)
        if isinstance(content, bytes):
            target.write_bytes(content)
        else:
            # exact bytes matter for the CRLF tests: no newline translation
            target.write_bytes(content.encode("utf-8"))

    def remove(self, relpath: str) -> None:
        (self.path / relpath).unlink()

    def move(self, src: str, dst: str) -> None:
        target = self.path / dst
        target.parent.mkdir(parents=True, exist_ok=True)
        (self.path / src).rename(target)

    def commit(self, message: str) -> str:
        self._git("add", "-A")
        self._git("commit", "-q", "-m", message, "--allow-empty")
        return self._git("rev-parse", "HEAD")


@pytest.fixture
def repo_factory(tmp_path):
    counter = [0]

    def make(name: str | None = None) -> RepoBuilder:
        counter[0] += 1
        return RepoBuilder(tmp_path / (name or f"repo{counter[0]}"))

    return make
