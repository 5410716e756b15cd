import pytest

from refaware.errors import EmptyChangeSet, FileNotFound, RevisionNotFound
from refaware.repo import (MAIN, ChangeStatus, GitRepo, RevisionRef,
                           enumerate_pairs)


def ref(i):
    return RevisionRef(id=f"{i:040x}", short_label=f"c{i}")


class TestPairEnumeration:
    @pytest.mark.parametrize("n,expected", [(1, 1), (2, 3), (3, 4), (5, 6)])
    def test_pair_count_law(self, n, expected):
        pairs = enumerate_pairs(ref(0), [ref(i) for i in range(1, n + 1)])
        assert len(pairs) == expected

    def test_single_commit_collapses_to_main(self):
        pairs = enumerate_pairs(ref(0), [ref(1)])
        assert [p.label.key for p in pairs] == ["MAIN"]
        assert pairs[0].before == ref(0)
        assert pairs[0].after == ref(1)

    def test_main_first_then_commits_newest_first(self):
        pairs = enumerate_pairs(ref(0), [ref(1), ref(2), ref(3)])
        assert [p.label.key for p in pairs] == \
            ["MAIN", "COMMIT_3", "COMMIT_2", "COMMIT_1"]

    def test_commit_pairs_chain_predecessors(self):
        pairs = enumerate_pairs(ref(0), [ref(1), ref(2), ref(3)])
        by_key = {p.label.key: p for p in pairs}
        assert (by_key["COMMIT_3"].before, by_key["COMMIT_3"].after) == (ref(2), ref(3))
        assert (by_key["COMMIT_2"].before, by_key["COMMIT_2"].after) == (ref(1), ref(2))
        assert (by_key["COMMIT_1"].before, by_key["COMMIT_1"].after) == (ref(0), ref(1))

    def test_duplicate_keeps_main(self):
        # with one commit, COMMIT_1 == MAIN as a revision pair
        pairs = enumerate_pairs(ref(0), [ref(1)])
        assert len(pairs) == 1
        assert pairs[0].label is MAIN or pairs[0].label.key == "MAIN"

    def test_empty_change_set_raises(self):
        with pytest.raises(EmptyChangeSet):
            enumerate_pairs(ref(0), [])


GO_V1 = "package app\n\nfunc f() int {\n\treturn 1\n}\n"
GO_V2 = "package app\n\nfunc f() int {\n\treturn 2\n}\n"


class TestGitRepo:
    def test_resolve_and_short_label(self, repo_factory):
        b = repo_factory()
        b.write("a.go", GO_V1)
        sha = b.commit("one")
        repo = GitRepo(b.path)
        head = repo.resolve("HEAD")
        assert head.id == sha
        assert sha.startswith(head.short_label)
        assert len(head.short_label) < len(sha)

    def test_resolve_unknown_revision(self, repo_factory):
        b = repo_factory()
        b.write("a.go", GO_V1)
        b.commit("one")
        repo = GitRepo(b.path)
        with pytest.raises(RevisionNotFound):
            repo.resolve("no-such-branch")

    def test_commits_between_oldest_first(self, repo_factory):
        b = repo_factory()
        b.write("a.go", GO_V1)
        s1 = b.commit("one")
        b.write("a.go", GO_V2)
        s2 = b.commit("two")
        b.write("b.go", GO_V1)
        s3 = b.commit("three")
        repo = GitRepo(b.path)
        ids = [r.id for r in repo.commits_between(s1, s3)]
        assert ids == [s2, s3]

    def test_read_file_preserves_bytes_including_crlf(self, repo_factory):
        b = repo_factory()
        text = "package app\r\n\r\nfunc f() {\r\n}\r\n"
        b.write("w.go", text)
        sha = b.commit("crlf")
        repo = GitRepo(b.path)
        rev = repo.resolve(sha)
        assert repo.read_file(rev, "w.go") == text
        assert repo.read_file_bytes(rev, "w.go") == text.encode()

    def test_read_missing_file(self, repo_factory):
        b = repo_factory()
        b.write("a.go", GO_V1)
        sha = b.commit("one")
        repo = GitRepo(b.path)
        with pytest.raises(FileNotFound):
            repo.read_file(repo.resolve(sha), "ghost.go")

    def _pair(self, repo, s1, s2):
        return repo.enumerate_pairs(s1, head=s2)[0]

    def test_changed_files_statuses(self, repo_factory):
        b = repo_factory()
        b.write("mod.go", GO_V1)
        b.write("del.go", GO_V1)
        s1 = b.commit("one")
        b.write("mod.go", GO_V2)
        b.remove("del.go")
        # distinct enough that git -M never pairs it with del.go
        b.write("new.go", "package app\n\ntype Fresh struct {\n\tcount int\n\tname string\n}\n")
        s2 = b.commit("two")
        repo = GitRepo(b.path)
        changes = repo.changed_files(self._pair(repo, s1, s2))
        by_path = {c.display_path: c for c in changes}
        assert by_path["mod.go"].status is ChangeStatus.MODIFIED
        assert by_path["mod.go"].content_before == GO_V1
        assert by_path["mod.go"].content_after == GO_V2
        assert by_path["del.go"].status is ChangeStatus.DELETED
        assert by_path["del.go"].path_after is None
        assert by_path["del.go"].content_before == GO_V1
        assert by_path["new.go"].status is ChangeStatus.ADDED
        assert by_path["new.go"].path_before is None
        assert "Fresh" in by_path["new.go"].content_after

    def test_changed_files_sorted_by_display_path(self, repo_factory):
        b = repo_factory()
        b.write("z.go", GO_V1)
        b.write("a.go", GO_V1)
        s1 = b.commit("one")
        b.write("z.go", GO_V2)
        b.write("a.go", GO_V2)
        b.write("m.go", GO_V1)
        s2 = b.commit("two")
        repo = GitRepo(b.path)
        changes = repo.changed_files(self._pair(repo, s1, s2))
        assert [c.display_path for c in changes] == ["a.go", "m.go", "z.go"]

    def test_rename_detected_with_both_paths(self, repo_factory):
        b = repo_factory()
        b.write("old/name.go", GO_V1)
        s1 = b.commit("one")
        b.move("old/name.go", "new/name.go")
        s2 = b.commit("two")
        repo = GitRepo(b.path)
        changes = repo.changed_files(self._pair(repo, s1, s2))
        assert len(changes) == 1
        c = changes[0]
        assert c.status is ChangeStatus.RENAMED
        assert (c.path_before, c.path_after) == ("old/name.go", "new/name.go")
        assert c.content_before == c.content_after == GO_V1

    def test_binary_blob_flagged_without_content(self, repo_factory):
        b = repo_factory()
        b.write("blob.go", b"\x00\x01\x02GIF")
        s1 = b.commit("one")
        b.write("blob.go", b"\x00\x01\x03GIF")
        s2 = b.commit("two")
        repo = GitRepo(b.path)
        changes = repo.changed_files(self._pair(repo, s1, s2))
        assert changes[0].binary
        assert changes[0].content_before is None
        assert changes[0].content_after is None

    def test_unchanged_files_not_listed(self, repo_factory):
        b = repo_factory()
        b.write("same.go", GO_V1)
        b.write("mod.go", GO_V1)
        s1 = b.commit("one")
        b.write("mod.go", GO_V2)
        s2 = b.commit("two")
        repo = GitRepo(b.path)
        changes = repo.changed_files(self._pair(repo, s1, s2))
        assert [c.display_path for c in changes] == ["mod.go"]

    def test_enumerate_pairs_from_head_walk(self, repo_factory):
        b = repo_factory()
        b.write("a.go", GO_V1)
        s1 = b.commit("one")
        b.write("a.go", GO_V2)
        b.commit("two")
        b.write("b.go", GO_V1)
        s3 = b.commit("three")
        repo = GitRepo(b.path)
        pairs = repo.enumerate_pairs(s1, head=s3)
        assert [p.label.key for p in pairs] == ["MAIN", "COMMIT_2", "COMMIT_1"]
        assert pairs[0].before.id == s1
        assert pairs[0].after.id == s3
