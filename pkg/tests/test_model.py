from collections import Counter

import pytest

from refaware import golang
from refaware.errors import AdapterMismatch, KindMismatch
from refaware.model import (ElementKind, adapter_for, owner_name,
                            parse_source, signature_of)

SAMPLE = """\
package app

type Server struct {
\thost string
\tport int
}

func (s *Server) Start(timeout int) error {
\ts.port = timeout
\treturn nil
}

func add(a, b int, label string) (int, error) {
\treturn a + b, nil
}
"""


def parse(text, path="app/main.go"):
    return parse_source(path, text)


def by_name(elements, name):
    return next(e for e in elements if e.name == name)


class TestParsing:
    def test_file_element_first_and_spans_whole_file(self):
        elements = parse(SAMPLE)
        root = elements[0]
        assert root.kind is ElementKind.FILE
        assert root.qualified_name == "app/main.go"
        assert (root.start_line, root.end_line) == (1, 15)
        assert root.body_text == SAMPLE

    def test_declaration_kinds_and_spans(self):
        elements = parse(SAMPLE)
        server = by_name(elements, "Server")
        assert server.kind is ElementKind.TYPE_DECL
        assert (server.start_line, server.end_line) == (3, 6)
        start = by_name(elements, "Start")
        assert start.kind is ElementKind.FUNCTION
        assert (start.start_line, start.end_line) == (8, 11)
        add = by_name(elements, "add")
        assert (add.start_line, add.end_line) == (13, 15)

    def test_body_text_is_exact_source_slice(self):
        add = by_name(parse(SAMPLE), "add")
        assert add.body_text == (
            "func add(a, b int, label string) (int, error) {\n"
            "\treturn a + b, nil\n"
            "}\n")

    def test_container_is_the_file_element(self):
        elements = parse(SAMPLE)
        root = elements[0]
        for e in elements[1:]:
            assert e.container is root

    def test_qualified_names(self):
        elements = parse(SAMPLE)
        assert by_name(elements, "Server").qualified_name == "app/main.go::Server"
        assert by_name(elements, "Start").qualified_name == \
            "app/main.go::Server::Start(int)"
        assert by_name(elements, "add").qualified_name == \
            "app/main.go::add(int,int,string)"

    def test_duplicate_names_get_ordinal_suffix(self):
        text = "package a\n\nfunc f() {\n}\n\nfunc f() {\n}\n"
        elements = parse(text)
        qnames = [e.qualified_name for e in elements if e.kind is ElementKind.FUNCTION]
        assert qnames == ["app/main.go::f()", "app/main.go::f()#2"]

    def test_empty_file_yields_file_element_only(self):
        elements = parse("")
        assert len(elements) == 1
        assert elements[0].kind is ElementKind.FILE
        assert (elements[0].start_line, elements[0].end_line) == (1, 1)
        assert elements[0].tokens == Counter()

    def test_unbalanced_brace_drops_malformed_tail(self):
        text = "package a\n\nfunc good() {\n\treturn\n}\n\nfunc bad() {\n\tx :=\n"
        elements = parse(text)
        names = [e.name for e in elements if e.kind is ElementKind.FUNCTION]
        assert names == ["good"]

    def test_bodyless_declaration_spans_signature_line(self):
        text = "package a\n\nfunc jump(x int) int\n\nfunc other() {\n}\n"
        elements = parse(text)
        jump = by_name(elements, "jump")
        assert (jump.start_line, jump.end_line) == (3, 3)
        assert by_name(elements, "other").start_line == 5

    def test_nested_literal_not_an_element(self):
        text = ("package a\n\nfunc outer() {\n"
                "\tf := func(y int) int { return y }\n"
                "\t_ = f\n}\n")
        elements = parse(text)
        funcs = [e for e in elements if e.kind is ElementKind.FUNCTION]
        assert [f.name for f in funcs] == ["outer"]
        assert (funcs[0].start_line, funcs[0].end_line) == (3, 6)

    def test_grouped_type_block_skipped(self):
        text = "package a\n\ntype (\n\tA struct {\n\t}\n)\n"
        elements = parse(text)
        assert [e.kind for e in elements] == [ElementKind.FILE]

    def test_type_alias_not_an_element(self):
        elements = parse("package a\n\ntype ID = int\n\ntype Count int\n")
        assert [e.kind for e in elements] == [ElementKind.FILE]

    def test_brace_inside_string_does_not_confuse_spans(self):
        text = ('package a\n\nfunc f() string {\n'
                '\treturn "}{"\n}\n\nfunc g() {\n}\n')
        elements = parse(text)
        f = by_name(elements, "f")
        assert (f.start_line, f.end_line) == (3, 5)
        assert by_name(elements, "g").start_line == 7

    def test_crlf_source_parses_with_correct_spans(self):
        text = "package a\r\n\r\nfunc f() {\r\n\treturn\r\n}\r\n"
        elements = parse(text)
        f = by_name(elements, "f")
        assert (f.start_line, f.end_line) == (3, 5)
        assert f.body_text.endswith("}\r\n")

    def test_generic_function_and_type(self):
        text = ("package a\n\nfunc First[T any](vals []T) T {\n"
                "\treturn vals[0]\n}\n\ntype Pair[K any, V any] struct {\n"
                "\tk K\n\tv V\n}\n")
        elements = parse(text)
        first = by_name(elements, "First")
        assert first.signature.parameters == (("vals", "[]T"),)
        pair = by_name(elements, "Pair")
        assert pair.kind is ElementKind.TYPE_DECL


class TestSignatures:
    def test_grouped_parameters_distribute_type(self):
        add = by_name(parse(SAMPLE), "add")
        assert add.signature.parameters == (
            ("a", "int"), ("b", "int"), ("label", "string"))
        assert add.signature.results == ("int", "error")

    def test_unnamed_parameters(self):
        text = "package a\n\nfunc h(int, string) {\n}\n"
        h = by_name(parse(text), "h")
        assert h.signature.parameters == (("", "int"), ("", "string"))

    def test_variadic_parameter(self):
        text = "package a\n\nfunc v(prefix string, vals ...int) {\n}\n"
        v = by_name(parse(text), "v")
        assert v.signature.parameters == (("prefix", "string"), ("vals", "...int"))

    def test_named_results_keep_types_only(self):
        text = "package a\n\nfunc r() (n int, err error) {\n\treturn\n}\n"
        r = by_name(parse(text), "r")
        assert r.signature.results == ("int", "error")

    def test_receiver_and_owner(self):
        start = by_name(parse(SAMPLE), "Start")
        assert start.signature.receiver == "*Server"
        assert start.owner == "Server"

    def test_owner_name_strips_pointer_and_generics(self):
        assert owner_name("*Server") == "Server"
        assert owner_name("Queue[T]") == "Queue"
        assert owner_name("tree") == "tree"

    def test_signature_of_rejects_non_functions(self):
        root = parse(SAMPLE)[0]
        with pytest.raises(KindMismatch):
            signature_of(root)

    def test_func_type_parameter_not_treated_as_name(self):
        text = "package a\n\nfunc apply(fn func(int) int, x int) int {\n\treturn fn(x)\n}\n"
        apply_ = by_name(parse(text), "apply")
        assert apply_.signature.parameters == (("fn", "func(int) int"), ("x", "int"))


class TestTokenizer:
    def test_identifiers_keywords_numbers_operators(self):
        bag = golang.tokenize("x := a + b + 2\nreturn x\n")
        assert bag == Counter({
            "x": 2, ":=": 1, "a": 1, "+": 2, "b": 1, "2": 1, "return": 1})

    def test_string_literal_is_one_opaque_token(self):
        bag = golang.tokenize('s := "a + b"\n')
        assert bag['"a + b"'] == 1
        assert "a" not in bag and "+" not in bag

    def test_comments_dropped(self):
        bag = golang.tokenize("// x y z\nq := 1 /* w */\n")
        assert "x" not in bag and "w" not in bag
        assert bag["q"] == 1

    def test_raw_string_token(self):
        bag = golang.tokenize("p := `multi\nline`\n")
        assert bag["`multi\nline`"] == 1

    def test_multichar_operators_not_split(self):
        bag = golang.tokenize("a <<= 3\nb := a != 4\nc := b\n")
        assert bag["<<="] == 1
        assert bag["!="] == 1
        assert bag[":="] == 2
        assert "<" not in bag and "!" not in bag


class TestAdapterRegistry:
    def test_lookup_by_extension_case_insensitive(self):
        assert adapter_for("x/y/MAIN.GO") is not None
        assert adapter_for("x/y/main.go") is not None

    def test_unknown_extension_has_no_adapter(self):
        assert adapter_for("script.lua") is None
        with pytest.raises(AdapterMismatch):
            parse_source("script.lua", "print(1)")

    def test_explicit_adapter_must_claim_path(self):
        adapter = adapter_for("a.go")
        with pytest.raises(AdapterMismatch):
            parse_source("a.py", "x = 1", adapter)
