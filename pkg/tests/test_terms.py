import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from funcons import NotGroundError, ParseError, UnknownFunconError, ArityError, parse_term, print_term
from funcons.terms import (
    EMPTY,
    NULL,
    TRUE,
    AbsVal,
    App,
    Bool,
    Char,
    Datatype,
    Int,
    Link,
    MapVal,
    Seq,
    SetVal,
    TypeVal,
    Variable,
    identifier,
    is_ground,
    seq,
    string,
    type_member,
    value_equal,
)

from strategies import ground_values


def T(name, *args):
    return TypeVal(name, tuple(args))


class TestParse:
    def test_while_true_break(self):
        t = parse_term("while-true(true, abrupt(broken))")
        assert t == App("while-true", (TRUE, App("abrupt", (Datatype("broken"),))))

    def test_null_value_is_a_value(self):
        assert parse_term("null-value") == NULL

    def test_no_evaluation_at_parse_time(self):
        assert parse_term("integer-add(1,2,3)") == App("integer-add", (Int(1), Int(2), Int(3)))

    def test_alias_is_canonicalised(self):
        t = parse_term("alloc-init(integers, 1)")
        assert t == App("allocate-initialised-variable", (T("integers"), Int(1)))
        assert print_term(parse_term("assigned-value(given)")) == "assigned(given)"

    def test_literals(self):
        assert parse_term('"ab"') == string("ab")
        assert parse_term("'\\n'") == Char("\n")
        assert parse_term("[1, 2]") == Datatype("list", (Int(1), Int(2)))
        assert parse_term("{1, 2}") == SetVal(frozenset({Int(1), Int(2)}))
        assert parse_term("{1 |-> true}") == MapVal({Int(1): (TRUE,)})
        assert parse_term("{ }") == MapVal()
        assert parse_term("( )") == EMPTY
        assert parse_term("-7") == Int(-7)

    def test_whitespace_insensitive(self):
        assert parse_term(" integer-add ( 1 ,\n 2 ) ") == parse_term("integer-add(1,2)")

    @pytest.mark.parametrize(
        "text, err",
        [
            ("integer-add(1,", ParseError),
            ("frobnicate(1)", UnknownFunconError),
            ("if-true-else(true)", ArityError),
            ("given(1)", ArityError),
            ("1 2", ParseError),
            ("", ParseError),
            ("'\\q'", ParseError),
            ("@", ParseError),
        ],
    )
    def test_errors(self, text, err):
        with pytest.raises(err):
            parse_term(text)

    def test_parse_error_position(self):
        with pytest.raises(ParseError) as e:
            parse_term("print(1,\n  @)")
        assert (e.value.line, e.value.column) == (2, 3)


class TestPrint:
    @pytest.mark.parametrize(
        "text",
        [
            "42",
            "( )",
            "(1, 2)",
            "null-value",
            "tuple( )",
            "[ ]",
            "[1, [2]]",
            '"hi\\n"',
            "set( )",
            "{ }",
            "{1, 2}",
            '{identifier("x") |-> 1}',
            "scope({ }, given)",
            "abstraction(print(given))",
            "bounded(0, 255)",
            "functions(values, values)",
            "effect( )",
            "thrown(failed)",
            "'c'",
        ],
    )
    def test_canonical_round_trip(self, text):
        assert print_term(parse_term(text)) == text

    def test_set_printing_is_order_independent(self):
        assert print_term(parse_term("{3, 1, 2}")) == "{1, 2, 3}"

    def test_machine_values(self):
        assert print_term(Variable(3, T("integers"))) == "variable(#3: integers)"
        assert print_term(Link(0)) == "link(#0)"

    def test_map_entry_hiding_a_binding(self):
        assert print_term(MapVal({identifier("x"): ()})) == '{identifier("x") |-> ( )}'

    @settings(max_examples=200)
    @given(ground_values)
    def test_round_trip_generated(self, v):
        assert parse_term(print_term(v)) == v


class TestSequences:
    def test_seq_flattens(self):
        assert seq([Int(1), Seq((Int(2), Int(3)))]) == Seq((Int(1), Int(2), Int(3)))

    def test_singleton_is_element(self):
        assert seq([Seq((Int(1),))]) == Int(1)


class TestEquality:
    def test_examples(self):
        broken = Datatype("broken")
        assert value_equal(broken, broken)
        assert not value_equal(Int(0), NULL)
        assert value_equal(SetVal(frozenset({Int(1), Int(2)})), SetVal(frozenset({Int(2), Int(1)})))

    def test_int_and_bool_are_distinct(self):
        assert not value_equal(Int(1), Bool(True))

    def test_maps_are_extensional(self):
        a = MapVal({Int(1): (TRUE,), Int(2): (NULL,)})
        b = MapVal({Int(2): (NULL,), Int(1): (TRUE,)})
        assert value_equal(a, b) and hash(a) == hash(b)

    @pytest.mark.parametrize("v", [AbsVal(App("given", ())), Variable(0, T("values")), Link(1)])
    def test_non_ground_rejected(self, v):
        with pytest.raises(NotGroundError):
            value_equal(v, v)
        with pytest.raises(NotGroundError):
            value_equal(Int(1), Datatype("tuple", (v,)))

    @given(ground_values, ground_values, ground_values)
    def test_equivalence_relation(self, a, b, c):
        assert value_equal(a, a)
        assert value_equal(a, b) == value_equal(b, a)
        if value_equal(a, b) and value_equal(b, c):
            assert value_equal(a, c)

    @given(st.lists(ground_values, max_size=3), st.sampled_from([AbsVal(NULL), Link(0)]), st.booleans())
    def test_ground_closure(self, args, bad, include):
        items = args + [bad] if include else args
        assert is_ground(Datatype("c", tuple(items))) == all(is_ground(a) for a in items)


class TestTypes:
    def test_examples(self):
        assert type_member(Int(5), T("naturals"))
        assert not type_member(Int(-1), T("bounded", Int(0), Int(255)))
        fn_type = T("functions", T("values"), T("values"))
        assert not type_member(AbsVal(NULL), fn_type)
        assert type_member(Datatype("function", (AbsVal(NULL),)), fn_type)

    @pytest.mark.parametrize(
        "v, t, expected",
        [
            (Int(255), T("bounded", Int(0), Int(255)), True),
            (string("ab"), T("strings"), True),
            (Datatype("list", (Int(1),)), T("lists", T("integers")), True),
            (Datatype("list", (TRUE,)), T("lists", T("integers")), False),
            (Datatype("tuple", (Int(1), TRUE)), T("tuples", T("integers"), T("booleans")), True),
            (Datatype("tuple", (Int(1),)), T("tuples", T("integers"), T("booleans")), False),
            (identifier("x"), T("identifiers"), True),
            (MapVal({identifier("x"): (Int(1),)}), T("environments"), True),
            (MapVal({Int(1): (Int(1),)}), T("environments"), False),
            (NULL, T("null-type"), True),
            (Int(0), T("null-type"), False),
            (T("integers"), T("value-types"), True),
            (Datatype("thunk", (AbsVal(NULL),)), T("thunks", T("values")), True),
            (Variable(0, T("values")), T("variables"), True),
            (AbsVal(NULL), T("ground-values"), False),
            (Int(0), T("no-such-type"), False),
        ],
    )
    def test_membership(self, v, t, expected):
        assert type_member(v, t) is expected

    @given(ground_values)
    def test_values_contains_everything(self, v):
        assert type_member(v, T("values"))
