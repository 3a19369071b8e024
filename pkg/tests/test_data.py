import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from funcons import (
    Abrupted,
    ArityError,
    EntityState,
    Normal,
    Stuck,
    datatype_construct,
    parse_term,
    print_term,
    run,
)
from funcons.terms import EMPTY, FALSE, NULL, TRUE, Datatype, Int, env, list_value, seq

from strategies import ground_values

FAILED = Datatype("failed")


def result(text, state=None):
    return run(parse_term(text), state).termination


def value(text, state=None):
    t = result(text, state)
    assert isinstance(t, Normal), t
    return print_term(seq(t.result))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("and(true, false)", "false"),
        ("and( )", "true"),
        ("or(false, false, true)", "true"),
        ("not(not(true))", "true"),
        ("implies(true, false)", "false"),
        ("exclusive-or(true, true)", "false"),
        ("is-equal(broken, broken)", "true"),
        ("is-equal(0, null-value)", "false"),
        ("is-equal({1, 2}, {2, 1})", "true"),
        ("integer-add(1, 2, 3)", "6"),
        ("integer-multiply( )", "1"),
        ("integer-subtract(3, 10)", "-7"),
        ("integer-divide(7, 0)", "( )"),
        ("integer-divide(-7, 2)", "-3"),
        ("integer-modulo(-7, 2)", "-1"),
        ("integer-modulo(7, 0)", "( )"),
        ("integer-negate(4)", "-4"),
        ("integer-absolute-value(-4)", "4"),
        ("is-less(1, 2)", "true"),
        ("is-greater-or-equal(1, 2)", "false"),
        ("natural-successor(4)", "5"),
        ("natural-predecessor(0)", "( )"),
        ("bounded-cast(bounded(0, 255), 300)", "( )"),
        ("bounded-cast(bounded(0, 255), 30)", "30"),
        ("integer-add(100000000000000000000, 1)", "100000000000000000001"),
    ],
)
def test_primitives(text, expected):
    assert value(text) == expected


def test_ill_typed_strict_argument_is_stuck():
    assert isinstance(result("integer-add(1, true)"), Stuck)
    assert isinstance(result("not(1)"), Stuck)


def test_is_equal_on_abstractions_is_stuck():
    assert isinstance(result("is-equal(abstraction(1), abstraction(1))"), Stuck)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("list-elements([1, 2])", "(1, 2)"),
        ("list(list-elements([1, 2]))", "[1, 2]"),
        ("head([ ])", "( )"),
        ("head([4, 5])", "4"),
        ("tail([4, 5])", "[5]"),
        ("tail([ ])", "( )"),
        ("reverse([1, 2, 3])", "[3, 2, 1]"),
        ("length([1, 2, 3])", "3"),
        ("cons(0, [1])", "[0, 1]"),
        ("concatenate([1], [ ], [2, 3])", "[1, 2, 3]"),
        ("index(2, 7, 8, 9)", "8"),
        ("index(4, 7, 8, 9)", "( )"),
        ("tuple-elements(tuple(1, 2))", "(1, 2)"),
        ("tuple( )", "tuple( )"),
        ("set-elements({2, 1})", "(1, 2)"),
        ("is-in-set(1, {1})", "true"),
        ("set-insert(3, {1})", "{1, 3}"),
        ("set-unite({1}, {2})", "{1, 2}"),
        ("set-intersect({1, 2}, {2, 3})", "{2}"),
        ("set-difference({1, 2}, {2})", "{1}"),
        ("set-size({1, 2})", "2"),
        ("map-lookup({ }, 1)", "( )"),
        ("map-lookup({1 |-> 2}, 1)", "2"),
        ("map-domain({1 |-> 2, 3 |-> 4})", "{1, 3}"),
        ('map-override({"x" |-> 1}, {"x" |-> 2, "y" |-> 3})', '{"x" |-> 1, "y" |-> 3}'),
        ("map-unite({1 |-> 2}, {3 |-> 4})", "{1 |-> 2, 3 |-> 4}"),
        ("map-delete({1 |-> 2, 3 |-> 4}, {1})", "{3 |-> 4}"),
        ("map-elements({1 |-> 2})", "tuple(1, 2)"),
    ],
)
def test_composites(text, expected):
    assert value(text) == expected


def test_map_unite_overlap_fails():
    assert result("map-unite({1 |-> 2}, {1 |-> 3})") == Abrupted(FAILED)


def test_set_of_non_ground_is_stuck():
    assert isinstance(result("set(abstraction(1))"), Stuck)


class TestDatatypes:
    def test_construct(self):
        assert datatype_construct("thrown", [Int(5)]) == Datatype("thrown", (Int(5),))
        assert datatype_construct("returned", [Int(7)]) == Datatype("returned", (Int(7),))
        assert datatype_construct("null", []) == NULL

    def test_arity(self):
        with pytest.raises(ArityError):
            datatype_construct("thrown", [Int(1), Int(2)])

    def test_constructors_are_inert(self):
        assert value("thrown(integer-add(1, 1))") == "thrown(2)"
        r = run(parse_term("thrown(1)"))
        assert r.steps == 0


class TestAbstractions:
    def test_dynamic_binding(self):
        assert value('enact(abstraction(bound-value("x")))', EntityState(env=env(x=Int(3)))) == "3"

    def test_identity_function(self):
        assert value("apply(function(closure(given)), 9)") == "9"

    def test_static_binding(self):
        t = 'scope({identifier("x") |-> 2}, enact(scope({identifier("x") |-> 1}, closure(bound-value("x")))))'
        assert value(t) == "1"

    def test_closure_twice_under_different_environments(self):
        f = 'scope({identifier("x") |-> 1}, closure(bound-value("x")))'
        t = f'give({f}, left-to-right(scope({{identifier("x") |-> 5}}, enact(given)), scope({{identifier("x") |-> 6}}, enact(given))))'
        assert value(t) == "(1, 1)"

    def test_force_hides_given(self):
        assert isinstance(result("give(1, force(thunk(abstraction(given))))"), Stuck)

    def test_supply_defers(self):
        t = "give(supply(function(abstraction(print(given))), 4), sequential(print(0), force(given)))"
        r = run(parse_term(t))
        assert r.output == (Int(0), Int(4))

    def test_compose(self):
        t = "apply(compose(function(closure(integer-add(given, 1))), function(closure(integer-multiply(given, 2)))), 5)"
        assert value(t) == "11"

    def test_partial_apply(self):
        t = "apply(partial-apply(function(closure(integer-subtract(index(1, tuple-elements(given)), index(2, tuple-elements(given))))), 10), 3)"
        assert value(t) == "7"

    def test_apply_rejects_non_function(self):
        assert isinstance(result("apply(abstraction(given), 1)"), Stuck)

    def test_uncurry_of_one_tuple_is_stuck(self):
        f = "curry(function(closure(index(1, tuple-elements(given)))))"
        assert isinstance(result(f"apply(uncurry({f}), tuple(1))"), Stuck)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(-50, 50), st.integers(-50, 50))
    def test_curry_uncurry_inverse(self, x, y):
        f = "function(closure(integer-subtract(index(1, tuple-elements(given)), index(2, tuple-elements(given)))))"
        direct = run(parse_term(f"apply({f}, tuple({x}, {y}))"))
        round_trip = run(parse_term(f"apply(uncurry(curry({f})), tuple({x}, {y}))"))
        assert direct.termination == round_trip.termination == Normal((Int(x - y),))


class TestPatterns:
    def test_bind(self):
        assert value('match(5, pattern-bind("x"))') == '{identifier("x") |-> 5}'

    def test_value_mismatch_fails(self):
        assert result("match(5, pattern-value(6))") == Abrupted(FAILED)

    def test_value_match(self):
        assert value("match(6, pattern-value(6))") == "{ }"

    def test_any(self):
        assert value("match(tuple(1), pattern-any)") == "{ }"

    def test_tuple(self):
        t = 'match(tuple(1, 2), pattern-tuple(pattern-bind("x"), pattern-bind("y")))'
        assert value(t) == '{identifier("x") |-> 1, identifier("y") |-> 2}'

    def test_structure_mismatch_fails(self):
        assert result('match(tuple(1), pattern-tuple(pattern-bind("x"), pattern-any))') == Abrupted(FAILED)
        assert result('match([1], pattern-tuple(pattern-bind("x")))') == Abrupted(FAILED)

    def test_ground_parts_compared(self):
        assert value('match(tuple(1, 2), tuple(pattern-bind("x"), 2))') == '{identifier("x") |-> 1}'
        assert result('match(tuple(1, 3), tuple(pattern-bind("x"), 2))') == Abrupted(FAILED)

    def test_duplicate_binding_fails(self):
        t = 'match(tuple(1, 2), pattern-tuple(pattern-bind("x"), pattern-bind("x")))'
        assert result(t) == Abrupted(FAILED)

    def test_else_recovers(self):
        assert value("else(match(5, pattern-value(6)), 0)") == "0"


@given(st.lists(ground_values, max_size=4))
def test_list_round_trip(items):
    lst = list_value(items)
    r = run(parse_term(f"list(list-elements({print_term(lst)}))"))
    assert r.termination == Normal((lst,))


_maps = st.dictionaries(st.integers(0, 5), st.integers(0, 9), max_size=4).map(
    lambda d: "{" + ", ".join(f"{k} |-> {v}" for k, v in d.items()) + "}" if d else "{ }"
)


@settings(max_examples=50, deadline=None)
@given(_maps, _maps, _maps)
def test_map_override_laws(a, b, c):
    left = run(parse_term(f"map-override({a}, map-override({b}, {c}))")).termination
    right = run(parse_term(f"map-override(map-override({a}, {b}), {c})")).termination
    assert left == right
    (merged,) = run(parse_term(f"map-override({a}, {b})")).termination.result
    (ma,) = run(parse_term(a)).termination.result
    for k in ma.keys():
        assert merged.get(k) == ma.get(k)


def test_booleans_constants():
    assert parse_term("true") == TRUE and parse_term("false") == FALSE
    assert parse_term("( )") == EMPTY
