import pytest
from hypothesis import given, settings

from strategies import core_formulas, sugar_formulas
from zfp.logic import alpha_eq
from zfp.surface import ParseError, parse, parse_formula, parse_term, parse_with_names, print_formula, print_term
from zfp.syntax import (
    And, Atom, Forall, FormulaCall, Iff, Implies, Iota, Not, Or, Pred, Quant, Sep, TermCall, Var, eq, mem, pi1,
)

x0, x1, x2 = Var(0), Var(1), Var(2)


def test_simple_forall():
    assert parse_formula("forall x. x = x") == Forall(x0, eq(x0, x0))


def test_empty_description():
    t = parse_term("iota x. !(exists y. mem(y,x))")
    assert isinstance(t, Iota)
    assert t.body == Not(Quant("exists", x1, mem(x1, x0)))


def test_macro_calls_stay_sugar():
    f = parse_formula("mem(Singleton(b), KPair(b,c))")
    b, c = x0, x1
    assert f == mem(TermCall("Singleton", (b,)), TermCall("KPair", (b, c)))


def test_printing():
    assert print_formula(Forall(x0, eq(x0, x0))) == "forall x0. x0 = x0"
    assert print_formula(pi1(x0, x1)) == "pi1(x0, x1)"


def test_nested_iota_round_trip():
    f = Atom(Iota(x0, mem(x0, Iota(x1, mem(x1, x0)))), Pred.EQ, x2)
    text = print_formula(f)
    assert alpha_eq(parse_formula(text), f)


def test_precedence():
    a, b, c = (mem(Var(i), Var(i)) for i in range(3))
    names = {"a": x0, "b": x1, "c": x2}
    p = lambda s: parse_formula(s, names)
    assert p("mem(a,a) /\\ mem(b,b) \\/ mem(c,c)") == Or(And(a, b), c)
    assert p("!mem(a,a) /\\ mem(b,b)") == And(Not(a), b)
    assert p("mem(a,a) -> mem(b,b) -> mem(c,c)") == Implies(a, Implies(b, c))
    assert p("mem(a,a) <-> mem(b,b) -> mem(c,c)") == Iff(a, Implies(b, c))
    # binder bodies extend as far right as possible
    f = p("forall x. mem(x,x) -> mem(a,a)")
    assert isinstance(f, Forall) and isinstance(f.body, Implies)


def test_lexical_scoping():
    f, names = parse_with_names("mem(x, y) /\\ forall x. mem(x, y)")
    assert names["x"] != names["y"]
    inner = f.right
    assert inner.body.left == inner.var
    assert f.left.left == names["x"]


def test_bounded_and_restricted_binders():
    f = parse_formula("forall_set x in y. exists_pair p. pi1(x, p)")
    assert isinstance(f, Quant) and f.restrict == "Set" and f.bound is not None
    assert f.body.restrict == "Pair"


def test_set_builder_and_inequality():
    f = parse_formula("{b in X | b != X} = Empty()")
    assert isinstance(f.left, Sep)
    assert f.left.body == Not(eq(f.left.var, f.left.bound))


def test_formula_macros():
    assert isinstance(parse_formula("Subset(x, y)"), FormulaCall)
    assert isinstance(parse("Union(x)"), TermCall)


@pytest.mark.parametrize("text", ["forall x.", "mem(x", "x = ", "(x = y", "mem(x, y) garbage", "forall Set(x). x = x"])
def test_errors_have_positions(text):
    with pytest.raises(ParseError) as err:
        parse_formula(text)
    assert err.value.line >= 1 and err.value.column >= 1


def test_error_column():
    with pytest.raises(ParseError) as err:
        parse_formula("x = y /\\\n  = z")
    assert err.value.line == 2


def test_long_chains_parse_quickly():
    text = " /\\ ".join(f"mem(x{i}, x{i + 1})" for i in range(60))
    f = parse_formula(text)
    assert print_formula(f) == text


@settings(max_examples=10_000)
@given(sugar_formulas())
def test_round_trip_sugar(f):
    assert alpha_eq(parse_formula(print_formula(f)), f)


@settings(max_examples=2_000)
@given(core_formulas())
def test_round_trip_core(f):
    assert alpha_eq(parse_formula(print_formula(f)), f)


def test_print_term():
    assert print_term(TermCall("Empty", ())) == "Empty()"
    assert print_term(Iota(x0, eq(x0, x0))) == "(iota x0. x0 = x0)"
