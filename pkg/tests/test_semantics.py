import itertools
import random

import pytest
from hypothesis import given, strategies as st

from strategies import core_formulas
from zfp import hf, whier
from zfp.abbrev import ZF, ZFP, expand
from zfp.logic import eliminate_iota, exists, free_vars
from zfp.semantics import (
    EXISTENTIAL_CATALOG, UNDEFINED, BudgetExceeded, Evaluator, UnboundVariable, ambient_structure,
    custom_structure, eval_formula, eval_term, existential_pair, parse_structure, random_structure, star,
    star_term, v_structure, w_structure,
)
from zfp.surface import parse_formula, parse_term
from zfp.syntax import H, Atom, Forall, Implies, Iota, Not, Pred, Pure, Var, eq, mem, pi1

x, y, z = Var(0), Var(1), Var(2)
NEVER = Iota(x, Not(eq(x, x)))


def test_empty_in_v2():
    t = expand(parse_term("Empty()"), ZF)
    assert eval_term(t, v_structure(2), {}) is hf.EMPTY


def test_empty_in_w3_is_the_tagged_empty_set():
    s = w_structure(3)
    t = star_term(expand(parse_term("Empty()"), ZFP))
    got = eval_term(t, s, {})
    assert got is whier.mset(())
    # independent oracle: the only tag-0 element without hat-members
    cands = [e for e in s.domain if whier.is_mset(e) and not any(whier.mem_hat(a, e) for a in s.domain)]
    assert cands == [got]


def test_undefined_description():
    assert eval_term(NEVER, v_structure(2), {}) is UNDEFINED
    with pytest.raises(TypeError):
        bool(UNDEFINED)


def test_undefined_is_not_equal_to_itself():
    s = v_structure(2)
    assert eval_formula(Atom(NEVER, Pred.EQ, NEVER), s) is False
    assert eval_formula(Not(Atom(NEVER, Pred.MEM, x)), s, {x: hf.EMPTY}) is True


def test_accidental_theorem_needs_room_for_the_pair():
    # in V(4) the pair terms for b, c in V_2 exist and the statement holds;
    # in V(3) some pair terms fall outside the stage and the atom is false
    f = expand(parse_formula("mem(Singleton(b), KPair(b,c))", {"b": x, "c": y}), ZF)
    s4 = v_structure(4)
    for b, c in itertools.product(s4.tier(2), repeat=2):
        assert eval_formula(f, s4, {x: b, y: c})
    s3 = v_structure(3)
    vals = [eval_formula(f, s3, {x: b, y: c}) for b, c in itertools.product(s3.domain, repeat=2)]
    assert any(vals) and not all(vals)


def test_char_prop_in_w3_with_margin():
    from zfp.checker import CheckPlan, check_axiom, HOLDS, FAILS
    from zfp.axioms import parse_axiom_id

    aid = parse_axiom_id("zfp.ZFPCharProp")
    assert check_axiom(CheckPlan(aid, 3, margin=1)).status == HOLDS
    # over all 17 elements the top-rank pairs are undefined and both sides
    # of (a,b) = (c,d) are undefined, so the biconditional fails
    assert check_axiom(CheckPlan(aid, 3, margin=0)).status == FAILS


def test_unbound_variable_is_an_error():
    with pytest.raises(UnboundVariable):
        eval_formula(mem(x, y), v_structure(2), {x: hf.EMPTY})


def test_star_examples():
    assert star(mem(x, y)) == Atom(x, Pred.MEM_HAT, y)
    assert star(Forall(x, eq(x, x))) == Forall(x, Implies(H(x), eq(x, x)))
    got = star(expand(parse_formula("Pair(x)", {"x": x}), ZFP))
    a = Var(1)
    assert got == Not(Forall(a, Implies(H(a), Not(Atom(a, Pred.PI1_HAT, x)))))


def test_pure_marker():
    s = w_structure(3)
    e = whier.mset(())
    assert eval_formula(Pure(x), s, {x: e})
    assert not eval_formula(Pure(x), s, {x: whier.mpair(e, e)})
    with pytest.raises(ValueError):
        eval_formula(Pure(x), v_structure(2), {x: hf.EMPTY})


def test_h_is_trivial_on_w_and_not_on_the_ambient_structure():
    w = w_structure(2)
    assert eval_formula(Forall(x, H(x)), w)
    amb = ambient_structure(2)
    assert not eval_formula(Forall(x, H(x)), amb)
    assert eval_formula(H(x, 1), w, {x: whier.mset(())})
    assert not eval_formula(H(x, 1), w, {x: whier.mpair(whier.mset(()), whier.mset(()))})


@pytest.mark.parametrize("text", EXISTENTIAL_CATALOG)
def test_translation_existential(text):
    lhs, rhs = existential_pair(text)
    for s in (w_structure(2), ambient_structure(2)):
        ev = Evaluator(s)
        params = s.tier(None)
        for yv, zv in itertools.product(params, repeat=2):
            env = {y: yv, z: zv}
            assert ev.evaluate(lhs, env) == ev.evaluate(rhs, env)


def test_translation_matches_reinterpreted_evaluation():
    # on W(N), phi* evaluated with hat relations = phi evaluated with the
    # plain symbols read as hat relations
    s = w_structure(2)
    for text in EXISTENTIAL_CATALOG:
        phi = expand(parse_formula(text, {"x": x, "y": y, "z": z}), ZFP)
        for env_vals in itertools.product(s.domain, repeat=3):
            env = dict(zip((x, y, z), env_vals))
            assert eval_formula(star(phi), s, env) == eval_formula(phi, s, env)


@given(core_formulas(max_leaves=8), st.integers(0, 10 ** 6))
def test_compiled_evaluator_matches_reference(f, seed):
    s = random_structure(random.Random(seed), max_size=3)
    ev = Evaluator(s)
    fv = sorted(free_vars(f))
    for vals in itertools.product(s.domain, repeat=len(fv)):
        env = dict(zip(fv, vals))
        assert ev.evaluate(f, env) == eval_formula(f, s, env)


@given(core_formulas(max_leaves=8))
def test_compiled_evaluator_matches_reference_on_w2(f):
    s = w_structure(2)
    ev = Evaluator(s)
    fv = sorted(free_vars(f))
    for vals in itertools.product(s.domain, repeat=len(fv)):
        env = dict(zip(fv, vals))
        assert ev.evaluate(f, env) == eval_formula(f, s, env)


def test_strictness_under_exists_unique():
    # exists! y. y = iota(...) with an undefined description has no witness
    s = v_structure(2)
    f = expand(parse_formula("existsu y. y = (iota x. x != x)"), ZF)
    assert not eval_formula(f, s)
    assert not Evaluator(s).evaluate(f, {})


def test_iota_elimination_agrees_exhaustively_on_size_three():
    f = Atom(Iota(x, mem(x, y)), Pred.MEM, Iota(z, pi1(z, y)))
    g = eliminate_iota(f)
    pairs = [(i, j) for i in range(3) for j in range(3)]
    rng = random.Random(5)
    for _ in range(200):
        rel = [p for p in pairs if rng.random() < 0.4]
        s = custom_structure(3, rel, rel[::2], rel[1::2])
        for yv in s.domain:
            assert eval_formula(f, s, {y: yv}) == eval_formula(g, s, {y: yv})


def test_budget():
    s = v_structure(4)
    f = Forall(x, Forall(y, Forall(z, Implies(mem(x, y), Implies(mem(y, z), Not(mem(z, x)))))))
    with pytest.raises(BudgetExceeded):
        Evaluator(s, budget=100).evaluate(f, {})
    assert Evaluator(s).evaluate(f, {})


def test_parse_structure():
    assert parse_structure("w:2").name == "W(2)"
    assert len(parse_structure("v:3").domain) == 4
    with pytest.raises(ValueError):
        parse_structure("q:3")


def test_existential_catalog_size():
    assert len(EXISTENTIAL_CATALOG) >= 10
    lhs, rhs = existential_pair("mem(x, y)")
    assert lhs != rhs and free_vars(lhs) == {y}
    assert exists(x, Atom(x, Pred.MEM, y)) != lhs
