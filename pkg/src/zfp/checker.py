"""Finite-stage verification of the ZFP axioms in W and the ZF axioms in V.

Generic mode evaluates the (translated) axiom over the stage.  Its outer
universal variables, the ones reached from the top through foralls and
implication consequents, are enumerated by the checker itself over the
lower stage ``depth - margin``; everything below is handed to the compiled
evaluator over the full stage.  Enumeration is in canonical order, so the
first failure found is the lexicographically least counterexample.

Witness mode delegates to :mod:`zfp.witness`.
"""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional

from . import hf
from .axioms import (
    AXIOMS,
    DERIVED,
    INFINITY,
    SCHEMA_VARS,
    AxiomId,
    MetaContext,
    PhiInstance,
    ZF,
    ZFP,
    catalog_for,
    parse_axiom_id,
)
from .abbrev import expand
from .logic import free_vars
from .semantics import BudgetExceeded, Evaluator, star, v_structure, w_structure
from .surface import parse_with_names
from .syntax import Forall, H, Implies
from .witness import witness_check

HOLDS = "Holds"
FAILS = "Fails"
EXPECTED_FAIL = "ExpectedFailFinite"
SKIPPED = "Skipped"

GENERIC = "generic"
WITNESS = "witness"

DEFAULT_BUDGET = 20_000_000

# outer-variable rank reserve per statement
MARGINS = {
    ZFP: {
        "S1": 0, "S2": 1, "S3": 2, "S4": 0, "S5": 1, "S6": 0,
        "P1": 0, "P2": 1, "P3": 0, "P4": 0, "P5": 0,
        "SetPairing": 2, "Specification": 2, "CartesianProductExistence": 2,
        "ZFPCharProp": 1, "InfinityPretty": 0,
    },
    ZF: {
        "Extensionality": 0, "Union": 1, "PowerSet": 2, "Infinity": 0, "Replacement": 1,
        "Foundation": 0, "EmptySet": 2, "Pairing": 2, "Specification": 2,
        "KuratowskiCharProp": 2, "KuratowskiProjection": 2, "InfinityPretty": 0,
    },
}

# statements reported by check_all, in order
EXTRA_CHECKS = {ZFP: ("ZFPCharProp",), ZF: ("KuratowskiCharProp", "KuratowskiProjection")}

_STRUCTS: Dict[tuple, object] = {}
_CTXS: Dict[tuple, MetaContext] = {}


def structure_for(theory: str, depth: int):
    key = (theory, depth)
    if key not in _STRUCTS:
        _STRUCTS[key] = w_structure(depth) if theory == ZFP else v_structure(depth)
    return _STRUCTS[key]


def context_for(theory: str, depth: int) -> MetaContext:
    key = (theory, depth)
    if key not in _CTXS:
        _CTXS[key] = MetaContext(theory, depth)
    return _CTXS[key]


@dataclass
class CheckPlan:
    axiom: AxiomId
    depth: int
    mode: str = GENERIC
    margin: Optional[int] = None
    phi: Optional[PhiInstance] = None
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.margin is None:
            self.margin = MARGINS[self.axiom.theory].get(self.axiom.name, 0)
        if self.mode not in (GENERIC, WITNESS):
            raise ValueError(f"mode must be generic or witness, not {self.mode!r}")
        if not 0 <= self.margin <= self.depth:
            raise ValueError(f"margin {self.margin} outside 0..{self.depth}")

    @property
    def label(self) -> str:
        base = str(self.axiom)
        return f"{base}[{self.phi.name}]" if self.phi is not None else base


@dataclass
class CheckReport:
    axiom: str
    status: str
    margin: int
    mode: str
    depth: int
    counterexample: Optional[Dict[str, str]] = None
    millis: float = 0.0
    note: str = ""

    @property
    def ok(self) -> bool:
        """No unexpected failure."""
        return self.status != FAILS

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["counterexample"] is None:
            del d["counterexample"]
        if not d["note"]:
            del d["note"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _verdict(axiom: AxiomId, holds: bool) -> str:
    if axiom.name == INFINITY[axiom.theory]:
        return HOLDS if holds else EXPECTED_FAIL
    return HOLDS if holds else FAILS


def _render_env(env: Dict[str, object]) -> Dict[str, str]:
    return {k: hf.render(v) for k, v in env.items()}


def check_axiom(plan: CheckPlan) -> CheckReport:
    start = time.perf_counter()
    note = ""
    cex = None
    try:
        if plan.mode == WITNESS:
            holds, cex = witness_check(plan.axiom, context_for(plan.axiom.theory, plan.depth), plan.margin, plan.phi)
        else:
            holds, cex = _generic(plan)
        status = _verdict(plan.axiom, holds)
    except BudgetExceeded as err:
        status, note = SKIPPED, str(err)
    if status != FAILS:
        cex = None
    millis = (time.perf_counter() - start) * 1000
    return CheckReport(
        plan.label, status, plan.margin, plan.mode, plan.depth,
        _render_env(cex) if cex is not None else None, round(millis, 2), note,
    )


def translated_axiom(axiom: AxiomId, depth: int, phi=None, margin: Optional[int] = None):
    """The core formula the generic checker evaluates, and a var -> name map."""
    from .axioms import axiom_text

    confine = None
    if axiom.name in ("S5", "Replacement"):
        confine = depth - 1
    elif axiom.name == "KuratowskiProjection":
        confine = depth - (MARGINS[ZF]["KuratowskiProjection"] if margin is None else margin)
    text = axiom_text(axiom, phi, confine)
    sugar, names = parse_with_names(text, SCHEMA_VARS)
    f = expand(sugar, axiom.theory)
    if axiom.theory == ZFP:
        f = star(f)
    return f, {v: k for k, v in names.items()}


class _Walker:
    def __init__(self, ev: Evaluator, outer, names, stage: int):
        self.ev = ev
        self.outer = outer
        self.names = names
        self.stage = stage
        self.cache = {}
        self.guarded = {}

    def fn(self, node):
        # keyed by identity; the node is kept alive alongside its closure
        hit = self.cache.get(id(node))
        if hit is None:
            hit = self.cache[id(node)] = (self.ev.compile(node), node)
        return hit[0]

    def truth(self, node, env):
        fn, size, _ = self.fn(node)
        e = [None] * size
        for x, v in env.items():
            if x.index < size:
                e[x.index] = v
        return fn(e)

    def walk(self, g, env):
        """Counterexample env (dict Var -> value) or None."""
        if isinstance(g, Forall):
            # fast path: the evaluator's own generators usually avoid a full
            # sweep; enumerate only to locate the least counterexample
            hit = self.guarded.get(id(g))
            if hit is None:
                hit = self.guarded[id(g)] = (Forall(g.var, Implies(H(g.var, self.stage), g.body)), g)
            if self.truth(hit[0], env):
                return None
            for d in self.outer:
                env[g.var] = d
                bad = self.walk(g.body, env)
                if bad is not None:
                    return bad
            env.pop(g.var, None)
            return None
        if isinstance(g, Implies) and free_vars(g.left) <= env.keys():
            if not self.truth(g.left, env):
                return None
            return self.walk(g.right, env)
        if self.truth(g, env):
            return None
        return dict(env)


def _generic(plan: CheckPlan):
    s = structure_for(plan.axiom.theory, plan.depth)
    f, names = translated_axiom(plan.axiom, plan.depth, plan.phi, plan.margin)
    outer = s.tier(plan.depth - plan.margin)
    w = _Walker(Evaluator(s, budget=plan.budget), outer, names, plan.depth - plan.margin)
    bad = w.walk(f, {})
    if bad is None:
        return True, None
    return False, {names.get(x, f"x{x.index}"): v for x, v in sorted(bad.items())}


# -- aggregation ---------------------------------------------------------------


def plans_for(theory: str, depth: int, mode: str, margins: Optional[dict] = None,
              budget: int = DEFAULT_BUDGET, names=None) -> List[CheckPlan]:
    theory = theory.lower()
    names = names or (list(AXIOMS[theory]) + list(DERIVED[theory]) + list(EXTRA_CHECKS[theory]))
    out = []
    for name in names:
        aid = AxiomId(theory, name)
        m = (margins or {}).get(name)
        if aid.is_schema:
            for phi in catalog_for(aid):
                out.append(CheckPlan(aid, depth, mode, m, phi, budget))
        else:
            out.append(CheckPlan(aid, depth, mode, m, None, budget))
    return out


def check_all(theory: str, depth: int, mode: str = GENERIC, margins: Optional[dict] = None,
              budget: int = DEFAULT_BUDGET) -> List[CheckReport]:
    """Reports for every axiom (schemas over the phi catalogue), the derived
    lemmas and the pair characteristic property of the theory."""
    return [check_axiom(p) for p in plans_for(theory, depth, mode, margins, budget)]


def unexpected_failures(reports) -> List[CheckReport]:
    return [r for r in reports if r.status == FAILS]


class CrossValidationError(AssertionError):
    pass


def cross_validate(depth: int = 3, theories=(ZFP, ZF)) -> bool:
    """Generic and witness verdicts agree on every statement, else raise."""
    for theory in theories:
        for plan in plans_for(theory, depth, GENERIC):
            g = check_axiom(plan)
            wplan = CheckPlan(plan.axiom, depth, WITNESS, plan.margin, plan.phi)
            w = check_axiom(wplan)
            if g.status != w.status:
                raise CrossValidationError(
                    f"{plan.label} at depth {depth}: generic says {g.status}"
                    f" {g.counterexample or ''}, witness says {w.status} {w.counterexample or ''}"
                )
    return True


def minimal_margin(axiom, depth: int, phi=None, mode: str = GENERIC) -> Optional[int]:
    """Least margin at which the statement holds at this depth, if any."""
    if isinstance(axiom, str):
        axiom = parse_axiom_id(axiom)
    for m in range(depth + 1):
        r = check_axiom(CheckPlan(axiom, depth, mode, m, phi))
        if r.status == HOLDS:
            return m
    return None


def reports_json(reports) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


# -- accidental theorems -------------------------------------------------------


@dataclass
class SuiteItem:
    name: str
    holds: bool
    cases: int
    detail: str = ""


def _v_items(stage=3):
    V = hf.v_tier(stage).elems
    items = []
    bad = [(b, c) for b in V for c in V if not hf.mem(hf.singleton(b), hf.kpair(b, c))]
    items.append(SuiteItem(f"{{b}} in <b,c> for all b, c in V_{stage}", not bad, len(V) ** 2,
                           "" if not bad else f"fails at {hf.render(bad[0][0])}, {hf.render(bad[0][1])}"))
    zero, one = hf.vn(0), hf.vn(1)
    lhs, rhs = hf.singleton(hf.kpair(zero, zero)), hf.kpair(one, one)
    items.append(SuiteItem("{<0,0>} = <1,1> with von Neumann numerals", lhs is rhs, 1, hf.render(lhs)))
    bad = []
    for b in V:
        sb = hf.singleton(b)
        chain = (hf.singleton(hf.kpair(b, b)), hf.singleton(hf.singleton(sb)), hf.kpair(sb, sb))
        if not (chain[0] is chain[1] is chain[2]):
            bad.append(b)
    items.append(SuiteItem(f"{{<b,b>}} = {{{{{{b}}}}}} = <{{b}},{{b}}> for all b in V_{stage}", not bad, len(V),
                           "" if not bad else f"fails at {hf.render(bad[0])}"))
    return items


def _v_formula_item(depth=4):
    # the same statement through the abbreviation and semantics layers; the
    # pair terms stay defined for b, c two stages below the top
    s = structure_for(ZF, depth)
    f, names = parse_with_names("mem(Singleton(b), KPair(b, c))", {"b": SCHEMA_VARS["b"], "c": SCHEMA_VARS["c1"]})
    f = expand(f, ZF)
    ev = Evaluator(s)
    T = s.tier(depth - 2)
    b, c = names["b"], names["c"]
    bad = [(x, y) for x in T for y in T if not ev.evaluate(f, {b: x, c: y})]
    return SuiteItem(f"{{b}} in <b,c> evaluated in V({depth}) for b, c in V_{depth - 2}", not bad, len(T) ** 2)


def _w_items(depth=4):
    from . import whier

    u = whier.build_w(depth)
    D = u.domain
    pairs = u.mpairs()
    hits = [(a, p) for p in pairs for a in D if whier.mem_hat(a, p)]
    items = [SuiteItem(f"no m-pair of W_{depth} has a memh-member", not hits, len(pairs) * len(D),
                       "" if not hits else f"{hf.render(hits[0][0])} memh {hf.render(hits[0][1])}")]
    # two distinct memberless objects: the empty m-set and an m-pair
    e = whier.mset(())
    p = whier.mpair(e, e)
    q = whier.mpair(e, p)
    ok = e is not p and not whier.content(e) and not whier.content(p) and not whier.is_mset(q)
    items.append(SuiteItem("the primitive pair of two distinct empty-like objects is not an m-set", ok, 1))
    return items


def accidental_suite(v_stage: int = 3, w_depth: int = 4) -> List[SuiteItem]:
    """Encoding artefacts of Kuratowski pairs in V, and their absence in W."""
    return _v_items(v_stage) + [_v_formula_item(v_stage + 1)] + _w_items(w_depth)
