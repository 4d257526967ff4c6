"""Witness-guided checking: each axiom verified directly at the meta level.

Instead of searching the stage for existential witnesses, the witness a
textbook proof would name is built (the union, the power set
``<0, {0} x P(x')>``, the m-pair ``<1, <a, b>>``, the Replacement image,
...), checked to lie inside the stage, and checked against the defining
property with meta-level set operations.  No formula evaluation is
involved, which makes this an independent second opinion on the generic
checker and the only feasible route at W_4.

Each check returns ``None`` when the statement holds, otherwise a dict
naming a counterexample (variable name -> value).  Infinity checks return
the truth value instead, since their failure is expected.
"""
from __future__ import annotations

import itertools
from typing import Callable, Dict, Optional

from . import hf, whier
from .axioms import AxiomId, MetaContext, PhiInstance, ZF, ZFP


class WitnessUnavailable(ValueError):
    """No meta-level construction is known (e.g. a user-supplied phi)."""


def _members(ctx, x):
    return frozenset(ctx.members(x))


def _sets(ctx, xs):
    return [x for x in xs if ctx.is_set(x)]


def _extensionality(ctx, T, phi):
    seen = {}
    for x in _sets(ctx, T):
        key = _members(ctx, x)
        other = seen.setdefault(key, x)
        if other is not x:
            return {"x": other, "y": x}
    return None


def _union(ctx, T, phi):
    for x in _sets(ctx, T):
        want = set()
        for z in ctx.members(x):
            want |= set(ctx.members(z))
        y = ctx.make_set(want)
        if y is None or _members(ctx, y) != want:
            return {"x": x}
    return None


def _power(ctx, T, phi):
    D = ctx.domain
    for x in _sets(ctx, T):
        xs = tuple(sorted(ctx.members(x), key=hf._key))
        subsets = [ctx.make_set(c) for r in range(len(xs) + 1) for c in itertools.combinations(xs, r)]
        if any(s is None for s in subsets):
            return {"x": x}
        y = ctx.make_set(subsets)
        if y is None:
            return {"x": x}
        # the defining property, checked against every z of the stage
        mx = _members(ctx, x)
        want = {z for z in D if ctx.is_set(z) and _members(ctx, z) <= mx}
        if _members(ctx, y) != want:
            return {"x": x, "y": y}
    return None


def infinity_holds(ctx: MetaContext) -> bool:
    """Is there a y containing an empty set and closed under x -> x u {x}?"""
    for y in ctx.domain:
        my = _members(ctx, y)
        if not any(ctx.is_set(z) and not ctx.members(z) for z in my):
            continue
        contents = {_members(ctx, s) for s in my if ctx.is_set(s)}
        if all((_members(ctx, x) | {x}) in contents for x in my):
            return True
    return False


def _replacement(ctx, T, phi: PhiInstance, confine: int):
    if phi is None or phi.graph is None:
        raise WitnessUnavailable("Replacement needs a catalogued phi with a meta-level graph")
    keep = lambda bs: frozenset(b for b in bs if ctx.in_tier(b, confine))
    for c1, c2, x in itertools.product(T, repeat=3):
        images = {}
        functional = True
        for a in ctx.members(x):
            bs = keep(phi.graph(a, c1, c2, ctx))
            if len(bs) != 1:
                functional = False
                break
            images[a] = bs
        if not functional:
            continue
        image = frozenset().union(*images.values()) if images else frozenset()
        y = ctx.make_set(image)
        if y is None:
            return {"c1": c1, "c2": c2, "x": x}
        got = frozenset(b for b in ctx.tier(confine) if b in ctx.members(y))
        if got != image:
            return {"c1": c1, "c2": c2, "x": x, "y": y}
    return None


def _foundation(ctx, T, phi):
    empty = ctx.empty()
    for x in _sets(ctx, T):
        mx = _members(ctx, x)
        if not mx:
            if x is not empty:
                return {"x": x}
            continue
        ok = False
        for a in mx:
            preds = set(ctx.members(a))
            if ctx.dialect == ZFP:
                pr = whier.projections(a)
                if pr is not None:
                    preds |= set(pr)
            if not (preds & mx):
                ok = True
                break
        if not ok:
            return {"x": x}
    return None


def _is_pair(ctx, p) -> bool:
    pr = whier.projections(p)
    return pr is not None and pr[0] in ctx.domain_set


def _p1(ctx, T, phi):
    for p in T:
        if _is_pair(ctx, p) and whier.content(p):
            return {"p": p}
    return None


def _p2(ctx, T, phi):
    for a, b in itertools.product(T, repeat=2):
        p = ctx.mpair(a, b)
        if p is None or not (whier.pi1_hat(a, p) and whier.pi2_hat(b, p)):
            return {"a": a, "b": b}
    return None


def _p3(ctx, T, phi):
    for p in T:
        pr = whier.projections(p)
        first = pr is not None and pr[0] in ctx.domain_set
        second = pr is not None and pr[1] in ctx.domain_set
        if first != second:
            return {"p": p}
    return None


def _p4(ctx, T, phi):
    for p in T:
        if not _is_pair(ctx, p):
            continue
        firsts = [a for a in whier.projections(p)[:1] if whier.pi1_hat(a, p)]
        seconds = [b for b in whier.projections(p)[1:] if whier.pi2_hat(b, p)]
        if len(firsts) != 1 or len(seconds) != 1:
            return {"p": p}
    return None


def _p5(ctx, T, phi):
    seen = {}
    for p in T:
        if not _is_pair(ctx, p):
            continue
        other = seen.setdefault(whier.projections(p), p)
        if other is not p:
            return {"p": other, "q": p}
    return None


def _pairing(ctx, T, phi):
    for a, b in itertools.product(T, repeat=2):
        x = ctx.make_set((a, b))
        if x is None or _members(ctx, x) != {a, b}:
            return {"a": a, "b": b}
    return None


def _empty_set(ctx, T, phi):
    e = ctx.empty()
    return None if e is not None and not ctx.members(e) else {}


def _specification(ctx, T, phi: PhiInstance):
    if phi is None or phi.graph is None:
        raise WitnessUnavailable("Specification needs a catalogued phi with a meta-level graph")
    for x in _sets(ctx, T):
        want = {a for a in ctx.members(x) if phi.graph(a, ctx)}
        y = ctx.make_set(want)
        if y is None or _members(ctx, y) != want:
            return {"x": x}
    return None


def _cartesian(ctx, T, phi):
    pairs = [p for p in ctx.domain if _is_pair(ctx, p)]
    for x, y in itertools.product(_sets(ctx, T), repeat=2):
        mx, my = _members(ctx, x), _members(ctx, y)
        built = [ctx.mpair(a, b) for a in mx for b in my]
        if any(p is None for p in built):
            return {"x": x, "y": y}
        z = ctx.make_set(built)
        if z is None:
            return {"x": x, "y": y}
        want = {p for p in pairs if whier.projections(p)[0] in mx and whier.projections(p)[1] in my}
        if _members(ctx, z) != want:
            return {"x": x, "y": y, "z": z}
    return None


def _char_prop(make):
    def check(ctx, T, phi):
        built = {(a, b): make(ctx, a, b) for a in T for b in T}
        for (a, b), p in built.items():
            for (c, d), q in built.items():
                lhs = p is not None and p is q
                if lhs != (a is c and b is d):
                    return {"a": a, "b": b, "c": c, "d": d}
        return None

    return check


def _kuratowski_projection(ctx, T, phi):
    # every variable, including the confined c, d, ranges over T
    kp = {(a, b): ctx.kpair(a, b) for a in T for b in T}
    for q in T:
        if not any(v is q for v in kp.values()):
            continue
        for a, b in itertools.product(T, repeat=2):
            lhs = hf.kpi1(a, q) and hf.kpi2(b, q)
            if lhs != (kp[(a, b)] is q):
                return {"q": q, "a": a, "b": b}
    return None


_CHECKS: Dict[tuple, Callable] = {
    (ZFP, "S1"): _extensionality,
    (ZFP, "S2"): _union,
    (ZFP, "S3"): _power,
    (ZFP, "S6"): _foundation,
    (ZFP, "P1"): _p1,
    (ZFP, "P2"): _p2,
    (ZFP, "P3"): _p3,
    (ZFP, "P4"): _p4,
    (ZFP, "P5"): _p5,
    (ZFP, "SetPairing"): _pairing,
    (ZFP, "Specification"): _specification,
    (ZFP, "CartesianProductExistence"): _cartesian,
    (ZFP, "ZFPCharProp"): _char_prop(lambda ctx, a, b: ctx.mpair(a, b)),
    (ZF, "Extensionality"): _extensionality,
    (ZF, "Union"): _union,
    (ZF, "PowerSet"): _power,
    (ZF, "Foundation"): _foundation,
    (ZF, "EmptySet"): _empty_set,
    (ZF, "Pairing"): _pairing,
    (ZF, "Specification"): _specification,
    (ZF, "KuratowskiCharProp"): _char_prop(lambda ctx, a, b: ctx.kpair(a, b)),
    (ZF, "KuratowskiProjection"): _kuratowski_projection,
}


def witness_check(axiom: AxiomId, ctx: MetaContext, margin: int, phi: Optional[PhiInstance] = None):
    """``(holds, counterexample)`` for the axiom at ``ctx.depth`` with outer
    variables drawn from stage depth - margin."""
    T = ctx.tier(ctx.depth - margin)
    key = (axiom.theory, axiom.name)
    if axiom.name in ("Infinity", "S4"):
        return infinity_holds(ctx), None
    if axiom.name in ("Replacement", "S5"):
        cex = _replacement(ctx, T, phi, ctx.depth - 1)
        return cex is None, cex
    fn = _CHECKS.get(key)
    if fn is None:
        raise WitnessUnavailable(f"no witness construction for {axiom}")
    cex = fn(ctx, T, phi)
    return cex is None, cex
