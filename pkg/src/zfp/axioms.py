"""Axioms and derived statements of ZF and ZFP as checkable formulas.

Every entry is stored as surface text over the schema variables ``a``,
``b``, ``c1``, ``c2`` (always v0..v3) and expanded on demand.  Schemas
(Replacement, Specification) take a :class:`PhiInstance`.

Replacement can be *confined*: ``confine=k`` adds ``H(b, k)`` guards to the
two quantifiers over the value variable ``b``, so the image of a function
lands inside stage k.  The checker uses this to keep the witness set inside
the finite stage it enumerates.  The Kuratowski projection property is
confinable the same way (its ``c, d``), so that every pair term it builds
is defined.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, FrozenSet, List, Optional

from . import hf, whier
from .abbrev import ZF, ZFP, expand
from .logic import free_vars, map_children
from .surface import parse_formula, print_formula
from .syntax import Forall, Implies, Pure, Var

SCHEMA_VARS = {"a": Var(0), "b": Var(1), "c1": Var(2), "c2": Var(3)}

_ZF_TEXT = {
    "Extensionality": "forall x, y. (forall a. mem(a,x) <-> mem(a,y)) -> x = y",
    "Union": "forall x. exists y. forall a. mem(a,y) <-> (exists z in x. mem(a,z))",
    "PowerSet": "forall x. exists y. forall z. mem(z,y) <-> Subset(z,x)",
    "Infinity": (
        "exists y. (exists z in y. forall b. !mem(b,z))"
        " /\\ (forall x in y. exists s in y. forall c. mem(c,s) <-> (mem(c,x) \\/ c = x))"
    ),
    "InfinityPretty": "exists y. mem(Empty(), y) /\\ (forall x in y. mem(Succ(x), y))",
    "Replacement": (
        "forall c1, c2, x. (forall a in x. existsu b. {g1}({phi}))"
        " -> (exists y. forall b. {g2}(mem(b,y) <-> (exists a in x. {phi})))"
    ),
    "Foundation": "forall x. x = Empty() \\/ (exists y in x. !(exists b in x. mem(b,y)))",
    "EmptySet": "exists x. forall b. !mem(b,x)",
    "Pairing": "forall a, b. exists x. forall c. mem(c,x) <-> (c = a \\/ c = b)",
    "Specification": "forall x. exists y. forall a. mem(a,y) <-> (mem(a,x) /\\ ({phi}))",
    "KuratowskiCharProp": "forall a, b, c, d. KPair(a,b) = KPair(c,d) <-> (a = c /\\ b = d)",
    "KuratowskiProjection": (
        "forall q. (exists c, d. {gc}q = KPair(c,d))"
        " -> (forall a, b. (KPi1(a,q) /\\ KPi2(b,q)) <-> q = KPair(a,b))"
    ),
}

_ZFP_TEXT = {
    "S1": "forall_set x, y. (forall a. mem(a,x) <-> mem(a,y)) -> x = y",
    "S2": "forall_set x. exists y. forall a. mem(a,y) <-> (exists z in x. mem(a,z))",
    "S3": "forall_set x. exists y. forall z. mem(z,y) <-> Subset(z,x)",
    "S4": (
        "exists y. (exists_set z in y. forall b. !mem(b,z))"
        " /\\ (forall x in y. exists s in y. forall c. mem(c,s) <-> (mem(c,x) \\/ c = x))"
    ),
    "InfinityPretty": "exists y. mem(Empty(), y) /\\ (forall x in y. mem(Succ(x), y))",
    "S5": (
        "forall c1, c2, x. (forall a in x. existsu b. {g1}({phi}))"
        " -> (exists_set y. forall b. {g2}(mem(b,y) <-> (exists a in x. {phi})))"
    ),
    "S6": (
        "forall_set x. x = Empty()"
        " \\/ (exists a in x. !(exists b in x. pi1(b,a) \\/ pi2(b,a) \\/ mem(b,a)))"
    ),
    "P1": "forall_pair p. forall a. !mem(a,p)",
    "P2": "forall a, b. exists p. pi1(a,p) /\\ pi2(b,p)",
    "P3": "forall p. (exists a. pi1(a,p)) <-> (exists b. pi2(b,p))",
    "P4": "forall_pair p. (existsu a. pi1(a,p)) /\\ (existsu b. pi2(b,p))",
    "P5": "forall_pair p, q. (forall a. (pi1(a,p) <-> pi1(a,q)) /\\ (pi2(a,p) <-> pi2(a,q))) -> p = q",
    "SetPairing": "forall a, b. exists x. forall c. mem(c,x) <-> (c = a \\/ c = b)",
    "Specification": "forall_set x. exists_set y. forall a. mem(a,y) <-> (mem(a,x) /\\ ({phi}))",
    "CartesianProductExistence": (
        "forall_set x, y. exists_set z. forall p."
        " mem(p,z) <-> (exists a in x, b in y. pi1(a,p) /\\ pi2(b,p))"
    ),
    "ZFPCharProp": "forall a, b, c, d. PPair(a,b) = PPair(c,d) <-> (a = c /\\ b = d)",
}

TEXTS = {ZF: _ZF_TEXT, ZFP: _ZFP_TEXT}
SCHEMAS = {(ZF, "Replacement"), (ZF, "Specification"), (ZFP, "S5"), (ZFP, "Specification")}
# statements whose witness variables can be confined to a stage
CONFINABLE = {(ZF, "Replacement"), (ZFP, "S5"), (ZF, "KuratowskiProjection")}
# schemas whose parameter may only mention a
A_ONLY = {(ZF, "Specification"), (ZFP, "Specification")}

AXIOMS = {
    ZF: ("Extensionality", "Union", "PowerSet", "Infinity", "Replacement", "Foundation"),
    ZFP: ("S1", "S2", "S3", "S4", "S5", "S6", "P1", "P2", "P3", "P4", "P5"),
}
DERIVED = {
    ZF: ("EmptySet", "Pairing", "Specification"),
    ZFP: ("SetPairing", "Specification", "CartesianProductExistence"),
}
EXTRAS = {ZF: ("KuratowskiCharProp", "KuratowskiProjection", "InfinityPretty"), ZFP: ("ZFPCharProp", "InfinityPretty")}
INFINITY = {ZF: "Infinity", ZFP: "S4"}

# friendly aliases accepted by :func:`parse_axiom_id`
_ALIASES = {
    ZFP: {
        "extensionality": "S1", "setextensionality": "S1", "union": "S2", "powerset": "S3",
        "infinity": "S4", "replacement": "S5", "foundation": "S6",
        "pairemptiness": "P1", "pairformation": "P2", "bothorneither": "P3",
        "projectionuniqueness": "P4", "pairextensionality": "P5",
        "cartesianproduct": "CartesianProductExistence", "charprop": "ZFPCharProp",
    },
    ZF: {"charprop": "KuratowskiCharProp", "power": "PowerSet"},
}


class SchemaError(ValueError):
    pass


@dataclass(frozen=True)
class AxiomId:
    theory: str
    name: str

    def __str__(self):
        return f"{self.theory}.{self.name}"

    @property
    def is_schema(self) -> bool:
        return (self.theory, self.name) in SCHEMAS


def parse_axiom_id(text: str) -> AxiomId:
    """``zfp.S3``, ``zf.extensionality``, ``ZFP.p5`` ... (case-insensitive)."""
    theory, dot, name = text.strip().partition(".")
    theory = theory.lower()
    if not dot or theory not in TEXTS:
        raise ValueError(f"bad axiom id {text!r}; expected zf.<name> or zfp.<name>")
    wanted = name.lower().replace("_", "")
    for real in TEXTS[theory]:
        if real.lower() == wanted:
            return AxiomId(theory, real)
    alias = _ALIASES[theory].get(wanted)
    if alias:
        return AxiomId(theory, alias)
    raise ValueError(f"unknown axiom {name!r} for {theory}; known: {', '.join(TEXTS[theory])}")


# -- schema parameters ------------------------------------------------------


@dataclass(frozen=True)
class PhiInstance:
    """A schema parameter: a formula over (at most) the declared schema vars.

    ``graph``, when present, is an independent meta-level description used by
    witness-guided checking: for Replacement instances it maps
    ``(a, c1, c2, ctx)`` to the set of ``b`` satisfying phi, for
    Specification instances ``(a, ctx)`` to a boolean.  ``ctx`` is a
    :class:`MetaContext`.
    """

    name: str
    text: str
    dialect: str
    declared: FrozenSet[str] = frozenset({"a", "b", "c1", "c2"})
    graph: Optional[Callable] = field(default=None, compare=False, repr=False)
    formula: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        f = parse_formula(self.text, SCHEMA_VARS)
        allowed = {SCHEMA_VARS[n] for n in self.declared}
        extra = free_vars(f) - allowed
        if extra:
            names = {v: k for k, v in SCHEMA_VARS.items()}
            shown = ", ".join(names.get(x, repr(x)) for x in sorted(extra))
            raise SchemaError(f"phi {self.text!r} has free variables outside {sorted(self.declared)}: {shown}")
        object.__setattr__(self, "formula", f)


class MetaContext:
    """Meta-level view of a finite structure: which values exist, and the
    set/pair constructors of the dialect (returning None when the value
    falls outside the stage, i.e. the corresponding term is undefined)."""

    def __init__(self, dialect: str, depth: int):
        self.dialect = dialect
        self.depth = depth
        if dialect == ZFP:
            self.u = whier.build_w(depth)
            self.domain = self.u.domain
        else:
            self.u = None
            self.domain = hf.v_tier(depth).elems
        self.domain_set = frozenset(self.domain)

    def tier(self, k: int):
        if self.u is not None:
            return self.u.tier(k)
        return hf.v_tier(max(0, min(k, self.depth))).elems if k >= 0 else ()

    def in_tier(self, x, k) -> bool:
        if x is None:
            return False
        if self.u is not None:
            return self.u.in_tier(x, k)
        return hf.rank(x) < k

    def ok(self, x):
        """x if it is in the domain, else None."""
        return x if x is not None and x in self.domain_set else None

    def members(self, x):
        if self.dialect == ZFP:
            return whier.content(x)
        return x.members

    def is_set(self, x) -> bool:
        return self.dialect == ZF or whier.is_mset(x)

    def make_set(self, items):
        # an undefined item is simply absent: UPair(a, undefined) = {a}
        items = [i for i in items if i is not None]
        if self.dialect == ZFP:
            return self.ok(whier.mset(items))
        return self.ok(hf.hf_set(items))

    def empty(self):
        return self.make_set(())

    def upair(self, a, b):
        return self.make_set((a, b))

    def union(self, x):
        """Union(X): members of set-members of x (pairs contribute nothing).
        The union of an undefined value is the empty set."""
        if x is None:
            return self.make_set(())
        out = set()
        for z in self.members(x):
            out |= set(self.members(z))
        return self.make_set(out)

    def succ(self, x):
        # Cup(x, {x}) = Union(UPair(x, UPair(x, x))), each step must exist
        s = self.upair(x, x)
        return self.union(self.upair(x, s))

    def mpair(self, a, b):
        return self.ok(whier.mpair(a, b))

    def kpair(self, a, b):
        return self.make_set((self.make_set((a,)), self.upair(a, b)))


def _graph_eq(fn):
    """Replacement graph for phi = (b = fn(a, c1, c2, ctx))."""

    def graph(a, c1, c2, ctx):
        v = fn(a, c1, c2, ctx)
        return frozenset() if v is None else frozenset({v})

    return graph


def _swap_graph(a, c1, c2, ctx):
    pr = whier.projections(a)
    if pr is None:
        return frozenset()
    b = ctx.mpair(pr[1], pr[0])
    return frozenset() if b is None else frozenset({b})


def _mem_graph(a, c1, c2, ctx):
    # b in a: every member (a relation, functional only on singletons)
    return frozenset(ctx.members(a))


def phi_catalog(dialect: str = ZFP, kind: str = "replacement") -> List[PhiInstance]:
    """Test parameters for Replacement (``kind='replacement'``) or
    Specification (``kind='specification'``)."""
    dialect = dialect.lower()
    if kind == "replacement":
        out = [
            PhiInstance("identity", "b = a", dialect, graph=_graph_eq(lambda a, c1, c2, ctx: a)),
            PhiInstance("constant-empty", "b = Empty()", dialect, graph=_graph_eq(lambda a, c1, c2, ctx: ctx.empty())),
            PhiInstance("successor", "b = Succ(a)", dialect, graph=_graph_eq(lambda a, c1, c2, ctx: ctx.succ(a))),
            PhiInstance("pair-with-c1", "b = UPair(a, c1)", dialect, graph=_graph_eq(lambda a, c1, c2, ctx: ctx.upair(a, c1))),
            PhiInstance("member", "mem(b, a)", dialect, graph=_mem_graph),
        ]
        if dialect == ZFP:
            out.append(
                PhiInstance(
                    "swap",
                    "exists u, v. pi1(u,a) /\\ pi2(v,a) /\\ pi1(v,b) /\\ pi2(u,b) /\\ Pair(b)",
                    dialect,
                    graph=_swap_graph,
                )
            )
        return out
    if kind == "specification":
        only_a = frozenset({"a"})
        out = [
            PhiInstance("nonempty", "exists z. mem(z, a)", dialect, only_a,
                        graph=lambda a, ctx: bool(ctx.members(a))),
            PhiInstance("is-empty", "a = Empty()", dialect, only_a,
                        graph=lambda a, ctx: a is ctx.empty()),
            PhiInstance("self-member", "mem(a, a)", dialect, only_a,
                        graph=lambda a, ctx: a in ctx.members(a)),
        ]
        if dialect == ZFP:
            out.append(PhiInstance("is-pair", "Pair(a)", dialect, only_a, graph=lambda a, ctx: whier.is_mpair(a)))
            out.append(PhiInstance("is-set", "Set(a)", dialect, only_a, graph=lambda a, ctx: whier.is_mset(a)))
        return out
    raise ValueError(f"unknown schema kind {kind!r}")


def catalog_for(axiom: AxiomId) -> List[PhiInstance]:
    kind = "specification" if axiom.name == "Specification" else "replacement"
    return phi_catalog(axiom.theory, kind)


# -- retrieval ---------------------------------------------------------------


def axiom_text(axiom: AxiomId, phi: Optional[PhiInstance] = None, confine: Optional[int] = None) -> str:
    try:
        template = TEXTS[axiom.theory][axiom.name]
    except KeyError:
        raise ValueError(f"unknown axiom {axiom}") from None
    if not axiom.is_schema:
        if phi is not None:
            raise SchemaError(f"{axiom} is not a schema")
        if (axiom.theory, axiom.name) in CONFINABLE:
            gc = f"H(c, {confine}) /\\ H(d, {confine}) /\\ " if confine is not None else ""
            return template.format(gc=gc)
        return template
    if phi is None:
        raise SchemaError(f"{axiom} is a schema; supply a PhiInstance")
    if phi.dialect != axiom.theory:
        raise SchemaError(f"phi {phi.name!r} is written for {phi.dialect}, not {axiom.theory}")
    if (axiom.theory, axiom.name) in A_ONLY and phi.declared - {"a"}:
        extra = free_vars(phi.formula) - {SCHEMA_VARS["a"]}
        if extra:
            raise SchemaError(f"{axiom} only allows a free in phi")
    body = print_formula(phi.formula)
    g1 = g2 = ""
    if confine is not None:
        g1 = f"H(b, {confine}) /\\ "
        g2 = f"H(b, {confine}) -> "
    return template.format(phi=body, g1=g1, g2=g2)


def get_axiom_sugar(axiom: AxiomId, phi: Optional[PhiInstance] = None, confine: Optional[int] = None):
    return parse_formula(axiom_text(axiom, phi, confine), SCHEMA_VARS)


def get_axiom(axiom, phi: Optional[PhiInstance] = None, confine: Optional[int] = None):
    """The fully expanded core formula (descriptions kept)."""
    if isinstance(axiom, str):
        axiom = parse_axiom_id(axiom)
    return expand(get_axiom_sugar(axiom, phi, confine), axiom.theory)


def infinity_versions_pair(dialect: str = ZF):
    """(ugly, pretty) Infinity; the ugly one is the axiom."""
    d = dialect.lower()
    return get_axiom(AxiomId(d, INFINITY[d])), get_axiom(AxiomId(d, "InfinityPretty"))


def all_ids(theory: str, include_extras: bool = True) -> List[AxiomId]:
    names = list(AXIOMS[theory]) + list(DERIVED[theory])
    if include_extras:
        names += list(EXTRAS[theory])
    return [AxiomId(theory, n) for n in names]


# -- PRestrict ---------------------------------------------------------------


def prestrict(f):
    """Guard every universal quantifier with Pure: (forall x. p) becomes
    (forall x. Pure(x) -> p), recursively; all other constructors are left
    as they are."""
    if isinstance(f, Forall):
        return Forall(f.var, Implies(Pure(f.var), prestrict(f.body)))
    if isinstance(f, Var):
        return f
    return map_children(f, prestrict)
