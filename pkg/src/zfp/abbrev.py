"""Macro expansion of abbreviations and derived connectives into core syntax.

Two dialects share most of the table.  ZF pairs are Kuratowski sets
(``KPair``, ``KPi1``, ``KPi2``); ZFP has primitive pairs (``PPair``) and the
``Set``/``Pair`` predicates with restricted binders.  Each dialect refuses
the other's pair vocabulary.

Expansion is inside-out: arguments are expanded first, then the template is
instantiated with binder variables chosen fresh for the (expanded)
arguments, and the instantiated template is expanded again.  Templates are
not recursive, so this terminates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict

from . import logic
from .logic import all_vars, conj, disj, exists, exists_unique, fresh_var, fresh_vars, free_vars, iff
from .syntax import (
    And,
    Atom,
    Forall,
    FormulaCall,
    H,
    Iff,
    Implies,
    Iota,
    IotaR,
    Not,
    Or,
    Pred,
    Pure,
    Quant,
    Sep,
    TermCall,
    Var,
)

ZF = "zf"
ZFP = "zfp"
DIALECTS = (ZF, ZFP)


class MacroError(ValueError):
    pass


class UnknownMacro(MacroError):
    pass


class DialectMismatch(MacroError):
    pass


class ArityError(MacroError):
    pass


@dataclass(frozen=True)
class Macro:
    name: str
    arity: object  # int, or "n" for variadic (at least one argument)
    kind: str  # "term" | "formula"
    build: Callable = field(repr=False)


def _m(a, b):
    return Atom(a, Pred.MEM, b)


def _eq(a, b):
    return Atom(a, Pred.EQ, b)


def _p1(a, b):
    return Atom(a, Pred.PI1, b)


def _p2(a, b):
    return Atom(a, Pred.PI2, b)


# Builders take the expanded arguments and a ``fresh(k)`` callback returning k
# variables that occur nowhere in the arguments.  They may return sugar.


def _union(kind_iota):
    def build(args, fresh):
        (X,) = args
        y, a, z = fresh(3)
        body = Forall(a, Iff(_m(a, y), Quant("exists", z, _m(a, z), bound=X)))
        return kind_iota(y, body)

    return build


def _upair(args, fresh):
    A, B = args
    x, c = fresh(2)
    return Iota(x, Forall(c, Iff(_m(c, x), Or(_eq(c, A), _eq(c, B)))))


def _cup(args, fresh):
    X, Y = args
    return TermCall("Union", (TermCall("UPair", (X, Y)),))


def _pow(kind_iota):
    def build(args, fresh):
        (X,) = args
        y, z = fresh(2)
        return kind_iota(y, Forall(z, Iff(_m(z, y), FormulaCall("Subset", (z, X)))))

    return build


def _singleton(args, fresh):
    (A,) = args
    return TermCall("UPair", (A, A))


def _setof(args, fresh):
    # {A} for one argument, {A, B} for two, {A1} u {A2..An} beyond
    if len(args) == 1:
        return TermCall("Singleton", args)
    if len(args) == 2:
        return TermCall("UPair", args)
    return TermCall("Cup", (TermCall("Singleton", args[:1]), TermCall("SetOf", args[1:])))


def _empty(kind_iota):
    def build(args, fresh):
        x, a = fresh(2)
        return kind_iota(x, Forall(a, Not(_m(a, x))))

    return build


def _succ(args, fresh):
    (X,) = args
    return TermCall("Cup", (X, TermCall("Singleton", (X,))))


def _kpair(args, fresh):
    A, B = args
    return TermCall("UPair", (TermCall("Singleton", (A,)), TermCall("UPair", (A, B))))


def _times(pair_name):
    def build(args, fresh):
        A, B = args
        x, p, c, d = fresh(4)
        inner = Quant("exists", d, _eq(p, TermCall(pair_name, (c, d))), bound=B)
        body = Forall(p, Iff(_m(p, x), Quant("exists", c, inner, bound=A)))
        return Iota(x, body)

    return build


def _subset_zf(args, fresh):
    X, Y = args
    (c,) = fresh(1)
    return Quant("forall", c, _m(c, Y), bound=X)


def _subset_zfp(args, fresh):
    X, Y = args
    (c,) = fresh(1)
    return And(
        And(FormulaCall("Set", (X,)), FormulaCall("Set", (Y,))),
        Quant("forall", c, _m(c, Y), bound=X),
    )


def _kpi1(args, fresh):
    A, Q = args
    (x,) = fresh(1)
    return Quant("forall", x, _m(A, x), bound=Q)


def _kpi2(args, fresh):
    B, Q = args
    (x,) = fresh(1)
    return Quant("existsu", x, _m(B, x), bound=Q)


def _pair(args, fresh):
    (Q,) = args
    (b,) = fresh(1)
    return Quant("exists", b, _p1(b, Q))


def _set(args, fresh):
    return Not(FormulaCall("Pair", args))


def _ppair(args, fresh):
    A, B = args
    (q,) = fresh(1)
    return Iota(q, And(_p1(A, q), _p2(B, q)))


def _ord(args, fresh):
    (X,) = args
    y, z = fresh(2)
    trans = Quant("forall", y, FormulaCall("Subset", (y, X)), bound=X)
    total = Quant(
        "forall",
        y,
        Quant("forall", z, Or(Or(_eq(y, z), _m(y, z)), _m(z, y)), bound=X),
        bound=X,
    )
    return And(trans, total)


def _plain_iota(y, body):
    return Iota(y, body)


def _set_iota(y, body):
    return IotaR("Set", y, body)


_SHARED = {
    "UPair": Macro("UPair", 2, "term", _upair),
    "Cup": Macro("Cup", 2, "term", _cup),
    "Singleton": Macro("Singleton", 1, "term", _singleton),
    "SetOf": Macro("SetOf", "n", "term", _setof),
    "Succ": Macro("Succ", 1, "term", _succ),
    "Ord": Macro("Ord", 1, "formula", _ord),
}

_ZF_ONLY = {
    "Union": Macro("Union", 1, "term", _union(_plain_iota)),
    "Pow": Macro("Pow", 1, "term", _pow(_plain_iota)),
    "Empty": Macro("Empty", 0, "term", _empty(_plain_iota)),
    "KPair": Macro("KPair", 2, "term", _kpair),
    "Times": Macro("Times", 2, "term", _times("KPair")),
    "Subset": Macro("Subset", 2, "formula", _subset_zf),
    "KPi1": Macro("KPi1", 2, "formula", _kpi1),
    "KPi2": Macro("KPi2", 2, "formula", _kpi2),
}

_ZFP_ONLY = {
    "Union": Macro("Union", 1, "term", _union(_set_iota)),
    "Pow": Macro("Pow", 1, "term", _pow(_set_iota)),
    "Empty": Macro("Empty", 0, "term", _empty(_set_iota)),
    "PPair": Macro("PPair", 2, "term", _ppair),
    "Times": Macro("Times", 2, "term", _times("PPair")),
    "Subset": Macro("Subset", 2, "formula", _subset_zfp),
    "Pair": Macro("Pair", 1, "formula", _pair),
    "Set": Macro("Set", 1, "formula", _set),
}

# names each dialect refuses outright, with the reason shown to the user
_REFUSED = {
    ZF: {n: "primitive pairs exist only in the zfp dialect" for n in ("PPair", "Pair", "Set")},
    ZFP: {n: "Kuratowski pairs are not used in the zfp dialect" for n in ("KPair", "KPi1", "KPi2")},
}


@dataclass(frozen=True)
class MacroTable:
    dialect: str
    entries: Dict[str, Macro]

    def lookup(self, name: str, nargs: int) -> Macro:
        if name in _REFUSED[self.dialect]:
            raise DialectMismatch(f"{name} is not available in {self.dialect}: {_REFUSED[self.dialect][name]}")
        m = self.entries.get(name)
        if m is None:
            raise UnknownMacro(f"unknown abbreviation {name!r}")
        if m.arity == "n":
            if nargs < 1:
                raise ArityError(f"{name} needs at least one argument")
        elif nargs != m.arity:
            raise ArityError(f"{name} takes {m.arity} argument(s), got {nargs}")
        return m


TABLES = {
    ZF: MacroTable(ZF, {**_SHARED, **_ZF_ONLY}),
    ZFP: MacroTable(ZFP, {**_SHARED, **_ZFP_ONLY}),
}


def table(dialect: str) -> MacroTable:
    try:
        return TABLES[dialect.lower()]
    except KeyError:
        raise ValueError(f"unknown dialect {dialect!r}; expected zf or zfp") from None


def expand(node, dialect: str = ZFP):
    """Fully core version of ``node`` (term or formula)."""
    return _Expander(table(dialect)).go(node)


class _Expander:
    def __init__(self, tbl: MacroTable):
        self.tbl = tbl

    def go(self, n):
        if isinstance(n, Var):
            return n
        if isinstance(n, Atom):
            return Atom(self.go(n.left), n.pred, self.go(n.right))
        if isinstance(n, Implies):
            return Implies(self.go(n.left), self.go(n.right))
        if isinstance(n, Not):
            return Not(self.go(n.body))
        if isinstance(n, Forall):
            return Forall(n.var, self.go(n.body))
        if isinstance(n, Iota):
            return Iota(n.var, self.go(n.body))
        if isinstance(n, Pure):
            return Pure(self.go(n.term))
        if isinstance(n, H):
            return H(self.go(n.term), n.depth)
        if isinstance(n, And):
            return conj(self.go(n.left), self.go(n.right))
        if isinstance(n, Or):
            return disj(self.go(n.left), self.go(n.right))
        if isinstance(n, Iff):
            return iff(self.go(n.left), self.go(n.right))
        if isinstance(n, Quant):
            return self.quant(n)
        if isinstance(n, IotaR):
            self.check_restriction(n.restrict)
            body = self.go(n.body)
            guard = self.go(FormulaCall(n.restrict, (n.var,)))
            return Iota(n.var, conj(guard, body))
        if isinstance(n, Sep):
            return self.sep(n)
        if isinstance(n, (TermCall, FormulaCall)):
            return self.call(n)
        raise TypeError(f"cannot expand {type(n).__name__}")

    def check_restriction(self, restrict):
        if restrict is not None and self.tbl.dialect == ZF:
            raise DialectMismatch(f"{restrict}-restricted binders exist only in the zfp dialect")

    def quant(self, q: Quant):
        self.check_restriction(q.restrict)
        x, body = q.var, self.go(q.body)
        bound = self.go(q.bound) if q.bound is not None else None
        if bound is not None and x in free_vars(bound):
            new = fresh_var(all_vars(body, bound) | {x})
            body = logic.substitute(body, x, new)
            x = new
        guards = []
        if bound is not None:
            guards.append(Atom(x, Pred.MEM, bound))
        if q.restrict is not None:
            guards.append(self.go(FormulaCall(q.restrict, (x,))))
        if q.kind == "forall":
            for g in reversed(guards):
                body = Implies(g, body)
            return Forall(x, body)
        for g in reversed(guards):
            body = conj(g, body)
        if q.kind == "exists":
            return exists(x, body)
        return exists_unique(x, body)

    def sep(self, s: Sep):
        X = self.go(s.bound)
        b, phi = s.var, self.go(s.body)
        if b in free_vars(X):
            new = fresh_var(all_vars(phi, X) | {b})
            phi = logic.substitute(phi, b, new)
            b = new
        (y,) = fresh_vars(1, all_vars(phi, X) | {b})
        body = Forall(b, iff(Atom(b, Pred.MEM, y), conj(Atom(b, Pred.MEM, X), phi)))
        if self.tbl.dialect == ZFP:
            return self.go(IotaR("Set", y, body))
        return Iota(y, body)

    def call(self, n):
        m = self.tbl.lookup(n.name, len(n.args))
        want = "term" if isinstance(n, TermCall) else "formula"
        if m.kind != want:
            raise MacroError(f"{n.name} is a {m.kind}, used as a {want}")
        args = tuple(self.go(a) for a in n.args)
        avoid = all_vars(*args) if args else frozenset()
        out = m.build(args, lambda k: fresh_vars(k, avoid))
        return self.go(out)


def macro_names(dialect: str):
    return sorted(table(dialect).entries)
