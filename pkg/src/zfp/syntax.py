"""Abstract syntax for first-order logic with definite descriptions.

Core nodes are the ones the evaluator understands directly:

    Var, Iota                      terms
    Atom, Implies, Not, Forall     formulas
    Pure, H                        opaque unary markers (PRestrict / translation guards)

Everything else (connectives, derived quantifiers, macro calls, set builders)
is *sugar*; it is produced by the parser and removed by
:func:`zfp.abbrev.expand`.

All nodes are frozen dataclasses, so structural ``==`` is available and
nodes can be shared freely between threads.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, fields
from typing import Optional, Tuple, Union


class Pred(enum.Enum):
    MEM = "mem"
    PI1 = "pi1"
    PI2 = "pi2"
    EQ = "="
    # model-level relations introduced by the (.)* translation
    MEM_HAT = "memh"
    PI1_HAT = "pi1h"
    PI2_HAT = "pi2h"

    @property
    def hat(self) -> "Pred":
        return _HAT.get(self, self)


_HAT = {Pred.MEM: Pred.MEM_HAT, Pred.PI1: Pred.PI1_HAT, Pred.PI2: Pred.PI2_HAT}

BASE_PREDS = (Pred.MEM, Pred.PI1, Pred.PI2, Pred.EQ)


class Node:
    """Common base; subclasses declare which fields sit under their binder."""

    #: names of fields that are in the scope of ``self.var``
    SCOPED: Tuple[str, ...] = ()

    @property
    def is_binder(self) -> bool:
        return bool(self.SCOPED)


# -- terms ------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Var(Node):
    index: int

    def __repr__(self):
        return f"v{self.index}"


@dataclass(frozen=True)
class Iota(Node):
    var: Var
    body: "Formula"
    SCOPED = ("body",)


# -- core formulas ----------------------------------------------------------


@dataclass(frozen=True)
class Atom(Node):
    left: "Term"
    pred: Pred
    right: "Term"


@dataclass(frozen=True)
class Implies(Node):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Not(Node):
    body: "Formula"


@dataclass(frozen=True)
class Forall(Node):
    var: Var
    body: "Formula"
    SCOPED = ("body",)


@dataclass(frozen=True)
class Pure(Node):
    """Holds of hereditarily pair-free sets; interpreted by W structures only."""

    term: "Term"


@dataclass(frozen=True)
class H(Node):
    """Membership in the model universe.

    ``depth=None`` is membership in the whole structure (the class W at the
    working stage); an integer ``k`` restricts to the k-th tier.
    """

    term: "Term"
    depth: Optional[int] = None


# -- sugar ------------------------------------------------------------------


@dataclass(frozen=True)
class And(Node):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or(Node):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff(Node):
    left: "Formula"
    right: "Formula"


QUANT_KINDS = ("forall", "exists", "existsu")
RESTRICTIONS = ("Set", "Pair")


@dataclass(frozen=True)
class Quant(Node):
    """Derived quantifier, optionally bounded (``x in X``) and/or restricted
    to sets or pairs.  ``bound`` is outside the scope of ``var``."""

    kind: str
    var: Var
    body: "Formula"
    bound: Optional["Term"] = None
    restrict: Optional[str] = None
    SCOPED = ("body",)


@dataclass(frozen=True)
class IotaR(Node):
    """Restricted description, e.g. iota_Set x: phi."""

    restrict: str
    var: Var
    body: "Formula"
    SCOPED = ("body",)


@dataclass(frozen=True)
class Sep(Node):
    """Set builder {var in bound | body}."""

    var: Var
    bound: "Term"
    body: "Formula"
    SCOPED = ("body",)


@dataclass(frozen=True)
class TermCall(Node):
    name: str
    args: Tuple["Term", ...] = ()


@dataclass(frozen=True)
class FormulaCall(Node):
    name: str
    args: Tuple["Term", ...] = ()


Term = Union[Var, Iota, TermCall, IotaR, Sep]
Formula = Union[Atom, Implies, Not, Forall, Pure, H, And, Or, Iff, Quant, FormulaCall]

TERM_TYPES = (Var, Iota, TermCall, IotaR, Sep)
FORMULA_TYPES = (Atom, Implies, Not, Forall, Pure, H, And, Or, Iff, Quant, FormulaCall)
CORE_TYPES = (Var, Iota, Atom, Implies, Not, Forall, Pure, H)


def is_term(node) -> bool:
    return isinstance(node, TERM_TYPES)


def is_formula(node) -> bool:
    return isinstance(node, FORMULA_TYPES)


def child_fields(node):
    """Yield ``(name, value, scoped)`` for every sub-node field of ``node``.

    Tuple-valued fields (macro arguments) are yielded once with the tuple as
    value.  The binder variable itself is not yielded.
    """
    for f in fields(node):
        if f.name == "var":
            continue
        value = getattr(node, f.name)
        if isinstance(value, Node) or isinstance(value, tuple):
            yield f.name, value, f.name in node.SCOPED


# -- small constructors, used all over ------------------------------------


def v(i: int) -> Var:
    return Var(i)


def mem(a, b) -> Atom:
    return Atom(a, Pred.MEM, b)


def eq(a, b) -> Atom:
    return Atom(a, Pred.EQ, b)


def pi1(a, b) -> Atom:
    return Atom(a, Pred.PI1, b)


def pi2(a, b) -> Atom:
    return Atom(a, Pred.PI2, b)
