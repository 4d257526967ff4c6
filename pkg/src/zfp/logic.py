"""Binding, substitution, alpha-equivalence and description elimination.

Functions here accept both core and sugar nodes; binding structure is read
off :attr:`Node.SCOPED`, so sugar binders (bounded quantifiers, set
builders) are handled without special cases.
"""
from __future__ import annotations

from dataclasses import replace
from typing import FrozenSet, Iterable, List, Set

from .syntax import (
    Atom,
    CORE_TYPES,
    Forall,
    H,
    Implies,
    Iota,
    Node,
    Not,
    Pred,
    Pure,
    Var,
    child_fields,
)

# -- variables ---------------------------------------------------------------


def free_vars(node: Node) -> FrozenSet[Var]:
    """Variables with a free occurrence in a term or formula."""
    out: Set[Var] = set()
    _free(node, frozenset(), out)
    return frozenset(out)


def _free(node, bound, out):
    if isinstance(node, Var):
        if node not in bound:
            out.add(node)
        return
    inner = bound | {node.var} if node.is_binder else bound
    for _, value, scoped in child_fields(node):
        scope = inner if scoped else bound
        if isinstance(value, tuple):
            for item in value:
                _free(item, scope, out)
        else:
            _free(value, scope, out)


def all_vars(*nodes: Node) -> FrozenSet[Var]:
    """Every variable occurring in the nodes, free or bound."""
    out: Set[Var] = set()
    for n in nodes:
        _all(n, out)
    return frozenset(out)


def _all(node, out):
    if isinstance(node, Var):
        out.add(node)
        return
    if isinstance(node, tuple):
        for item in node:
            _all(item, out)
        return
    if node.is_binder:
        out.add(node.var)
    for _, value, _ in child_fields(node):
        _all(value, out)


def fresh_var(avoid: Iterable[Var]) -> Var:
    """Smallest-index variable not in ``avoid``."""
    used = {x.index for x in avoid}
    i = 0
    while i in used:
        i += 1
    return Var(i)


def fresh_vars(n: int, avoid: Iterable[Var]) -> List[Var]:
    taken = set(avoid)
    out = []
    for _ in range(n):
        x = fresh_var(taken)
        taken.add(x)
        out.append(x)
    return out


# -- structural maps ---------------------------------------------------------


def map_children(node: Node, fn) -> Node:
    """Rebuild ``node`` with ``fn`` applied to each direct sub-node."""
    changes = {}
    for name, value, _ in child_fields(node):
        if isinstance(value, tuple):
            new = tuple(fn(x) for x in value)
        else:
            new = fn(value)
        if new is not value:
            changes[name] = new
    return replace(node, **changes) if changes else node


# -- substitution --------------------------------------------------------------


def substitute(node: Node, x: Var, t: Node) -> Node:
    """Capture-avoiding substitution of term ``t`` for free ``x`` in ``node``."""
    if x not in free_vars(node):
        return node
    return _subst(node, x, t, free_vars(t), all_vars(node, t) | {x})


def _subst(node, x, t, t_free, avoid):
    if isinstance(node, Var):
        return t if node == x else node
    if not node.is_binder:
        return map_children(node, lambda c: _subst(c, x, t, t_free, avoid))

    bvar = node.var
    changes = {}
    scoped_body_mentions_x = False
    for name, value, scoped in child_fields(node):
        if scoped:
            scoped_body_mentions_x |= x in free_vars(value)
        else:
            changes[name] = _subst_any(value, x, t, t_free, avoid)
    if bvar == x or not scoped_body_mentions_x:
        return replace(node, **changes)
    if bvar in t_free:
        new = fresh_var(avoid)
        avoid = avoid | {new}
        node = rename_bound(node, new)
        bvar = new
    for name, value, scoped in child_fields(node):
        if scoped:
            changes[name] = _subst_any(value, x, t, t_free, avoid)
    return replace(node, **changes)


def _subst_any(value, x, t, t_free, avoid):
    if isinstance(value, tuple):
        return tuple(_subst(v, x, t, t_free, avoid) for v in value)
    return _subst(value, x, t, t_free, avoid)


def rename_bound(binder: Node, new: Var) -> Node:
    """Alpha-rename the variable bound by ``binder`` to ``new``.

    ``new`` must not occur free in the scoped parts.
    """
    old = binder.var
    changes = {"var": new}
    for name, value, scoped in child_fields(binder):
        if scoped:
            changes[name] = substitute(value, old, new)
    return replace(binder, **changes)


def rename_apart(node: Node) -> Node:
    """Give every binder its own variable, distinct from all free variables."""
    counter = [max((x.index for x in all_vars(node)), default=-1) + 1]

    def go(n):
        if isinstance(n, Var):
            return n
        if isinstance(n, tuple):
            return tuple(go(c) for c in n)
        if n.is_binder:
            new = Var(counter[0])
            counter[0] += 1
            n = rename_bound(n, new)
        return map_children(n, go)

    return go(node)


# -- alpha equivalence ------------------------------------------------------


def canonical(node: Node):
    """Nameless rendering: bound occurrences become de Bruijn indices.

    Two nodes are alpha-equivalent iff their canonical forms are equal.
    """
    return _canon(node, ())


def _canon(node, stack):
    if isinstance(node, Var):
        for depth, b in enumerate(reversed(stack)):
            if b == node:
                return ("b", depth)
        return ("f", node.index)
    if isinstance(node, tuple):
        return tuple(_canon(c, stack) for c in node)
    parts = [type(node).__name__]
    inner = stack + (node.var,) if node.is_binder else stack
    for f in node.__dataclass_fields__:
        if f == "var":
            continue
        value = getattr(node, f)
        if isinstance(value, (Node, tuple)):
            parts.append(_canon(value, inner if f in node.SCOPED else stack))
        else:
            parts.append(value)
    return tuple(parts)


def alpha_eq(a: Node, b: Node) -> bool:
    return canonical(a) == canonical(b)


# -- inspection ----------------------------------------------------------------


def is_core(node: Node) -> bool:
    if isinstance(node, tuple):
        return all(is_core(c) for c in node)
    if not isinstance(node, CORE_TYPES):
        return False
    return all(is_core(value) for _, value, _ in child_fields(node))


def contains_iota(node: Node) -> bool:
    if isinstance(node, Iota):
        return True
    if isinstance(node, Var):
        return False
    return any(
        contains_iota(c) if not isinstance(c, tuple) else any(contains_iota(y) for y in c)
        for _, c, _ in child_fields(node)
    )


def count_iotas(node: Node) -> int:
    if isinstance(node, Var):
        return 0
    n = 1 if isinstance(node, Iota) else 0
    for _, c, _ in child_fields(node):
        if isinstance(c, tuple):
            n += sum(count_iotas(y) for y in c)
        else:
            n += count_iotas(c)
    return n


def quantifier_depth(node: Node) -> int:
    """Maximum nesting of binders (iota counts as a binder)."""
    if isinstance(node, Var):
        return 0
    inner = 0
    for _, c, _ in child_fields(node):
        if isinstance(c, tuple):
            inner = max([inner] + [quantifier_depth(y) for y in c])
        else:
            inner = max(inner, quantifier_depth(c))
    return inner + (1 if node.is_binder else 0)


# -- derived connectives, built directly in core -------------------------------
#
# The abbreviation expander and iota elimination both go through these, so
# the two agree syntactically on the encodings.


def neg(f):
    return Not(f)


def conj(a, b):
    return Not(Implies(a, Not(b)))


def disj(a, b):
    return Implies(Not(a), b)


def iff(a, b):
    return conj(Implies(a, b), Implies(b, a))


def exists(x: Var, f):
    return Not(Forall(x, Not(f)))


def exists_unique(x: Var, f):
    """exists x. f /\\ forall y. f[y/x] -> y = x, with y fresh."""
    y = fresh_var(all_vars(f) | {x})
    return exists(x, conj(f, Forall(y, Implies(substitute(f, x, y), Atom(y, Pred.EQ, x)))))


# -- definite-description elimination -------------------------------------


def eliminate_iota(f: Node) -> Node:
    """Remove every description from a core formula.

    Uses ((iota x. phi) ~ Y) := (exists x. x ~ Y /\\ phi) /\\ exists! x. phi,
    the mirrored rule for a description on the right, and the analogous rule
    for the unary markers.  Descriptions are removed innermost-leftmost.
    """
    if isinstance(f, Atom):
        left = _elim_term(f.left)
        right = _elim_term(f.right)
        atom = Atom(left, f.pred, right)
        if isinstance(left, Iota):
            return _lift(left, right, lambda x: eliminate_iota(Atom(x, f.pred, right)))
        if isinstance(right, Iota):
            return _lift(right, left, lambda y: eliminate_iota(Atom(left, f.pred, y)))
        return atom
    if isinstance(f, (Pure, H)):
        t = _elim_term(f.term)
        if isinstance(t, Iota):
            return _lift(t, None, lambda x: replace(f, term=x))
        return replace(f, term=t)
    if isinstance(f, Implies):
        return Implies(eliminate_iota(f.left), eliminate_iota(f.right))
    if isinstance(f, Not):
        return Not(eliminate_iota(f.body))
    if isinstance(f, Forall):
        return Forall(f.var, eliminate_iota(f.body))
    raise TypeError(f"eliminate_iota expects a core formula, got {type(f).__name__}")


def _elim_term(t):
    """Eliminate descriptions nested inside a description's body."""
    if isinstance(t, Iota):
        return Iota(t.var, eliminate_iota(t.body))
    return t


def _lift(desc: Iota, other, build):
    """(exists x. build(x) /\\ phi) /\\ exists! x. phi  with x not free in other."""
    x, body = desc.var, desc.body
    if other is not None and x in free_vars(other):
        new = fresh_var(all_vars(desc, other))
        body = substitute(body, x, new)
        x = new
    return conj(exists(x, conj(build(x), body)), exists_unique(x, body))
