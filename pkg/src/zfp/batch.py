"""Vectorised evaluation of core formulas over many small structures at once.

All structures in a batch share a domain size n; elements are indices
0..n-1 and the index n stands for the undefined value.  Relation tables are
boolean arrays of shape (S, n+1, n+1) whose last row and column are False,
which makes every atom with an undefined side false for free.

A formula is evaluated to a boolean array with one leading structure axis
and one axis per variable (after renaming bound variables apart); axes of
variables that do not occur free have length 1 and broadcast.  Terms
evaluate to integer index arrays of the same layout.
"""
from __future__ import annotations

from typing import Dict, List, Sequence

import numpy as np

from .logic import all_vars, rename_apart
from .syntax import Atom, Forall, Implies, Iota, Not, Pred, Var

_RELS = (Pred.MEM, Pred.PI1, Pred.PI2)


def tables_from_structure(s) -> Dict[Pred, np.ndarray]:
    """Padded (n+1, n+1) tables for MEM, PI1 and PI2 of a structure."""
    dom = s.domain
    n = len(dom)
    out = {}
    for pred in _RELS:
        rel = s.relation(pred)
        t = np.zeros((n + 1, n + 1), dtype=bool)
        for i, a in enumerate(dom):
            for j, b in enumerate(dom):
                t[i, j] = bool(rel(a, b))
        out[pred] = t
    return out


class Batch:
    def __init__(self, n: int, tables: Sequence[Dict[Pred, np.ndarray]], names=None):
        self.n = n
        self.size = len(tables)
        self.names = list(names) if names is not None else [f"s{i}" for i in range(self.size)]
        self.rel = {p: np.stack([t[p] for t in tables]) for p in _RELS}

    @classmethod
    def of(cls, structures) -> "Batch":
        ns = {len(s.domain) for s in structures}
        if len(ns) != 1:
            raise ValueError("a batch needs structures of one domain size")
        return cls(ns.pop(), [tables_from_structure(s) for s in structures], [s.name for s in structures])

    def truth_table(self, f, free: Sequence[Var] = (Var(0), Var(1))) -> np.ndarray:
        """Array of shape (S, n, .., n) with one axis per entry of ``free``."""
        g = rename_apart(f)
        order = sorted(all_vars(g) | set(free))
        self._axis = {x: 1 + i for i, x in enumerate(order)}
        self._ndim = 1 + len(order)
        res = self._formula(g)
        keep = {self._axis[x] for x in free}
        shape = [self.size] + [self.n if a in keep else 1 for a in range(1, self._ndim)]
        res = np.broadcast_to(res, shape)
        # bound axes were reduced to length 1; drop them, then order as ``free``
        res = res.reshape([self.size] + [self.n] * len(keep)) if keep else res.reshape(self.size)
        present = sorted(keep)
        perm = [0] + [1 + present.index(self._axis[x]) for x in free]
        res = res.transpose(perm)
        return np.ascontiguousarray(res)

    # -- recursion -------------------------------------------------------

    def _shape_for(self, x: Var):
        shape = [1] * self._ndim
        shape[self._axis[x]] = self.n
        return shape

    def _term(self, t):
        if isinstance(t, Var):
            return np.arange(self.n).reshape(self._shape_for(t))
        if isinstance(t, Iota):
            ax = self._axis[t.var]
            body = self._formula(t.body)
            if body.shape[ax] == 1:
                body = np.repeat(body, self.n, axis=ax)
            count = body.sum(axis=ax, keepdims=True)
            arg = body.argmax(axis=ax, keepdims=True)
            return np.where(count == 1, arg, self.n)
        raise TypeError(f"batch evaluation does not support {type(t).__name__}")

    def _formula(self, f):
        if isinstance(f, Atom):
            a, b = self._term(f.left), self._term(f.right)
            if f.pred is Pred.EQ:
                return (a == b) & (a < self.n)
            table = self.rel.get(f.pred)
            if table is None:
                raise TypeError(f"batch evaluation does not support {f.pred.value}")
            s = np.arange(self.size).reshape([self.size] + [1] * (self._ndim - 1))
            return table[s, a, b]
        if isinstance(f, Not):
            return ~self._formula(f.body)
        if isinstance(f, Implies):
            return ~self._formula(f.left) | self._formula(f.right)
        if isinstance(f, Forall):
            return np.all(self._formula(f.body), axis=self._axis[f.var], keepdims=True)
        raise TypeError(f"batch evaluation does not support {type(f).__name__}")


def group_by_size(structures) -> List[Batch]:
    groups: Dict[int, list] = {}
    for s in structures:
        groups.setdefault(len(s.domain), []).append(s)
    return [Batch.of(groups[n]) for n in sorted(groups)]
