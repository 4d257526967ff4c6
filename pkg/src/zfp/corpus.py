"""Seeded random core formulas, used to exercise description elimination.

Formulas are over the four base predicates, have quantifier depth at most
``max_depth`` (descriptions count as binders), contain between
``min_iotas`` and ``max_iotas`` descriptions, and mention no free variables
other than v0 and v1.  Binders draw from a small pool that includes v0 and
v1, so shadowing and capture-prone shapes come up regularly.
"""
from __future__ import annotations

import random
from typing import List

from .logic import count_iotas, free_vars, quantifier_depth
from .syntax import Atom, Forall, Implies, Iota, Not, Pred, Var

FREE = (Var(0), Var(1))
_POOL = [Var(i) for i in range(5)]
_PREDS = (Pred.MEM, Pred.PI1, Pred.PI2, Pred.EQ)


class _Gen:
    def __init__(self, rng: random.Random, max_depth: int, max_iotas: int):
        self.rng = rng
        self.max_depth = max_depth
        self.iotas_left = max_iotas

    def term(self, scope, depth):
        r = self.rng
        if self.iotas_left and depth < self.max_depth and r.random() < 0.3:
            self.iotas_left -= 1
            x = r.choice(_POOL)
            body = self.formula(scope | {x}, depth + 1, want_var=x)
            return Iota(x, body)
        return r.choice(sorted(scope | set(FREE)))

    def atom(self, scope, depth, want_var=None):
        left = self.term(scope, depth)
        right = self.term(scope, depth)
        if want_var is not None and self.rng.random() < 0.7:
            # make the bound variable actually occur most of the time
            if self.rng.random() < 0.5:
                left = want_var
            else:
                right = want_var
        return Atom(left, self.rng.choice(_PREDS), right)

    def formula(self, scope, depth, want_var=None, size=3):
        r = self.rng
        roll = r.random()
        if size <= 0 or roll < 0.35:
            return self.atom(scope, depth, want_var)
        if roll < 0.5:
            return Not(self.formula(scope, depth, want_var, size - 1))
        if roll < 0.75 or depth >= self.max_depth:
            left = self.formula(scope, depth, want_var, size - 1)
            right = self.formula(scope, depth, want_var, size - 1)
            return Implies(left, right)
        x = r.choice(_POOL)
        return Forall(x, self.formula(scope | {x}, depth + 1, want_var if want_var != x else None, size - 1))


def random_formula(rng: random.Random, max_depth: int = 3, max_iotas: int = 2):
    g = _Gen(rng, max_depth, max_iotas)
    return g.formula(frozenset(), 0)


def generate(count: int = 500, seed: int = 0, max_depth: int = 3, min_iotas: int = 1,
             max_iotas: int = 2) -> List:
    """``count`` distinct formulas meeting the bounds, deterministic in ``seed``."""
    rng = random.Random(seed)
    out, seen = [], set()
    while len(out) < count:
        f = random_formula(rng, max_depth, max_iotas)
        n = count_iotas(f)
        if not (min_iotas <= n <= max_iotas) or quantifier_depth(f) > max_depth:
            continue
        if not free_vars(f) <= set(FREE) or f in seen:
            continue
        seen.add(f)
        out.append(f)
    return out
