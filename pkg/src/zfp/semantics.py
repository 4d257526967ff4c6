"""Finite structures, evaluation with an undefined value, and the (.)* translation.

Two evaluators are provided.  :func:`eval_formula`/:func:`eval_term` follow
the definitions literally (every quantifier and description scans the whole
domain) and serve as the reference.  :class:`Evaluator` computes the same
function faster: a quantifier body is flattened into a conjunction of
literals and one literal, when it pins the bound variable down (``x = t``,
``x memh t``, ``H(x, k)``, ...), supplies the candidates instead of the
whole domain.  Descriptions are memoised on the values of their free
variables.
"""
from __future__ import annotations

import itertools
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence

from . import hf, whier
from .hf import HF
from .logic import all_vars, conj, contains_iota, free_vars, rename_apart
from .syntax import Atom, Forall, H, Implies, Iota, Not, Pred, Pure, Var


class _Undefined:
    __slots__ = ()

    def __repr__(self):
        return "⊥"

    def __bool__(self):
        raise TypeError("the undefined value has no truth value")


UNDEFINED = _Undefined()


class UnboundVariable(KeyError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class Structure:
    """A finite domain with decision procedures for the predicate symbols.

    ``relations`` maps each non-equality :class:`Pred` the structure
    interprets to a function ``(a, b) -> bool``.  Equality is always
    identity of (interned) values.  Optional hooks: ``preimage(pred, y)`` lists
    the domain members ``a`` with ``a pred y``; ``tier(k)`` lists the
    members of the k-th stage; ``rank`` maps members to their stage;
    ``pure`` decides the purity marker.
    """

    def __init__(
        self,
        domain: Iterable[HF],
        relations: Mapping[Pred, Callable],
        name: str = "custom",
        preimage: Optional[Callable] = None,
        tier: Optional[Callable] = None,
        rank: Optional[Callable] = None,
        pure: Optional[Callable] = None,
        universe: Optional[frozenset] = None,
    ):
        self.domain = tuple(domain)
        self.domain_set = frozenset(self.domain)
        self.relations = dict(relations)
        self.name = name
        self._preimage = preimage
        self._tier = tier
        self._rank = rank
        self._pure = pure
        # what H(x) with no depth means; the whole domain unless stated
        self.universe = self.domain_set if universe is None else universe
        self._post: Dict[Pred, Dict[HF, list]] = {}
        self._pre: Dict[Pred, Dict[HF, list]] = {}

    def __repr__(self):
        return f"<Structure {self.name} |D|={len(self.domain)}>"

    def __len__(self):
        return len(self.domain)

    def relation(self, pred: Pred) -> Callable:
        if pred is Pred.EQ:
            return _identity
        try:
            return self.relations[pred]
        except KeyError:
            raise ValueError(f"{self.name} does not interpret {pred.value}") from None

    def holds(self, pred: Pred, a, b) -> bool:
        if a is UNDEFINED or b is UNDEFINED:
            return False
        return self.relation(pred)(a, b)

    def preimage(self, pred: Pred, y) -> Sequence[HF]:
        """Domain members a with ``a pred y``."""
        if self._preimage is not None:
            got = self._preimage(pred, y)
            if got is not None:
                return got
        table = self._pre.get(pred)
        if table is None:
            table = self._index(pred, forward=False)
        return table.get(y, ())

    def postimage(self, pred: Pred, a) -> Sequence[HF]:
        """Domain members y with ``a pred y``."""
        table = self._post.get(pred)
        if table is None:
            table = self._index(pred, forward=True)
        return table.get(a, ())

    def _index(self, pred, forward):
        rel = self.relation(pred)
        pre: Dict[HF, list] = {}
        post: Dict[HF, list] = {}
        if self._preimage is not None and self._preimage(pred, self.domain[0] if self.domain else hf.EMPTY) is not None:
            for y in self.domain:
                for a in self._preimage(pred, y):
                    post.setdefault(a, []).append(y)
                    pre.setdefault(y, []).append(a)
        else:
            for a in self.domain:
                for y in self.domain:
                    if rel(a, y):
                        post.setdefault(a, []).append(y)
                        pre.setdefault(y, []).append(a)
        self._pre[pred] = pre
        self._post[pred] = post
        return post if forward else pre

    def tier(self, k: Optional[int]) -> Sequence[HF]:
        if k is None:
            return self.domain if self.universe is self.domain_set else tuple(x for x in self.domain if x in self.universe)
        if self._tier is None:
            raise ValueError(f"{self.name} has no stages; H(x, k) is not interpretable")
        return self._tier(k)

    def h(self, x, depth: Optional[int] = None) -> bool:
        if x is UNDEFINED:
            return False
        if depth is None:
            return x in self.universe
        if self._rank is None:
            raise ValueError(f"{self.name} has no stages; H(x, k) is not interpretable")
        r = self._rank(x)
        return r is not None and r <= depth

    def pure(self, x) -> bool:
        if x is UNDEFINED:
            return False
        if self._pure is None:
            raise ValueError(f"Pure(.) is only interpreted by W structures, not {self.name}")
        return self._pure(x)


def _identity(a, b):
    return a is b


# -- concrete structures ------------------------------------------------------


def w_structure(n: int) -> Structure:
    """W(n): domain W_n with the hat relations for both the plain and the hat
    predicate symbols."""
    u = whier.build_w(n)
    rel = {
        Pred.MEM: whier.mem_hat,
        Pred.PI1: whier.pi1_hat,
        Pred.PI2: whier.pi2_hat,
        Pred.MEM_HAT: whier.mem_hat,
        Pred.PI1_HAT: whier.pi1_hat,
        Pred.PI2_HAT: whier.pi2_hat,
    }

    def preimage(pred, y):
        if pred in (Pred.MEM, Pred.MEM_HAT):
            return whier.content(y)
        if pred in (Pred.PI1, Pred.PI1_HAT, Pred.PI2, Pred.PI2_HAT):
            pr = whier.projections(y)
            if pr is None:
                return ()
            return (pr[0],) if pred in (Pred.PI1, Pred.PI1_HAT) else (pr[1],)
        return None

    def rank(x):
        return u.rank.get(x)

    s = Structure(
        u.domain,
        rel,
        name=f"W({n})",
        preimage=preimage,
        tier=u.tier,
        rank=rank,
        pure=lambda x: x in u and whier.is_pure(x, u),
    )
    s.universe_obj = u
    s.depth = n
    return s


def v_structure(n: int) -> Structure:
    """V(n): domain V_n, native membership, pi1/pi2 read as the Kuratowski
    projection abbreviations."""
    top = hf.v_tier(n)
    tiers = [hf.v_tier(k).elems for k in range(n + 1)]
    rel = {Pred.MEM: hf.mem, Pred.PI1: hf.kpi1, Pred.PI2: hf.kpi2}

    def preimage(pred, y):
        if pred is Pred.MEM:
            return y.elems
        return None

    def tier(k):
        return tiers[max(0, min(k, n))] if k >= 0 else ()

    def rank(x):
        # x is in V_k iff rank(x) < k; report the least such k
        return hf.rank(x) + 1

    s = Structure(top.elems, rel, name=f"V({n})", preimage=preimage, tier=tier, rank=rank)
    s.depth = n
    return s


def ambient_structure(n: int, extra: int = 3) -> Structure:
    """W_n together with V_extra, reading the hat relations as total
    relations on HF values.  Here H(x) is a real restriction (x in W_n), so
    translated formulas can be tested where H is not trivially true."""
    u = whier.build_w(n)
    dom = sorted(set(u.domain) | set(hf.v_tier(extra).elems), key=hf._key)
    dom_set = frozenset(dom)
    rel = {
        Pred.MEM: hf.mem,
        Pred.PI1: hf.kpi1,
        Pred.PI2: hf.kpi2,
        Pred.MEM_HAT: whier.mem_hat,
        Pred.PI1_HAT: whier.pi1_hat,
        Pred.PI2_HAT: whier.pi2_hat,
    }

    def preimage(pred, y):
        if pred is Pred.MEM:
            return tuple(a for a in y.elems if a in dom_set)
        if pred is Pred.MEM_HAT:
            return tuple(a for a in whier.content(y) if a in dom_set)
        return None

    s = Structure(
        dom,
        rel,
        name=f"W({n})+V({extra})",
        preimage=preimage,
        tier=u.tier,
        rank=lambda x: u.rank.get(x),
        universe=frozenset(u.domain),
    )
    s.depth = n
    return s


def custom_structure(size: int, mem=(), pi1=(), pi2=(), name: str = "custom") -> Structure:
    """Domain {0, .., size-1} (as von Neumann numerals) with the given pairs
    (of integers) as the relations."""
    dom = [hf.vn(i) for i in range(size)]
    rels = {}
    for pred, pairs in ((Pred.MEM, mem), (Pred.PI1, pi1), (Pred.PI2, pi2)):
        table = frozenset((dom[i], dom[j]) for i, j in pairs)
        rels[pred] = lambda a, b, _t=table: (a, b) in _t
    s = Structure(dom, rels, name=name)
    s.pairs = {Pred.MEM: frozenset(mem), Pred.PI1: frozenset(pi1), Pred.PI2: frozenset(pi2)}
    return s


def random_structure(rng, size: Optional[int] = None, max_size: int = 3, density: float = 0.4) -> Structure:
    """Random relations over a domain of 1..max_size elements.  ``rng`` is a
    :class:`random.Random` or numpy Generator."""
    if size is None:
        size = int(rng.integers(1, max_size + 1)) if hasattr(rng, "integers") else rng.randint(1, max_size)
    rels = {}
    for pred in (Pred.MEM, Pred.PI1, Pred.PI2):
        rels[pred] = [(i, j) for i in range(size) for j in range(size) if rng.random() < density]
    return custom_structure(size, rels[Pred.MEM], rels[Pred.PI1], rels[Pred.PI2], name="random")


def parse_structure(spec: str) -> Structure:
    """``w:3``, ``v:3`` or ``ambient:2`` (CLI syntax)."""
    kind, _, depth = spec.partition(":")
    try:
        n = int(depth)
    except ValueError:
        raise ValueError(f"bad structure {spec!r}; expected w:N or v:N") from None
    kind = kind.lower()
    if kind == "w":
        return w_structure(n)
    if kind == "v":
        return v_structure(n)
    if kind == "ambient":
        return ambient_structure(n)
    raise ValueError(f"bad structure {spec!r}; expected w:N or v:N")


# -- reference evaluator --------------------------------------------------------


def eval_term(t, s: Structure, env: Mapping[Var, HF]):
    if isinstance(t, Var):
        try:
            return env[t]
        except KeyError:
            raise UnboundVariable(f"{t!r} is not bound by the environment") from None
    if isinstance(t, Iota):
        found = UNDEFINED
        for d in s.domain:
            if eval_formula(t.body, s, {**env, t.var: d}):
                if found is not UNDEFINED:
                    return UNDEFINED
                found = d
        return found
    raise TypeError(f"not a core term: {type(t).__name__} (expand abbreviations first)")


def eval_formula(f, s: Structure, env: Mapping[Var, HF] = None) -> bool:
    """Literal reading of the semantics; slow but obviously right."""
    env = env or {}
    if isinstance(f, Atom):
        a = eval_term(f.left, s, env)
        b = eval_term(f.right, s, env)
        return s.holds(f.pred, a, b)
    if isinstance(f, Implies):
        return (not eval_formula(f.left, s, env)) or eval_formula(f.right, s, env)
    if isinstance(f, Not):
        return not eval_formula(f.body, s, env)
    if isinstance(f, Forall):
        return all(eval_formula(f.body, s, {**env, f.var: d}) for d in s.domain)
    if isinstance(f, H):
        return s.h(eval_term(f.term, s, env), f.depth)
    if isinstance(f, Pure):
        return s.pure(eval_term(f.term, s, env))
    raise TypeError(f"not a core formula: {type(f).__name__} (expand abbreviations first)")


def environments(variables: Sequence[Var], values: Sequence[HF]):
    """All assignments of ``values`` to ``variables``, lexicographically."""
    for combo in itertools.product(values, repeat=len(variables)):
        yield dict(zip(variables, combo))


# -- the (.)* translation ----------------------------------------------------


def star(f):
    """Relativise to H and replace predicate symbols by their hat versions."""
    if isinstance(f, Atom):
        return Atom(star_term(f.left), f.pred.hat, star_term(f.right))
    if isinstance(f, Implies):
        return Implies(star(f.left), star(f.right))
    if isinstance(f, Not):
        return Not(star(f.body))
    if isinstance(f, Forall):
        return Forall(f.var, Implies(H(f.var), star(f.body)))
    if isinstance(f, (H, Pure)):
        return type(f)(star_term(f.term), *([f.depth] if isinstance(f, H) else []))
    raise TypeError(f"star expects a core formula, got {type(f).__name__}")


def star_term(t):
    if isinstance(t, Var):
        return t
    if isinstance(t, Iota):
        return Iota(t.var, conj(H(t.var), star(t.body)))
    raise TypeError(f"star expects a core term, got {type(t).__name__}")


# zfp-dialect formulas in x with parameters y, z, used to check that
# (exists x. phi)* and exists x. H(x) /\ phi* agree
EXISTENTIAL_CATALOG = (
    "mem(x, y)",
    "mem(y, x)",
    "x = y",
    "pi1(x, y)",
    "pi2(y, x)",
    "Set(x) /\\ mem(x, y)",
    "Pair(x) /\\ pi1(y, x)",
    "x = PPair(y, z)",
    "mem(x, y) /\\ !mem(x, z)",
    "forall w. mem(w, x) <-> mem(w, y) \\/ w = z",
    "x = Union(y)",
    "Subset(x, y)",
    "x = Empty()",
    "exists w. mem(w, x) /\\ pi1(w, y)",
)


def existential_pair(text: str, dialect: str = "zfp"):
    """``((exists x. phi)*, exists x. H(x) /\\ phi*)`` for a catalogue entry,
    with x, y, z as v0, v1, v2."""
    from .abbrev import expand
    from .logic import exists
    from .surface import parse_formula

    x, y, z = Var(0), Var(1), Var(2)
    phi = expand(parse_formula(text, {"x": x, "y": y, "z": z}), dialect)
    return star(exists(x, phi)), exists(x, conj(H(x), star(phi)))


# -- compiled evaluator ------------------------------------------------------


def _neg_literals(b) -> list:
    """Literals whose conjunction is equivalent to not-b."""
    if isinstance(b, Implies):
        return _pos_literals(b.left) + _neg_literals(b.right)
    if isinstance(b, Not):
        return _pos_literals(b.body)
    return [Not(b)]


def _pos_literals(a) -> list:
    """Literals whose conjunction is equivalent to a."""
    if isinstance(a, Not):
        return _neg_literals(a.body)
    return [a]


class Evaluator:
    """Fast evaluation of core formulas over one structure.

    ``budget`` bounds the number of candidate values tried by quantifiers
    and descriptions over the evaluator's lifetime; exceeding it raises
    :class:`BudgetExceeded`.
    """

    def __init__(self, s: Structure, budget: Optional[int] = None):
        self.s = s
        self.budget = budget
        self.steps = 0

    # public API
    def evaluate(self, f, env: Mapping[Var, HF] = None) -> bool:
        fn, size, slots = self.compile(f)
        return fn(self._env(env, size))

    def value(self, t, env: Mapping[Var, HF] = None):
        g = rename_apart(Atom(t, Pred.EQ, t))
        top = max([x.index for x in all_vars(g)], default=-1) + 1
        fn = self._term(g.left)
        return fn(self._env(env, top))

    def compile(self, f):
        """Returns ``(fn, env_size, free_slots)``; ``fn`` takes a list env."""
        g = rename_apart(f)
        size = max([x.index for x in all_vars(g)], default=-1) + 1
        return self._formula(g), size, sorted(x.index for x in free_vars(g))

    def _env(self, env, size):
        e = [None] * size
        for x, val in (env or {}).items():
            if x.index < size:
                e[x.index] = val
        return e

    def _tick(self, n):
        self.steps += n
        if self.budget is not None and self.steps > self.budget:
            raise BudgetExceeded(f"evaluation exceeded {self.budget} steps on {self.s.name}")

    # formulas
    def _formula(self, f):
        s = self.s
        if isinstance(f, Not):
            b = f.body
            if isinstance(b, Not):
                return self._formula(b.body)
            if isinstance(b, Forall):
                return self._exists(b.var, _neg_literals(b.body))
            inner = self._formula(b)
            return lambda e: not inner(e)
        if isinstance(f, Implies):
            a, c = self._formula(f.left), self._formula(f.right)
            return lambda e: (not a(e)) or c(e)
        if isinstance(f, Forall):
            ex = self._exists(f.var, _neg_literals(f.body))
            return lambda e: not ex(e)
        if isinstance(f, Atom):
            return self._atom(f)
        if isinstance(f, H):
            t, depth = self._term(f.term), f.depth
            return lambda e: s.h(t(e), depth)
        if isinstance(f, Pure):
            t = self._term(f.term)
            return lambda e: s.pure(t(e))
        raise TypeError(f"not a core formula: {type(f).__name__}")

    def _atom(self, f):
        s = self.s
        rel = s.relation(f.pred)
        L, R = f.left, f.right
        if isinstance(L, Var) and isinstance(R, Var):
            i, j = L.index, R.index
            if f.pred is Pred.EQ:
                return lambda e: e[i] is e[j]
            return lambda e: rel(e[i], e[j])
        lt, rt = self._term(L), self._term(R)
        U = UNDEFINED
        if f.pred is Pred.EQ:
            def eq(e):
                a = lt(e)
                return a is not U and a is rt(e)
            return eq

        def atom(e):
            a = lt(e)
            if a is U:
                return False
            b = rt(e)
            return b is not U and rel(a, b)

        return atom

    def _literal(self, lit):
        return self._formula(lit)

    def _generator(self, x: Var, literals):
        """Pick the literal that best enumerates candidates for x.

        Returns ``(gen, rest)`` where gen maps an env to an iterable of
        candidate values and rest are the literals still to be checked.
        """
        s = self.s
        best = None
        for pos, lit in enumerate(literals):
            score, gen = self._gen_for(x, lit)
            if gen is not None and (best is None or score < best[0]):
                best = (score, gen, pos)
        if best is None:
            dom = s.domain
            return (lambda e: dom), list(literals)
        _, gen, pos = best
        return gen, literals[:pos] + literals[pos + 1:]

    def _gen_for(self, x, lit):
        s = self.s
        if isinstance(lit, H) and lit.term == x:
            cands = s.tier(lit.depth)
            return 3, (lambda e: cands)
        if not isinstance(lit, Atom):
            return None, None
        L, R, p = lit.left, lit.right, lit.pred
        U = UNDEFINED
        if L == x and x not in free_vars(R):
            t = self._term(R)
            if p is Pred.EQ:
                dom = s.domain_set

                def single(e):
                    v = t(e)
                    return (v,) if v is not U and v in dom else ()
                return 0, single
            return 1, (lambda e: () if (v := t(e)) is U else s.preimage(p, v))
        if R == x and x not in free_vars(L):
            t = self._term(L)
            if p is Pred.EQ:
                dom = s.domain_set

                def single(e):
                    v = t(e)
                    return (v,) if v is not U and v in dom else ()
                return 0, single
            return 2, (lambda e: () if (v := t(e)) is U else s.postimage(p, v))
        return None, None

    def _ordered(self, literals):
        # cheap literals first; order is otherwise preserved
        def cost(lit):
            body = lit.body if isinstance(lit, Not) else lit
            if isinstance(body, (Atom, H, Pure)):
                return 0 if not contains_iota(body) else 1
            return 2
        return sorted(literals, key=cost)

    def _exists(self, x: Var, literals):
        gen, rest = self._generator(x, literals)
        checks = [self._literal(l) for l in self._ordered(rest)]
        i = x.index
        tick = self._tick

        if len(checks) == 1:
            c0 = checks[0]

            def ex1(e):
                cands = gen(e)
                tick(len(cands))
                for d in cands:
                    e[i] = d
                    if c0(e):
                        return True
                return False
            return ex1

        def ex(e):
            cands = gen(e)
            tick(len(cands))
            for d in cands:
                e[i] = d
                for c in checks:
                    if not c(e):
                        break
                else:
                    return True
            return False

        return ex

    def _term(self, t):
        if isinstance(t, Var):
            i = t.index
            return lambda e: e[i]
        if isinstance(t, Iota):
            return self._iota(t)
        raise TypeError(f"not a core term: {type(t).__name__}")

    def _iota(self, t: Iota):
        x = t.var
        gen, rest = self._generator(x, _pos_literals(t.body))
        checks = [self._literal(l) for l in self._ordered(rest)]
        keys = tuple(sorted(v.index for v in free_vars(t)))
        i = x.index
        memo: Dict[tuple, object] = {}
        tick = self._tick
        U = UNDEFINED

        def iota_exact(e):
            k = tuple(e[j] for j in keys)
            hit = memo.get(k)
            if hit is not None:
                return hit
            found = U
            count = 0
            cands = gen(e)
            tick(len(cands))
            for d in cands:
                e[i] = d
                for c in checks:
                    if not c(e):
                        break
                else:
                    count += 1
                    if count > 1:
                        break
                    found = d
            out = found if count == 1 else U
            memo[k] = out
            return out

        return iota_exact

