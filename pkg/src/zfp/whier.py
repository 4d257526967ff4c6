"""Finite stages of the tagged cumulative hierarchy W.

    W_0 = {}
    W_{k+1} = ({0} x P(W_k))  u  ({1} x (W_k)^2)

with von Neumann tags and Kuratowski pairs.  Members tagged 0 are m-sets
(they model sets), members tagged 1 are m-pairs (they model primitive
ordered pairs).  Only finite stages are built; W_4 already has 131361
members.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from . import hf
from .hf import HF, kpair, kproj

MAX_W_DEPTH = 4

ZERO = hf.vn(0)
ONE = hf.vn(1)


class NotInUniverse(ValueError):
    """The value is not a member of any built tier."""


# -- decoding (total on HF values) ----------------------------------------

_decoded: Dict[HF, Optional[tuple]] = {}


def decode(x: HF):
    """``(0, content)`` for <0,y>, ``(1, (u, v))`` for <1,<u,v>>, else None.

    ``content`` is the frozenset of members of y.
    """
    try:
        return _decoded[x]
    except KeyError:
        pass
    out = None
    pr = kproj(x)
    if pr is not None:
        tag, payload = pr
        if tag is ZERO:
            out = (0, payload.members)
        elif tag is ONE:
            inner = kproj(payload)
            if inner is not None:
                out = (1, inner)
    _decoded[x] = out
    return out


def mset(content) -> HF:
    """The m-set <0, content>."""
    return kpair(ZERO, hf.hf_set(content))


def mpair(a: HF, b: HF) -> HF:
    """The m-pair <1, <a, b>>."""
    return kpair(ONE, kpair(a, b))


def mem_hat(a: HF, x: HF) -> bool:
    d = decode(x)
    return d is not None and d[0] == 0 and a in d[1]


def pi1_hat(a: HF, p: HF) -> bool:
    d = decode(p)
    return d is not None and d[0] == 1 and d[1][0] is a


def pi2_hat(a: HF, p: HF) -> bool:
    d = decode(p)
    return d is not None and d[0] == 1 and d[1][1] is a


def is_mset(x: HF) -> bool:
    d = decode(x)
    return d is not None and d[0] == 0


def is_mpair(x: HF) -> bool:
    d = decode(x)
    return d is not None and d[0] == 1


def content(x: HF) -> FrozenSet[HF]:
    """hat-members of x; empty for anything that is not an m-set."""
    d = decode(x)
    return d[1] if d is not None and d[0] == 0 else frozenset()


def projections(x: HF) -> Optional[Tuple[HF, HF]]:
    d = decode(x)
    return d[1] if d is not None and d[0] == 1 else None


# -- the universe --------------------------------------------------------------


@dataclass(frozen=True)
class MSet:
    contents: FrozenSet[HF]


@dataclass(frozen=True)
class MPair:
    first: HF
    second: HF


@dataclass(frozen=True)
class MObject:
    value: HF
    kind: object  # MSet | MPair
    rank: int


@dataclass
class WUniverse:
    depth: int
    tiers: List[Tuple[HF, ...]]
    rank: Dict[HF, int] = field(repr=False)

    @property
    def domain(self) -> Tuple[HF, ...]:
        return self.tiers[self.depth]

    def __contains__(self, x) -> bool:
        return x in self.rank

    def tier_sizes(self) -> List[int]:
        return [len(t) for t in self.tiers]

    def tier(self, k: int) -> Tuple[HF, ...]:
        return self.tiers[max(0, min(k, self.depth))] if k >= 0 else ()

    def in_tier(self, x: HF, k: int) -> bool:
        r = self.rank.get(x)
        return r is not None and r <= k

    def msets(self, k: Optional[int] = None):
        return [x for x in self.tier(self.depth if k is None else k) if is_mset(x)]

    def mpairs(self, k: Optional[int] = None):
        return [x for x in self.tier(self.depth if k is None else k) if is_mpair(x)]

    def stats(self) -> dict:
        rows = []
        for k, t in enumerate(self.tiers):
            n_sets = sum(1 for x in t if is_mset(x))
            rows.append({"tier": k, "size": len(t), "msets": n_sets, "mpairs": len(t) - n_sets})
        return {"depth": self.depth, "tier_sizes": self.tier_sizes(), "tiers": rows}

    def stats_json(self) -> str:
        return json.dumps(self.stats(), indent=2)


def next_tier(prev: Tuple[HF, ...]) -> Tuple[HF, ...]:
    """({0} x P(prev)) u ({1} x prev^2), canonically ordered."""
    out = []
    for r in range(len(prev) + 1):
        for combo in itertools.combinations(prev, r):
            # prev is canonically sorted, so the combination is too
            out.append(kpair(ZERO, hf._intern(combo)))
    for a in prev:
        for b in prev:
            out.append(mpair(a, b))
    out.sort(key=hf._key)
    return tuple(out)


_built: List[Tuple[HF, ...]] = [()]


def build_w(depth: int) -> WUniverse:
    """Materialise W_0..W_depth (depth <= 4) with ranks."""
    if not 0 <= depth <= MAX_W_DEPTH:
        raise hf.DepthError(f"W depth {depth} outside 0..{MAX_W_DEPTH}")
    while len(_built) <= depth:
        _built.append(next_tier(_built[-1]))
    tiers = list(_built[: depth + 1])
    rank: Dict[HF, int] = {}
    for k in range(1, depth + 1):
        for x in tiers[k]:
            if x not in rank:
                rank[x] = k
    return WUniverse(depth, tiers, rank)


def classify(x: HF, u: WUniverse) -> MObject:
    if x not in u:
        raise NotInUniverse(f"{hf.render(x)} is not in W_{u.depth}")
    tag, payload = decode(x)
    kind = MSet(payload) if tag == 0 else MPair(*payload)
    return MObject(x, kind, u.rank[x])


def is_pure(x: HF, u: WUniverse, _cache: Dict[HF, bool] = {}) -> bool:
    """m-set all of whose hat-members are pure."""
    if x not in u:
        raise NotInUniverse(f"{hf.render(x)} is not in W_{u.depth}")
    return _pure(x, _cache)


def _pure(x, cache):
    r = cache.get(x)
    if r is None:
        d = decode(x)
        r = d is not None and d[0] == 0 and all(_pure(a, cache) for a in d[1])
        cache[x] = r
    return r


def embed_v(x: HF) -> HF:
    """The pure m-set corresponding to the HF set x."""
    return mset(embed_v(y) for y in x.elems)


def render_m(x: HF) -> str:
    """Structural view: m-sets as {..}, m-pairs as (a,b); raw HF otherwise."""
    d = decode(x)
    if d is None:
        return hf.render(x)
    if d[0] == 1:
        return f"({render_m(d[1][0])},{render_m(d[1][1])})"
    return "{" + ",".join(sorted(render_m(a) for a in d[1])) + "}"
