"""Hereditarily finite sets with hash-consing.

Every set is interned: two HF values are extensionally equal iff they are
the same Python object, so ``is``/``==`` coincide with set equality and the
default identity hash is safe.  Elements are kept in canonical order, the
recursive lexicographic order on sorted element sequences (shorter prefix
first, the empty set least).  :attr:`HF.key` is a nested tuple realising
that order, so ordinary tuple comparison sorts HF values.

Values must never be copied or pickled; construct them through
:func:`hf_set` or the helpers below.
"""
from __future__ import annotations

import itertools
import threading
from typing import Dict, Iterable, List, Optional, Tuple

MAX_V_TIER = 5


class HF:
    __slots__ = ("elems", "key", "uid", "_members", "__weakref__")

    def __init__(self, elems: Tuple["HF", ...], key: tuple, uid: int):
        self.elems = elems
        self.key = key
        self.uid = uid
        self._members = None

    @property
    def members(self) -> frozenset:
        m = self._members
        if m is None:
            m = self._members = frozenset(self.elems)
        return m

    def __contains__(self, item) -> bool:
        return item in self.members

    def __iter__(self):
        return iter(self.elems)

    def __len__(self):
        return len(self.elems)

    def __lt__(self, other: "HF") -> bool:
        return self.key < other.key

    def __le__(self, other: "HF") -> bool:
        return self.key <= other.key

    def __gt__(self, other: "HF") -> bool:
        return self.key > other.key

    def __ge__(self, other: "HF") -> bool:
        return self.key >= other.key

    def __repr__(self):
        return render(self)

    def __reduce__(self):
        raise TypeError("HF values are interned and cannot be pickled")


_table: Dict[Tuple[int, ...], HF] = {}
_lock = threading.Lock()


def _intern(elems: Tuple[HF, ...]) -> HF:
    ident = tuple(e.uid for e in elems)
    node = _table.get(ident)
    if node is not None:
        return node
    with _lock:
        node = _table.get(ident)
        if node is None:
            node = HF(elems, tuple(e.key for e in elems), len(_table))
            _table[ident] = node
    return node


def hf_set(items: Iterable[HF] = ()) -> HF:
    """The set of the given HF values (duplicates collapse)."""
    uniq = set(items)
    return _intern(tuple(sorted(uniq, key=_key)))


def _key(x: HF):
    return x.key


def interned_count() -> int:
    return len(_table)


# -- basic operations ----------------------------------------------------------

EMPTY = _intern(())


def empty() -> HF:
    return EMPTY


def upair(a: HF, b: HF) -> HF:
    return hf_set((a, b))


def singleton(a: HF) -> HF:
    return hf_set((a,))


def binary_union(x: HF, y: HF) -> HF:
    return hf_set(itertools.chain(x.elems, y.elems))


def big_union(x: HF) -> HF:
    return hf_set(itertools.chain.from_iterable(z.elems for z in x.elems))


def powerset(x: HF) -> HF:
    elems = x.elems
    subsets = []
    for r in range(len(elems) + 1):
        for combo in itertools.combinations(elems, r):
            # combinations of a sorted tuple stay sorted
            subsets.append(_intern(combo))
    return hf_set(subsets)


def mem(a: HF, x: HF) -> bool:
    return a in x.members


def subset(x: HF, y: HF) -> bool:
    return x.members <= y.members


def successor(x: HF) -> HF:
    return binary_union(x, singleton(x))


def rank(x: HF, _cache: Dict[HF, int] = {}) -> int:
    """Von Neumann rank: x is in V_n iff rank(x) < n."""
    r = _cache.get(x)
    if r is None:
        r = max((rank(e) + 1 for e in x.elems), default=0)
        _cache[x] = r
    return r


# -- ordered pairs -----------------------------------------------------------


def kpair(a: HF, b: HF) -> HF:
    """Kuratowski pair {{a},{a,b}}."""
    return upair(singleton(a), upair(a, b))


def kpi1(a: HF, q: HF) -> bool:
    """a is in every member of q (vacuous for q empty)."""
    return all(a in x.members for x in q.elems)


def kpi2(b: HF, q: HF) -> bool:
    """b is in exactly one member of q."""
    return sum(1 for x in q.elems if b in x.members) == 1


def kproj(q: HF) -> Optional[Tuple[HF, HF]]:
    """Projections of q if q is a Kuratowski pair, else None.

    Candidates come from the membership criteria (first projection in all
    members, second in exactly one); the answer is then confirmed against
    :func:`kpair`.
    """
    if not q.elems:
        return None
    pool = big_union(q).elems
    firsts = [a for a in pool if kpi1(a, q)]
    seconds = [b for b in pool if kpi2(b, q)]
    if len(firsts) != 1 or len(seconds) != 1:
        return None
    a, b = firsts[0], seconds[0]
    return (a, b) if kpair(a, b) is q else None


def cartesian(x: HF, y: HF) -> HF:
    return hf_set(kpair(c, d) for c in x.elems for d in y.elems)


# -- numerals, ordinals, stages ----------------------------------------------------


def vn(n: int) -> HF:
    """The n-th von Neumann numeral."""
    x = EMPTY
    for _ in range(n):
        x = successor(x)
    return x


def is_transitive(x: HF) -> bool:
    return all(subset(y, x) for y in x.elems)


def is_ordinal(x: HF) -> bool:
    """Transitive and totally ordered by membership."""
    if not is_transitive(x):
        return False
    return all(y is z or mem(y, z) or mem(z, y) for y in x.elems for z in x.elems)


class DepthError(ValueError):
    pass


_v_tiers: List[HF] = [EMPTY]


def v_tier(n: int) -> HF:
    """V_n as an HF set (V_0 = {}, V_{n+1} = P(V_n)); n <= 5."""
    if not 0 <= n <= MAX_V_TIER:
        raise DepthError(f"v_tier depth {n} outside 0..{MAX_V_TIER}")
    while len(_v_tiers) <= n:
        _v_tiers.append(powerset(_v_tiers[-1]))
    return _v_tiers[n]


# -- rendering ---------------------------------------------------------------


def render(x: HF) -> str:
    """Nested-brace rendering, e.g. ``{{},{{}}}``."""
    return "{" + ",".join(render(e) for e in x.elems) + "}"


def parse_hf(text: str) -> HF:
    """Inverse of :func:`render`; whitespace is ignored.  Digits denote
    von Neumann numerals, so ``{0,1}`` is accepted too."""
    s = "".join(text.split())
    pos = 0

    def value():
        nonlocal pos
        if pos < len(s) and s[pos].isdigit():
            start = pos
            while pos < len(s) and s[pos].isdigit():
                pos += 1
            return vn(int(s[start:pos]))
        if pos >= len(s) or s[pos] != "{":
            raise ValueError(f"expected '{{' at offset {pos} in {text!r}")
        pos += 1
        items = []
        if pos < len(s) and s[pos] == "}":
            pos += 1
            return EMPTY
        while True:
            items.append(value())
            if pos < len(s) and s[pos] == ",":
                pos += 1
                continue
            if pos < len(s) and s[pos] == "}":
                pos += 1
                return hf_set(items)
            raise ValueError(f"expected ',' or '}}' at offset {pos} in {text!r}")

    out = value()
    if pos != len(s):
        raise ValueError(f"trailing input at offset {pos} in {text!r}")
    return out
