"""Concrete ASCII syntax.

Formulas::

    mem(a, b)   pi1(a, p)   pi2(a, p)   a = b   a != b
    memh(a, b)  pi1h(a, p)  pi2h(a, p)          (translated relations)
    H(x)  H(x, 2)  Pure(x)                       (markers)
    !f   f /\\ g   f \\/ g   f -> g   f <-> g
    forall x. f    exists x, y. f    existsu x in X. f
    forall_set x. f   exists_pair p. f   ...
    Subset(X, Y)  Set(x)  Pair(x)  KPi1(a, q)  KPi2(b, q)  Ord(x)

Terms::

    x    (iota x. f)    iota_set x. f    Union(x)  Pow(x)  KPair(a, b) ...
    {x in X | f}

Precedence, tightest first: ``!``, ``/\\``, ``\\/``, ``->``, ``<->``.  ``/\\``
and ``\\/`` associate to the left, ``->`` and ``<->`` to the right;
quantifier and description bodies extend as far right as possible.

Variables ``x0, x1, ...`` (or ``v0, ...``) denote the variable with that
index; any other name not followed by ``(`` is given the smallest index not otherwise
used in the text, in order of first appearance.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

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

#: capitalised names that denote formulas rather than terms
FORMULA_MACROS = frozenset({"Subset", "Set", "Pair", "KPi1", "KPi2", "Ord"})

_PRED_WORDS = {p.value: p for p in Pred if p is not Pred.EQ}

_BINDERS = {
    "forall": ("forall", None),
    "exists": ("exists", None),
    "existsu": ("existsu", None),
    "forall_set": ("forall", "Set"),
    "exists_set": ("exists", "Set"),
    "existsu_set": ("existsu", "Set"),
    "forall_pair": ("forall", "Pair"),
    "exists_pair": ("exists", "Pair"),
    "existsu_pair": ("existsu", "Pair"),
}
_IOTAS = {"iota": None, "iota_set": "Set", "iota_pair": "Pair"}

_KEYWORDS = frozenset(_BINDERS) | frozenset(_IOTAS) | frozenset(_PRED_WORDS) | {"in"}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op><->|->|/\\|\\/|!=|[!=(),.{}|])
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

_NUMBERED = re.compile(r"[xv](\d+)\Z")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, offset: int):
        line = text.count("\n", 0, offset) + 1
        col = offset - (text.rfind("\n", 0, offset) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.column = col


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    offset: int


def _tokenize(text: str) -> List[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        if m.lastgroup != "ws":
            out.append(_Tok(m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(_Tok("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, names: Optional[Mapping[str, Var]]):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0
        self.names: Dict[str, Var] = dict(names or {})
        reserved = {x.index for x in self.names.values()}
        for t in self.toks:
            m = _NUMBERED.match(t.text) if t.kind == "ident" else None
            if m:
                reserved.add(int(m.group(1)))
        self.reserved = reserved
        self._term_memo = {}

    # -- token helpers
    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def next(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.kind in ("op", "ident") and t.text == text

    def expect(self, text: str) -> _Tok:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.next()

    def fail(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.peek()
        found = tok.text or "end of input"
        raise ParseError(f"{msg}, found {found!r}", self.text, tok.offset)

    def var(self) -> Var:
        t = self.peek()
        if t.kind != "ident" or t.text in _KEYWORDS or self.peek(1).text == "(":
            self.fail("expected a variable")
        self.next()
        return self.resolve(t.text)

    def resolve(self, name: str) -> Var:
        x = self.names.get(name)
        if x is not None:
            return x
        m = _NUMBERED.match(name)
        if m:
            x = Var(int(m.group(1)))
        else:
            used = self.reserved | {y.index for y in self.names.values()}
            i = 0
            while i in used:
                i += 1
            x = Var(i)
        self.names[name] = x
        return x

    # -- formulas
    def formula(self):
        return self.iff()

    def iff(self):
        left = self.imp()
        if self.at("<->"):
            self.next()
            return Iff(left, self.iff())
        return left

    def imp(self):
        left = self.disj()
        if self.at("->"):
            self.next()
            return Implies(left, self.imp())
        return left

    def disj(self):
        left = self.conj()
        while self.at("\\/"):
            self.next()
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.at("/\\"):
            self.next()
            left = And(left, self.unary())
        return left

    def unary(self):
        if self.at("!"):
            self.next()
            return Not(self.unary())
        t = self.peek()
        if t.kind == "ident" and t.text in _BINDERS:
            return self.binder()
        return self.primary()

    def binder(self):
        kind, restrict = _BINDERS[self.next().text]
        bindings = [self.binding()]
        while self.at(","):
            self.next()
            bindings.append(self.binding())
        self.expect(".")
        body = self.formula()
        for x, bound in reversed(bindings):
            if kind == "forall" and bound is None and restrict is None:
                body = Forall(x, body)
            else:
                body = Quant(kind, x, body, bound, restrict)
        return body

    def binding(self):
        x = self.var()
        bound = None
        if self.at("in"):
            self.next()
            bound = self.term()
        return x, bound

    def primary(self):
        t = self.peek()
        if t.kind == "op" and t.text == "(":
            save = self.pos
            try:
                return self.equation()
            except ParseError:
                self.pos = save
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if t.kind == "ident":
            if t.text in _PRED_WORDS and self.peek(1).text == "(":
                self.next()
                self.expect("(")
                a = self.term()
                self.expect(",")
                b = self.term()
                self.expect(")")
                return Atom(a, _PRED_WORDS[t.text], b)
            if t.text == "H" and self.peek(1).text == "(":
                self.next()
                self.expect("(")
                a = self.term()
                depth = None
                if self.at(","):
                    self.next()
                    n = self.next()
                    if n.kind != "num":
                        self.fail("expected a tier number", n)
                    depth = int(n.text)
                self.expect(")")
                return H(a, depth)
            if t.text == "Pure" and self.peek(1).text == "(":
                self.next()
                self.expect("(")
                a = self.term()
                self.expect(")")
                return Pure(a)
            if t.text in FORMULA_MACROS:
                self.next()
                return FormulaCall(t.text, self.args())
        return self.equation()

    def equation(self):
        a = self.term()
        if self.at("="):
            self.next()
            return Atom(a, Pred.EQ, self.term())
        if self.at("!="):
            self.next()
            return Not(Atom(a, Pred.EQ, self.term()))
        self.fail("expected '=' or '!=' after term")

    def args(self) -> Tuple:
        self.expect("(")
        out = []
        if not self.at(")"):
            out.append(self.term())
            while self.at(","):
                self.next()
                out.append(self.term())
        self.expect(")")
        return tuple(out)

    # -- terms
    def term(self):
        # memoised: a '(' in formula position is first tried as a term
        start = self.pos
        hit = self._term_memo.get(start)
        if hit is None:
            try:
                hit = (self._term(), self.pos)
            except ParseError as err:
                hit = err
            self._term_memo[start] = hit
        if isinstance(hit, ParseError):
            raise hit
        self.pos = hit[1]
        return hit[0]

    def _term(self):
        t = self.peek()
        if t.kind == "op" and t.text == "(":
            self.next()
            inner = self.term()
            self.expect(")")
            return inner
        if t.kind == "op" and t.text == "{":
            self.next()
            x = self.var()
            self.expect("in")
            bound = self.term()
            self.expect("|")
            body = self.formula()
            self.expect("}")
            return Sep(x, bound, body)
        if t.kind == "ident" and t.text in _IOTAS:
            self.next()
            x = self.var()
            self.expect(".")
            body = self.formula()
            restrict = _IOTAS[t.text]
            return Iota(x, body) if restrict is None else IotaR(restrict, x, body)
        if t.kind == "ident" and t.text[0].isupper() and self.peek(1).text == "(":
            if t.text in FORMULA_MACROS or t.text in ("H", "Pure"):
                self.fail("formula used where a term is expected")
            self.next()
            return TermCall(t.text, self.args())
        return self.var()


def parse(text: str, names: Optional[Mapping[str, Var]] = None):
    """Parse a formula, or a term if the text is not a formula."""
    try:
        return parse_formula(text, names)
    except ParseError as err:
        try:
            return parse_term(text, names)
        except ParseError:
            raise err from None


def parse_formula(text: str, names: Optional[Mapping[str, Var]] = None):
    return parse_with_names(text, names)[0]


def parse_with_names(text: str, names: Optional[Mapping[str, Var]] = None):
    """Parse a formula; also return the name -> variable map used."""
    p = _Parser(text, names)
    f = p.formula()
    if p.peek().kind != "eof":
        p.fail("unexpected trailing input")
    return f, p.names


def parse_term_with_names(text: str, names: Optional[Mapping[str, Var]] = None):
    p = _Parser(text, names)
    t = p.term()
    if p.peek().kind != "eof":
        p.fail("unexpected trailing input")
    return t, p.names


def parse_term(text: str, names: Optional[Mapping[str, Var]] = None):
    return parse_term_with_names(text, names)[0]


# -- printing --------------------------------------------------------------------

_IFF, _IMP, _OR, _AND, _NOT = 1, 2, 3, 4, 5

_QUANT_WORD = {
    (k, r): w for w, (k, r) in _BINDERS.items()
}


def print_term(t) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if isinstance(t, Iota):
        return f"(iota {print_term(t.var)}. {print_formula(t.body)})"
    if isinstance(t, IotaR):
        return f"(iota_{t.restrict.lower()} {print_term(t.var)}. {print_formula(t.body)})"
    if isinstance(t, Sep):
        return f"{{{print_term(t.var)} in {print_term(t.bound)} | {print_formula(t.body)}}}"
    if isinstance(t, TermCall):
        return f"{t.name}({', '.join(print_term(a) for a in t.args)})"
    raise TypeError(f"not a term: {t!r}")


def print_formula(f) -> str:
    """Deterministic rendering; ``parse_formula(print_formula(f)) == f``."""
    return _pf(f, 0)


def _binder_text(f) -> str:
    if isinstance(f, Forall):
        head = f"forall {print_term(f.var)}"
    else:
        head = f"{_QUANT_WORD[(f.kind, f.restrict)]} {print_term(f.var)}"
        if f.bound is not None:
            head += f" in {print_term(f.bound)}"
    return f"{head}. {_pf(f.body, 0)}"


def _pf(f, ctx: int) -> str:
    """Render f where the context requires precedence at least ``ctx``.

    ctx == 0 is a position where a binder may extend to the right.
    """
    if isinstance(f, (Forall, Quant)):
        text = _binder_text(f)
        return text if ctx == 0 else f"({text})"
    if isinstance(f, Atom):
        if f.pred is Pred.EQ:
            return f"{print_term(f.left)} = {print_term(f.right)}"
        return f"{f.pred.value}({print_term(f.left)}, {print_term(f.right)})"
    if isinstance(f, H):
        if f.depth is None:
            return f"H({print_term(f.term)})"
        return f"H({print_term(f.term)}, {f.depth})"
    if isinstance(f, Pure):
        return f"Pure({print_term(f.term)})"
    if isinstance(f, FormulaCall):
        return f"{f.name}({', '.join(print_term(a) for a in f.args)})"
    if isinstance(f, Not):
        b = f.body
        if isinstance(b, Atom) and b.pred is Pred.EQ:
            text = f"{print_term(b.left)} != {print_term(b.right)}"
        else:
            text = "!" + _pf(b, _NOT)
        return text
    if isinstance(f, (And, Or)):
        level, op = (_AND, "/\\") if isinstance(f, And) else (_OR, "\\/")
        text = f"{_pf(f.left, level)} {op} {_pf(f.right, level + 1)}"
        return text if ctx <= level else f"({text})"
    if isinstance(f, (Implies, Iff)):
        level, op = (_IMP, "->") if isinstance(f, Implies) else (_IFF, "<->")
        text = f"{_pf(f.left, level + 1)} {op} {_pf(f.right, level)}"
        return text if ctx <= level else f"({text})"
    raise TypeError(f"not a formula: {f!r}")
