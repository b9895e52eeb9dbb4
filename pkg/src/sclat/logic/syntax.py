"""Abstract syntax, parser and renderer for lattice formulas.

Grammar (ASCII; Unicode aliases are accepted on input)::

    sentence := [ ("E" | "A") var+ "." ] formula
    formula  := conj ( "\\/" conj )*
    conj     := unary ( "/\\" unary )*
    unary    := "~" unary | "(" formula ")" | "true" | "false"
              | "At" k "(" term ")" | term rel term
    rel      := "=" | "<=" | "!="
    term     := meet ( "\\/" meet )*
    meet     := diff ( "/\\" diff )*
    diff     := prim ( "-" prim )*
    prim     := "0" | "1" | var | "C" i "(" term ")" | "(" term ")"

``/\\`` and ``\\/`` serve both as lattice operations and as connectives.
The parser explores every reading and keeps the ones that consume the
whole input, so ``C1(x) /\\ C0(x) != 0`` is a meet of terms while
``C1(x) = x /\\ x != 0`` is a conjunction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError, SemanticError

# ---- terms ------------------------------------------------------------------


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class One(Term):
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Join(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Meet(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Diff(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class C(Term):
    k: int
    arg: Term


# ---- formulas ---------------------------------------------------------------


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Rel(Formula):
    op: str  # "=", "<=" or "!="
    left: Term
    right: Term


@dataclass(frozen=True)
class At(Formula):
    k: int
    arg: Term


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Quantified(Formula):
    kind: str  # "E" or "A"
    vars: tuple[str, ...]
    body: Formula


# ---- helpers ------------------------------------------------------------------


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, (Join, Meet, Diff)):
        return term_vars(t.left) | term_vars(t.right)
    if isinstance(t, C):
        return term_vars(t.arg)
    return set()


def free_vars(f: Formula) -> set[str]:
    if isinstance(f, Rel):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, At):
        return term_vars(f.arg)
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Quantified):
        return free_vars(f.body) - set(f.vars)
    return set()


def ordered_vars(f: Formula | Term) -> list[str]:
    """Variables in order of first occurrence."""
    out: list[str] = []

    def walk(x):
        if isinstance(x, Var):
            if x.name not in out:
                out.append(x.name)
        elif isinstance(x, (Join, Meet, Diff, And, Or)):
            walk(x.left)
            walk(x.right)
        elif isinstance(x, Rel):
            walk(x.left)
            walk(x.right)
        elif isinstance(x, (C, At)):
            walk(x.arg)
        elif isinstance(x, Not):
            walk(x.body)
        elif isinstance(x, Quantified):
            for v in x.vars:
                if v not in out:
                    out.append(v)
            walk(x.body)

    walk(f)
    return out


def at_indices(f: Formula) -> set[int]:
    if isinstance(f, At):
        return {f.k}
    if isinstance(f, Not):
        return at_indices(f.body)
    if isinstance(f, (And, Or)):
        return at_indices(f.left) | at_indices(f.right)
    if isinstance(f, Quantified):
        return at_indices(f.body)
    return set()


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, Quantified):
        return False
    if isinstance(f, Not):
        return is_quantifier_free(f.body)
    if isinstance(f, (And, Or)):
        return is_quantifier_free(f.left) and is_quantifier_free(f.right)
    return True


def conj(*parts: Formula) -> Formula:
    out: Formula | None = None
    for p in parts:
        out = p if out is None else And(out, p)
    return out if out is not None else Top()


# ---- tokenizer ------------------------------------------------------------------

_ALIASES = {
    "∨": "\\/", "∧": "/\\", "≤": "<=", "≠": "!=", "¬": "~", "!": "~",
    "−": "-", "∃": "E", "∀": "A", "𝟘": "0", "𝟙": "1", "⊤": "true", "⊥": "false",
}

_TOKEN = re.compile(
    r"\s*(?:(?P<op>\\/|/\\|<=|!=|=|-|~|\(|\)|\.)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<num>\d+)|(?P<bad>\S))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "op", "name", "num", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    # expand aliases while remembering where each character came from
    chars: list[str] = []
    origin: list[int] = []
    for j, ch in enumerate(text):
        rep = _ALIASES.get(ch, ch)
        if ch == "!" and text[j + 1:j + 2] == "=":
            rep = "!"
        chars.extend(rep)
        origin.extend([j] * len(rep))
    s = "".join(chars)
    origin.append(len(text))
    out: list[Token] = []
    i = 0
    while True:
        m = _TOKEN.match(s, i)
        if m is None or m.lastgroup is None:
            break
        kind = m.lastgroup
        start = m.start(kind)
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group(kind)!r}", origin[start])
        out.append(Token(kind, m.group(kind), origin[start]))
        i = m.end()
    out.append(Token("end", "", len(text)))
    return out


_RESERVED = {"E", "A", "true", "false"}
_C_NAME = re.compile(r"C(\d+)$")
_AT_NAME = re.compile(r"At(\d+)$")


# ---- parser ----------------------------------------------------------------------


class _Parser:
    """All-parses recursive descent with memoisation on (rule, position)."""

    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.furthest = 0
        self.memo: dict[tuple[str, int], tuple] = {}
        for rule in ("prim", "diff", "meet", "term", "unary", "conj", "formula"):
            setattr(self, rule, self._memoised(rule, getattr(self, rule)))

    def _memoised(self, rule, fn):
        def run(i: int) -> tuple:
            key = (rule, i)
            if key not in self.memo:
                self.memo[key] = fn(i)
            return self.memo[key]

        return run

    def _see(self, i: int) -> Token:
        self.furthest = max(self.furthest, i)
        return self.toks[i]

    def _is(self, i: int, kind: str, text: str | None = None) -> bool:
        t = self._see(i)
        return t.kind == kind and (text is None or t.text == text)

    # terms
    def prim(self, i: int) -> tuple:
        t = self._see(i)
        out = []
        if t.kind == "num":
            if t.text == "0":
                out.append((Zero(), i + 1))
            elif t.text == "1":
                out.append((One(), i + 1))
        elif t.kind == "name":
            m = _C_NAME.match(t.text)
            if m:
                if self._is(i + 1, "op", "("):
                    for arg, j in self.term(i + 2):
                        if self._is(j, "op", ")"):
                            out.append((C(int(m.group(1)), arg), j + 1))
            elif t.text not in _RESERVED and not _AT_NAME.match(t.text):
                out.append((Var(t.text), i + 1))
        elif t.kind == "op" and t.text == "(":
            for inner, j in self.term(i + 1):
                if self._is(j, "op", ")"):
                    out.append((inner, j + 1))
        return tuple(out)

    def _chain(self, sub, i: int, op: str, node) -> tuple:
        out = []
        frontier = list(sub(i))
        while frontier:
            nxt = []
            for left, j in frontier:
                out.append((left, j))
                if self._is(j, "op", op):
                    for right, k in sub(j + 1):
                        nxt.append((node(left, right), k))
            frontier = nxt
        return tuple(out)

    def diff(self, i: int) -> tuple:
        return self._chain(self.prim, i, "-", Diff)

    def meet(self, i: int) -> tuple:
        return self._chain(self.diff, i, "/\\", Meet)

    def term(self, i: int) -> tuple:
        return self._chain(self.meet, i, "\\/", Join)

    # formulas
    def unary(self, i: int) -> tuple:
        t = self._see(i)
        out = []
        if t.kind == "op" and t.text == "~":
            out.extend((Not(f), j) for f, j in self.unary(i + 1))
        if t.kind == "name" and t.text == "true":
            out.append((Top(), i + 1))
        if t.kind == "name" and t.text == "false":
            out.append((Bot(), i + 1))
        if t.kind == "name" and _AT_NAME.match(t.text) and self._is(i + 1, "op", "("):
            k = int(_AT_NAME.match(t.text).group(1))
            for arg, j in self.term(i + 2):
                if self._is(j, "op", ")"):
                    out.append((At(k, arg), j + 1))
        if t.kind == "op" and t.text == "(":
            for f, j in self.formula(i + 1):
                if self._is(j, "op", ")"):
                    out.append((f, j + 1))
        for left, j in self.term(i):
            r = self._see(j)
            if r.kind == "op" and r.text in ("=", "<=", "!="):
                for right, k in self.term(j + 1):
                    out.append((Rel(r.text, left, right), k))
        return tuple(out)

    def conj(self, i: int) -> tuple:
        return self._chain(self.unary, i, "/\\", And)

    def formula(self, i: int) -> tuple:
        return self._chain(self.conj, i, "\\/", Or)

    def sentence(self) -> list[Formula]:
        t = self._see(0)
        start = 0
        kind = None
        names: list[str] = []
        if t.kind == "name" and t.text in ("E", "A"):
            kind = t.text
            i = 1
            while self._is(i, "name"):
                name = self.toks[i].text
                if name in _RESERVED or _C_NAME.match(name) or _AT_NAME.match(name):
                    raise ParseError(f"{name!r} cannot be a variable", self.toks[i].pos)
                names.append(name)
                i += 1
            if not names:
                raise ParseError("quantifier without variables", self.toks[i].pos)
            if not self._is(i, "op", "."):
                raise ParseError("expected '.' after the quantified variables", self.toks[i].pos)
            start = i + 1
        end = len(self.toks) - 1
        found = [f for f, j in self.formula(start) if j == end]
        if kind is not None:
            found = [Quantified(kind, tuple(names), f) for f in found]
        return found


def parse_formula(text: str) -> Formula:
    """Parse ``text``; raises ParseError (with position) or SemanticError."""
    toks = tokenize(text)
    p = _Parser(toks)
    found = list(dict.fromkeys(p.sentence()))
    if not found:
        pos = toks[min(p.furthest, len(toks) - 1)].pos
        raise ParseError("syntax error", pos)
    if len(found) > 1:
        raise ParseError("ambiguous formula; add parentheses", 0)
    f = found[0]
    _check(f)
    return f


def parse_term(text: str) -> Term:
    toks = tokenize(text)
    p = _Parser(toks)
    end = len(toks) - 1
    found = list(dict.fromkeys(t for t, j in p.term(0) if j == end))
    if not found:
        raise ParseError("syntax error", toks[min(p.furthest, end)].pos)
    return found[0]


def _check(f: Formula) -> None:
    bad = sorted(k for k in at_indices(f) if k < 1)
    if bad:
        raise SemanticError(f"At{bad[0]}: At indices start at 1")
    if isinstance(f, Quantified):
        if len(set(f.vars)) != len(f.vars):
            raise SemanticError("a variable is quantified twice")
        loose = free_vars(f)
        if loose:
            raise SemanticError(f"the quantifier block must bind every variable; free: {', '.join(sorted(loose))}")


# ---- renderer ----------------------------------------------------------------------

_TERM_OPS = {Join: "\\/", Meet: "/\\", Diff: "-"}


def render_term(t: Term) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, C):
        return f"C{t.k}({render_term(t.arg)})"
    op = _TERM_OPS[type(t)]

    def side(x):
        s = render_term(x)
        return f"({s})" if type(x) in _TERM_OPS else s

    return f"{side(t.left)} {op} {side(t.right)}"


def render(f: Formula) -> str:
    """Fully parenthesised ASCII text that parses back to ``f``."""
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bot):
        return "false"
    if isinstance(f, Rel):
        # a bare join or meet beside a relation could be read as a connective
        def rside(t):
            s = render_term(t)
            return f"({s})" if isinstance(t, (Join, Meet)) else s

        return f"{rside(f.left)} {f.op} {rside(f.right)}"
    if isinstance(f, At):
        return f"At{f.k}({render_term(f.arg)})"
    if isinstance(f, Not):
        inner = render(f.body)
        return f"~{inner}" if isinstance(f.body, (Not, Top, Bot, At)) else f"~({inner})"
    if isinstance(f, Quantified):
        return f"{f.kind} {' '.join(f.vars)} . {render(f.body)}"
    op = "/\\" if isinstance(f, And) else "\\/"

    def side(x):
        s = render(x)
        return f"({s})" if isinstance(x, (And, Or, Quantified)) else s

    return f"{side(f.left)} {op} {side(f.right)}"
