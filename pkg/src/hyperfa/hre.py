"""Hyperregular expressions: quantifier-prefixed regexes over tuple letters.

Concrete syntax
    expr    := quant+ body
    quant   := ('forall' | 'exists') NAME '.'
    body    := branch ('|' branch)*
    branch  := piece+
    piece   := unit ('*' | '+')*
    unit    := '(' body ')' | 'eps' | 'empty' | '[' comp (',' comp)* ']'
    comp    := NAME | '#' | '_' | '!' NAME

'#' is the pad token, '_' matches any alphabet symbol (pad excluded) and
'!a' matches any alphabet symbol except a.  '//' starts a line comment.

The policy templates keep their published shape; the distinguished symbols
(low state, dummy-rewritten low state, combined input/output events and so
on) stay opaque and are supplied by the caller as members of its alphabet.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union as TUnion

from .errors import ArityMismatch, HreSyntaxError, UnknownSymbol
from .fa import Fa
from .hfa import Nfh, Quantifier
from .zipwords import PAD, Letter, all_letters, check_symbol


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Pad:
    pass


@dataclass(frozen=True)
class Any:
    pass


@dataclass(frozen=True)
class NotSym:
    name: str


Component = TUnion[Sym, Pad, Any, NotSym]


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Eps:
    pass


@dataclass(frozen=True)
class TupleLetter:
    comps: tuple[Component, ...]


@dataclass(frozen=True)
class Alt:
    items: tuple["Node", ...]


@dataclass(frozen=True)
class Concat:
    items: tuple["Node", ...]


@dataclass(frozen=True)
class Star:
    item: "Node"


@dataclass(frozen=True)
class Plus:
    item: "Node"


Node = TUnion[Empty, Eps, TupleLetter, Alt, Concat, Star, Plus]


@dataclass(frozen=True)
class HreAst:
    prefix: tuple[tuple[Quantifier, str], ...]
    body: Node

    @property
    def arity(self) -> int:
        return len(self.prefix)


# ------------------------------------------------------------------- parser

_KEYWORDS = {"forall", "exists", "eps", "empty"}
_NAME_RE = re.compile(r"[A-Za-z0-9_]+")
_WS_RE = re.compile(r"(?:[ \t\r\n]+|//[^\n]*)+")


@dataclass
class _Token:
    kind: str  # NAME, or the literal punctuation character, or EOF
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        ws = _WS_RE.match(text, i)
        if ws:
            i = ws.end()
            continue
        name = _NAME_RE.match(text, i)
        if name:
            tokens.append(_Token("NAME", name.group(), i))
            i = name.end()
            continue
        ch = text[i]
        if ch in "[](),|*+!#.":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise HreSyntaxError(f"stray character {ch!r}", i)
    tokens.append(_Token("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.i]

    def take(self, kind: str) -> _Token:
        tok = self.cur
        if tok.kind != kind:
            raise HreSyntaxError(f"expected {kind!r}, found {tok.text or 'end'!r}", tok.pos)
        self.i += 1
        return tok

    def parse(self) -> HreAst:
        prefix: list[tuple[Quantifier, str]] = []
        names: set[str] = set()
        while self.cur.kind == "NAME" and self.cur.text in ("forall", "exists"):
            quant = Quantifier.FORALL if self.cur.text == "forall" else Quantifier.EXISTS
            self.i += 1
            tok = self.take("NAME")
            if tok.text in _KEYWORDS or tok.text == "_":
                raise HreSyntaxError(f"bad variable name {tok.text!r}", tok.pos)
            if tok.text in names:
                raise HreSyntaxError(f"duplicate variable {tok.text!r}", tok.pos)
            names.add(tok.text)
            self.take(".")
            prefix.append((quant, tok.text))
        if not prefix:
            raise HreSyntaxError("expected a quantifier prefix", self.cur.pos)
        body = self.body()
        tok = self.cur
        if tok.kind != "EOF":
            raise HreSyntaxError(f"unexpected {tok.text!r}", tok.pos)
        _check_arities(body, len(prefix))
        return HreAst(tuple(prefix), body)

    def body(self) -> Node:
        items = [self.branch()]
        while self.cur.kind == "|":
            self.i += 1
            items.append(self.branch())
        return items[0] if len(items) == 1 else Alt(tuple(items))

    def branch(self) -> Node:
        items = [self.piece()]
        while self.cur.kind in ("(", "[") or (
            self.cur.kind == "NAME" and self.cur.text in ("eps", "empty")
        ):
            items.append(self.piece())
        return items[0] if len(items) == 1 else Concat(tuple(items))

    def piece(self) -> Node:
        node = self.unit()
        while self.cur.kind in ("*", "+"):
            node = Star(node) if self.cur.kind == "*" else Plus(node)
            self.i += 1
        return node

    def unit(self) -> Node:
        tok = self.cur
        if tok.kind == "(":
            self.i += 1
            node = self.body()
            self.take(")")
            return node
        if tok.kind == "[":
            self.i += 1
            comps = [self.component()]
            while self.cur.kind == ",":
                self.i += 1
                comps.append(self.component())
            self.take("]")
            return TupleLetter(tuple(comps))
        if tok.kind == "NAME" and tok.text == "eps":
            self.i += 1
            return Eps()
        if tok.kind == "NAME" and tok.text == "empty":
            self.i += 1
            return Empty()
        raise HreSyntaxError(f"expected an atom, found {tok.text or 'end'!r}", tok.pos)

    def component(self) -> Component:
        tok = self.cur
        if tok.kind == "#":
            self.i += 1
            return Pad()
        if tok.kind == "!":
            self.i += 1
            name = self.take("NAME")
            if name.text == "_":
                raise HreSyntaxError("cannot negate the wildcard", name.pos)
            return NotSym(name.text)
        if tok.kind == "NAME":
            self.i += 1
            if tok.text == "_":
                return Any()
            return Sym(tok.text)
        raise HreSyntaxError(f"expected a letter component, found {tok.text or 'end'!r}", tok.pos)


def _check_arities(node: Node, k: int) -> None:
    if isinstance(node, TupleLetter):
        if len(node.comps) != k:
            raise ArityMismatch(
                f"tuple letter has {len(node.comps)} components, prefix binds {k}"
            )
    elif isinstance(node, (Alt, Concat)):
        for item in node.items:
            _check_arities(item, k)
    elif isinstance(node, (Star, Plus)):
        _check_arities(node.item, k)


def parse(text: str) -> HreAst:
    return _Parser(text).parse()


# ------------------------------------------------------------------ printer


def _comp_text(comp: Component) -> str:
    if isinstance(comp, Sym):
        return comp.name
    if isinstance(comp, Pad):
        return PAD
    if isinstance(comp, Any):
        return "_"
    return f"!{comp.name}"


_LEVEL_ALT, _LEVEL_CONCAT, _LEVEL_REPEAT = 0, 1, 2


def _node_text(node: Node, level: int) -> str:
    if isinstance(node, Empty):
        return "empty"
    if isinstance(node, Eps):
        return "eps"
    if isinstance(node, TupleLetter):
        return "[" + ",".join(_comp_text(c) for c in node.comps) + "]"
    if isinstance(node, Alt):
        text = "|".join(_node_text(item, _LEVEL_CONCAT) for item in node.items)
        return f"({text})" if level > _LEVEL_ALT else text
    if isinstance(node, Concat):
        text = "".join(_node_text(item, _LEVEL_REPEAT) for item in node.items)
        return f"({text})" if level > _LEVEL_CONCAT else text
    mark = "*" if isinstance(node, Star) else "+"
    inner = node.item
    text = _node_text(inner, _LEVEL_REPEAT + 1)
    if isinstance(inner, (Star, Plus)):
        text = f"({text})"
    return text + mark


def format_hre(ast: HreAst) -> str:
    quants = "".join(
        f"{'forall' if q is Quantifier.FORALL else 'exists'} {name}. "
        for q, name in ast.prefix
    )
    return quants + _node_text(ast.body, _LEVEL_ALT)


# ----------------------------------------------------------------- compiler


def _expand(comp: Component, sigma: tuple[str, ...]) -> tuple[str, ...]:
    if isinstance(comp, Sym):
        if comp.name not in sigma:
            raise UnknownSymbol(f"symbol {comp.name!r} not in the alphabet")
        return (comp.name,)
    if isinstance(comp, Pad):
        return (PAD,)
    if isinstance(comp, Any):
        return sigma
    if comp.name not in sigma:
        raise UnknownSymbol(f"symbol {comp.name!r} not in the alphabet")
    return tuple(s for s in sigma if s != comp.name)


def _letters(tl: TupleLetter, sigma: tuple[str, ...]) -> list[Letter]:
    pools = [_expand(c, sigma) for c in tl.comps]
    return [tuple(p) for p in itertools.product(*pools)]


def compile_hre(ast: HreAst, sigma: Iterable[str]) -> Nfh:
    """Thompson-style construction, epsilon edges eliminated afterwards."""
    sigma = tuple(sorted(set(sigma)))
    k = ast.arity
    counter = [0]
    eps_edges: list[tuple[int, int]] = []
    sym_edges: list[tuple[int, Letter, int]] = []

    def fresh() -> int:
        counter[0] += 1
        return counter[0] - 1

    def build(node: Node) -> tuple[int, tuple[int, ...]]:
        if isinstance(node, Empty):
            return fresh(), ()
        if isinstance(node, Eps):
            s = fresh()
            return s, (s,)
        if isinstance(node, TupleLetter):
            s, e = fresh(), fresh()
            for letter in _letters(node, sigma):
                sym_edges.append((s, letter, e))
            return s, (e,)
        if isinstance(node, Alt):
            s = fresh()
            outs: list[int] = []
            for item in node.items:
                st, os_ = build(item)
                eps_edges.append((s, st))
                outs.extend(os_)
            return s, tuple(outs)
        if isinstance(node, Concat):
            start, outs = build(node.items[0])
            for item in node.items[1:]:
                st, next_outs = build(item)
                for o in outs:
                    eps_edges.append((o, st))
                outs = next_outs
            return start, tuple(outs)
        if isinstance(node, Star):
            hub = fresh()
            st, outs = build(node.item)
            eps_edges.append((hub, st))
            for o in outs:
                eps_edges.append((o, hub))
            return hub, (hub,)
        st, outs = build(node.item)  # Plus: loop back, at least one pass
        for o in outs:
            eps_edges.append((o, st))
        return st, outs

    start, outs = build(ast.body)
    n = counter[0]
    closure: list[set[int]] = [{q} for q in range(n)]
    fwd: dict[int, set[int]] = {}
    for a, b in eps_edges:
        fwd.setdefault(a, set()).add(b)
    for q in range(n):
        stack = [q]
        while stack:
            cur = stack.pop()
            for nxt in fwd.get(cur, ()):
                if nxt not in closure[q]:
                    closure[q].add(nxt)
                    stack.append(nxt)
    out_set = set(outs)
    by_src: dict[int, list[tuple[Letter, int]]] = {}
    for q, letter, r in sym_edges:
        by_src.setdefault(q, []).append((letter, r))
    transitions = []
    for q in range(n):
        for mid in closure[q]:
            for letter, r in by_src.get(mid, ()):
                transitions.append((q, letter, r))
    accepting = [q for q in range(n) if closure[q] & out_set]
    fa = Fa(all_letters(sigma, k), n, [start], accepting, transitions)
    return Nfh(sigma, tuple(q for q, _ in ast.prefix), fa)


# ------------------------------------------------------------------ policies


class PolicyId(enum.Enum):
    NI = "ni"
    OD = "od"
    GNI = "gni"
    DC = "dc"
    TSNI = "tsni"


_POLICY_KEYS = {
    PolicyId.NI: ("l", "llam"),
    PolicyId.OD: ("l",),
    PolicyId.GNI: ("h", "l", "hl", "hbar_l", "h_lbar", "hbar_lbar"),
    PolicyId.DC: ("li", "pw", "lo"),
    PolicyId.TSNI: ("l",),
}


def policy(pid: PolicyId, bindings: Mapping[str, str]) -> HreAst:
    """Instantiate a security-policy template with concrete symbols.

    Required binding keys per policy: NI l,llam; OD l; GNI h,l,hl,hbar_l,
    h_lbar,hbar_lbar (the last four name the combined input/output events);
    DC li,pw,lo; TSNI l.
    """
    keys = _POLICY_KEYS[pid]
    extra = set(bindings) - set(keys)
    if extra:
        raise UnknownSymbol(f"unexpected bindings {sorted(extra)!r} for {pid.value}")
    try:
        b = {key: check_symbol(bindings[key]) for key in keys}
    except KeyError as exc:
        raise UnknownSymbol(f"policy {pid.value} needs a binding for {exc.args[0]!r}") from exc

    def atom(*comps: Component) -> TupleLetter:
        return TupleLetter(comps)

    forall, exists = Quantifier.FORALL, Quantifier.EXISTS
    if pid is PolicyId.NI:
        return HreAst(
            ((forall, "x1"), (exists, "x2")),
            Star(atom(Sym(b["l"]), Sym(b["llam"]))),
        )
    if pid is PolicyId.OD:
        low = Sym(b["l"])
        other = NotSym(b["l"])
        tail = Star(atom(Any(), Any()))
        return HreAst(
            ((forall, "x1"), (forall, "x2")),
            Alt((
                Plus(atom(low, low)),
                Concat((atom(other, other), tail)),
                Concat((atom(low, other), tail)),
                Concat((atom(other, low), tail)),
            )),
        )
    if pid is PolicyId.GNI:
        h, l = Sym(b["h"]), Sym(b["l"])
        nh, nl = NotSym(b["h"]), NotSym(b["l"])
        return HreAst(
            ((forall, "x1"), (forall, "x2"), (exists, "x3")),
            Star(Alt((
                atom(h, l, Sym(b["hl"])),
                atom(nh, l, Sym(b["hbar_l"])),
                atom(h, nl, Sym(b["h_lbar"])),
                atom(nh, nl, Sym(b["hbar_lbar"])),
            ))),
        )
    if pid is PolicyId.DC:
        return HreAst(
            ((forall, "x1"), (forall, "x2")),
            Concat((
                atom(Sym(b["li"]), Sym(b["li"])),
                atom(Sym(b["pw"]), Sym(b["pw"])),
                Plus(atom(Sym(b["lo"]), Sym(b["lo"]))),
            )),
        )
    low = Sym(b["l"])
    other = NotSym(b["l"])
    tail = Star(atom(Any(), Any()))
    return HreAst(
        ((forall, "x1"), (forall, "x2")),
        Alt((
            Concat((atom(low, low), tail, atom(low, low))),
            Concat((atom(other, other), tail)),
            Concat((atom(low, other), tail)),
            Concat((atom(other, low), tail)),
        )),
    )
