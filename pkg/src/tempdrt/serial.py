"""Parenthesized term syntax for DRSs.

Grammar (whitespace separates tokens, ";" starts a comment):

    drs       := "(" "drs" "(" "u" decl* ")" "(" "cond" cond* ")" ")"
    decl      := NAME ":" SORT             sorts: ind event state time now
                                           a trailing "!" marks an anchor time
    cond      := "(" "pred" NAME arg* ")"
               | "(" "ev" NAME "(" "pred" NAME arg* ")" ")"
               | "(" "cstate" NAME drs ")"
               | "(" "rpt" NAME ")"
               | "(" REL NAME NAME ")"     rels: precedes subset overlaps
                                                 abuts justbefore loc
               | "(" "duplex" quant drs drs ")"
    quant     := "every" | "(" "often" INT "/" INT ")"

Names declared in an enclosing box are visible in nested boxes.
deserialize(serialize(d)) is alpha-equivalent to d.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .drs import (
    ComplexState,
    Condition,
    Drs,
    Duplex,
    Every,
    EventualityDescription,
    Marker,
    Often,
    Predication,
    Rel,
    RptAssign,
    Sort,
    Temporal,
    fresh_marker,
)
from .errors import TermSyntaxError

_SORT_TOKEN = {s.value: s for s in Sort}
_REL_TOKEN = {r.value: r for r in Rel}

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_'-]*")


# ---------------------------------------------------------------------------
# serialization


class _Names:
    """Assigns a unique printable name to every marker in a tree."""

    def __init__(self):
        self.by_id: dict[int, str] = {}
        self.used: set[str] = set()

    def name(self, m: Marker) -> str:
        got = self.by_id.get(m.id)
        if got is not None:
            return got
        base = m.hint or {
            Sort.INDIVIDUAL: "x",
            Sort.EVENT: "e",
            Sort.STATE: "s",
            Sort.TIME: "t",
            Sort.NOW: "n",
        }[m.sort]
        name = base
        k = 2
        while name in self.used:
            name = f"{base}_{k}"
            k += 1
        self.used.add(name)
        self.by_id[m.id] = name
        return name


def serialize(d: Drs) -> str:
    names = _Names()
    _claim_names(d, names)
    return _ser_drs(d, names, 0)


def _claim_names(d: Drs, names: _Names) -> None:
    for m in d.universe:
        names.name(m)
    for b in d.sub_boxes():
        _claim_names(b, names)


def _decl(m: Marker, names: _Names) -> str:
    bang = "!" if m.anchor else ""
    return f"{names.name(m)}:{m.sort.value}{bang}"


def _ser_drs(d: Drs, names: _Names, indent: int) -> str:
    pad = "  " * indent
    decls = " ".join(_decl(m, names) for m in d.universe)
    head = f"{pad}(drs (u {decls})" if decls else f"{pad}(drs (u)"
    if not d.conditions:
        return head + " (cond))"
    lines = [head, f"{pad}  (cond"]
    for c in d.conditions:
        lines.append(_ser_cond(c, names, indent + 2))
    lines[-1] += "))"
    return "\n".join(lines)


def _ser_cond(c: Condition, names: _Names, indent: int) -> str:
    pad = "  " * indent
    n = names.name
    if isinstance(c, Predication):
        args = "".join(f" {n(a)}" for a in c.args)
        return f"{pad}(pred {c.pred}{args})"
    if isinstance(c, EventualityDescription):
        args = "".join(f" {n(a)}" for a in c.body.args)
        return f"{pad}(ev {n(c.ev)} (pred {c.body.pred}{args}))"
    if isinstance(c, Temporal):
        return f"{pad}({c.rel.value} {n(c.lhs)} {n(c.rhs)})"
    if isinstance(c, RptAssign):
        return f"{pad}(rpt {n(c.target)})"
    if isinstance(c, ComplexState):
        body = _ser_drs(c.body, names, indent + 1)
        return f"{pad}(cstate {n(c.state)}\n{body})"
    if isinstance(c, Duplex):
        if isinstance(c.quantifier, Every):
            q = "every"
        else:
            q = f"(often {c.quantifier.threshold})"
        ant = _ser_drs(c.antecedent, names, indent + 1)
        cons = _ser_drs(c.consequent, names, indent + 1)
        return f"{pad}(duplex {q}\n{ant}\n{cons})"
    raise TypeError(c)


# ---------------------------------------------------------------------------
# parsing


class _Tok:
    __slots__ = ("text", "line", "col")

    def __init__(self, text: str, line: int, col: int):
        self.text = text
        self.line = line
        self.col = col


def _lex(text: str) -> list[_Tok]:
    toks = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif ch in "()":
            toks.append(_Tok(ch, line, col))
            col += 1
            i += 1
        else:
            j = i
            while j < len(text) and text[j] not in " \t\r\n();":
                j += 1
            toks.append(_Tok(text[i:j], line, col))
            col += j - i
            i = j
    return toks


class _Reader:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.pos = 0

    def peek(self) -> _Tok | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> _Tok:
        t = self.peek()
        if t is None:
            last = self.toks[-1] if self.toks else _Tok("", 1, 1)
            raise TermSyntaxError("unexpected end of input", last.line, last.col)
        self.pos += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.next()
        if t.text != text:
            raise TermSyntaxError(f"expected {text!r}, found {t.text!r}", t.line, t.col)
        return t


def deserialize(text: str) -> Drs:
    r = _Reader(_lex(text))
    d = _read_drs(r, [])
    extra = r.peek()
    if extra is not None:
        raise TermSyntaxError(
            f"trailing input {extra.text!r}", extra.line, extra.col
        )
    nows = [m for m in d.all_markers() if m.sort is Sort.NOW]
    if len(nows) > 1:
        raise TermSyntaxError("more than one marker of sort now", 1, 1)
    return d


def _read_drs(r: _Reader, env: list[dict[str, Marker]]) -> Drs:
    r.expect("(")
    r.expect("drs")
    r.expect("(")
    r.expect("u")
    scope: dict[str, Marker] = {}
    universe = []
    while True:
        t = r.next()
        if t.text == ")":
            break
        universe.append(_read_decl(t, scope))
    env = env + [scope]
    r.expect("(")
    r.expect("cond")
    conditions = []
    while True:
        t = r.peek()
        if t is None:
            raise TermSyntaxError("unexpected end of input", 1, 1)
        if t.text == ")":
            r.next()
            break
        conditions.append(_read_cond(r, env))
    r.expect(")")
    return Drs(tuple(universe), tuple(conditions))


def _read_decl(t: _Tok, scope: dict[str, Marker]) -> Marker:
    if ":" not in t.text:
        raise TermSyntaxError(f"bad declaration {t.text!r}", t.line, t.col)
    name, _, sort_txt = t.text.partition(":")
    anchor = sort_txt.endswith("!")
    if anchor:
        sort_txt = sort_txt[:-1]
    if not _NAME_RE.fullmatch(name):
        raise TermSyntaxError(f"bad marker name {name!r}", t.line, t.col)
    sort = _SORT_TOKEN.get(sort_txt)
    if sort is None:
        raise TermSyntaxError(f"unknown sort {sort_txt!r}", t.line, t.col)
    if anchor and sort is not Sort.TIME:
        raise TermSyntaxError("only time markers can be anchors", t.line, t.col)
    if name in scope:
        raise TermSyntaxError(f"duplicate marker {name!r}", t.line, t.col)
    m = fresh_marker(sort, hint=name, anchor=anchor)
    scope[name] = m
    return m


def _lookup(t: _Tok, env: list[dict[str, Marker]]) -> Marker:
    for scope in reversed(env):
        if t.text in scope:
            return scope[t.text]
    raise TermSyntaxError(f"undeclared marker {t.text!r}", t.line, t.col)


def _read_pred(r: _Reader, env) -> Predication:
    r.expect("(")
    r.expect("pred")
    name = r.next()
    args = []
    while True:
        t = r.next()
        if t.text == ")":
            break
        args.append(_lookup(t, env))
    return Predication(name.text, tuple(args))


def _read_quant(r: _Reader):
    t = r.next()
    if t.text == "every":
        return Every()
    if t.text == "(":
        r.expect("often")
        frac = r.next()
        try:
            threshold = Fraction(frac.text)
        except (ValueError, ZeroDivisionError):
            raise TermSyntaxError(
                f"bad threshold {frac.text!r}", frac.line, frac.col
            ) from None
        r.expect(")")
        return Often(threshold)
    raise TermSyntaxError(f"unknown quantifier {t.text!r}", t.line, t.col)


def _read_cond(r: _Reader, env) -> Condition:
    opening = r.expect("(")
    head = r.next()
    kind = head.text
    if kind == "pred":
        name = r.next()
        args = []
        while True:
            t = r.next()
            if t.text == ")":
                return Predication(name.text, tuple(args))
            args.append(_lookup(t, env))
    if kind == "ev":
        ev = _lookup(r.next(), env)
        if ev.sort not in (Sort.EVENT, Sort.STATE):
            raise TermSyntaxError(
                "eventuality description needs an event or state marker",
                head.line,
                head.col,
            )
        body = _read_pred(r, env)
        r.expect(")")
        return EventualityDescription(ev, body)
    if kind == "cstate":
        state = _lookup(r.next(), env)
        body = _read_drs(r, env)
        r.expect(")")
        return ComplexState(state, body)
    if kind == "rpt":
        target = _lookup(r.next(), env)
        r.expect(")")
        return RptAssign(target)
    if kind == "duplex":
        q = _read_quant(r)
        ant = _read_drs(r, env)
        # antecedent markers are accessible from the consequent
        cons = _read_drs(r, env + [{m.hint: m for m in ant.universe}])
        r.expect(")")
        return Duplex(ant, q, cons)
    if kind in _REL_TOKEN:
        lhs = _lookup(r.next(), env)
        rhs = _lookup(r.next(), env)
        r.expect(")")
        rel = _REL_TOKEN[kind]
        if rel is Rel.EQUALS_EVENT_TIME:
            if lhs.sort is not Sort.TIME or rhs.sort not in (Sort.EVENT, Sort.STATE):
                raise TermSyntaxError(
                    "loc relates a time to an eventuality", head.line, head.col
                )
        return Temporal(rel, lhs, rhs)
    raise TermSyntaxError(f"unknown condition {kind!r}", opening.line, opening.col)
