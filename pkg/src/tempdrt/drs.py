"""Discourse representation structures.

A Drs is a universe of sorted markers plus a sequence of conditions.
Quantification lives in Duplex conditions (antecedent box, quantifier,
consequent box); habitual readings wrap a Duplex in a ComplexState.
Temporal conditions relate the traces of markers: closed integer
intervals once a model assignment is in place.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Union

from .errors import MergeError


class Sort(enum.Enum):
    INDIVIDUAL = "ind"
    EVENT = "event"
    STATE = "state"
    TIME = "time"
    NOW = "now"


class Rel(enum.Enum):
    """Temporal relations between traces.

    PRECEDES         strict full precedence, end(lhs) < start(rhs)
    INCLUDED_IN      trace of lhs inside trace of rhs
    OVERLAPS         nonempty intersection
    ABUTS            end(lhs) + 1 = start(rhs)
    JUST_BEFORE      rhs starts within a small window after lhs ends
    EQUALS_EVENT_TIME  lhs (a time) equals the trace of rhs (an eventuality)
    """

    PRECEDES = "precedes"
    INCLUDED_IN = "subset"
    OVERLAPS = "overlaps"
    ABUTS = "abuts"
    JUST_BEFORE = "justbefore"
    EQUALS_EVENT_TIME = "loc"


REL_SYMBOL = {
    Rel.PRECEDES: "<",
    Rel.INCLUDED_IN: "⊆",
    Rel.OVERLAPS: "○",
    Rel.ABUTS: "⊃⊂",
    Rel.JUST_BEFORE: "≼",
}

_ids = itertools.count(1)


@dataclass(frozen=True)
class Marker:
    """A discourse marker.  Identity is the numeric id; the hint is only
    a display name.  An anchor time denotes a contextually supplied
    interval (the whole epoch of the model) instead of being
    existentially quantified.
    """

    id: int
    sort: Sort
    hint: str = ""
    anchor: bool = False

    def __repr__(self):
        flag = "!" if self.anchor else ""
        return f"<{self.hint or 'm'}#{self.id}:{self.sort.value}{flag}>"


def fresh_marker(sort: Sort, hint: str = "", anchor: bool = False) -> Marker:
    """Mint a marker with a new id.  Ids come from a shared atomic
    counter, so concurrent callers never collide.
    """
    if anchor and sort is not Sort.TIME:
        raise ValueError("only time markers can be anchors")
    return Marker(next(_ids), sort, hint, anchor)


@dataclass(frozen=True)
class Every:
    def __str__(self):
        return "every"


@dataclass(frozen=True)
class Often:
    threshold: Fraction = Fraction(1, 2)

    def __str__(self):
        return f"often({self.threshold})"


Quantifier = Union[Every, Often]


@dataclass(frozen=True)
class Predication:
    pred: str
    args: tuple[Marker, ...] = ()


@dataclass(frozen=True)
class EventualityDescription:
    ev: Marker
    body: Predication


@dataclass(frozen=True)
class Temporal:
    rel: Rel
    lhs: Marker
    rhs: Marker


@dataclass(frozen=True)
class RptAssign:
    """Reference-point bookkeeping.  Semantically inert: it never
    constrains an embedding.
    """

    target: Marker


@dataclass(frozen=True)
class Duplex:
    antecedent: "Drs"
    quantifier: Quantifier
    consequent: "Drs"


@dataclass(frozen=True)
class ComplexState:
    """A state whose content is a box; used for habitual readings.
    The body must contain at least one Duplex.
    """

    state: Marker
    body: "Drs"


Condition = Union[
    Predication, EventualityDescription, Temporal, RptAssign, Duplex, ComplexState
]


@dataclass(frozen=True)
class Drs:
    universe: tuple[Marker, ...] = ()
    conditions: tuple[Condition, ...] = ()

    def sub_boxes(self) -> Iterator["Drs"]:
        for c in self.conditions:
            if isinstance(c, Duplex):
                yield c.antecedent
                yield c.consequent
            elif isinstance(c, ComplexState):
                yield c.body

    def all_markers(self) -> set[Marker]:
        out = set(self.universe)
        for c in self.conditions:
            out |= _condition_markers(c)
        for b in self.sub_boxes():
            out |= b.all_markers()
        return out


def _condition_markers(c: Condition) -> set[Marker]:
    if isinstance(c, Predication):
        return set(c.args)
    if isinstance(c, EventualityDescription):
        return {c.ev} | set(c.body.args)
    if isinstance(c, Temporal):
        return {c.lhs, c.rhs}
    if isinstance(c, RptAssign):
        return {c.target}
    if isinstance(c, Duplex):
        return c.antecedent.all_markers() | c.consequent.all_markers()
    if isinstance(c, ComplexState):
        return {c.state} | c.body.all_markers()
    raise TypeError(c)


def merge(a: Drs, b: Drs) -> Drs:
    """Union of universes and concatenation of conditions.  The
    universes must be disjoint.
    """
    clash = set(a.universe) & set(b.universe)
    if clash:
        names = ", ".join(sorted(repr(m) for m in clash))
        raise MergeError(f"universes are not disjoint: {names}")
    return Drs(a.universe + b.universe, a.conditions + b.conditions)


def check_accessibility(d: Drs) -> None:
    """Raise ValueError if a condition uses a marker that is not
    declared in its own box or an accessible enclosing one.  The
    antecedent of a Duplex is accessible from its consequent.
    """

    def walk(box: Drs, visible: frozenset[Marker]) -> None:
        here = visible | frozenset(box.universe)
        for c in box.conditions:
            if isinstance(c, Duplex):
                walk(c.antecedent, here)
                walk(c.consequent, here | frozenset(c.antecedent.universe))
            elif isinstance(c, ComplexState):
                if c.state not in here:
                    raise ValueError(f"free marker {c.state!r}")
                walk(c.body, here)
            else:
                for m in _condition_markers(c):
                    if m not in here:
                        raise ValueError(f"free marker {m!r}")

    walk(d, frozenset())


def now_markers(d: Drs) -> list[Marker]:
    return sorted(
        (m for m in d.all_markers() if m.sort is Sort.NOW), key=lambda m: m.id
    )


def strip_rpt(d: Drs) -> Drs:
    """Copy of d with every reference-point assignment removed, at all
    nesting depths.  Evaluation must not care: the assignments are
    bookkeeping, not conditions on embeddings.
    """

    def walk_cond(c: Condition) -> Condition:
        if isinstance(c, Duplex):
            return Duplex(walk(c.antecedent), c.quantifier, walk(c.consequent))
        if isinstance(c, ComplexState):
            return ComplexState(c.state, walk(c.body))
        return c

    def walk(box: Drs) -> Drs:
        kept = tuple(
            walk_cond(c) for c in box.conditions if not isinstance(c, RptAssign)
        )
        return Drs(box.universe, kept)

    return walk(d)


# ---------------------------------------------------------------------------
# alpha equivalence


def alpha_equivalent(a: Drs, b: Drs) -> bool:
    """True when a sort-preserving marker bijection turns one DRS into
    the other, disregarding the order of conditions within each box.
    Anchor flags must agree across the bijection and argument order in
    predications is significant.
    """
    for _ in _match_drs(a, b, {}, {}):
        return True
    return False


def _bind(m1: Marker, m2: Marker, fwd: dict, bwd: dict):
    if m1.sort is not m2.sort or m1.anchor != m2.anchor:
        return None
    if fwd.get(m1.id, m2.id) != m2.id or bwd.get(m2.id, m1.id) != m1.id:
        return None
    if m1.id in fwd:
        return fwd, bwd
    f2 = dict(fwd)
    b2 = dict(bwd)
    f2[m1.id] = m2.id
    b2[m2.id] = m1.id
    return f2, b2


def _bind_many(pairs, fwd, bwd):
    for m1, m2 in pairs:
        got = _bind(m1, m2, fwd, bwd)
        if got is None:
            return None
        fwd, bwd = got
    return fwd, bwd


def _cond_shape(c: Condition):
    if isinstance(c, Predication):
        return ("pred", c.pred, len(c.args))
    if isinstance(c, EventualityDescription):
        return ("ev", c.body.pred, len(c.body.args))
    if isinstance(c, Temporal):
        return ("rel", c.rel)
    if isinstance(c, RptAssign):
        return ("rpt",)
    if isinstance(c, Duplex):
        return ("duplex", c.quantifier)
    if isinstance(c, ComplexState):
        return ("cstate",)
    raise TypeError(c)


def _match_cond(c1, c2, fwd, bwd):
    if isinstance(c1, Predication):
        got = _bind_many(zip(c1.args, c2.args), fwd, bwd)
        if got:
            yield got
    elif isinstance(c1, EventualityDescription):
        pairs = [(c1.ev, c2.ev)] + list(zip(c1.body.args, c2.body.args))
        got = _bind_many(pairs, fwd, bwd)
        if got:
            yield got
    elif isinstance(c1, Temporal):
        got = _bind_many([(c1.lhs, c2.lhs), (c1.rhs, c2.rhs)], fwd, bwd)
        if got:
            yield got
    elif isinstance(c1, RptAssign):
        got = _bind(c1.target, c2.target, fwd, bwd)
        if got:
            yield got
    elif isinstance(c1, Duplex):
        for f1, b1 in _match_drs(c1.antecedent, c2.antecedent, fwd, bwd):
            yield from _match_drs(c1.consequent, c2.consequent, f1, b1)
    elif isinstance(c1, ComplexState):
        got = _bind(c1.state, c2.state, fwd, bwd)
        if got:
            yield from _match_drs(c1.body, c2.body, got[0], got[1])


def _match_conds(cs1, cs2, fwd, bwd):
    if not cs1:
        yield fwd, bwd
        return
    head, rest = cs1[0], cs1[1:]
    shape = _cond_shape(head)
    for i, cand in enumerate(cs2):
        if _cond_shape(cand) != shape:
            continue
        for f1, b1 in _match_cond(head, cand, fwd, bwd):
            yield from _match_conds(rest, cs2[:i] + cs2[i + 1 :], f1, b1)


def _pair_leftovers(u1, u2, fwd, bwd):
    """Extend the bijection over universe markers that no condition
    mentions, trying every sort-compatible pairing.
    """
    if not u1:
        yield fwd, bwd
        return
    head, rest = u1[0], u1[1:]
    for i, cand in enumerate(u2):
        got = _bind(head, cand, fwd, bwd)
        if got is None:
            continue
        yield from _pair_leftovers(rest, u2[:i] + u2[i + 1 :], got[0], got[1])


def _match_drs(d1: Drs, d2: Drs, fwd, bwd):
    if len(d1.universe) != len(d2.universe):
        return
    if len(d1.conditions) != len(d2.conditions):
        return
    ids2 = {m.id for m in d2.universe}
    for f1, b1 in _match_conds(list(d1.conditions), list(d2.conditions), fwd, bwd):
        free1 = [m for m in d1.universe if m.id not in f1]
        free2 = [m for m in d2.universe if m.id not in b1]
        bound_ok = all(
            f1[m.id] in ids2 for m in d1.universe if m.id in f1
        )
        if not bound_ok or len(free1) != len(free2):
            continue
        yield from _pair_leftovers(free1, free2, f1, b1)
