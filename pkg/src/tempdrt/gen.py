"""Seeded random instances for property tests.

Three generators: finite temporal models, quantified two-clause
sentences paired with the closed-form queries the oracle needs, and
structurally varied DRSs for serialization round-trips.  Everything
draws from a caller-supplied random.Random, so a seed pins the case.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .drs import (
    ComplexState,
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
from .fragment import CONNECTIVES, default_lexicon, _surface_for
from .model import Interval, ModelEventuality, TemporalModel
from .oracle import ClauseQuery

# past-tense verbs of each aspect, all arity 1, drawn from the lexicon
EVENT_VERBS = ("telephone", "leave", "arrive", "get-up", "come-home")
STATE_VERBS = ("be-asleep", "be-at-the-beach", "be-shining")
NAMES = ("john", "mary", "sam")
_GENDERS = {"john": "m", "mary": "f", "sam": "m"}


def random_interval(rng: random.Random, timeline_end: int) -> Interval:
    a = rng.randint(0, timeline_end)
    b = rng.randint(a, timeline_end)
    return Interval(a, b)


def _kind_of(verb: str) -> str:
    return "event" if verb in EVENT_VERBS else "state"


def random_model(
    rng: random.Random, max_timeline: int = 30, max_eventualities: int = 6
) -> TemporalModel:
    """A model over john/mary/sam with random eventualities drawn from
    the past-tense verb pools.  The utterance point is always positive,
    so past-tense location times have somewhere to sit.
    """
    t = rng.randint(4, max_timeline)
    now = rng.randint(1, t)
    evs = []
    for i in range(rng.randint(0, max_eventualities)):
        verb = rng.choice(EVENT_VERBS + STATE_VERBS)
        evs.append(
            ModelEventuality(
                f"g{i + 1}",
                _kind_of(verb),
                verb,
                (rng.choice(NAMES),),
                random_interval(rng, t),
            )
        )
    return TemporalModel(t, now, dict(_GENDERS), tuple(evs))


@dataclass(frozen=True)
class AgreementCase:
    """A quantified sentence, a model, and the closed-form queries that
    let the oracle decide the sentence without boxes.
    """

    text: str
    connective: str
    sub: ClauseQuery
    main: ClauseQuery
    model: TemporalModel


def agreement_case(rng: random.Random, connective: str | None = None) -> AgreementCase:
    """A universally quantified past-tense sentence about John plus a
    model stocked with candidate eventualities for both clauses (and
    distractors owned by others), for engine-versus-oracle comparison.
    """
    lx = default_lexicon()
    conn = connective or rng.choice(CONNECTIVES)
    verbs = EVENT_VERBS + STATE_VERBS
    sub_verb = rng.choice(verbs)
    main_verb = rng.choice([v for v in verbs if v != sub_verb])
    sub_surface = _surface_for(lx, sub_verb, "past")
    main_surface = _surface_for(lx, main_verb, "past")
    if conn == "whenever":
        text = f"Whenever John {sub_surface}, John {main_surface}."
    else:
        text = f"Always, {conn} John {sub_surface}, John {main_surface}."

    t = rng.randint(6, 24)
    now = rng.randint(1, t)
    evs = []
    for verb, count in (
        (sub_verb, rng.randint(0, 3)),
        (main_verb, rng.randint(0, 3)),
    ):
        for _ in range(count):
            evs.append(
                ModelEventuality(
                    f"g{len(evs) + 1}",
                    _kind_of(verb),
                    verb,
                    ("john",),
                    random_interval(rng, t),
                )
            )
    for _ in range(min(rng.randint(0, 2), 6 - len(evs))):
        verb = rng.choice(verbs)
        evs.append(
            ModelEventuality(
                f"g{len(evs) + 1}",
                _kind_of(verb),
                verb,
                (rng.choice(("mary", "sam")),),
                random_interval(rng, t),
            )
        )
    model = TemporalModel(t, now, dict(_GENDERS), tuple(evs))
    return AgreementCase(
        text=text,
        connective=conn,
        sub=ClauseQuery(sub_verb, ("john",)),
        main=ClauseQuery(main_verb, ("john",)),
        model=model,
    )


# ---------------------------------------------------------------------------
# random DRSs for round-trip tests


_PREDS = ("alpha", "beta", "gamma", "take-beer")
_SORT_POOL = (
    Sort.INDIVIDUAL,
    Sort.EVENT,
    Sort.STATE,
    Sort.TIME,
)
_PLAIN_RELS = (
    Rel.PRECEDES,
    Rel.INCLUDED_IN,
    Rel.OVERLAPS,
    Rel.ABUTS,
    Rel.JUST_BEFORE,
)


def random_drs(rng: random.Random, max_markers: int = 6, max_depth: int = 3) -> Drs:
    """A closed DRS with random structure: sorted markers (at most one
    of sort now, occasional anchor times), all condition kinds, and
    nesting through duplexes and complex states up to max_depth.
    Closed means every marker a condition mentions is declared in an
    accessible universe, so the result serializes and parses back.
    """
    budget = rng.randint(1, max_markers)
    state = {"left": budget, "now_used": False, "n": 0}

    def mint(sort: Sort, anchor: bool = False) -> Marker:
        state["left"] -= 1
        state["n"] += 1
        return fresh_marker(sort, hint=f"{sort.value[0]}{state['n']}", anchor=anchor)

    def mint_random() -> Marker:
        if not state["now_used"] and rng.random() < 0.15:
            state["now_used"] = True
            return mint(Sort.NOW)
        sort = rng.choice(_SORT_POOL)
        anchor = sort is Sort.TIME and rng.random() < 0.25
        return mint(sort, anchor)

    def box(depth: int, accessible: list[Marker]) -> Drs:
        universe = []
        for _ in range(rng.randint(0, 2) if depth else rng.randint(1, 3)):
            if state["left"] <= 0:
                break
            universe.append(mint_random())
        acc = accessible + universe
        conditions = []
        for _ in range(rng.randint(0, 3)):
            c = condition(depth, acc)
            if c is not None:
                conditions.append(c)
        return Drs(tuple(universe), tuple(conditions))

    def condition(depth: int, acc: list[Marker]):
        inds = [m for m in acc if m.sort is Sort.INDIVIDUAL]
        evs = [m for m in acc if m.sort in (Sort.EVENT, Sort.STATE)]
        times = [m for m in acc if m.sort is Sort.TIME]
        states = [m for m in acc if m.sort is Sort.STATE]
        kinds = ["pred", "ev", "rel", "rpt"]
        if depth < max_depth:
            kinds += ["duplex", "cstate"]
        pick = rng.choice(kinds)
        if pick == "pred" and inds:
            return Predication(rng.choice(_PREDS), (rng.choice(inds),))
        if pick == "ev" and evs:
            args = tuple(
                rng.choice(inds) for _ in range(rng.randint(0, 2 if inds else 0))
            )
            return EventualityDescription(
                rng.choice(evs), Predication(rng.choice(_PREDS), args)
            )
        if pick == "rel" and acc:
            if times and evs and rng.random() < 0.3:
                return Temporal(
                    Rel.EQUALS_EVENT_TIME, rng.choice(times), rng.choice(evs)
                )
            return Temporal(rng.choice(_PLAIN_RELS), rng.choice(acc), rng.choice(acc))
        if pick == "rpt" and evs:
            return RptAssign(rng.choice(evs))
        if pick == "duplex":
            ant = box(depth + 1, acc)
            cons = box(depth + 1, acc + list(ant.universe))
            q = Every() if rng.random() < 0.5 else Often(Fraction(rng.randint(1, 3), 4))
            return Duplex(ant, q, cons)
        if pick == "cstate" and states:
            body = box(depth + 1, acc)
            if not any(isinstance(c, Duplex) for c in body.conditions):
                inner = Duplex(box(depth + 2, acc), Every(), box(depth + 2, acc))
                body = Drs(body.universe, body.conditions + (inner,))
            return ComplexState(rng.choice(states), body)
        return None

    return box(0, [])
