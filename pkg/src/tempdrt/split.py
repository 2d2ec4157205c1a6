"""Split construction: location times, event times, Rpt-driven
narrative progression, the perfect as a result state, and quantified
habituals rendered as complex states.

Where the reference-time analysis threads one interval through the
discourse, this construction gives every eventuality its own location
time (events inside it, states overlapping it) and lets temporal
connectives relate the subordinate clause's event time to the main
clause's location time.  Quantified sentences become a complex state
describing a habit: the quantification lives inside the state's
description, so no auxiliary interval leaks into the restrictor.
Narrative order, both at the top level and inside a quantified
consequent, is carried by a reference point (Rpt) that is re-assigned
after each event; the assignments themselves are bookkeeping and never
constrain an embedding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
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
from .errors import ConstructionError
from .fragment import Aspect, Clause, ParsedDiscourse, Pronoun, Sentence, Tense

PERFECTS = (Tense.PAST_PERFECT, Tense.PRESENT_PERFECT)


# ---------------------------------------------------------------------------
# temporal-connective schemas


@dataclass(frozen=True)
class TcSchema:
    """How a connective relates the subordinate clause's event time to
    the main clause's location time.  main_first fixes the argument
    order of the emitted condition.
    """

    connective: str
    sub_aspect: Aspect
    main_aspect: Aspect
    rel: Rel
    main_first: bool

    def condition(self, sub_time: Marker, main_time: Marker) -> Temporal:
        if self.main_first:
            return Temporal(self.rel, main_time, sub_time)
        return Temporal(self.rel, sub_time, main_time)


def tc_relation(
    connective: str,
    sub_aspect: Aspect,
    main_aspect: Aspect,
    main_perfect: bool = False,
) -> TcSchema:
    """Schema table.  Before/after order the main clause's location
    time against the subordinate index regardless of aspect.  A
    when-clause starts the main location just after a subordinate
    event, places an event main inside a subordinate state's index,
    takes overlap for two states, and, when the main clause is a
    perfect, includes the subordinate event's time in the result
    state's location.
    """
    if connective in ("before", "after"):
        return TcSchema(
            connective, sub_aspect, main_aspect, Rel.PRECEDES, connective == "before"
        )
    if connective not in ("when", "whenever"):
        raise ConstructionError(f"unknown temporal connective {connective!r}")
    if main_perfect:
        return TcSchema(connective, sub_aspect, main_aspect, Rel.INCLUDED_IN, False)
    if sub_aspect is Aspect.EVENT:
        # a state main additionally pins its location inside the state,
        # so the state must actually hold just after the event
        return TcSchema(connective, sub_aspect, main_aspect, Rel.JUST_BEFORE, False)
    if main_aspect is Aspect.EVENT:
        return TcSchema(connective, sub_aspect, main_aspect, Rel.INCLUDED_IN, True)
    return TcSchema(connective, sub_aspect, main_aspect, Rel.OVERLAPS, True)


@dataclass(frozen=True)
class Nucleus:
    """The part of an eventuality's inner structure the perfect keeps:
    the culmination and the consequent (result) state, which abut.
    """

    culmination_event: Marker
    consequent_state: Marker
    abut_condition: Temporal


def apply_perf(clause: Clause, args: tuple[Marker, ...], st: "SplitState | None" = None):
    """Recast a perfect clause as the result state of its culminating
    event: fresh event and state markers, the abutment between them,
    and the verb's description on the event.  Location and tense are
    the caller's business.  Returns (nucleus, description).
    """
    if clause.aspect is not Aspect.EVENT:
        raise ConstructionError("the perfect of a state lexeme is outside the fragment")
    if st is not None:
        e = st.fresh(Sort.EVENT)
        s = st.fresh(Sort.STATE)
    else:
        e = fresh_marker(Sort.EVENT, "e")
        s = fresh_marker(Sort.STATE, "s")
    nucleus = Nucleus(e, s, Temporal(Rel.ABUTS, e, s))
    return nucleus, EventualityDescription(e, Predication(clause.verb, args))


# ---------------------------------------------------------------------------
# construction state


@dataclass
class RptThread:
    """Current narrative reference point.  The assignment condition is
    written out lazily, just before the clause that consults it.
    """

    rpt: Marker | None = None
    emitted: bool = True

    def consult(self, conditions: list) -> Marker | None:
        if self.rpt is not None and not self.emitted:
            conditions.append(RptAssign(self.rpt))
            self.emitted = True
        return self.rpt

    def advance(self, event: Marker):
        self.rpt = event
        self.emitted = False


@dataclass
class SplitState:
    now: Marker
    universe: list[Marker] = field(default_factory=list)
    conditions: list = field(default_factory=list)
    individuals: dict = field(default_factory=dict)
    thread: RptThread = field(default_factory=RptThread)
    counters: dict = field(default_factory=lambda: {"e": 0, "s": 0, "t": 0})

    def fresh(self, sort: Sort) -> Marker:
        letter = {Sort.EVENT: "e", Sort.STATE: "s", Sort.TIME: "t"}[sort]
        self.counters[letter] += 1
        return fresh_marker(sort, f"{letter}{self.counters[letter]}")

    def individual(self, subject) -> Marker:
        if isinstance(subject, Pronoun):
            raise ConstructionError(
                f"unresolved pronoun {subject.form!r}; resolve pronouns first"
            )
        key = subject if isinstance(subject, str) else ("anon", subject.form)
        got = self.individuals.get(key)
        if got is not None:
            return got
        hints = "xyzuvw"
        x = fresh_marker(Sort.INDIVIDUAL, hints[min(len(self.individuals), len(hints) - 1)])
        self.universe.append(x)
        self.individuals[key] = x
        if isinstance(subject, str):
            self.conditions.append(Predication(subject, (x,)))
        return x

    def args_for(self, clause: Clause) -> tuple[Marker, ...]:
        return () if clause.subject is None else (self.individual(clause.subject),)


def _clause_time(tense: Tense) -> str:
    if tense in (Tense.SIMPLE_PAST, Tense.PAST_PERFECT):
        return "past"
    return "present"


def _sentence_kind(s: Sentence) -> str:
    if s.q_adverb is not None or "whenever" in (s.connective, s.trailing_connective):
        return "habitual"
    if s.connective is not None or s.trailing_connective is not None:
        return "subordinated"
    return "narrative"


def _absorbable(s: Sentence, into: Sentence) -> bool:
    """A following sentence continues an open habitual consequent when
    it is a bare run of same-tense event clauses about the same subject
    as the habitual's main clause.
    """
    if s.connective is not None or s.trailing_connective is not None:
        return False
    if s.q_adverb is not None:
        return False
    lead = into.main[0]
    if lead.tense not in (Tense.SIMPLE_PAST, Tense.SIMPLE_PRESENT):
        return False
    return all(
        c.aspect is Aspect.EVENT and c.tense is lead.tense and c.subject == lead.subject
        for c in s.main
    )


# ---------------------------------------------------------------------------
# top-level clauses


def _top_clause(st: SplitState, clause: Clause):
    if clause.tense in PERFECTS:
        _top_perf(st, clause)
        return
    args = st.args_for(clause)
    past = clause.tense is Tense.SIMPLE_PAST
    if clause.aspect is Aspect.EVENT:
        rpt = st.thread.consult(st.conditions)
        e = st.fresh(Sort.EVENT)
        if past:
            t = st.fresh(Sort.TIME)
            st.universe.extend((e, t))
            st.conditions.append(Temporal(Rel.INCLUDED_IN, e, t))
            st.conditions.append(Temporal(Rel.PRECEDES, t, st.now))
        else:
            # a present event's location coincides with the utterance point
            st.universe.append(e)
            st.conditions.append(Temporal(Rel.INCLUDED_IN, e, st.now))
        if rpt is not None:
            st.conditions.append(Temporal(Rel.PRECEDES, rpt, e))
        st.conditions.append(EventualityDescription(e, Predication(clause.verb, args)))
        st.thread.advance(e)
    else:
        rpt = st.thread.consult(st.conditions)
        s = st.fresh(Sort.STATE)
        if past:
            t = st.fresh(Sort.TIME)
            st.universe.extend((s, t))
            st.conditions.append(Temporal(Rel.OVERLAPS, s, t))
            st.conditions.append(Temporal(Rel.PRECEDES, t, st.now))
        else:
            st.universe.append(s)
            st.conditions.append(Temporal(Rel.INCLUDED_IN, st.now, s))
        if rpt is not None:
            st.conditions.append(Temporal(Rel.INCLUDED_IN, rpt, s))
        st.conditions.append(EventualityDescription(s, Predication(clause.verb, args)))


def _top_perf(st: SplitState, clause: Clause):
    args = st.args_for(clause)
    nucleus, description = apply_perf(clause, args, st)
    e, s = nucleus.culmination_event, nucleus.consequent_state
    if clause.tense is Tense.PRESENT_PERFECT:
        st.universe.extend((e, s))
        st.conditions.append(nucleus.abut_condition)
        st.conditions.append(Temporal(Rel.INCLUDED_IN, st.now, s))
    else:
        t = st.fresh(Sort.TIME)
        st.universe.extend((e, s, t))
        st.conditions.append(nucleus.abut_condition)
        st.conditions.append(Temporal(Rel.INCLUDED_IN, t, s))
        st.conditions.append(Temporal(Rel.PRECEDES, t, st.now))
    st.conditions.append(description)


# ---------------------------------------------------------------------------
# subordination and habituals


def _subordinate_box(st: SplitState, clause: Clause):
    """Antecedent material for a subordinate clause: its eventuality
    and event time, untensed.  Returns (eventuality, time, conditions).
    """
    if clause.tense in PERFECTS:
        raise ConstructionError("perfect subordinate clauses are not covered")
    args = st.args_for(clause)
    ev_sort = Sort.EVENT if clause.aspect is Aspect.EVENT else Sort.STATE
    ev = st.fresh(ev_sort)
    t = st.fresh(Sort.TIME)
    conds = [
        Temporal(Rel.EQUALS_EVENT_TIME, t, ev),
        EventualityDescription(ev, Predication(clause.verb, args)),
    ]
    return ev, t, conds


def _single_consequent(
    st: SplitState,
    clause: Clause,
    sub_aspect: Aspect,
    connective: str,
    sub_time: Marker,
):
    """Consequent box for one main clause: schema positioning plus the
    clause's eventuality at its location time, untensed.  Returns
    (universe, conditions).
    """
    args = st.args_for(clause)
    if clause.tense in PERFECTS:
        schema = tc_relation(connective, sub_aspect, Aspect.STATE, main_perfect=True)
        nucleus, description = apply_perf(clause, args, st)
        e, s = nucleus.culmination_event, nucleus.consequent_state
        t = st.fresh(Sort.TIME)
        return (e, s, t), [
            schema.condition(sub_time, t),
            nucleus.abut_condition,
            Temporal(Rel.INCLUDED_IN, t, s),
            description,
        ]
    schema = tc_relation(connective, sub_aspect, clause.aspect)
    t = st.fresh(Sort.TIME)
    if clause.aspect is Aspect.EVENT:
        e = st.fresh(Sort.EVENT)
        return (e, t), [
            schema.condition(sub_time, t),
            Temporal(Rel.INCLUDED_IN, e, t),
            EventualityDescription(e, Predication(clause.verb, args)),
        ]
    s = st.fresh(Sort.STATE)
    return (s, t), [
        schema.condition(sub_time, t),
        Temporal(Rel.INCLUDED_IN, t, s),
        EventualityDescription(s, Predication(clause.verb, args)),
    ]


def narrative_in_scope(
    clauses: list[Clause],
    consequent: Drs,
    sub_time: Marker,
    st: SplitState,
    connective: str = "when",
) -> Drs:
    """Extend a consequent box with a narrative run of clauses: the
    first event's location is ordered against the subordinate's time by
    the connective, each further event follows its predecessor with the
    reference point re-assigned in between, and a state includes the
    current reference point.
    """
    universe = list(consequent.universe)
    conditions = list(consequent.conditions)
    thread = RptThread()
    first = True
    for clause in clauses:
        if clause.tense in PERFECTS:
            raise ConstructionError("the perfect is not covered inside a narrative run")
        args = st.args_for(clause)
        if clause.aspect is Aspect.EVENT:
            rpt = thread.consult(conditions)
            e = st.fresh(Sort.EVENT)
            t = st.fresh(Sort.TIME)
            universe.extend((e, t))
            conditions.append(Temporal(Rel.INCLUDED_IN, e, t))
            if first:
                if connective == "before":
                    conditions.append(Temporal(Rel.PRECEDES, t, sub_time))
                else:
                    conditions.append(Temporal(Rel.PRECEDES, sub_time, t))
            else:
                conditions.append(Temporal(Rel.PRECEDES, rpt, e))
            conditions.append(EventualityDescription(e, Predication(clause.verb, args)))
            thread.advance(e)
            first = False
        else:
            if thread.rpt is None:
                raise ConstructionError("a narrative run cannot open with a state")
            rpt = thread.consult(conditions)
            s = st.fresh(Sort.STATE)
            universe.append(s)
            conditions.append(Temporal(Rel.INCLUDED_IN, rpt, s))
            conditions.append(EventualityDescription(s, Predication(clause.verb, args)))
    return Drs(tuple(universe), tuple(conditions))


def _habitual(st: SplitState, s: Sentence, absorbed: list[Clause], threshold: Fraction):
    main = s.main[0]
    clauses = list(s.main) + absorbed
    if s.connective is not None and s.trailing_connective is not None:
        outer_sub, inner_sub = s.subordinate, s.trailing_subordinate
        if s.q_adverb is None:
            raise ConstructionError(
                "nested temporal subordination needs a quantificational adverb"
            )
        if len(clauses) != 1:
            raise ConstructionError(
                "a narrative run inside nested subordination is not covered"
            )
    elif s.connective is not None:
        outer_sub, inner_sub = s.subordinate, None
    elif s.trailing_connective is not None:
        outer_sub, inner_sub = s.trailing_subordinate, None
    else:
        raise ConstructionError(
            "a quantificational adverb needs a temporal subordinate clause"
        )

    tensed = [outer_sub, *clauses] + ([inner_sub] if inner_sub is not None else [])
    times = {_clause_time(c.tense) for c in tensed}
    if len(times) > 1:
        raise ConstructionError("mixed tenses in a quantified sentence are not covered")
    past = times.pop() == "past"

    connective = s.connective or s.trailing_connective
    quantifier = Often(threshold) if s.q_adverb == "often" else Every()

    for clause in tensed:
        if clause.subject is not None:
            st.individual(clause.subject)

    habit = st.fresh(Sort.STATE)
    st.universe.append(habit)
    if past:
        t_habit = st.fresh(Sort.TIME)
        st.universe.append(t_habit)
        st.conditions.append(Temporal(Rel.OVERLAPS, habit, t_habit))
        st.conditions.append(Temporal(Rel.PRECEDES, t_habit, st.now))
    else:
        st.conditions.append(Temporal(Rel.INCLUDED_IN, st.now, habit))

    sub_ev, sub_t, sub_conds = _subordinate_box(st, outer_sub)
    antecedent = Drs((sub_ev, sub_t), tuple(sub_conds))

    if inner_sub is not None:
        # the main clause and its trailing subordinate form a habit of
        # their own: a complex state overlapping its location time,
        # which the outer schema relates to the outer subordinate
        inner_state = st.fresh(Sort.STATE)
        inner_loc = st.fresh(Sort.TIME)
        outer_schema = tc_relation(connective, outer_sub.aspect, Aspect.STATE)
        inner_sub_ev, inner_sub_t, inner_sub_conds = _subordinate_box(st, inner_sub)
        inner_ant = Drs((inner_sub_ev, inner_sub_t), tuple(inner_sub_conds))
        inner_universe, inner_conds = _single_consequent(
            st, main, inner_sub.aspect, s.trailing_connective, inner_sub_t
        )
        inner_duplex = Duplex(
            inner_ant, quantifier, Drs(tuple(inner_universe), tuple(inner_conds))
        )
        consequent = Drs(
            (inner_state, inner_loc),
            (
                Temporal(Rel.OVERLAPS, inner_state, inner_loc),
                outer_schema.condition(sub_t, inner_loc),
                ComplexState(inner_state, Drs((), (inner_duplex,))),
            ),
        )
        duplex = Duplex(antecedent, Every(), consequent)
    elif len(clauses) > 1:
        consequent = narrative_in_scope(clauses, Drs((), ()), sub_t, st, connective)
        duplex = Duplex(antecedent, quantifier, consequent)
    else:
        universe, conds = _single_consequent(st, main, outer_sub.aspect, connective, sub_t)
        duplex = Duplex(antecedent, quantifier, Drs(tuple(universe), tuple(conds)))

    st.conditions.append(ComplexState(habit, Drs((), (duplex,))))


def _subordinated(st: SplitState, s: Sentence):
    """Unquantified subordination: the subordinate eventuality and its
    event time sit at the top level, and the main clause is positioned
    by the schema.  Only past tense is covered.
    """
    sub = s.subordinate if s.connective is not None else s.trailing_subordinate
    connective = s.connective or s.trailing_connective
    clauses = list(s.main)
    lead = clauses[0]
    for clause in [sub, *clauses]:
        if _clause_time(clause.tense) != "past":
            raise ConstructionError(
                "only past tense is covered for unquantified subordination"
            )
    sub_ev, sub_t, sub_conds = _subordinate_box(st, sub)
    st.universe.extend((sub_ev, sub_t))
    st.conditions.extend(sub_conds)

    args = st.args_for(lead)
    if lead.tense in PERFECTS:
        schema = tc_relation(connective, sub.aspect, Aspect.STATE, main_perfect=True)
        nucleus, description = apply_perf(lead, args, st)
        e, res = nucleus.culmination_event, nucleus.consequent_state
        t = st.fresh(Sort.TIME)
        st.universe.extend((e, res, t))
        st.conditions.append(schema.condition(sub_t, t))
        st.conditions.append(nucleus.abut_condition)
        st.conditions.append(Temporal(Rel.INCLUDED_IN, t, res))
        st.conditions.append(Temporal(Rel.PRECEDES, t, st.now))
        st.conditions.append(description)
    else:
        schema = tc_relation(connective, sub.aspect, lead.aspect)
        t = st.fresh(Sort.TIME)
        if lead.aspect is Aspect.EVENT:
            e = st.fresh(Sort.EVENT)
            st.universe.extend((e, t))
            st.conditions.append(schema.condition(sub_t, t))
            st.conditions.append(Temporal(Rel.INCLUDED_IN, e, t))
            st.conditions.append(Temporal(Rel.PRECEDES, t, st.now))
            st.conditions.append(EventualityDescription(e, Predication(lead.verb, args)))
            st.thread.advance(e)
        else:
            s_main = st.fresh(Sort.STATE)
            st.universe.extend((s_main, t))
            st.conditions.append(schema.condition(sub_t, t))
            st.conditions.append(Temporal(Rel.OVERLAPS, s_main, t))
            st.conditions.append(Temporal(Rel.PRECEDES, t, st.now))
            st.conditions.append(
                EventualityDescription(s_main, Predication(lead.verb, args))
            )
    for clause in clauses[1:]:
        _top_clause(st, clause)


def build_split(d: ParsedDiscourse, often_threshold: Fraction = Fraction(1, 2)) -> Drs:
    """Split-construction DRS for a resolved discourse."""
    n = fresh_marker(Sort.NOW, "n")
    st = SplitState(now=n, universe=[n])
    sentences = d.sentences
    i = 0
    while i < len(sentences):
        s = sentences[i]
        kind = _sentence_kind(s)
        if kind == "habitual":
            absorbed: list[Clause] = []
            j = i + 1
            if s.trailing_connective is None and all(
                c.aspect is Aspect.EVENT and c.tense not in PERFECTS for c in s.main
            ):
                while j < len(sentences) and _absorbable(sentences[j], s):
                    absorbed.extend(sentences[j].main)
                    j += 1
            _habitual(st, s, absorbed, often_threshold)
            i = j
        elif kind == "subordinated":
            _subordinated(st, s)
            i += 1
        else:
            for clause in s.main:
                _top_clause(st, clause)
            i += 1
    return Drs(tuple(st.universe), tuple(st.conditions))
