"""Reference-time construction: one running interval tracks narrative
progression, and quantified sentences split boxes around it.

Plain past narration threads a current reference time through the
discourse: each event is included in it and moves it forward to a fresh
interval just after, while states include it and leave it in place.
Sentences with a temporal connective plus quantificational force become
a quantified condition whose antecedent holds the subordinate event
together with the updated reference time.  Keeping the reference time
in the antecedent is the characteristic commitment of this analysis,
and for connectives other than when/whenever it quantifies over far
more pairs than intended; the construction reproduces that behavior
deliberately rather than repairing it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .drs import (
    Drs,
    Duplex,
    Every,
    EventualityDescription,
    Marker,
    Often,
    Predication,
    Rel,
    Sort,
    Temporal,
    fresh_marker,
)
from .errors import ConstructionError
from .fragment import Anon, Aspect, Clause, ParsedDiscourse, Pronoun, Sentence, Tense


@dataclass
class BaselineState:
    """Mutable construction state for one discourse."""

    now: Marker
    universe: list[Marker] = field(default_factory=list)
    conditions: list = field(default_factory=list)
    individuals: dict = field(default_factory=dict)
    current_reference_time: Marker | None = None
    reference_time_used: bool = False

    def individual(self, subject) -> Marker:
        """Marker for a clause subject, created on first mention.
        Named subjects get a naming condition; anonymous ones do not.
        """
        key = subject if isinstance(subject, str) else ("anon", subject.form)
        got = self.individuals.get(key)
        if got is not None:
            return got
        x = fresh_marker(Sort.INDIVIDUAL, "x" if not self.individuals else "y")
        self.universe.append(x)
        self.individuals[key] = x
        if isinstance(subject, str):
            self.conditions.append(Predication(subject, (x,)))
        return x

    def description(self, ev: Marker, clause: Clause):
        args = () if clause.subject is None else (self.individual(clause.subject),)
        return EventualityDescription(ev, Predication(clause.verb, args))


def _check_clause(clause: Clause):
    if isinstance(clause.subject, Pronoun):
        raise ConstructionError(
            f"unresolved pronoun {clause.subject.form!r}; resolve pronouns first"
        )
    if clause.tense in (Tense.PAST_PERFECT, Tense.PRESENT_PERFECT):
        raise ConstructionError(
            "the reference-time analysis here does not cover the perfect"
        )


def _ensure_reference_time(st: BaselineState) -> Marker:
    if st.current_reference_time is None:
        r0 = fresh_marker(Sort.TIME, "r0")
        st.universe.append(r0)
        st.conditions.append(Temporal(Rel.PRECEDES, r0, st.now))
        st.current_reference_time = r0
        st.reference_time_used = False
    return st.current_reference_time


def advance_reference_time(st: BaselineState, after_event: Marker) -> Marker:
    """Fresh reference time just after the current one, which becomes
    current.  The event that exhausted the old interval is accepted for
    interface parity; the adjacency condition is time-to-time.
    """
    if after_event.sort is not Sort.EVENT:
        raise ConstructionError("reference time advances past an event")
    old = st.current_reference_time
    if old is None:
        raise ConstructionError("no reference time to advance")
    new = fresh_marker(Sort.TIME, f"r{sum(1 for m in st.universe if m.sort is Sort.TIME)}")
    st.universe.append(new)
    st.conditions.append(Temporal(Rel.JUST_BEFORE, old, new))
    st.conditions.append(Temporal(Rel.PRECEDES, new, st.now))
    st.current_reference_time = new
    st.reference_time_used = False
    return new


def _narrative_clause(st: BaselineState, clause: Clause, last_event: Marker | None):
    _check_clause(clause)
    if clause.tense is not Tense.SIMPLE_PAST:
        raise ConstructionError(
            "only simple-past narration is covered outside quantified sentences"
        )
    r = _ensure_reference_time(st)
    if clause.aspect is Aspect.EVENT:
        if st.reference_time_used:
            r = advance_reference_time(st, last_event)
        e = fresh_marker(Sort.EVENT, f"e{1 + sum(1 for m in st.universe if m.sort is Sort.EVENT)}")
        st.universe.append(e)
        st.conditions.append(Temporal(Rel.INCLUDED_IN, e, r))
        st.conditions.append(st.description(e, clause))
        st.reference_time_used = True
        return e
    s = fresh_marker(Sort.STATE, f"s{1 + sum(1 for m in st.universe if m.sort is Sort.STATE)}")
    st.universe.append(s)
    st.conditions.append(Temporal(Rel.INCLUDED_IN, r, s))
    st.conditions.append(st.description(s, clause))
    return last_event


def _is_quantified(s: Sentence) -> bool:
    return (
        s.connective is not None
        or s.trailing_connective is not None
        or s.q_adverb is not None
    )


def build_baseline(
    d: ParsedDiscourse, often_threshold: Fraction = Fraction(1, 2)
) -> Drs:
    """Reference-time DRS for a resolved discourse: plain past
    narration, or a single quantified connective sentence.
    """
    if any(_is_quantified(s) for s in d.sentences):
        if len(d.sentences) != 1:
            raise ConstructionError(
                "a quantified sentence must stand alone in the reference-time analysis"
            )
        return build_quantified_baseline(d.sentences[0], often_threshold)
    n = fresh_marker(Sort.NOW, "n")
    st = BaselineState(now=n, universe=[n])
    last_event: Marker | None = None
    for sentence in d.sentences:
        for clause in sentence.main:
            last_event = _narrative_clause(st, clause, last_event)
    return Drs(tuple(st.universe), tuple(st.conditions))


def build_quantified_baseline(
    s: Sentence, often_threshold: Fraction = Fraction(1, 2)
) -> Drs:
    """Box-splitting around the reference time, for a sentence with a
    temporal connective plus quantificational force (whenever, or a
    q-adverb).  The subordinate event and the new reference time both
    land in the antecedent universe.
    """
    if s.connective is None:
        raise ConstructionError("quantified construction needs a temporal connective")
    if s.trailing_connective is not None:
        raise ConstructionError(
            "nested temporal subordination is not covered by the reference-time analysis"
        )
    if s.connective != "whenever" and s.q_adverb is None:
        raise ConstructionError(
            f"bare {s.connective!r} needs a quantificational adverb here"
        )
    if len(s.main) != 1:
        raise ConstructionError(
            "coordination inside a quantified sentence is not covered by the"
            " reference-time analysis"
        )
    sub, main = s.subordinate, s.main[0]
    _check_clause(sub)
    _check_clause(main)
    if sub.aspect is not Aspect.EVENT:
        raise ConstructionError(
            "a state subordinate clause is not covered by the reference-time analysis"
        )
    if sub.tense is not main.tense:
        raise ConstructionError("subordinate and main clause tenses must agree")
    past = main.tense is Tense.SIMPLE_PAST

    n = fresh_marker(Sort.NOW, "n")
    st = BaselineState(now=n, universe=[n])
    sub_subject = None if sub.subject is None else st.individual(sub.subject)
    main_subject = None if main.subject is None else st.individual(main.subject)
    r0 = fresh_marker(Sort.TIME, "r0", anchor=True)
    st.universe.append(r0)

    e1 = fresh_marker(Sort.EVENT, "e1")
    r1 = fresh_marker(Sort.TIME, "r1")
    ant_conds = [Temporal(Rel.INCLUDED_IN, e1, r0)]
    if past:
        ant_conds.append(Temporal(Rel.PRECEDES, e1, n))
    if s.connective in ("when", "whenever"):
        ant_conds.append(Temporal(Rel.JUST_BEFORE, e1, r1))
    elif s.connective == "before":
        ant_conds.append(Temporal(Rel.PRECEDES, r1, e1))
    else:
        ant_conds.append(Temporal(Rel.PRECEDES, e1, r1))
    if past:
        ant_conds.append(Temporal(Rel.PRECEDES, r1, n))
    ant_conds.append(
        EventualityDescription(
            e1, Predication(sub.verb, () if sub_subject is None else (sub_subject,))
        )
    )
    antecedent = Drs((e1, r1), tuple(ant_conds))

    main_args = () if main_subject is None else (main_subject,)
    if main.aspect is Aspect.EVENT:
        e2 = fresh_marker(Sort.EVENT, "e2")
        consequent = Drs(
            (e2,),
            (
                Temporal(Rel.INCLUDED_IN, e2, r1),
                EventualityDescription(e2, Predication(main.verb, main_args)),
            ),
        )
    else:
        s1 = fresh_marker(Sort.STATE, "s1")
        consequent = Drs(
            (s1,),
            (
                Temporal(Rel.INCLUDED_IN, r1, s1),
                EventualityDescription(s1, Predication(main.verb, main_args)),
            ),
        )

    quantifier = Often(often_threshold) if s.q_adverb == "often" else Every()
    st.conditions.append(Duplex(antecedent, quantifier, consequent))
    return Drs(tuple(st.universe), tuple(st.conditions))
