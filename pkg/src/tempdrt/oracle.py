"""Independent closed-form check of quantified temporal sentences.

The DRS route decides a quantified sentence by enumerating embeddings
of boxes.  This module answers the same question directly from the
model: quantify over the subordinate predicate's eventualities and ask,
for each, whether some main-predicate eventuality stands in the
connective's relation to it, using closed-form interval arithmetic
instead of any box machinery.  Keeping the two routes separate is the
point: they must agree, and neither may call the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EvaluationError
from .model import Interval, ModelEventuality, TemporalModel


@dataclass(frozen=True)
class ClauseQuery:
    """A clause denotation for the oracle: predicate name plus the
    argument names it must hold of (empty for zero-argument lexemes).
    """

    predicate: str
    args: tuple[str, ...] = ()


def _matching(model: TemporalModel, q: ClauseQuery) -> list[ModelEventuality]:
    return [
        ev
        for ev in model.eventualities
        if ev.predicate == q.predicate and ev.args == q.args
    ]


def tc_holds(
    connective: str,
    sub: ModelEventuality,
    main: ModelEventuality,
    timeline: Interval,
    delta: int = 1,
    main_perfect: bool = False,
) -> bool:
    """Closed-form truth of "some location time for the main clause
    stands in the connective's relation to sub's event time", with the
    location constrained as construction constrains it: containing an
    event main's trace, contained in a state main's trace, contained in
    the result state (which runs from just after the culmination to the
    end of the timeline) for a perfect, and lying within the timeline.
    """
    sub_time = sub.trace
    tr = main.trace
    if main_perfect:
        if main.kind != "event":
            raise EvaluationError("a perfect main needs an event culmination")
        # the location must fit inside [end+1, timeline.end]
        if connective == "before":
            return tr.end + 1 < sub_time.start
        if connective == "after":
            return max(tr.end, sub_time.end) < timeline.end
        if connective in ("when", "whenever"):
            # the subordinate index sits inside the result state
            return tr.end < sub_time.start
        raise EvaluationError(f"unknown temporal connective {connective!r}")
    if connective == "before":
        # some location ending before sub starts
        if main.kind == "event":
            return tr.end < sub_time.start
        return tr.start < sub_time.start
    if connective == "after":
        # some location starting after sub ends
        if main.kind == "event":
            return tr.start > sub_time.end
        return tr.end > sub_time.end
    if connective in ("when", "whenever"):
        if sub.kind == "event":
            window = Interval(sub_time.end + 1, sub_time.end + delta)
            if main.kind == "event":
                # the location starts in the window and stretches over the trace
                return tr.start >= window.start
            # the location is a stretch of the state's trace starting in the window
            return tr.start <= window.end and tr.end >= window.start
        if main.kind == "event":
            # the event main's location fits inside the state's index
            return sub_time.includes(tr)
        return tr.overlaps(sub_time)
    raise EvaluationError(f"unknown temporal connective {connective!r}")


def oracle_quantify(
    quantifier,
    sub: ClauseQuery,
    main: ClauseQuery,
    connective: str,
    model: TemporalModel,
    delta: int = 1,
    main_perfect: bool = False,
) -> bool:
    """Direct verdict: quantify over subordinate-clause eventualities,
    testing each for a main-clause partner under the connective.  The
    quantifier is Every or Often (strict threshold); an empty
    subordinate case set is vacuously true.
    """
    from .drs import Every, Often

    cases = _matching(model, sub)
    partners = _matching(model, main)
    if main_perfect:
        partners = [ev for ev in partners if ev.kind == "event"]
    if not cases:
        return True
    hits = sum(
        1
        for sub_ev in cases
        if any(
            tc_holds(connective, sub_ev, main_ev, model.timeline, delta, main_perfect)
            for main_ev in partners
        )
    )
    if isinstance(quantifier, Every):
        return hits == len(cases)
    if isinstance(quantifier, Often):
        return Fraction(hits, len(cases)) > quantifier.threshold
    raise EvaluationError(f"unknown quantifier {quantifier!r}")
