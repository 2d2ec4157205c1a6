"""Brute-force model checking: does a DRS properly embed into a model?

An embedding maps every universe marker to a model entity of its sort:
individuals to named individuals, eventuality markers to model
eventualities (or to derived states, below), time markers to closed
subintervals of the timeline, and the utterance marker to the point
interval at the model's now.  A DRS is true in a model when some
embedding verifies all its conditions; quantified conditions recurse,
asking that antecedent embeddings extend to the consequent.

Two kinds of state markers denote derived states rather than model
states.  A marker described by a whole quantified condition (a habit)
denotes a state spanning the full timeline whose truth is the inner
quantification, with antecedent cases restricted to overlap it.  A
marker standing for the result of an event (the right side of an
abutment with no description of its own) denotes the state running
from just after that event to the end of the timeline.

Assignment targets are enumerated exhaustively, with time-marker
candidates narrowed by the conditions that pin them, so verdicts are
decided by enumeration rather than by any algebraic shortcut.
"""

from __future__ import annotations

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
    check_accessibility,
)
from .errors import EvaluationError
from .model import Interval, ModelEventuality, TemporalModel, point


@dataclass(frozen=True)
class EvalConfig:
    """Evaluation knobs.  delta is the window, in time points, within
    which one interval counts as lying just after another; 1 means
    immediate adjacency.
    """

    delta: int = 1

    def __post_init__(self):
        if self.delta < 1:
            raise ValueError("delta must be at least 1")


@dataclass(frozen=True)
class DerivedState:
    """A state the model does not list: a habit or a result state."""

    trace: Interval
    label: str = "derived"


@dataclass
class Verdict:
    truth: bool
    witness: dict[Marker, object] | None
    notes: list[str]


def _trace_of(value) -> Interval:
    if isinstance(value, Interval):
        return value
    if isinstance(value, (ModelEventuality, DerivedState)):
        return value.trace
    raise EvaluationError(f"value {value!r} has no temporal trace")


def _holds(rel: Rel, left: Interval, right: Interval, config: EvalConfig) -> bool:
    if rel is Rel.PRECEDES:
        return left.precedes(right)
    if rel is Rel.INCLUDED_IN:
        return right.includes(left)
    if rel is Rel.OVERLAPS:
        return left.overlaps(right)
    if rel is Rel.ABUTS:
        return left.abuts(right)
    if rel is Rel.JUST_BEFORE:
        return left.just_before(right, config.delta)
    if rel is Rel.EQUALS_EVENT_TIME:
        return left == right
    raise EvaluationError(f"unknown relation {rel!r}")


# ---------------------------------------------------------------------------
# free markers of a condition


def _box_free(d: Drs) -> frozenset[Marker]:
    out: set[Marker] = set()
    for c in d.conditions:
        out |= _cond_markers(c)
    return frozenset(out - set(d.universe))


def _cond_markers(cond) -> frozenset[Marker]:
    if isinstance(cond, Predication):
        return frozenset(cond.args)
    if isinstance(cond, EventualityDescription):
        return frozenset((cond.ev, *cond.body.args))
    if isinstance(cond, Temporal):
        return frozenset((cond.lhs, cond.rhs))
    if isinstance(cond, RptAssign):
        return frozenset((cond.target,))
    if isinstance(cond, Duplex):
        consequent_free = _box_free(cond.consequent) - set(cond.antecedent.universe)
        return _box_free(cond.antecedent) | consequent_free
    if isinstance(cond, ComplexState):
        return frozenset((cond.state,)) | _box_free(cond.body)
    raise EvaluationError(f"unknown condition {cond!r}")


# ---------------------------------------------------------------------------
# evaluation proper


class _Evaluator:
    def __init__(self, model: TemporalModel, config: EvalConfig, notes: list[str]):
        self.model = model
        self.config = config
        self.notes = notes
        self._intervals = model.intervals()
        self._duplex_cache: dict = {}

    # -- condition checking ------------------------------------------------

    def check(self, cond, env: dict, duplex_restrict: Interval | None = None) -> bool:
        if isinstance(cond, RptAssign):
            return True
        if isinstance(cond, Predication):
            return self._check_predication(cond, env)
        if isinstance(cond, EventualityDescription):
            return self._check_description(cond, env)
        if isinstance(cond, Temporal):
            left = _trace_of(env[cond.lhs])
            right = _trace_of(env[cond.rhs])
            return _holds(cond.rel, left, right, self.config)
        if isinstance(cond, Duplex):
            return self._check_duplex(cond, env, duplex_restrict)
        if isinstance(cond, ComplexState):
            return self._check_complex(cond, env)
        raise EvaluationError(f"unknown condition {cond!r}")

    def _check_predication(self, cond: Predication, env: dict) -> bool:
        if len(cond.args) == 1 and cond.args[0].sort is Sort.INDIVIDUAL:
            value = env[cond.args[0]]
            return isinstance(value, str) and value.lower() == cond.pred.lower()
        raise EvaluationError(
            f"predication {cond.pred!r} is not a name applied to an individual"
        )

    def _check_description(self, cond: EventualityDescription, env: dict) -> bool:
        ev = env[cond.ev]
        if not isinstance(ev, ModelEventuality):
            return False
        if ev.predicate != cond.body.pred:
            return False
        args = tuple(env[m] for m in cond.body.args)
        return args == ev.args

    def _check_complex(self, cond: ComplexState, env: dict) -> bool:
        """A complex state holds when its description box embeds, with
        every quantification inside it restricted to antecedent cases
        overlapping the state's trace.
        """
        habit = _trace_of(env[cond.state])
        for _ in self.embeddings(cond.body, env, None, habit):
            return True
        return False

    def _check_duplex(self, duplex: Duplex, env: dict, restrict: Interval | None) -> bool:
        free = _cond_markers(duplex)
        key = (
            id(duplex),
            restrict,
            tuple(sorted((m.id, _value_key(env[m])) for m in free if m in env)),
        )
        hit = self._duplex_cache.get(key)
        if hit is not None:
            return hit
        total = 0
        extending = 0
        for ant_env in self.embeddings(duplex.antecedent, env, restrict):
            total += 1
            if any(True for _ in self.embeddings(duplex.consequent, ant_env, None)):
                extending += 1
        if total == 0:
            result = True
            self.notes.append(f"{_quant_name(duplex.quantifier)}: vacuous (no cases)")
        elif isinstance(duplex.quantifier, Every):
            result = extending == total
            self.notes.append(f"every: {extending} of {total} cases extend")
        elif isinstance(duplex.quantifier, Often):
            ratio = Fraction(extending, total)
            result = ratio > duplex.quantifier.threshold
            self.notes.append(
                f"often(>{duplex.quantifier.threshold}): {extending} of {total} cases extend"
            )
        else:
            raise EvaluationError(f"unknown quantifier {duplex.quantifier!r}")
        self._duplex_cache[key] = result
        return result

    # -- embedding enumeration ----------------------------------------------

    def embeddings(
        self,
        d: Drs,
        env: dict,
        restrict: Interval | None,
        duplex_restrict: Interval | None = None,
    ):
        """Yield extensions of env that assign d's universe and verify
        all its conditions.  With restrict set, eventuality markers of
        this universe only take values whose traces overlap it; with
        duplex_restrict set, quantified conditions of this box restrict
        their antecedent cases to it (a habit's span).
        """
        atomic = []
        deferred = []
        for c in d.conditions:
            if isinstance(c, (Duplex, ComplexState)):
                deferred.append(c)
            elif not isinstance(c, RptAssign):
                atomic.append(c)
        order = _universe_order(d)
        pending = []
        for c in atomic:
            if _cond_markers(c) <= env.keys():
                if not self.check(c, env):
                    return
            else:
                pending.append(c)
        yield from self._assign(
            d, order, 0, dict(env), pending, deferred, restrict, duplex_restrict
        )

    def _assign(self, d, order, idx, env, pending, deferred, restrict, duplex_restrict):
        if idx == len(order):
            if all(self.check(c, env, duplex_restrict) for c in deferred):
                yield env
            return
        marker = order[idx]
        for value in self._candidates(marker, d, env, restrict):
            env2 = dict(env)
            env2[marker] = value
            still = []
            ok = True
            for c in pending:
                if _cond_markers(c) <= env2.keys():
                    if not self.check(c, env2):
                        ok = False
                        break
                else:
                    still.append(c)
            if ok:
                yield from self._assign(
                    d, order, idx + 1, env2, still, deferred, restrict, duplex_restrict
                )

    def _candidates(self, marker: Marker, d: Drs, env: dict, restrict: Interval | None):
        model = self.model
        if marker.sort is Sort.NOW:
            return [point(model.now)]
        if marker.sort is Sort.INDIVIDUAL:
            return sorted(model.individuals)
        if marker.sort is Sort.TIME:
            if marker.anchor:
                return [model.timeline]
            return self._time_candidates(marker, d, env)
        if marker.sort is Sort.EVENT:
            pool = model.of_kind("event")
            if restrict is not None:
                pool = tuple(ev for ev in pool if ev.trace.overlaps(restrict))
            return pool
        if marker.sort is Sort.STATE:
            for c in d.conditions:
                if isinstance(c, ComplexState) and c.state == marker:
                    return [DerivedState(model.timeline, "habit")]
            result_of = _result_source(marker, d)
            if result_of is not None:
                if result_of not in env:
                    raise EvaluationError(
                        "result state assigned before its source event"
                    )
                end = _trace_of(env[result_of]).end
                if end >= model.timeline_end:
                    return []
                return [DerivedState(Interval(end + 1, model.timeline_end), "result")]
            pool = model.of_kind("state")
            if restrict is not None:
                pool = tuple(ev for ev in pool if ev.trace.overlaps(restrict))
            return pool
        raise EvaluationError(f"cannot enumerate candidates for sort {marker.sort!r}")

    def _time_candidates(self, marker: Marker, d: Drs, env: dict):
        pins = []
        for c in d.conditions:
            if not isinstance(c, Temporal):
                continue
            if c.lhs == marker and c.rhs in env:
                pins.append((c.rel, None, _trace_of(env[c.rhs])))
            elif c.rhs == marker and c.lhs in env:
                pins.append((c.rel, _trace_of(env[c.lhs]), None))
        for rel, left, _right in pins:
            if rel is Rel.EQUALS_EVENT_TIME and left is not None:
                raise EvaluationError("a time cannot be the located side of loc")
        exact = [right for rel, _left, right in pins if rel is Rel.EQUALS_EVENT_TIME]
        if exact:
            base = [exact[0]]
        else:
            base = self._intervals
        out = []
        for iv in base:
            ok = True
            for rel, left, right in pins:
                if right is not None:
                    ok = _holds(rel, iv, right, self.config)
                else:
                    ok = _holds(rel, left, iv, self.config)
                if not ok:
                    break
            if ok:
                out.append(iv)
        return out


def _result_source(marker: Marker, d: Drs) -> Marker | None:
    """The event a result-state marker abuts, if this marker is one: it
    sits on the right of an abutment and carries no description of its
    own in this box.
    """
    for c in d.conditions:
        if isinstance(c, EventualityDescription) and c.ev == marker:
            return None
    for c in d.conditions:
        if isinstance(c, Temporal) and c.rel is Rel.ABUTS and c.rhs == marker:
            if c.lhs.sort is Sort.EVENT:
                return c.lhs
    return None


def _universe_order(d: Drs) -> list[Marker]:
    cstates = {c.state for c in d.conditions if isinstance(c, ComplexState)}

    def rank(m: Marker) -> tuple:
        if m.sort is Sort.NOW:
            r = 0
        elif m.sort is Sort.TIME and m.anchor:
            r = 1
        elif m.sort is Sort.INDIVIDUAL:
            r = 2
        elif m.sort is Sort.EVENT:
            r = 3
        elif m.sort is Sort.STATE:
            if m in cstates:
                r = 6
            elif _result_source(m, d) is not None:
                r = 5
            else:
                r = 4
        else:
            r = 7
        return (r, m.id)

    return sorted(d.universe, key=rank)


def _value_key(value):
    if isinstance(value, str):
        return ("i", value)
    if isinstance(value, ModelEventuality):
        return ("e", value.id)
    if isinstance(value, DerivedState):
        return ("d", value.trace.start, value.trace.end)
    if isinstance(value, Interval):
        return ("t", value.start, value.end)
    raise EvaluationError(f"unhashable assignment value {value!r}")


def _quant_name(q) -> str:
    return "every" if isinstance(q, Every) else f"often(>{q.threshold})"


def evaluate(
    d: Drs,
    model: TemporalModel,
    config: EvalConfig | None = None,
    collect_notes: list[str] | None = None,
) -> Verdict:
    """Truth of a DRS in a model.  The verdict carries the verifying
    top-level assignment when one exists, and human-readable notes on
    how each quantified condition fared.
    """
    config = config or EvalConfig()
    check_accessibility(d)
    notes = collect_notes if collect_notes is not None else []
    ev = _Evaluator(model, config, notes)
    for env in ev.embeddings(d, {}, None):
        return Verdict(True, env, notes)
    return Verdict(False, None, notes)
