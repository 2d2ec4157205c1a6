"""Finite temporal models over a closed integer timeline.

A model fixes a timeline 0..T, an utterance point inside it, a registry
of named individuals, and a list of eventualities, each carrying a kind
(event or state), a predicate, individual arguments, and a closed
integer interval as its temporal trace.  These are the structures that
discourse representations are checked against.

Model file format (line-oriented, `#` starts a comment):

    timeline T
    now P
    individual NAME [GENDER]
    event ID PRED(ARG, ...) START END
    state ID PRED(ARG, ...) START END

`timeline` must come before any line that depends on it.  Individual
names are case-insensitive; they are stored lowercased.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ModelLoadError


@dataclass(frozen=True, order=True)
class Interval:
    """Closed interval [start, end] of integer time points."""

    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError(f"empty interval [{self.start}, {self.end}]")

    def __repr__(self):
        return f"[{self.start},{self.end}]"

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    def precedes(self, other: "Interval") -> bool:
        """Wholly earlier: ends strictly before the other starts."""
        return self.end < other.start

    def includes(self, other: "Interval") -> bool:
        return self.start <= other.start and other.end <= self.end

    def overlaps(self, other: "Interval") -> bool:
        return self.start <= other.end and other.start <= self.end

    def abuts(self, other: "Interval") -> bool:
        """Ends exactly one point before the other starts."""
        return self.end + 1 == other.start

    def just_before(self, other: "Interval", delta: int = 1) -> bool:
        """Precedes with a gap of at most delta points.  delta=1 is
        adjacency; larger values loosen the window.
        """
        return 1 <= other.start - self.end <= delta

    def intersection(self, other: "Interval") -> "Interval | None":
        lo, hi = max(self.start, other.start), min(self.end, other.end)
        return Interval(lo, hi) if lo <= hi else None


def point(p: int) -> Interval:
    return Interval(p, p)


@dataclass(frozen=True)
class ModelEventuality:
    id: str
    kind: str  # event | state
    predicate: str
    args: tuple[str, ...]
    trace: Interval

    def __post_init__(self):
        if self.kind not in ("event", "state"):
            raise ValueError(f"bad eventuality kind {self.kind!r}")


@dataclass(frozen=True)
class TemporalModel:
    timeline_end: int
    now: int
    individuals: dict[str, str | None] = field(default_factory=dict)
    eventualities: tuple[ModelEventuality, ...] = ()

    def __post_init__(self):
        if self.timeline_end < 0:
            raise ValueError("timeline end must be non-negative")
        if not 0 <= self.now <= self.timeline_end:
            raise ValueError("utterance point must lie on the timeline")
        seen = set()
        for ev in self.eventualities:
            if ev.id in seen:
                raise ValueError(f"duplicate eventuality id {ev.id!r}")
            seen.add(ev.id)
            if ev.trace.start < 0 or ev.trace.end > self.timeline_end:
                raise ValueError(f"trace of {ev.id!r} falls outside the timeline")
            for a in ev.args:
                if a not in self.individuals:
                    raise ValueError(f"eventuality {ev.id!r} names unknown individual {a!r}")

    @property
    def timeline(self) -> Interval:
        return Interval(0, self.timeline_end)

    @property
    def now_interval(self) -> Interval:
        return point(self.now)

    def of_kind(self, kind: str) -> tuple[ModelEventuality, ...]:
        return tuple(ev for ev in self.eventualities if ev.kind == kind)

    def by_id(self, ev_id: str) -> ModelEventuality:
        for ev in self.eventualities:
            if ev.id == ev_id:
                return ev
        raise KeyError(ev_id)

    def with_predicate(self, predicate: str) -> tuple[ModelEventuality, ...]:
        return tuple(ev for ev in self.eventualities if ev.predicate == predicate)

    def intervals(self) -> list[Interval]:
        """All closed subintervals of the timeline, shortest first."""
        out = [
            Interval(a, b)
            for b in range(self.timeline_end + 1)
            for a in range(b + 1)
        ]
        out.sort(key=lambda iv: (iv.length, iv.start))
        return out


_EVENTUALITY_RE = re.compile(
    r"^(?P<id>\S+)\s+(?P<pred>[A-Za-z-]+)\((?P<args>[^)]*)\)\s+(?P<a>-?\d+)\s+(?P<b>-?\d+)$"
)


def parse_model(text: str) -> TemporalModel:
    """Parse the line-oriented model format.  Malformed lines and
    out-of-range traces raise a load error naming the line.
    """
    timeline: int | None = None
    now: int | None = None
    individuals: dict[str, str | None] = {}
    eventualities: list[ModelEventuality] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "timeline":
            if timeline is not None:
                raise ModelLoadError("duplicate timeline line", lineno)
            timeline = _int(rest, "timeline end", lineno)
            if timeline < 0:
                raise ModelLoadError("timeline end must be non-negative", lineno)
        elif head == "now":
            if timeline is None:
                raise ModelLoadError("now before timeline", lineno)
            now = _int(rest, "utterance point", lineno)
            if not 0 <= now <= timeline:
                raise ModelLoadError("utterance point falls outside the timeline", lineno)
        elif head == "individual":
            parts = rest.split()
            if not 1 <= len(parts) <= 2:
                raise ModelLoadError("individual takes a name and optional gender", lineno)
            name = parts[0].lower()
            gender = parts[1] if len(parts) == 2 else None
            if gender not in (None, "m", "f", "n"):
                raise ModelLoadError(f"bad gender {gender!r}", lineno)
            if name in individuals:
                raise ModelLoadError(f"duplicate individual {name!r}", lineno)
            individuals[name] = gender
        elif head in ("event", "state"):
            if timeline is None:
                raise ModelLoadError(f"{head} before timeline", lineno)
            m = _EVENTUALITY_RE.match(rest)
            if m is None:
                raise ModelLoadError(f"malformed {head} line", lineno)
            args = tuple(
                a.strip().lower() for a in m.group("args").split(",") if a.strip()
            )
            a = _int(m.group("a"), "trace start", lineno)
            b = _int(m.group("b"), "trace end", lineno)
            if a > b:
                raise ModelLoadError("trace start exceeds trace end", lineno)
            if a < 0 or b > timeline:
                raise ModelLoadError("trace falls outside the timeline", lineno)
            for arg in args:
                if arg not in individuals:
                    raise ModelLoadError(f"unknown individual {arg!r}", lineno)
            if any(ev.id == m.group("id") for ev in eventualities):
                raise ModelLoadError(f"duplicate eventuality id {m.group('id')!r}", lineno)
            eventualities.append(
                ModelEventuality(m.group("id"), head, m.group("pred"), args, Interval(a, b))
            )
        else:
            raise ModelLoadError(f"unknown directive {head!r}", lineno)

    if timeline is None:
        raise ModelLoadError("missing timeline line")
    if now is None:
        raise ModelLoadError("missing now line")
    return TemporalModel(timeline, now, individuals, tuple(eventualities))


def _int(text: str, what: str, lineno: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ModelLoadError(f"bad {what} {text!r}", lineno) from None


def load_model(path) -> TemporalModel:
    from pathlib import Path

    return parse_model(Path(path).read_text("utf-8"))


def format_model(m: TemporalModel) -> str:
    """Render a model back into the line format parse_model reads."""
    lines = [f"timeline {m.timeline_end}", f"now {m.now}"]
    for name, gender in m.individuals.items():
        lines.append(f"individual {name}" + (f" {gender}" if gender else ""))
    for ev in m.eventualities:
        args = ", ".join(ev.args)
        lines.append(f"{ev.kind} {ev.id} {ev.predicate}({args}) {ev.trace.start} {ev.trace.end}")
    return "\n".join(lines) + "\n"
