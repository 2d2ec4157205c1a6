"""Built-in demonstration suite.

Ten named items, each rebuilding a canonical discourse from text,
checking it against the stored fixtures and models, and returning a
one-line diagnostic.  The CLI prints one PASS/FAIL line per item; the
acceptance tests run the same items under their time budgets.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .baseline import build_baseline
from .drs import Drs, Duplex, Every, ComplexState, Rel, Sort, Temporal, alpha_equivalent, strip_rpt
from .errors import TempdrtError
from .evaluate import EvalConfig, evaluate
from .fragment import CONNECTIVES, parse_text, resolve_pronouns
from .gen import agreement_case, random_drs, random_interval
from .model import Interval, TemporalModel, load_model
from .oracle import ClauseQuery, oracle_quantify
from .render import render_box
from .serial import deserialize, serialize
from .split import build_split

TEXTS = {
    "before_always": "Before John makes a phone call, he always lights up a cigarette.",
    "whenever_asleep": "Whenever Mary telephoned, Sam was asleep.",
    "getup": "John got up, went to the window, and raised the blind. It was light out.",
    "tv_habit": (
        "When he came home, he always switched on the tv."
        " He took a beer and sat down in his armchair to forget the day."
    ),
    "dinner_often": "Often, when Anne came home late, Paul had already prepared dinner.",
    "beach_squint": "When John is at the beach, he always squints when the sun is shining.",
}

GOLDEN_NAMES = (
    "before_always_baseline",
    "before_always_split",
    "whenever_asleep_baseline",
    "tv_habit_split",
    "beach_squint_split",
)


class SuiteError(TempdrtError):
    pass


def fixtures_dir() -> Path:
    """The fixture directory: TEMPDRT_FIXTURES if set, else the nearest
    `fixtures` directory above the working directory, else the one next
    to the source checkout.
    """
    env = os.environ.get("TEMPDRT_FIXTURES")
    if env:
        p = Path(env)
        if not p.is_dir():
            raise SuiteError(f"TEMPDRT_FIXTURES points at {env!r}, not a directory")
        return p
    cwd = Path.cwd()
    for cand in (cwd, *cwd.parents):
        p = cand / "fixtures"
        if p.is_dir():
            return p
    p = Path(__file__).resolve().parents[2] / "fixtures"
    if p.is_dir():
        return p
    raise SuiteError("cannot locate a fixtures directory; set TEMPDRT_FIXTURES")


def build(text: str, strategy: str, often_threshold: Fraction = Fraction(1, 2)) -> Drs:
    """Parse, resolve pronouns leniently, and construct under the named
    strategy ("baseline" or "split").
    """
    d = resolve_pronouns(parse_text(text), lenient=True)
    if strategy == "baseline":
        return build_baseline(d, often_threshold)
    if strategy == "split":
        return build_split(d, often_threshold)
    raise SuiteError(f"unknown strategy {strategy!r}")


@dataclass(frozen=True)
class SuiteContext:
    fixtures: Path
    seed: int = 2026
    delta: int = 1
    often_threshold: Fraction = Fraction(1, 2)

    def drs(self, name: str) -> Drs:
        return deserialize((self.fixtures / f"{name}.drs").read_text("utf-8"))

    def model(self, name: str) -> TemporalModel:
        return load_model(self.fixtures / f"{name}.model")

    def config(self) -> EvalConfig:
        return EvalConfig(delta=self.delta)


@dataclass(frozen=True)
class ItemResult:
    name: str
    ok: bool
    detail: str
    seconds: float


def _require(ok: bool, message: str) -> None:
    if not ok:
        raise SuiteError(message)


def _without(model: TemporalModel, ev_id: str) -> TemporalModel:
    kept = tuple(ev for ev in model.eventualities if ev.id != ev_id)
    _require(len(kept) < len(model.eventualities), f"no eventuality {ev_id!r} to drop")
    return TemporalModel(model.timeline_end, model.now, model.individuals, kept)


def _fmt(truth: bool) -> str:
    return "TRUE" if truth else "FALSE"


# ---------------------------------------------------------------------------
# items


def item_minimal_pair(ctx: SuiteContext) -> str:
    text = TEXTS["before_always"]
    _require(
        alpha_equivalent(build(text, "baseline"), ctx.drs("before_always_baseline")),
        "reference-time construction drifted from its fixture",
    )
    _require(
        alpha_equivalent(build(text, "split"), ctx.drs("before_always_split")),
        "split construction drifted from its fixture",
    )
    return "both analyses of the before-sentence match their stored fixtures"


def item_quantification_defect(ctx: SuiteContext) -> str:
    m = ctx.model("M1")
    cfg = ctx.config()
    base = evaluate(ctx.drs("before_always_baseline"), m, cfg).truth
    split = evaluate(ctx.drs("before_always_split"), m, cfg).truth
    text = TEXTS["before_always"]
    _require(
        evaluate(build(text, "baseline"), m, cfg).truth == base,
        "constructed and fixture reference-time verdicts differ",
    )
    _require(
        evaluate(build(text, "split"), m, cfg).truth == split,
        "constructed and fixture split verdicts differ",
    )
    want = oracle_quantify(
        Every(),
        ClauseQuery("phone", ("john",)),
        ClauseQuery("light-up", ("john",)),
        "before",
        m,
        ctx.delta,
    )
    _require(base is False, "reference-time analysis should fail on this model")
    _require(split is True, "split analysis should verify this model")
    _require(want is True, "closed-form check should verify this model")
    return "baseline: FALSE, split: TRUE, oracle: TRUE"


def item_whenever_flip(ctx: SuiteContext) -> str:
    text = TEXTS["whenever_asleep"]
    cfg = ctx.config()
    covered = ctx.model("whenever_adjacent")
    gapped = _without(covered, "S1")
    base, split = build(text, "baseline"), build(text, "split")
    _require(
        alpha_equivalent(base, ctx.drs("whenever_asleep_baseline")),
        "reference-time construction drifted from its fixture",
    )
    on_full = (evaluate(base, covered, cfg).truth, evaluate(split, covered, cfg).truth)
    on_gap = (evaluate(base, gapped, cfg).truth, evaluate(split, gapped, cfg).truth)
    _require(on_full == (True, True), f"full sleep cover should verify both, got {on_full}")
    _require(on_gap == (False, False), f"a sleep gap should refute both, got {on_gap}")
    return "covered sleeps TRUE/TRUE, one sleep removed FALSE/FALSE (both analyses)"


def item_narrative_chain(ctx: SuiteContext) -> str:
    text = TEXTS["getup"]
    cfg = ctx.config()
    base = build(text, "baseline")
    _require(
        alpha_equivalent(base, ctx.drs("getup_narrative_baseline")),
        "narrative chain drifted from its fixture",
    )
    split = build(text, "split")
    ordered, scrambled = ctx.model("getup_ordered"), ctx.model("getup_scrambled")
    verdicts = (
        evaluate(base, ordered, cfg).truth,
        evaluate(split, ordered, cfg).truth,
        evaluate(base, scrambled, cfg).truth,
        evaluate(split, scrambled, cfg).truth,
    )
    _require(
        verdicts == (True, True, False, False),
        f"narrative order should separate the models, got {verdicts}",
    )
    return "chain matches fixture; ordered model TRUE, scrambled model FALSE (both analyses)"


def item_quantified_narrative(ctx: SuiteContext) -> str:
    split = build(TEXTS["tv_habit"], "split")
    _require(
        alpha_equivalent(split, ctx.drs("tv_habit_split")),
        "quantified narrative drifted from its fixture",
    )
    cfg = ctx.config()
    stripped = strip_rpt(split)
    full = ctx.model("tv_routine")
    broken = _without(full, "B2")
    for m, want in ((full, True), (broken, False)):
        got = evaluate(split, m, cfg).truth
        _require(got is want, f"routine verdict should be {want}, got {got}")
        _require(
            evaluate(stripped, m, cfg).truth is got,
            "removing reference-point assignments changed a verdict",
        )
    return "fixture matched; Rpt assignments inert (TRUE full routine, FALSE with a missing step)"


def item_perfect_quantified(ctx: SuiteContext) -> str:
    split = build(TEXTS["dinner_often"], "split", ctx.often_threshold)
    duplexes = [
        c
        for top in split.conditions
        if isinstance(top, ComplexState)
        for c in top.body.conditions
        if isinstance(c, Duplex)
    ]
    _require(len(duplexes) == 1, "expected exactly one quantification")
    duplex = duplexes[0]
    ant_times = [m for m in duplex.antecedent.universe if m.sort is Sort.TIME]
    _require(len(ant_times) == 1, "expected one subordinate index time")
    cons = duplex.consequent.conditions
    links = [
        c
        for c in cons
        if isinstance(c, Temporal)
        and c.rel is Rel.INCLUDED_IN
        and c.lhs == ant_times[0]
    ]
    _require(
        len(links) == 1,
        "the subordinate event time should sit inside the result state's location",
    )
    loc = links[0].rhs
    _require(
        any(
            isinstance(c, Temporal)
            and c.rel is Rel.INCLUDED_IN
            and c.lhs == loc
            and c.rhs.sort is Sort.STATE
            for c in cons
        ),
        "the located time should lie inside the result state",
    )
    _require(
        any(isinstance(c, Temporal) and c.rel is Rel.ABUTS for c in cons),
        "the culmination should abut its result state",
    )
    got = evaluate(split, ctx.model("dinner_often"), ctx.config()).truth
    _require(got is True, "dinner preparations cover both arrivals, expected TRUE")
    return "event time included in the result state's location; often(>1/2) TRUE"


def item_iterated_quantification(ctx: SuiteContext) -> str:
    _require(
        alpha_equivalent(build(TEXTS["beach_squint"], "split"), ctx.drs("beach_squint_split")),
        "nested quantification drifted from its fixture",
    )
    return "nested habit state matches its stored fixture"


def item_oracle_agreement(ctx: SuiteContext) -> str:
    n = 0
    for i in range(50):
        for conn in CONNECTIVES:
            rng = random.Random(ctx.seed * 100_000 + 1_000 * i + CONNECTIVES.index(conn))
            case = agreement_case(rng, conn)
            engine = evaluate(
                build(case.text, "split"), case.model, ctx.config()
            ).truth
            direct = oracle_quantify(
                Every(), case.sub, case.main, case.connective, case.model, ctx.delta
            )
            _require(
                engine == direct,
                f"engine {_fmt(engine)} vs oracle {_fmt(direct)} on {case.text!r}"
                f" over {case.model}",
            )
            n += 1
    return f"{n} random quantified sentences, engine and oracle agree on every one"


def item_interval_laws(ctx: SuiteContext) -> str:
    rng = random.Random(ctx.seed + 9)
    checked = 0
    for _ in range(1000):
        t = rng.randint(2, 30)
        a, b, c = (random_interval(rng, t) for _ in range(3))
        _require(not a.precedes(a), f"{a} should not precede itself")
        if a.precedes(b) and b.precedes(c):
            _require(a.precedes(c), f"precedence broke transitivity on {a} {b} {c}")
        _require(a.overlaps(b) == b.overlaps(a), f"overlap asymmetric on {a} {b}")
        _require(a.overlaps(a), f"{a} should overlap itself")
        _require(a.includes(a), f"{a} should include itself")
        if a.includes(b) and b.includes(a):
            _require(a == b, f"inclusion broke antisymmetry on {a} {b}")
        if c.includes(b) and b.includes(a):
            _require(c.includes(a), f"inclusion broke transitivity on {a} {b} {c}")
        _require(
            a.abuts(b) == (a.end + 1 == b.start),
            f"adjacency identity failed on {a} {b}",
        )
        if a.abuts(b):
            _require(
                a.precedes(b) and not a.overlaps(b),
                f"adjacent intervals misbehaved on {a} {b}",
            )
            _require(
                Interval(a.start, b.end).length == a.length + b.length,
                f"adjacent intervals should tile their span, {a} {b}",
            )
        if c.length >= 2:
            cut = rng.randint(c.start, c.end - 1)
            _require(
                Interval(c.start, cut).abuts(Interval(cut + 1, c.end)),
                f"splitting {c} at {cut} should abut",
            )
        checked += 1
    return f"{checked} random interval triples, all algebra laws hold"


def item_roundtrip_and_goldens(ctx: SuiteContext) -> str:
    fixture_count = 0
    for path in sorted(ctx.fixtures.glob("*.drs")):
        d = deserialize(path.read_text("utf-8"))
        _require(
            alpha_equivalent(d, deserialize(serialize(d))),
            f"{path.name} does not survive a round-trip",
        )
        fixture_count += 1
    _require(fixture_count > 0, "no .drs fixtures found")
    for i in range(500):
        d = random_drs(random.Random(ctx.seed * 31 + i))
        _require(
            alpha_equivalent(d, deserialize(serialize(d))),
            f"random DRS {i} does not survive a round-trip",
        )
    matched = 0
    for name in GOLDEN_NAMES:
        want = (ctx.fixtures / f"{name}.box").read_text("utf-8")
        got = render_box(ctx.drs(name))
        _require(got.rstrip("\n") == want.rstrip("\n"), f"{name} rendering drifted from its golden file")
        matched += 1
    return (
        f"{fixture_count} fixtures + 500 random DRSs round-trip;"
        f" {matched} box renderings match their goldens"
    )


ITEMS = (
    ("minimal_pair", item_minimal_pair),
    ("quantification_defect", item_quantification_defect),
    ("whenever_flip", item_whenever_flip),
    ("narrative_chain", item_narrative_chain),
    ("quantified_narrative", item_quantified_narrative),
    ("perfect_quantified", item_perfect_quantified),
    ("iterated_quantification", item_iterated_quantification),
    ("oracle_agreement", item_oracle_agreement),
    ("interval_laws", item_interval_laws),
    ("roundtrip_and_goldens", item_roundtrip_and_goldens),
)


def run_suite(
    filter_text: str | None = None,
    fixtures: Path | None = None,
    seed: int = 2026,
    delta: int = 1,
    often_threshold: Fraction = Fraction(1, 2),
) -> list[ItemResult]:
    """Run every item whose name contains filter_text (all by default)
    and return one result per item, failures included.
    """
    ctx = SuiteContext(
        fixtures=fixtures or fixtures_dir(),
        seed=seed,
        delta=delta,
        often_threshold=often_threshold,
    )
    results = []
    for name, func in ITEMS:
        if filter_text and filter_text not in name:
            continue
        started = time.perf_counter()
        try:
            detail = func(ctx)
            ok = True
        except Exception as err:  # a failing item must not stop the run
            detail = f"{type(err).__name__}: {err}"
            ok = False
        results.append(ItemResult(name, ok, detail, time.perf_counter() - started))
    return results
