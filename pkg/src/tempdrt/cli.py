"""Command-line front door.

Four commands: construct (parse and render DRSs), eval (truth against a
model), compare (both strategies side by side with the closed-form
verdict), and suite (the built-in demonstrations).  Exit codes: 0 on
success, 1 on parse/construction/model errors or failing suite items,
2 when --expect names a verdict the run contradicts, 64 on bad flags.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .baseline import build_baseline
from .drs import Drs, Every, Often
from .errors import ConstructionError, TempdrtError
from .evaluate import DerivedState, EvalConfig, Verdict, evaluate
from .fragment import (
    PERFECT_TENSES,
    ParsedDiscourse,
    parse_text,
    resolve_pronouns,
)
from .model import ModelEventuality, TemporalModel, load_model
from .oracle import ClauseQuery, oracle_quantify
from .render import render_box
from .serial import serialize
from .split import build_split

EX_OK = 0
EX_ERROR = 1
EX_MISMATCH = 2
EX_USAGE = 64

REPORT_STEM = "tempdrt-report"
SUITE_STEM = "tempdrt-suite"


class _ArgumentParser(argparse.ArgumentParser):
    """argparse with the documented usage exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    strategy: str = "both"
    model_path: str | None = None
    delta: int = 1
    often_threshold: Fraction = Fraction(1, 2)
    output: str = "verdict"
    explain: bool = False
    expect: dict[str, bool] = field(default_factory=dict)

    def strategies(self) -> tuple[str, ...]:
        return ("split", "baseline") if self.strategy == "both" else (self.strategy,)

    def eval_config(self) -> EvalConfig:
        return EvalConfig(delta=self.delta)


@dataclass
class StrategyOutcome:
    strategy: str
    drs: Drs | None = None
    error: str | None = None
    verdict: Verdict | None = None

    @property
    def cell(self) -> str:
        if self.error is not None:
            return "ERROR"
        if self.verdict is None:
            return "-"
        return "TRUE" if self.verdict.truth else "FALSE"


def _fraction(text: str) -> Fraction:
    try:
        f = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from None
    if not 0 <= f <= 1:
        raise argparse.ArgumentTypeError("threshold must lie between 0 and 1")
    return f


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _expect(text: str) -> dict[str, bool]:
    out: dict[str, bool] = {}
    for part in text.split(","):
        key, sep, value = part.strip().partition("=")
        if not sep or key not in ("split", "baseline", "oracle"):
            raise argparse.ArgumentTypeError(
                f"bad expectation {part.strip()!r}; use e.g. split=true,baseline=false"
            )
        low = value.strip().lower()
        if low not in ("true", "false"):
            raise argparse.ArgumentTypeError(f"bad verdict {value!r} for {key!r}")
        out[key] = low == "true"
    return out


def build_arg_parser() -> _ArgumentParser:
    parser = _ArgumentParser(
        prog="tempdrt",
        description=(
            "Construct discourse representations for a small temporal fragment"
            " of English and check them against finite interval models."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--text", help="discourse to analyze")
        src.add_argument("--file", help="file holding the discourse")

    def add_config(p, with_strategy=True):
        if with_strategy:
            p.add_argument(
                "--strategy",
                choices=("baseline", "split", "both"),
                default="both",
                help="reference-time analysis, split analysis, or both (default)",
            )
        p.add_argument(
            "--delta",
            type=_positive_int,
            default=1,
            help="closeness window for when-clauses, in time points (default 1)",
        )
        p.add_argument(
            "--often-threshold",
            type=_fraction,
            default=Fraction(1, 2),
            metavar="N/D",
            help="proportion often must exceed (default 1/2)",
        )

    p_construct = sub.add_parser("construct", help="build and print DRSs")
    add_input(p_construct)
    add_config(p_construct)
    p_construct.add_argument(
        "--output",
        choices=("box", "term"),
        default="box",
        help="monospace box diagram or machine-readable term (default box)",
    )

    p_eval = sub.add_parser("eval", help="evaluate a discourse against a model")
    add_input(p_eval)
    add_config(p_eval)
    p_eval.add_argument("--model", required=True, help="model file to check against")
    p_eval.add_argument(
        "--output",
        choices=("verdict", "report"),
        default="verdict",
        help="verdict line, or verdict plus TSV table and timeline image (default verdict)",
    )
    p_eval.add_argument(
        "--explain",
        action="store_true",
        help="print the verifying embedding or the failure notes",
    )
    p_eval.add_argument(
        "--expect",
        type=_expect,
        metavar="KEY=BOOL,...",
        help="exit 2 unless verdicts match, e.g. split=true,baseline=false",
    )

    p_compare = sub.add_parser(
        "compare", help="both strategies side by side, with the closed-form verdict"
    )
    add_input(p_compare)
    add_config(p_compare, with_strategy=False)
    p_compare.add_argument("--model", required=True, help="model file to check against")
    p_compare.add_argument(
        "--output",
        choices=("verdict", "report"),
        default="verdict",
        help="printed report only, or also TSV table and timeline image",
    )
    p_compare.add_argument(
        "--expect",
        type=_expect,
        metavar="KEY=BOOL,...",
        help="exit 2 unless verdicts match, e.g. split=true,baseline=false,oracle=true",
    )

    p_suite = sub.add_parser("suite", help="run the built-in demonstrations")
    add_config(p_suite, with_strategy=False)
    p_suite.add_argument("--filter", help="run only items whose name contains this text")
    p_suite.add_argument(
        "--output",
        choices=("verdict", "report"),
        default="verdict",
        help="printed lines only, or also a TSV table of the items",
    )
    return parser


# ---------------------------------------------------------------------------
# shared helpers


def _read_discourse(args) -> str:
    if args.text is not None:
        return args.text
    try:
        return Path(args.file).read_text("utf-8")
    except OSError as err:
        raise TempdrtError(f"cannot read {args.file}: {err}") from None


def _config_from(args) -> RunConfig:
    return RunConfig(
        strategy=getattr(args, "strategy", "both"),
        model_path=getattr(args, "model", None),
        delta=args.delta,
        often_threshold=args.often_threshold,
        output=args.output,
        explain=getattr(args, "explain", False),
        expect=getattr(args, "expect", None) or {},
    )


def _resolved(text: str) -> ParsedDiscourse:
    return resolve_pronouns(parse_text(text), lenient=True)


def _construct(d: ParsedDiscourse, strategy: str, cfg: RunConfig) -> StrategyOutcome:
    out = StrategyOutcome(strategy)
    try:
        if strategy == "baseline":
            out.drs = build_baseline(d, cfg.often_threshold)
        else:
            out.drs = build_split(d, cfg.often_threshold)
    except ConstructionError as err:
        out.error = str(err)
    return out


def _value_text(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, ModelEventuality):
        args = ", ".join(value.args)
        return f"{value.id} {value.predicate}({args}) {value.trace}"
    if isinstance(value, DerivedState):
        return f"{value.label} state {value.trace}"
    return str(value)


def _witness_lines(verdict: Verdict) -> list[str]:
    if verdict.witness is None:
        return ["no verifying embedding"] + [f"note: {n}" for n in verdict.notes]
    lines = []
    for marker in sorted(verdict.witness, key=lambda m: m.id):
        lines.append(f"{marker.hint or marker.sort.value} = {_value_text(verdict.witness[marker])}")
    lines.extend(f"note: {n}" for n in verdict.notes)
    return lines


def _witness_ids(verdict: Verdict | None) -> tuple[str, ...]:
    if verdict is None or verdict.witness is None:
        return ()
    return tuple(
        v.id for v in verdict.witness.values() if isinstance(v, ModelEventuality)
    )


def _check_expect(cfg: RunConfig, actual: dict[str, str]) -> tuple[int, list[str]]:
    """Compare TRUE/FALSE cells against --expect; unknown keys are a
    usage error, mismatches exit 2.
    """
    problems = []
    for key, want in cfg.expect.items():
        if key not in actual:
            return EX_USAGE, [f"--expect names {key!r}, which this run did not produce"]
        got = actual[key]
        if got != ("TRUE" if want else "FALSE"):
            problems.append(f"expected {key}={'true' if want else 'false'}, got {got}")
    return (EX_MISMATCH if problems else EX_OK), problems


def _write_report_files(stem: str, rows, model=None, highlight=(), title="") -> list[str]:
    from .viz import draw_timeline, write_tsv

    written = []
    tsv = write_tsv(f"{stem}.tsv", ("subject", "verdict", "detail"), rows)
    written.append(str(tsv))
    if model is not None:
        png = draw_timeline(model, f"{stem}.png", title=title, highlight=highlight)
        written.append(str(png))
    return written


# ---------------------------------------------------------------------------
# commands


def cmd_construct(args) -> int:
    cfg = _config_from(args)
    d = _resolved(_read_discourse(args))
    outcomes = [_construct(d, s, cfg) for s in cfg.strategies()]
    many = len(outcomes) > 1
    chunks = []
    for out in outcomes:
        head = f"; strategy: {out.strategy}" if cfg.output == "term" else f"== {out.strategy} =="
        body: str
        if out.error is not None:
            body = (
                f"; construction failed: {out.error}"
                if cfg.output == "term"
                else f"construction failed: {out.error}"
            )
        elif cfg.output == "term":
            body = serialize(out.drs)
        else:
            body = render_box(out.drs)
        chunks.append(f"{head}\n{body}" if many else body)
    print("\n\n".join(chunks))
    if all(out.error is not None for out in outcomes):
        return EX_ERROR
    return EX_OK


def _evaluate_outcomes(text: str, cfg: RunConfig) -> tuple[list[StrategyOutcome], TemporalModel]:
    model = load_model(cfg.model_path)
    d = _resolved(text)
    outcomes = []
    for strategy in cfg.strategies():
        out = _construct(d, strategy, cfg)
        if out.drs is not None:
            out.verdict = evaluate(out.drs, model, cfg.eval_config())
        outcomes.append(out)
    return outcomes, model


def cmd_eval(args) -> int:
    cfg = _config_from(args)
    text = _read_discourse(args)
    outcomes, model = _evaluate_outcomes(text, cfg)
    parts = []
    for out in outcomes:
        parts.append(
            f"{out.strategy}: {out.cell}"
            + (f" ({out.error})" if out.error is not None else "")
        )
    print(", ".join(parts))
    if cfg.explain:
        for out in outcomes:
            if out.verdict is None:
                continue
            print(f"\n== {out.strategy} ==")
            for line in _witness_lines(out.verdict):
                print(f"  {line}")
    if cfg.output == "report":
        rows = [
            (out.strategy, out.cell, out.error or "; ".join(out.verdict.notes))
            for out in outcomes
        ]
        best = next((o.verdict for o in outcomes if o.verdict and o.verdict.truth), None)
        for path in _write_report_files(
            REPORT_STEM, rows, model, _witness_ids(best), title=text.strip()
        ):
            print(f"wrote {path}")
    if all(out.error is not None for out in outcomes):
        print("error: no strategy produced a verdict", file=sys.stderr)
        return EX_ERROR
    code, problems = _check_expect(cfg, {o.strategy: o.cell for o in outcomes})
    for p in problems:
        print(f"expect mismatch: {p}" if code == EX_MISMATCH else f"error: {p}", file=sys.stderr)
    return code


# ---------------------------------------------------------------------------
# compare


def _oracle_inputs(d: ParsedDiscourse, cfg: RunConfig):
    """The closed-form check covers a single quantified sentence with
    one connective, one main clause, and resolved subjects.  Returns
    (inputs tuple, None) in scope and (None, reason) outside it.
    """
    if len(d.sentences) != 1:
        return None, "needs a single sentence"
    s = d.sentences[0]
    if s.connective is None:
        return None, "needs a temporal connective"
    if s.trailing_connective is not None:
        return None, "nested subordination is outside its scope"
    if len(s.main) != 1:
        return None, "coordinated main clauses are outside its scope"
    if s.q_adverb is None and s.connective != "whenever":
        return None, "the sentence is not quantified"
    sub, main = s.subordinate, s.main[0]
    for clause in (sub, main):
        if clause.subject is not None and not isinstance(clause.subject, str):
            return None, "a subject did not resolve to a name"
    if sub.tense in PERFECT_TENSES:
        return None, "a perfect subordinate clause is outside its scope"
    quantifier = (
        Often(cfg.often_threshold) if s.q_adverb == "often" else Every()
    )

    def query(clause) -> ClauseQuery:
        args = (clause.subject.lower(),) if clause.subject is not None else ()
        return ClauseQuery(clause.verb, args)

    return (
        quantifier,
        query(sub),
        query(main),
        s.connective,
        main.tense in PERFECT_TENSES,
    ), None


@dataclass
class CompareReport:
    text: str
    rows: list[tuple[str, str, str]]
    body: str
    highlight: tuple[str, ...]
    cells: dict[str, str]

    def __str__(self) -> str:
        return self.body


def compare_strategies(text: str, model: TemporalModel, cfg: RunConfig) -> CompareReport:
    """Build and evaluate the discourse under both strategies, run the
    closed-form check when the sentence fits its scope, and lay it all
    out: both renderings, both verdicts, the oracle verdict, and the
    verifying embedding or failure notes for each strategy.
    """
    d = _resolved(text)
    lines = [f"text: {text.strip()}"]
    lines.append(
        f"model: timeline 0..{model.timeline_end}, now {model.now},"
        f" {len(model.eventualities)} eventualities"
    )
    rows = []
    cells: dict[str, str] = {}
    highlight: tuple[str, ...] = ()
    for strategy in ("split", "baseline"):
        out = _construct(d, strategy, cfg)
        if out.drs is not None:
            out.verdict = evaluate(out.drs, model, cfg.eval_config())
        lines.append("")
        lines.append(f"== {strategy} ==")
        if out.error is not None:
            lines.append(f"construction failed: {out.error}")
            rows.append((strategy, "ERROR", out.error))
        else:
            lines.append(render_box(out.drs))
            lines.append(f"verdict: {out.cell}")
            for w in _witness_lines(out.verdict):
                lines.append(f"  {w}")
            rows.append((strategy, out.cell, "; ".join(out.verdict.notes)))
            if out.verdict.truth and not highlight:
                highlight = _witness_ids(out.verdict)
        cells[strategy] = out.cell
    lines.append("")
    inputs, reason = _oracle_inputs(d, cfg)
    if inputs is None:
        lines.append(f"oracle: not applicable ({reason})")
        rows.append(("oracle", "-", reason))
    else:
        quantifier, sub_q, main_q, connective, main_perfect = inputs
        truth = oracle_quantify(
            quantifier, sub_q, main_q, connective, model, cfg.delta, main_perfect
        )
        cell = "TRUE" if truth else "FALSE"
        cells["oracle"] = cell
        detail = (
            f"{quantifier} {connective}-case check of {main_q.predicate}"
            f" against {sub_q.predicate}"
        )
        lines.append(f"oracle: {cell} ({detail})")
        rows.append(("oracle", cell, detail))
        agree = [s for s in ("split", "baseline") if cells.get(s) == cell]
        differ = [
            s for s in ("split", "baseline") if cells.get(s) in ("TRUE", "FALSE") and cells[s] != cell
        ]
        if agree:
            lines.append(f"agrees with the oracle: {', '.join(agree)}")
        if differ:
            lines.append(f"contradicts the oracle: {', '.join(differ)}")
    return CompareReport(text, rows, "\n".join(lines), highlight, cells)


def cmd_compare(args) -> int:
    cfg = _config_from(args)
    text = _read_discourse(args)
    model = load_model(cfg.model_path)
    report = compare_strategies(text, model, cfg)
    print(report)
    if cfg.output == "report":
        for path in _write_report_files(
            REPORT_STEM, report.rows, model, report.highlight, title=text.strip()
        ):
            print(f"wrote {path}")
    if all(v == "ERROR" for k, v in report.cells.items() if k != "oracle"):
        print("error: no strategy produced a verdict", file=sys.stderr)
        return EX_ERROR
    code, problems = _check_expect(cfg, report.cells)
    for p in problems:
        print(f"expect mismatch: {p}" if code == EX_MISMATCH else f"error: {p}", file=sys.stderr)
    return code


def cmd_suite(args) -> int:
    from .suite import run_suite

    results = run_suite(
        filter_text=args.filter,
        delta=args.delta,
        often_threshold=args.often_threshold,
    )
    if not results:
        print(f"error: no suite item matches {args.filter!r}", file=sys.stderr)
        return EX_ERROR
    for r in results:
        mark = "PASS" if r.ok else "FAIL"
        print(f"{mark}  {r.name:<26} {r.seconds:6.2f}s  {r.detail}")
    passed = sum(r.ok for r in results)
    print(f"{passed} of {len(results)} items passed")
    if args.output == "report":
        from .viz import write_tsv

        rows = [
            (r.name, "PASS" if r.ok else "FAIL", f"{r.seconds:.2f}", r.detail)
            for r in results
        ]
        path = write_tsv(f"{SUITE_STEM}.tsv", ("item", "status", "seconds", "detail"), rows)
        print(f"wrote {path}")
    return EX_OK if passed == len(results) else EX_ERROR


# ---------------------------------------------------------------------------
# entry points


def run(argv: list[str]) -> int:
    """Parse flags and dispatch; returns the exit code instead of
    raising, so it can serve as a library entry point.
    """
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return int(stop.code or 0)
    handler = {
        "construct": cmd_construct,
        "eval": cmd_eval,
        "compare": cmd_compare,
        "suite": cmd_suite,
    }[args.command]
    try:
        return handler(args)
    except TempdrtError as err:
        print(f"error: {err}", file=sys.stderr)
        return EX_ERROR


def main(argv: list[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
