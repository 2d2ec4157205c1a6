"""Monospace box rendering for DRSs.

The layout is deterministic: marker names come from display hints
(uniquified on collision), conditions keep their stored order, and
nested boxes are joined side by side.
"""

from __future__ import annotations

from .drs import (
    ComplexState,
    Condition,
    Drs,
    Duplex,
    Every,
    EventualityDescription,
    Predication,
    REL_SYMBOL,
    Rel,
    RptAssign,
    Temporal,
)
from .serial import _Names


def render_box(d: Drs) -> str:
    names = _Names()
    _claim(d, names)
    return "\n".join(_drs_lines(d, names))


def _claim(d: Drs, names: _Names) -> None:
    for m in d.universe:
        names.name(m)
    for b in d.sub_boxes():
        _claim(b, names)


def _frame(rows: list[str], width: int) -> list[str]:
    bar = "+" + "-" * (width + 2) + "+"
    out = [bar]
    out.extend("| " + row.ljust(width) + " |" for row in rows)
    out.append(bar)
    return out


def _drs_lines(d: Drs, names: _Names) -> list[str]:
    head = " ".join(names.name(m) for m in d.universe)
    body: list[str] = []
    for c in d.conditions:
        body.extend(_cond_lines(c, names))
    if not head and not body:
        width = 2
        bar = "+" + "-" * width + "+"
        return [bar, bar]
    rows: list[str] = []
    width = max(len(r) for r in ([head] if head else []) + body) if (head or body) else 0
    sep = "-" * width
    if head:
        rows.append(head)
        if body:
            rows.append(sep)
    rows.extend(body)
    framed = ["+" + "-" * (width + 2) + "+"]
    for r in rows:
        if r == sep and body:
            framed.append("|" + "-" * (width + 2) + "|")
        else:
            framed.append("| " + r.ljust(width) + " |")
    framed.append("+" + "-" * (width + 2) + "+")
    return framed


def _pad_block(block: list[str], height: int) -> list[str]:
    width = max((len(r) for r in block), default=0)
    rows = [r.ljust(width) for r in block]
    rows.extend(" " * width for _ in range(height - len(rows)))
    return rows


def _hjoin(blocks: list[list[str]]) -> list[str]:
    height = max(len(b) for b in blocks)
    padded = [_pad_block(b, height) for b in blocks]
    return [("".join(parts)).rstrip() for parts in zip(*padded)]


def _cond_lines(c: Condition, names: _Names) -> list[str]:
    n = names.name
    if isinstance(c, Predication):
        return [f"{c.pred}({', '.join(n(a) for a in c.args)})"]
    if isinstance(c, EventualityDescription):
        body = f"{c.body.pred}({', '.join(n(a) for a in c.body.args)})"
        return [f"{n(c.ev)}: [{body}]"]
    if isinstance(c, Temporal):
        if c.rel is Rel.EQUALS_EVENT_TIME:
            return [f"{n(c.lhs)} = loc({n(c.rhs)})"]
        return [f"{n(c.lhs)} {REL_SYMBOL[c.rel]} {n(c.rhs)}"]
    if isinstance(c, RptAssign):
        return [f"Rpt := {n(c.target)}"]
    if isinstance(c, ComplexState):
        label = [f"{n(c.state)}: "]
        return _hjoin([label, _drs_lines(c.body, names)])
    if isinstance(c, Duplex):
        if isinstance(c.quantifier, Every):
            q = "every"
        else:
            q = f"often({c.quantifier.threshold})"
        ant = _drs_lines(c.antecedent, names)
        cons = _drs_lines(c.consequent, names)
        label_rows = [""] * len(ant)
        mid = min(1, len(ant) - 1)
        label_rows[mid] = f" ={q}=> "
        label = [label_rows[i] if i < len(label_rows) else "" for i in range(len(ant))]
        width = max(len(r) for r in label)
        label = [r.ljust(width) for r in label]
        return _hjoin([ant, label, cons])
    raise TypeError(c)
