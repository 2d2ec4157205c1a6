"""Controlled English fragment: tokenizer, lexicon, clause parser, and
pronoun resolution.

The fragment covers period-delimited sentences made of lexicalized verb
phrases, proper names, the pronouns he/she/it, the temporal connectives
when/whenever/before/after, and the quantificational adverbs always and
often.  Multi-word predicates are atomic lexicon entries, so "lights up
a cigarette" parses as one verb with one subject argument.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace
from importlib import resources

from .errors import LexicalError, ParseError, ResolutionError, UnknownWordError

CONNECTIVES = ("when", "whenever", "before", "after")
Q_ADVERBS = ("always", "often")
DECORATIONS = ("already",)
PRONOUNS = {"he": "m", "she": "f", "it": "n"}
_AUX = {"had": "past-perfect", "has": "present-perfect"}


class Tense(enum.Enum):
    SIMPLE_PAST = "simple-past"
    SIMPLE_PRESENT = "simple-present"
    PAST_PERFECT = "past-perfect"
    PRESENT_PERFECT = "present-perfect"


class Aspect(enum.Enum):
    EVENT = "event"
    STATE = "state"


PERFECT_TENSES = (Tense.PAST_PERFECT, Tense.PRESENT_PERFECT)


# ---------------------------------------------------------------------------
# lexicon


@dataclass(frozen=True)
class Entry:
    lemma: str
    aspect: str  # event | state | name
    arity: int
    gender: str | None = None


class Lexicon:
    def __init__(
        self,
        entries: list[Entry],
        surfaces: dict[tuple[str, ...], tuple[tuple[str, str], ...]],
    ):
        self.entries = {e.lemma: e for e in entries}
        # lowercased token tuple -> ((lemma, tense tag), ...); one surface
        # may realize several tags, e.g. a past form doubling as participle
        self.surfaces = surfaces
        self.display = {k: " ".join(k) for k in surfaces}
        self.max_surface = max((len(k) for k in surfaces), default=1)
        self._words = {w for k in surfaces for w in k}

    def knows_word(self, word: str) -> bool:
        return word.lower() in self._words

    def entry(self, lemma: str) -> Entry:
        got = self.entries.get(lemma)
        if got is None:
            raise UnknownWordError(lemma)
        return got

    def names(self) -> dict[str, Entry]:
        return {k: v for k, v in self.entries.items() if v.aspect == "name"}


def load_lexicon(text: str) -> Lexicon:
    entries: list[Entry] = []
    surfaces: dict[tuple[str, ...], tuple[tuple[str, str], ...]] = {}
    displays: dict[tuple[str, ...], str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) not in (4, 5):
            raise ParseError(f"lexicon line {lineno}: expected 4 or 5 fields")
        lemma, forms, aspect, arity_txt = parts[:4]
        gender = parts[4] if len(parts) == 5 and parts[4] else None
        if aspect not in ("event", "state", "name"):
            raise ParseError(f"lexicon line {lineno}: bad aspect {aspect!r}")
        try:
            arity = int(arity_txt)
        except ValueError:
            raise ParseError(f"lexicon line {lineno}: bad arity {arity_txt!r}") from None
        entries.append(Entry(lemma, aspect, arity, gender))
        for item in forms.split(","):
            item = item.strip()
            if not item:
                continue
            if aspect == "name":
                surface, tag = item, "name"
            else:
                if "@" not in item:
                    raise ParseError(
                        f"lexicon line {lineno}: verb surface {item!r} lacks a tense tag"
                    )
                surface, _, tag = item.rpartition("@")
                if tag not in ("past", "pres", "part", "base"):
                    raise ParseError(f"lexicon line {lineno}: bad tense tag {tag!r}")
            key = tuple(surface.lower().split())
            surfaces[key] = surfaces.get(key, ()) + ((lemma, tag),)
            displays[key] = " ".join(surface.split())
    lx = Lexicon(entries, surfaces)
    lx.display.update(displays)
    return lx


_default: Lexicon | None = None


def default_lexicon() -> Lexicon:
    global _default
    if _default is None:
        text = resources.files("tempdrt").joinpath("lexicon.txt").read_text("utf-8")
        _default = load_lexicon(text)
    return _default


# ---------------------------------------------------------------------------
# tokens


@dataclass(frozen=True)
class Token:
    text: str
    offset: int

    @property
    def is_word(self) -> bool:
        return self.text not in (",", ".")


_TOKEN_RE = re.compile(r"[A-Za-z]+|[,.]")


def tokenize(text: str) -> list[Token]:
    """Split text into word, comma, and period tokens.  Any other
    non-whitespace character raises a lexical error naming its offset.
    """
    out = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise LexicalError(f"unrecognized character {ch!r}", pos)
        out.append(Token(m.group(), pos))
        pos = m.end()
    return out


# ---------------------------------------------------------------------------
# parsed discourse types


@dataclass(frozen=True)
class Pronoun:
    form: str

    @property
    def gender(self) -> str:
        return PRONOUNS[self.form]


@dataclass(frozen=True)
class Anon:
    """An unresolved referent kept by lenient pronoun resolution."""

    form: str
    gender: str


@dataclass(frozen=True)
class Clause:
    subject: str | Pronoun | Anon | None
    verb: str
    tense: Tense
    aspect: Aspect
    objects: tuple[str, ...] = ()
    decorations: tuple[str, ...] = ()


@dataclass(frozen=True)
class Sentence:
    main: tuple[Clause, ...]
    connective: str | None = None
    subordinate: Clause | None = None
    q_adverb: str | None = None
    trailing_connective: str | None = None
    trailing_subordinate: Clause | None = None

    def __post_init__(self):
        if (self.connective is None) != (self.subordinate is None):
            raise ParseError("connective requires a subordinate clause")
        if (self.trailing_connective is None) != (self.trailing_subordinate is None):
            raise ParseError("trailing connective requires a subordinate clause")


@dataclass(frozen=True)
class ParsedDiscourse:
    sentences: tuple[Sentence, ...]


# ---------------------------------------------------------------------------
# parsing


def classify_aspect(lemma: str, lexicon: Lexicon | None = None) -> Aspect:
    lx = lexicon or default_lexicon()
    entry = lx.entry(lemma)
    if entry.aspect == "name":
        raise ParseError(f"{lemma!r} names an individual, not an eventuality")
    return Aspect(entry.aspect)


def _split_sentences(tokens: list[Token]) -> list[list[Token]]:
    spans: list[list[Token]] = []
    cur: list[Token] = []
    for t in tokens:
        if t.text == ".":
            if not cur:
                raise ParseError("empty sentence")
            spans.append(cur)
            cur = []
        else:
            cur.append(t)
    if cur:
        raise ParseError("sentence is not terminated by a period")
    return spans


def _match_surface(lx: Lexicon, words: list[Token], start: int):
    """Longest lexicon surface starting at position start.  Returns the
    tuple of (lemma, tag) candidates for that surface and the end
    position, or ((), start) when nothing matches.
    """
    limit = min(len(words), start + lx.max_surface)
    for end in range(limit, start, -1):
        key = tuple(w.text.lower() for w in words[start:end])
        hits = lx.surfaces.get(key)
        if hits:
            return hits, end
    return (), start


def _parse_clause(
    lx: Lexicon, words: list[Token], inherited: "str | Pronoun | Anon | None"
) -> tuple[Clause, list[str]]:
    if not words:
        raise ParseError("empty clause")
    pos = 0
    q_here: list[str] = []

    def strip_adverbs():
        nonlocal pos
        while pos < len(words) and words[pos].text.lower() in Q_ADVERBS:
            q_here.append(words[pos].text.lower())
            pos += 1

    strip_adverbs()
    subject: str | Pronoun | Anon | None
    low = words[pos].text.lower() if pos < len(words) else ""
    if low in PRONOUNS:
        subject = Pronoun(low)
        pos += 1
    else:
        hits, end = _match_surface(lx, words, pos)
        names = [lemma for lemma, tag in hits if tag == "name"]
        if names:
            subject = names[0]
            pos = end
        elif inherited is not None:
            subject = inherited
        else:
            word = words[pos].text if pos < len(words) else ""
            if word and not lx.knows_word(word):
                raise UnknownWordError(word)
            raise ParseError(f"cannot find a subject in {' '.join(w.text for w in words)!r}")
    strip_adverbs()

    tense: Tense | None = None
    decorations: list[str] = []
    low = words[pos].text.lower() if pos < len(words) else ""
    if low in _AUX:
        tense = Tense(_AUX[low])
        pos += 1
        while pos < len(words) and words[pos].text.lower() in DECORATIONS:
            decorations.append(words[pos].text.lower())
            pos += 1
        while pos < len(words) and words[pos].text.lower() in Q_ADVERBS:
            q_here.append(words[pos].text.lower())
            pos += 1

    hits, end = _match_surface(lx, words, pos)
    if not hits:
        word = words[pos].text if pos < len(words) else ""
        if word and not lx.knows_word(word):
            raise UnknownWordError(word)
        raise ParseError(f"no verb found in {' '.join(w.text for w in words)!r}")
    pos = end
    if pos != len(words):
        extra = words[pos].text
        if not lx.knows_word(extra) and extra.lower() not in PRONOUNS:
            raise UnknownWordError(extra)
        raise ParseError(f"unexpected material after verb: {extra!r}")

    wanted = ("part",) if tense is not None else ("past", "pres", "base")
    usable = [(lemma, tag) for lemma, tag in hits if tag in wanted]
    if not usable:
        lemma = hits[0][0]
        if tense is not None:
            raise ParseError(f"auxiliary requires a participle, found {lemma!r}")
        if all(tag == "part" for _, tag in hits):
            raise ParseError(f"participle {lemma!r} needs an auxiliary")
        raise ParseError(f"cannot determine tense for {lemma!r}")
    lemma, tag = usable[0]
    if tense is None:
        tense = Tense.SIMPLE_PAST if tag == "past" else Tense.SIMPLE_PRESENT

    entry = lx.entry(lemma)
    if entry.arity == 0:
        subject = None
    aspect = Aspect(entry.aspect)
    clause = Clause(
        subject=subject,
        verb=lemma,
        tense=tense,
        aspect=aspect,
        decorations=tuple(decorations),
    )
    return clause, q_here


def _split_coordination(words: list[Token]) -> list[list[Token]]:
    spans: list[list[Token]] = []
    cur: list[Token] = []
    i = 0
    while i < len(words):
        t = words[i]
        if t.text == ",":
            if cur:
                spans.append(cur)
                cur = []
            if i + 1 < len(words) and words[i + 1].text.lower() == "and":
                i += 1
        elif t.text.lower() == "and" and cur:
            spans.append(cur)
            cur = []
        else:
            cur.append(t)
        i += 1
    if cur:
        spans.append(cur)
    return spans


def _find_trailing_connective(words: list[Token]) -> int | None:
    for i, t in enumerate(words):
        if i > 0 and t.text.lower() in CONNECTIVES:
            return i
    return None


def _parse_sentence(lx: Lexicon, span: list[Token]) -> Sentence:
    q_adverb: str | None = None
    pos = 0

    def note_adverb(name: str):
        nonlocal q_adverb
        if q_adverb is not None and q_adverb != name:
            raise ParseError("conflicting quantificational adverbs")
        q_adverb = name

    if span and span[pos].text.lower() in Q_ADVERBS:
        note_adverb(span[pos].text.lower())
        pos += 1
        if pos < len(span) and span[pos].text == ",":
            pos += 1

    connective: str | None = None
    subordinate: Clause | None = None
    if pos < len(span) and span[pos].text.lower() in CONNECTIVES:
        connective = span[pos].text.lower()
        pos += 1
        sub_words: list[Token] = []
        while pos < len(span) and span[pos].text != ",":
            sub_words.append(span[pos])
            pos += 1
        if pos >= len(span):
            raise ParseError(
                f"{connective!r} clause must be followed by a comma and a main clause"
            )
        pos += 1  # the comma
        subordinate, sub_advs = _parse_clause(lx, sub_words, None)
        for name in sub_advs:
            note_adverb(name)

    rest = span[pos:]
    if not rest:
        raise ParseError("missing main clause")

    trailing_connective: str | None = None
    trailing_sub: Clause | None = None
    cut = _find_trailing_connective(rest)
    if cut is not None:
        trailing_connective = rest[cut].text.lower()
        trailing_words = rest[cut + 1 :]
        rest = rest[:cut]
        if rest and rest[-1].text == ",":
            rest = rest[:-1]
        trailing_sub, trailing_advs = _parse_clause(lx, trailing_words, None)
        for name in trailing_advs:
            note_adverb(name)
        if not rest:
            raise ParseError("missing main clause before trailing connective")

    mains: list[Clause] = []
    inherited: str | Pronoun | Anon | None = None
    for part in _split_coordination(rest):
        clause, advs = _parse_clause(lx, part, inherited)
        mains.append(clause)
        for name in advs:
            note_adverb(name)
        if clause.subject is not None:
            inherited = clause.subject

    if q_adverb is not None and "whenever" in (connective, trailing_connective):
        raise ParseError("whenever does not combine with a quantificational adverb")

    return Sentence(
        main=tuple(mains),
        connective=connective,
        subordinate=subordinate,
        q_adverb=q_adverb,
        trailing_connective=trailing_connective,
        trailing_subordinate=trailing_sub,
    )


def parse_discourse(tokens: list[Token], lexicon: Lexicon | None = None) -> ParsedDiscourse:
    lx = lexicon or default_lexicon()
    sentences = tuple(_parse_sentence(lx, span) for span in _split_sentences(tokens))
    return ParsedDiscourse(sentences)


def parse_text(text: str, lexicon: Lexicon | None = None) -> ParsedDiscourse:
    return parse_discourse(tokenize(text), lexicon)


# ---------------------------------------------------------------------------
# pronoun resolution


def resolve_pronouns(
    d: ParsedDiscourse, lexicon: Lexicon | None = None, *, lenient: bool = False
) -> ParsedDiscourse:
    """Replace pronoun subjects by the most recently mentioned proper
    name of the same gender.  Resolution never looks forward.  With
    lenient=True an antecedent-less pronoun becomes a shared anonymous
    referent instead of an error, one per pronoun form.
    """
    lx = lexicon or default_lexicon()
    recent: list[tuple[str, str]] = []  # (name lemma, gender), most recent last
    anons: dict[str, Anon] = {}

    def note(name: str):
        entry = lx.entry(name)
        recent.append((name, entry.gender or "n"))

    def resolve(c: Clause) -> Clause:
        subj = c.subject
        if isinstance(subj, Pronoun):
            for name, gender in reversed(recent):
                if gender == subj.gender:
                    return replace(c, subject=name)
            if lenient:
                anon = anons.setdefault(subj.form, Anon(subj.form, subj.gender))
                return replace(c, subject=anon)
            raise ResolutionError(f"pronoun {subj.form!r} has no antecedent")
        if isinstance(subj, str):
            note(subj)
        return c

    out_sentences = []
    for s in d.sentences:
        sub = resolve(s.subordinate) if s.subordinate is not None else None
        mains = []
        for c in s.main:
            rc = resolve(c)
            mains.append(rc)
        trailing = (
            resolve(s.trailing_subordinate) if s.trailing_subordinate is not None else None
        )
        out_sentences.append(
            replace(
                s,
                subordinate=sub,
                main=tuple(mains),
                trailing_subordinate=trailing,
            )
        )
    return ParsedDiscourse(tuple(out_sentences))


# ---------------------------------------------------------------------------
# canonical rendering


def _surface_for(lx: Lexicon, lemma: str, tag: str) -> str:
    for key, hits in lx.surfaces.items():
        if (lemma, tag) in hits:
            return lx.display[key]
    raise ParseError(f"no {tag!r} surface for {lemma!r}")


def _render_subject(subj, lx: Lexicon) -> str:
    if subj is None:
        return "it"
    if isinstance(subj, Pronoun):
        return subj.form
    if isinstance(subj, Anon):
        return subj.form
    return _surface_for(lx, subj, "name")


def _render_clause(c: Clause, lx: Lexicon, q_adverb: str | None) -> str:
    parts = [_render_subject(c.subject, lx)]
    if q_adverb:
        parts.append(q_adverb)
    if c.tense is Tense.PAST_PERFECT:
        parts.append("had")
    elif c.tense is Tense.PRESENT_PERFECT:
        parts.append("has")
    parts.extend(c.decorations)
    if c.tense in PERFECT_TENSES:
        parts.append(_surface_for(lx, c.verb, "part"))
    elif c.tense is Tense.SIMPLE_PAST:
        parts.append(_surface_for(lx, c.verb, "past"))
    else:
        parts.append(_surface_for(lx, c.verb, "pres"))
    return " ".join(parts)


def render_discourse(d: ParsedDiscourse, lexicon: Lexicon | None = None) -> str:
    """Canonical text for a parsed discourse.  Adverbs render before
    the first main verb, coordination renders with repeated "and".
    """
    lx = lexicon or default_lexicon()
    out = []
    for s in d.sentences:
        bits = []
        if s.connective:
            bits.append(s.connective.capitalize())
            bits.append(_render_clause(s.subordinate, lx, None) + ",")
        mains = [
            _render_clause(c, lx, s.q_adverb if i == 0 else None)
            for i, c in enumerate(s.main)
        ]
        bits.append(" and ".join(mains))
        if s.trailing_connective:
            bits.append(s.trailing_connective)
            bits.append(_render_clause(s.trailing_subordinate, lx, None))
        text = " ".join(bits)
        out.append(text[0].upper() + text[1:] + ".")
    return " ".join(out)
