"""Text format for objects and cobordisms, plus a JSON mirror.

Grammar (whitespace-insensitive, ``#`` comments to end of line, all
indices 1-based)::

    doc      := branes? (objectdef | cobdef)*
    branes   := "branes" IDENT ("," IDENT)* ";"
    objectdef:= "object" IDENT "=" "[" (entry ("," entry)*)? "]"
                ("sigma" cycles)? ";"
    entry    := "O" | "I(" IDENT "," IDENT ")"
    cycles   := "id" | ("(" INT+ ")")+
    cobdef   := "cobordism" IDENT ":" IDENT "->" IDENT "{" comp* "}"
    comp     := "component" "{" "genus" INT ";" bline* "}"
    bline    := ("in" INT | "out" INT | "window" IDENT
                | "mixed" "[" mentry ("," mentry)* "]") ";"
    mentry   := ("in"|"out") INT ("rev")? | "arc" IDENT

An omitted ``sigma`` clause means the identity.  Without a ``branes``
declaration the document is in single-brane mode: the brane set is
``{"*"}`` and ``arc`` and ``window`` may appear bare.  A ``rev`` flag
toggles an interval reference away from its side's default traversal
direction (incoming references are reversed by default, outgoing are
not).

Failures raise ``DslSyntaxError`` (tokens, grammar, unresolved or
duplicate names, undeclared branes) or ``DslValidationError`` (parsed
but structurally invalid), both carrying a 1-based line and column.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from occob.classify import canonicalize
from occob.errors import DslSyntaxError, DslValidationError
from occob.objects import STAR, Circle, GeneralObject, Interval, Permutation
from occob.surfaces import (
    IN,
    OUT,
    Arc,
    Cobordism,
    Component,
    InClosed,
    IntervalRef,
    Mixed,
    OutClosed,
    Window,
    default_rev,
    validate,
)

__all__ = [
    "Document",
    "CobordismDef",
    "parse",
    "serialize",
    "parse_cycles",
    "to_json",
    "from_json",
]


@dataclass(frozen=True, slots=True)
class CobordismDef:
    """A named cobordism with the object names it was declared between."""

    source_name: str
    target_name: str
    cobordism: Cobordism


@dataclass(slots=True)
class Document:
    branes: frozenset[str]
    objects: dict[str, GeneralObject] = field(default_factory=dict)
    cobordisms: dict[str, CobordismDef] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# tokens

_PUNCT = {",", ";", ":", "=", "[", "]", "{", "}", "(", ")"}
_KEYWORDS = {
    "branes",
    "object",
    "cobordism",
    "component",
    "genus",
    "sigma",
    "mixed",
    "window",
    "arc",
    "rev",
    "id",
    "in",
    "out",
}


@dataclass(frozen=True, slots=True)
class _Tok:
    kind: str  # WORD INT STAR ARROW punct EOF
    value: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            i += 1
            col += 1
        elif ch == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif ch == "-":
            if i + 1 < n and text[i + 1] == ">":
                toks.append(_Tok("ARROW", "->", line, col))
                i += 2
                col += 2
            else:
                raise DslSyntaxError("stray '-' (expected '->')", line, col)
        elif ch in _PUNCT:
            toks.append(_Tok(ch, ch, line, col))
            i += 1
            col += 1
        elif ch == "*":
            toks.append(_Tok("STAR", STAR, line, col))
            i += 1
            col += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("INT", text[i:j], line, col))
            col += j - i
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("WORD", text[i:j], line, col))
            col += j - i
            i = j
        else:
            raise DslSyntaxError(f"unexpected character {ch!r}", line, col)
    toks.append(_Tok("EOF", "", line, col))
    return toks


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def advance(self) -> _Tok:
        t = self.toks[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def fail(self, message: str, tok: _Tok | None = None):
        t = tok or self.peek()
        raise DslSyntaxError(message, t.line, t.col)

    def expect(self, kind: str, what: str | None = None) -> _Tok:
        t = self.peek()
        if t.kind != kind:
            shown = what or repr(kind)
            got = t.value or "end of input"
            self.fail(f"expected {shown}, got {got!r}", t)
        return self.advance()

    def expect_word(self, word: str) -> _Tok:
        t = self.peek()
        if t.kind != "WORD" or t.value != word:
            self.fail(f"expected {word!r}, got {t.value or 'end of input'!r}", t)
        return self.advance()

    def expect_int(self) -> int:
        return int(self.expect("INT", "an integer").value)

    # names ----------------------------------------------------------------

    def name(self, what: str) -> _Tok:
        t = self.peek()
        if t.kind != "WORD":
            self.fail(f"expected {what}, got {t.value or 'end of input'!r}", t)
        if t.value in _KEYWORDS:
            self.fail(f"keyword {t.value!r} cannot be used as {what}", t)
        return self.advance()

    def brane_name(self) -> _Tok:
        t = self.peek()
        if t.kind == "STAR":
            return self.advance()
        return self.name("a brane label")

    # document -------------------------------------------------------------

    def document(self) -> Document:
        branes, declared = self.branes_decl()
        doc = Document(branes=branes)
        self.single_brane = not declared
        while True:
            t = self.peek()
            if t.kind == "EOF":
                break
            if t.kind == "WORD" and t.value == "object":
                self.objectdef(doc)
            elif t.kind == "WORD" and t.value == "cobordism":
                self.cobdef(doc)
            elif t.kind == "WORD" and t.value == "branes":
                self.fail("a branes declaration must come first", t)
            else:
                self.fail(
                    f"expected 'object' or 'cobordism', got {t.value or 'end of input'!r}",
                    t,
                )
        return doc

    def branes_decl(self) -> tuple[frozenset[str], bool]:
        t = self.peek()
        if not (t.kind == "WORD" and t.value == "branes"):
            return frozenset({STAR}), False
        self.advance()
        labels = [self.brane_name().value]
        while self.peek().kind == ",":
            self.advance()
            labels.append(self.brane_name().value)
        self.expect(";")
        dup = {b for b in labels if labels.count(b) > 1}
        if dup:
            self.fail(f"brane {sorted(dup)[0]!r} declared twice", t)
        return frozenset(labels), True

    def check_brane(self, tok: _Tok, branes: frozenset[str]) -> str:
        if tok.value not in branes:
            raise DslSyntaxError(
                f"brane {tok.value!r} is not declared", tok.line, tok.col
            )
        return tok.value

    # objects --------------------------------------------------------------

    def objectdef(self, doc: Document) -> None:
        self.expect_word("object")
        name_tok = self.name("an object name")
        if name_tok.value in doc.objects:
            self.fail(f"object {name_tok.value!r} already defined", name_tok)
        self.expect("=")
        self.expect("[")
        entries = []
        if self.peek().kind != "]":
            entries.append(self.entry(doc.branes))
            while self.peek().kind == ",":
                self.advance()
                entries.append(self.entry(doc.branes))
        self.expect("]")
        cycles = None
        sigma_tok = self.peek()
        if sigma_tok.kind == "WORD" and sigma_tok.value == "sigma":
            self.advance()
            cycles = self.cycles()
        self.expect(";")
        interval_positions = tuple(
            i for i, e in enumerate(entries, start=1) if isinstance(e, Interval)
        )
        sigma = None
        if cycles is not None:
            try:
                sigma = Permutation.from_cycles(cycles, interval_positions)
            except ValueError as exc:
                raise DslValidationError(
                    f"object {name_tok.value!r}: {exc}",
                    sigma_tok.line,
                    sigma_tok.col,
                ) from exc
        doc.objects[name_tok.value] = GeneralObject(doc.branes, entries, sigma)

    def entry(self, branes: frozenset[str]):
        t = self.peek()
        if t.kind == "WORD" and t.value == "O":
            self.advance()
            return Circle()
        if t.kind == "WORD" and t.value == "I":
            self.advance()
            self.expect("(")
            left = self.check_brane(self.brane_name(), branes)
            self.expect(",")
            right = self.check_brane(self.brane_name(), branes)
            self.expect(")")
            return Interval(left, right)
        self.fail(f"expected 'O' or 'I(..)', got {t.value or 'end of input'!r}", t)

    def cycles(self) -> list[tuple[int, ...]]:
        t = self.peek()
        if t.kind == "WORD" and t.value == "id":
            self.advance()
            return []
        if t.kind != "(":
            self.fail(
                f"expected 'id' or a cycle '(..)', got {t.value or 'end of input'!r}",
                t,
            )
        out = []
        while self.peek().kind == "(":
            self.advance()
            cyc = [self.expect_int()]
            while self.peek().kind == "INT":
                cyc.append(self.expect_int())
            self.expect(")")
            out.append(tuple(cyc))
        return out

    # cobordisms -----------------------------------------------------------

    def resolve_object(self, doc: Document, tok: _Tok) -> GeneralObject:
        if tok.value not in doc.objects:
            raise DslSyntaxError(
                f"unknown object {tok.value!r}", tok.line, tok.col
            )
        return doc.objects[tok.value]

    def cobdef(self, doc: Document) -> None:
        self.expect_word("cobordism")
        name_tok = self.name("a cobordism name")
        if name_tok.value in doc.cobordisms:
            self.fail(f"cobordism {name_tok.value!r} already defined", name_tok)
        self.expect(":")
        src_tok = self.name("a source object name")
        self.expect("ARROW", "'->'")
        tgt_tok = self.name("a target object name")
        source = self.resolve_object(doc, src_tok)
        target = self.resolve_object(doc, tgt_tok)
        self.expect("{")
        comps = []
        while self.peek().kind == "WORD" and self.peek().value == "component":
            comps.append(self.component(doc))
        self.expect("}")
        cob = Cobordism(source, target, comps)
        violations = validate(cob)
        if violations:
            listing = "; ".join(str(v) for v in violations[:4])
            more = "" if len(violations) <= 4 else f" (+{len(violations) - 4} more)"
            raise DslValidationError(
                f"cobordism {name_tok.value!r} is invalid: {listing}{more}",
                name_tok.line,
                name_tok.col,
                violations=violations,
            )
        doc.cobordisms[name_tok.value] = CobordismDef(
            src_tok.value, tgt_tok.value, cob
        )

    def component(self, doc: Document) -> Component:
        self.expect_word("component")
        self.expect("{")
        self.expect_word("genus")
        genus_tok = self.peek()
        genus = self.expect_int()
        if genus < 0:  # pragma: no cover - INT token is unsigned
            self.fail("genus must be nonnegative", genus_tok)
        self.expect(";")
        boundary = []
        while not (self.peek().kind == "}"):
            boundary.append(self.bline(doc))
        self.expect("}")
        return Component(genus, boundary)

    def bline(self, doc: Document):
        t = self.peek()
        if t.kind != "WORD":
            self.fail(
                f"expected a boundary line, got {t.value or 'end of input'!r}", t
            )
        if t.value == "in" or t.value == "out":
            self.advance()
            index = self.expect_int()
            self.expect(";")
            return InClosed(index) if t.value == "in" else OutClosed(index)
        if t.value == "window":
            self.advance()
            brane = self.optional_brane(doc, context="window")
            self.expect(";")
            return Window(brane)
        if t.value == "mixed":
            self.advance()
            self.expect("[")
            entries = [self.mentry(doc)]
            while self.peek().kind == ",":
                self.advance()
                entries.append(self.mentry(doc))
            self.expect("]")
            self.expect(";")
            return Mixed(entries)
        self.fail(
            f"expected 'in', 'out', 'window', or 'mixed', got {t.value!r}", t
        )

    def optional_brane(self, doc: Document, context: str) -> str:
        t = self.peek()
        if t.kind in (";", ",", "]"):
            if self.single_brane:
                return STAR
            self.fail(f"{context} needs a brane label", t)
        return self.check_brane(self.brane_name(), doc.branes)

    def mentry(self, doc: Document):
        t = self.peek()
        if t.kind == "WORD" and t.value in (IN, OUT):
            self.advance()
            index = self.expect_int()
            rev = default_rev(t.value)
            nxt = self.peek()
            if nxt.kind == "WORD" and nxt.value == "rev":
                self.advance()
                rev = not rev
            return IntervalRef(t.value, index, rev)
        if t.kind == "WORD" and t.value == "arc":
            self.advance()
            return Arc(self.optional_brane(doc, context="arc"))
        self.fail(
            f"expected 'in', 'out', or 'arc', got {t.value or 'end of input'!r}", t
        )


def parse(text: str) -> Document:
    """Parse a document; every cobordism in the result passes validation."""
    return _Parser(text).document()


def parse_cycles(text: str) -> list[tuple[int, ...]]:
    """Parse standalone cycle notation, e.g. ``(2 3)(4)`` or ``id``."""
    p = _Parser(text)
    out = p.cycles()
    t = p.peek()
    if t.kind != "EOF":
        p.fail(f"unexpected trailing input {t.value!r}", t)
    return out


# ---------------------------------------------------------------------------
# serializer


def _fmt_brane(brane: str, single: bool, prefix: str = " ") -> str:
    return "" if single and brane == STAR else f"{prefix}{brane}"


def _fmt_entry(e) -> str:
    return "O" if isinstance(e, Circle) else f"I({e.left},{e.right})"


def _fmt_sigma(sigma: Permutation) -> str:
    if sigma.is_identity:
        return ""
    return " sigma " + "".join(
        "(" + " ".join(str(x) for x in cyc) + ")" for cyc in sigma.cycles()
    )


def _fmt_mixed_entry(e, single: bool) -> str:
    if isinstance(e, Arc):
        return "arc" + _fmt_brane(e.brane, single)
    rev = "" if e.rev == default_rev(e.side) else " rev"
    return f"{e.side} {e.index}{rev}"


def _fmt_bline(circ, single: bool) -> str:
    if isinstance(circ, InClosed):
        return f"in {circ.index};"
    if isinstance(circ, OutClosed):
        return f"out {circ.index};"
    if isinstance(circ, Window):
        return f"window{_fmt_brane(circ.brane, single)};"
    inner = ", ".join(_fmt_mixed_entry(e, single) for e in circ.cycle)
    return f"mixed [{inner}];"


def serialize(doc: Document) -> str:
    """Deterministic canonical text: sorted names, canonical cobordisms.

    Serializing, parsing, and serializing again is byte-stable.
    """
    single = doc.branes == frozenset({STAR})
    blocks: list[str] = []
    if not single:
        blocks.append("branes " + ", ".join(sorted(doc.branes)) + ";")
    for name in sorted(doc.objects):
        obj = doc.objects[name]
        entries = ", ".join(_fmt_entry(e) for e in obj.entries)
        blocks.append(f"object {name} = [{entries}]{_fmt_sigma(obj.sigma)};")
    for name in sorted(doc.cobordisms):
        d = doc.cobordisms[name]
        canonical = canonicalize(d.cobordism).cobordism
        lines = [f"cobordism {name} : {d.source_name} -> {d.target_name} {{"]
        for comp in canonical.components:
            lines.append("  component {")
            lines.append(f"    genus {comp.genus};")
            for circ in comp.boundary:
                lines.append("    " + _fmt_bline(circ, single))
            lines.append("  }")
        lines.append("}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n" if blocks else ""


# ---------------------------------------------------------------------------
# JSON mirror


def _entry_to_json(e) -> dict:
    if isinstance(e, Circle):
        return {"type": "circle"}
    return {"type": "interval", "left": e.left, "right": e.right}


def _mixed_entry_to_json(e) -> dict:
    if isinstance(e, Arc):
        return {"type": "arc", "brane": e.brane}
    return {"type": e.side, "index": e.index, "rev": e.rev}


def _circle_to_json(circ) -> dict:
    if isinstance(circ, InClosed):
        return {"type": "in", "index": circ.index}
    if isinstance(circ, OutClosed):
        return {"type": "out", "index": circ.index}
    if isinstance(circ, Window):
        return {"type": "window", "brane": circ.brane}
    return {
        "type": "mixed",
        "entries": [_mixed_entry_to_json(e) for e in circ.cycle],
    }


def document_to_dict(doc: Document) -> dict:
    return {
        "format": 1,
        "branes": sorted(doc.branes),
        "objects": {
            name: {
                "entries": [_entry_to_json(e) for e in obj.entries],
                "sigma": [list(c) for c in obj.sigma.cycles()],
            }
            for name, obj in doc.objects.items()
        },
        "cobordisms": {
            name: {
                "source": d.source_name,
                "target": d.target_name,
                "components": [
                    {
                        "genus": comp.genus,
                        "boundary": [
                            _circle_to_json(circ) for circ in comp.boundary
                        ],
                    }
                    for comp in canonicalize(d.cobordism).cobordism.components
                ],
            }
            for name, d in doc.cobordisms.items()
        },
    }


def to_json(doc: Document) -> str:
    """Stable JSON encoding mirroring the text format."""
    return json.dumps(document_to_dict(doc), indent=2, sort_keys=True) + "\n"


def _entry_from_json(data: dict):
    if data["type"] == "circle":
        return Circle()
    if data["type"] == "interval":
        return Interval(data["left"], data["right"])
    raise DslSyntaxError(f"unknown entry type {data['type']!r}")


def _mixed_entry_from_json(data: dict):
    if data["type"] == "arc":
        return Arc(data["brane"])
    if data["type"] in (IN, OUT):
        rev = data.get("rev", default_rev(data["type"]))
        return IntervalRef(data["type"], data["index"], rev)
    raise DslSyntaxError(f"unknown mixed entry type {data['type']!r}")


def _circle_from_json(data: dict):
    kind = data["type"]
    if kind == "in":
        return InClosed(data["index"])
    if kind == "out":
        return OutClosed(data["index"])
    if kind == "window":
        return Window(data["brane"])
    if kind == "mixed":
        return Mixed(_mixed_entry_from_json(e) for e in data["entries"])
    raise DslSyntaxError(f"unknown boundary circle type {kind!r}")


def from_json(source: str | dict) -> Document:
    """Inverse of ``to_json``; applies the same validation as ``parse``."""
    if isinstance(source, str):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise DslSyntaxError(exc.msg, exc.lineno, exc.colno) from exc
    else:
        data = source
    if not isinstance(data, dict):
        raise DslSyntaxError("document must be a JSON object")
    try:
        if data.get("format") != 1:
            raise DslSyntaxError(f"unsupported format {data.get('format')!r}")
        branes = frozenset(data.get("branes", [STAR]))
        doc = Document(branes=branes)
        for name in sorted(data.get("objects", {})):
            spec = data["objects"][name]
            entries = [_entry_from_json(e) for e in spec.get("entries", [])]
            interval_positions = tuple(
                i for i, e in enumerate(entries, start=1) if isinstance(e, Interval)
            )
            sigma = Permutation.from_cycles(
                [tuple(c) for c in spec.get("sigma", [])], interval_positions
            )
            doc.objects[name] = GeneralObject(branes, entries, sigma)
        for name in sorted(data.get("cobordisms", {})):
            spec = data["cobordisms"][name]
            for ref in (spec["source"], spec["target"]):
                if ref not in doc.objects:
                    raise DslSyntaxError(f"unknown object {ref!r}")
            comps = [
                Component(
                    comp["genus"],
                    [_circle_from_json(c) for c in comp.get("boundary", [])],
                )
                for comp in spec.get("components", [])
            ]
            cob = Cobordism(
                doc.objects[spec["source"]], doc.objects[spec["target"]], comps
            )
            violations = validate(cob)
            if violations:
                raise DslValidationError(
                    f"cobordism {name!r} is invalid: "
                    + "; ".join(str(v) for v in violations[:4]),
                    violations=violations,
                )
            doc.cobordisms[name] = CobordismDef(
                spec["source"], spec["target"], cob
            )
        return doc
    except (KeyError, TypeError, AttributeError) as exc:
        raise DslSyntaxError(f"malformed JSON document: {exc!r}") from exc
