"""Text interchange format for partitions and templates.

Layout:

    schur v1 kind=<tag> p=<length> n=<colors> [width=<a>] [tail=<b>] [special=<c>]
    # provenance: free text, kept on round trip
    # other comments are dropped
    1: 1 4 10 13
    2: 2 3 11 12
    ...

Kinds: sumfree, weakly-sumfree (plain partitions), s-template (needs
special; width equals p), ws-template (needs width, tail, special;
width+tail equals p).  Every integer in [1,p] must appear exactly once
across the subset lines; duplicates and gaps are rejected with the
offending integers named.  Subset lines may list elements out of order
(serialization always emits them ascending).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coloring import Coloring

KINDS = ("sumfree", "weakly-sumfree", "s-template", "ws-template")


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class PartitionDoc:
    kind: str
    coloring: Coloring
    width: int | None = None
    tail: int | None = None
    special: int | None = None
    provenance: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParseError(f"unknown kind {self.kind!r}, expected one of {KINDS}")
        p = self.coloring.length
        if self.kind in ("sumfree", "weakly-sumfree"):
            if not (self.width is None and self.tail is None and self.special is None):
                raise ParseError(f"kind {self.kind} takes no width/tail/special")
        elif self.kind == "s-template":
            if self.special is None:
                raise ParseError("s-template needs special=<color>")
            if self.tail is not None:
                raise ParseError("s-template takes no tail")
            if self.width is not None and self.width != p:
                raise ParseError(f"s-template width {self.width} != p {p}")
        else:  # ws-template
            if self.width is None or self.tail is None or self.special is None:
                raise ParseError("ws-template needs width=, tail= and special=")
            if self.width + self.tail != p:
                raise ParseError(
                    f"ws-template width+tail = {self.width + self.tail} != p {p}"
                )
        if self.special is not None and not (1 <= self.special <= self.coloring.num_colors):
            raise ParseError(f"special color {self.special} out of range")


def parse_doc(text: str, allow_empty: bool = False) -> PartitionDoc:
    header = None
    provenance: list[str] = []
    subset_lines: list[tuple[int, list[int]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("provenance:"):
                provenance.append(body[len("provenance:"):].strip())
            continue
        if header is None:
            header = _parse_header(line, lineno)
            continue
        subset_lines.append(_parse_subset_line(line, lineno))
    if header is None:
        raise ParseError("missing header line 'schur v1 kind=... p=... n=...'")

    kind, p, n, width, tail, special = header
    cells: dict[int, int] = {}
    dups: list[int] = []
    seen_colors = set()
    for color, elems in subset_lines:
        if not (1 <= color <= n):
            raise ParseError(f"subset label {color} outside 1..{n}")
        if color in seen_colors:
            raise ParseError(f"subset {color} listed twice")
        seen_colors.add(color)
        for x in elems:
            if not (1 <= x <= p):
                raise ParseError(f"integer {x} outside [1,{p}]")
            if x in cells:
                dups.append(x)
            else:
                cells[x] = color
    missing = [x for x in range(1, p + 1) if x not in cells]
    if dups or missing:
        parts = []
        if dups:
            parts.append(f"duplicated integers: {sorted(set(dups))}")
        if missing:
            shown = str(missing[:12])
            if len(missing) > 12:
                shown = f"{shown[:-1]}, ...] ({len(missing)} total)"
            parts.append(f"missing integers: {shown}")
        raise ParseError("; ".join(parts))

    try:
        coloring = Coloring(tuple(cells[x] for x in range(1, p + 1)), n,
                            allow_empty=allow_empty)
    except ValueError as err:
        raise ParseError(str(err)) from None
    return PartitionDoc(kind, coloring, width=width, tail=tail, special=special,
                        provenance=tuple(provenance))


def _parse_header(line: str, lineno: int):
    tokens = line.split()
    if len(tokens) < 2 or tokens[0] != "schur" or tokens[1] != "v1":
        raise ParseError(f"line {lineno}: header must start with 'schur v1'")
    fields: dict[str, str] = {}
    for tok in tokens[2:]:
        if "=" not in tok:
            raise ParseError(f"line {lineno}: bad header token {tok!r}")
        key, value = tok.split("=", 1)
        if key in fields:
            raise ParseError(f"line {lineno}: header key {key} repeated")
        fields[key] = value
    allowed = {"kind", "p", "n", "width", "tail", "special"}
    unknown = set(fields) - allowed
    if unknown:
        raise ParseError(f"line {lineno}: unknown header keys {sorted(unknown)}")
    for req in ("kind", "p", "n"):
        if req not in fields:
            raise ParseError(f"line {lineno}: header missing {req}=")
    kind = fields["kind"]
    if kind not in KINDS:
        raise ParseError(f"line {lineno}: unknown kind {kind!r}")

    def intval(key):
        if key not in fields:
            return None
        try:
            v = int(fields[key])
        except ValueError:
            raise ParseError(f"line {lineno}: {key}={fields[key]!r} is not an integer")
        return v

    p, n = intval("p"), intval("n")
    if p is None or p < 1 or n is None or n < 1:
        raise ParseError(f"line {lineno}: p and n must be positive integers")
    return kind, p, n, intval("width"), intval("tail"), intval("special")


def _parse_subset_line(line: str, lineno: int) -> tuple[int, list[int]]:
    if ":" not in line:
        raise ParseError(f"line {lineno}: expected '<color>: elements', got {line!r}")
    label, rest = line.split(":", 1)
    try:
        color = int(label.strip())
    except ValueError:
        raise ParseError(f"line {lineno}: subset label {label.strip()!r} is not an integer")
    elems = []
    for tok in rest.split():
        try:
            elems.append(int(tok))
        except ValueError:
            raise ParseError(f"line {lineno}: element {tok!r} is not an integer")
    return color, elems


def serialize_doc(doc: PartitionDoc) -> str:
    c = doc.coloring
    head = [f"schur v1 kind={doc.kind}", f"p={c.length}", f"n={c.num_colors}"]
    if doc.width is not None:
        head.append(f"width={doc.width}")
    if doc.tail is not None:
        head.append(f"tail={doc.tail}")
    if doc.special is not None:
        head.append(f"special={doc.special}")
    lines = [" ".join(head)]
    lines.extend(f"# provenance: {note}" for note in doc.provenance)
    for color in range(1, c.num_colors + 1):
        elems = " ".join(str(x) for x in c.subset(color))
        lines.append(f"{color}: {elems}".rstrip())
    return "\n".join(lines) + "\n"


def doc_for(coloring: Coloring, kind: str, width: int | None = None,
            tail: int | None = None, special: int | None = None,
            provenance: tuple[str, ...] | list[str] = ()) -> PartitionDoc:
    if kind == "s-template" and width is None:
        width = coloring.length
    return PartitionDoc(kind, coloring, width=width, tail=tail, special=special,
                        provenance=tuple(provenance))
