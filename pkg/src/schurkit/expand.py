"""Expansion calculus: turn templates plus small partitions into big ones.

Every operation here consumes verified inputs, applies a mechanical
recoloring rule, and re-verifies its output before returning it.  The
re-verification is deliberately redundant (the constructions are proved
correct) but cheap, and it has caught every data-entry slip so far.

Color bookkeeping: a template's non-special colors are ranked 1..n by
their subsets' smallest elements; the inner partition's colors land after
them.  Compositions put the resulting special color last.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .coloring import (
    Coloring,
    Violation,
    min_elements,
    order_subsets,
    verify_sum_free,
    verify_weakly_sum_free,
)
from .docio import PartitionDoc
from .templates import STemplate, WSTemplate
from .window import lam, pi


def _require_sum_free(g: Coloring, what: str = "inner partition") -> None:
    bad = verify_sum_free(g)
    if bad is not None:
        raise ValueError(f"{what} is not sum-free ({bad})")


def _nonspecial_ranks(c: Coloring, special: int) -> dict[int, int]:
    """Map each non-special color to its 1-based rank by subset minimum."""
    mins = min_elements(c)
    others = sorted(
        (col for col in range(1, c.num_colors + 1) if col != special),
        key=lambda col: mins[col - 1],
    )
    return {col: i for i, col in enumerate(others, start=1)}


def special_last_ranks(c: Coloring, special: int) -> dict[int, int]:
    """Relabeling that orders non-special colors by minimum, special last."""
    ranks = _nonspecial_ranks(c, special)
    ranks[special] = c.num_colors
    return ranks


@dataclass(frozen=True)
class ExpansionReport:
    """Provenance record for one construction step.

    multiplier and constant are the coefficients of the inequality the step
    instantiates: a certificate of length multiplier*p + constant built from
    an inner partition of [1,p] (for template outputs the constant is the
    best additive constant the composite supports).
    """

    operation: str
    inputs: tuple[str, ...]
    doc: PartitionDoc
    length: int
    multiplier: int
    constant: int
    status: str = "ok"
    relabeling: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.length != self.doc.coloring.length:
            raise ValueError(
                f"claimed length {self.length} != actual "
                f"{self.doc.coloring.length}"
            )
        if self.status != "ok":
            raise ValueError("reports exist only for verified outputs")

    def provenance_lines(self) -> list[str]:
        lines = [
            f"built by {self.operation} from {', '.join(self.inputs)}",
            f"length {self.length} = {self.multiplier}*p + {self.constant} form",
        ]
        if self.relabeling:
            moved = " ".join(f"{a}->{b}" for a, b in self.relabeling if a != b)
            if moved:
                lines.append(f"colors relabeled: {moved}")
        return lines


def expand_schur(t: STemplate, g: Coloring) -> Coloring:
    """Blow up a sum-free partition of [1,p] through an S-template.

    Output covers [1, p*q + m - 1] (q the width, m the smallest special
    element): p full rows of q columns plus the head of row p+1.  Cells in
    non-special columns keep the column color; cells in special columns are
    colored by their row through g.
    """
    _require_sum_free(g)
    g = order_subsets(g)
    f, q, sp = t.coloring, t.width, t.special
    n = t.num_colors - 1
    m = min_elements(f)[sp - 1]
    rank = _nonspecial_ranks(f, sp)
    p, k = g.length, g.num_colors

    out = []
    for x in range(1, p * q + m):
        alpha, u = divmod(x - 1, q)
        cu = f.color_of(u + 1)
        out.append(rank[cu] if cu != sp else n + g.color_of(alpha + 1))
    h = Coloring(tuple(out), n + k)
    bad = verify_sum_free(h)
    if bad is not None:
        raise ValueError(f"expansion output failed verification ({bad})")
    return h


def check_schur_tail(t: STemplate, tail: Coloring | None) -> Violation | None:
    """Check the two last-row predicates for a custom Schur tail.

    The tail colors [1,b'] of the row after the last full one, in the
    template's own palette.  Predicate 1 constrains where same-colored
    column pairs land in the tail; predicate 2 does the same for
    column/tail pairs whose sum stays inside the tail.
    """
    if tail is None:
        return None
    f, q = t.coloring, t.width
    b = tail.length
    if b >= q:
        raise ValueError(f"tail covers [1,{b}], must be shorter than width {q}")
    if tail.num_colors != t.num_colors:
        raise ValueError(
            f"tail uses {tail.num_colors} colors, template has {t.num_colors}"
        )
    for x in range(1, q + 1):
        fx = f.color_of(x)
        for y in range(x, q + 1):
            if f.color_of(y) != fx:
                continue
            col = (x + y - 1) % q + 1
            if col <= b and tail.color_of(col) == fx:
                return Violation(x, y, col, fx, "tail-predicate-1")
    for x in range(1, q + 1):
        fx = f.color_of(x)
        for y in range(1, b - x + 1):
            if tail.color_of(y) == fx and tail.color_of(x + y) == fx:
                return Violation(x, y, x + y, fx, "tail-predicate-2")
    return None


def expand_schur_with_tail(t: STemplate, g: Coloring,
                           tail: Coloring | None) -> Coloring:
    """expand_schur with the final partial row replaced by a custom tail.

    tail = None means no partial row at all (length p*q).  Tail cells
    carrying the special color join the first inner subset; that is safe
    because g is ordered and the tail predicates hold.
    """
    _require_sum_free(g)
    g = order_subsets(g)
    bad = check_schur_tail(t, tail)
    if bad is not None:
        raise ValueError(f"tail rejected ({bad})")
    f, q, sp = t.coloring, t.width, t.special
    n = t.num_colors - 1
    rank = _nonspecial_ranks(f, sp)
    p, k = g.length, g.num_colors

    out = []
    for x in range(1, p * q + 1):
        alpha, u = divmod(x - 1, q)
        cu = f.color_of(u + 1)
        out.append(rank[cu] if cu != sp else n + g.color_of(alpha + 1))
    if tail is not None:
        for w in range(1, tail.length + 1):
            cw = tail.color_of(w)
            out.append(rank[cw] if cw != sp else n + 1)
    h = Coloring(tuple(out), n + k)
    bad = verify_sum_free(h)
    if bad is not None:
        raise ValueError(f"expansion output failed verification ({bad})")
    return h


def schur_tail_of(t: STemplate) -> Coloring:
    """The tail that makes expand_schur_with_tail reproduce expand_schur:
    the template's own coloring up to just before its first special cell."""
    f, sp = t.coloring, t.special
    m = min_elements(f)[sp - 1]
    if m == 1:
        raise ValueError("special color starts at 1, the default tail is empty")
    return Coloring(tuple(f.colors[: m - 1]), t.num_colors, allow_empty=True)


def compose_s_templates(t1: STemplate, t2: STemplate) -> STemplate:
    """Compose S-templates into one of width q1*q2.

    Columns follow t1; cells in t1-special columns are recolored by their
    row through t2.  The result's special color is the image of t2's and is
    numbered last.
    """
    f1, q, sp1 = t1.coloring, t1.width, t1.special
    f2, p, sp2 = t2.coloring, t2.width, t2.special
    n = t1.num_colors - 1
    k = t2.num_colors
    rank1 = _nonspecial_ranks(f1, sp1)
    rank2 = special_last_ranks(f2, sp2)

    out = []
    for x in range(1, p * q + 1):
        alpha, u = divmod(x - 1, q)
        c1 = f1.color_of(u + 1)
        out.append(rank1[c1] if c1 != sp1 else n + rank2[f2.color_of(alpha + 1)])
    comp = Coloring(tuple(out), n + k)
    # smart constructor re-runs the full template verification
    return STemplate(comp, special=n + k)


def lift_weak_to_ws_template(f: Coloring) -> WSTemplate:
    """Turn a weakly sum-free partition of [1,q] into a WS-template.

    Width a = q + ceil(q/2) + 1, tail b = q.  The template repeats f on the
    tail, runs a fresh special color on [b+1, 2b+1], then replays f shifted
    by a on the rest.
    """
    bad = verify_weakly_sum_free(f)
    if bad is not None:
        raise ValueError(f"input is not weakly sum-free ({bad})")
    q, n = f.length, f.num_colors
    b = q
    a = q + (q + 1) // 2 + 1
    out = []
    for x in range(1, a + b + 1):
        if x <= b:
            out.append(f.color_of(x))
        elif x <= 2 * b + 1:
            out.append(n + 1)
        else:
            out.append(f.color_of(x - a))
    return WSTemplate(Coloring(tuple(out), n + 1), width=a, tail=b,
                      special=n + 1)


def expand_weak(t: WSTemplate, g: Coloring) -> Coloring:
    """Blow up a sum-free partition of [1,p] through a WS-template.

    Output covers [1, p*a + b]: the tail keeps its colors, cells whose
    window image is non-special keep that color, and cells in special
    window positions are colored by their row through g.  g must be
    sum-free (strictly); it is relabeled so g(1) = 1, which the special
    cells inside the tail rely on.
    """
    _require_sum_free(g)
    g = order_subsets(g)
    f, a, b, sp = t.coloring, t.width, t.tail, t.special
    n = t.num_colors - 1
    rank = _nonspecial_ranks(f, sp)
    p, k = g.length, g.num_colors
    if all(e <= b for e in f.subsets()[sp - 1]):
        raise ValueError(
            "special subset lies entirely inside the tail; the expansion "
            "would never use the inner colors"
        )

    out = []
    for x in range(1, p * a + b + 1):
        if x <= b:
            cx = f.color_of(x)
            out.append(rank[cx] if cx != sp else n + 1)
        else:
            cw = f.color_of(pi(a, b, x))
            out.append(rank[cw] if cw != sp
                       else n + g.color_of(lam(a, b, x)))
    h = Coloring(tuple(out), n + k)
    bad = verify_weakly_sum_free(h)
    if bad is not None:
        raise ValueError(f"expansion output failed verification ({bad})")
    return h


def check_weak_tail(t: WSTemplate, tail: Coloring | None) -> Violation | None:
    """Check the two extension predicates for a custom weak tail.

    The tail colors [b+1, b+c] of the row after the last full one, in the
    template's palette; tail.color_of(i) is the color of b+i.  Predicate 1
    constrains where same-colored template pairs land in the extension
    window; predicate 2 does the same for template/extension pairs.
    """
    if tail is None:
        return None
    f, a, b = t.coloring, t.width, t.tail
    c = tail.length
    if c > a:
        raise ValueError(
            f"extension covers [{b + 1},{b + c}], must stay within one row "
            f"(at most {a} cells)"
        )
    if tail.num_colors != t.num_colors:
        raise ValueError(
            f"tail uses {tail.num_colors} colors, template has {t.num_colors}"
        )
    top = b + c
    for x in range(1, a + b + 1):
        fx = f.color_of(x)
        for y in range(b + 1, a + b + 1):
            if f.color_of(y) != fx:
                continue
            w = pi(a, b, x + y)
            if w <= top and tail.color_of(w - b) == fx:
                return Violation(x, y, w, fx, "weak-tail-predicate-1")
    for x in range(1, a + b + 1):
        fx = f.color_of(x)
        for y in range(b + 1, top + 1):
            if tail.color_of(y - b) != fx:
                continue
            w = pi(a, b, x + y)
            if w <= top and tail.color_of(w - b) == fx:
                return Violation(x, y, w, fx, "weak-tail-predicate-2")
    return None


def expand_weak_with_tail(t: WSTemplate, g: Coloring,
                          tail: Coloring | None) -> Coloring:
    """expand_weak plus a short extra row colored by a custom tail.

    The extension occupies [p*a + b + 1, p*a + b + c] and is colored by
    tail (position p*a + b + i gets tail color i).  Special-colored
    extension cells join the first inner subset, as in expand_weak's tail
    rule.  tail = None reproduces expand_weak exactly.
    """
    bad = check_weak_tail(t, tail)
    if bad is not None:
        raise ValueError(f"tail rejected ({bad})")
    h = expand_weak(t, g)
    if tail is None:
        return h
    sp = t.special
    n = t.num_colors - 1
    rank = _nonspecial_ranks(t.coloring, sp)
    extra = []
    for w in range(1, tail.length + 1):
        cw = tail.color_of(w)
        extra.append(rank[cw] if cw != sp else n + 1)
    out = Coloring(h.colors + tuple(extra), h.num_colors)
    bad = verify_weakly_sum_free(out)
    if bad is not None:
        raise ValueError(f"expansion output failed verification ({bad})")
    return out


def compose_s_ws_templates(s: STemplate, w: WSTemplate) -> WSTemplate:
    """Compose an S-template with a WS-template.

    The result has width p*a and keeps w's tail length b.  Cells follow w's
    window colors; cells in w-special window positions are recolored by
    their row through s.  The composite's special color is the image of
    s's special and is numbered last.
    """
    fs, p, sps = s.coloring, s.width, s.special
    fw, a, b, spw = w.coloring, w.width, w.tail, w.special
    n = w.num_colors
    ks = s.num_colors
    rank_w = _nonspecial_ranks(fw, spw)
    rank_s = special_last_ranks(fs, sps)
    width = p * a

    out = []
    for x in range(1, width + b + 1):
        if x <= b:
            cx = fw.color_of(x)
            out.append(rank_w[cx] if cx != spw else n)
        else:
            cw = fw.color_of(pi(a, b, x))
            if cw != spw:
                out.append(rank_w[cw])
            else:
                out.append(n - 1 + rank_s[fs.color_of(lam(a, b, x))])
    comp = Coloring(tuple(out), n - 1 + ks)
    # smart constructor re-runs the full template verification
    return WSTemplate(comp, width=width, tail=b, special=n - 1 + ks)


def best_additive_constant(t: WSTemplate) -> int:
    """Largest additive constant an expansion through t can certify.

    Equal to the smallest special element beyond the tail, minus one.
    Shrinking the tail can only shrink that minimum, so the template's own
    tail is always the right cut point.
    """
    past_tail = [e for e in t.coloring.subsets()[t.special - 1] if e > t.tail]
    if not past_tail:
        raise ValueError("special subset lies entirely inside the tail")
    return min(past_tail) - 1
