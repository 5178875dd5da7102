"""Template types: colorings whose classes also obey wrap-around conditions.

An S-template of width p is a sum-free partition of [1,p] where every
non-special class additionally avoids wrapped sums: x+y > p implies
x+y-p is outside the class.  The special class is exempt from the wrap
rule; expansion replaces it row by row with an inner partition.

A WS-template with width a and tail b partitions [1, a+b]; the tail [1,b]
is kept verbatim by expansion while the window [b+1, a+b] repeats with
period a.  Its classes must satisfy, for all x, y in the class (x = y
allowed except where noted):
  1. weakly sum-free (x = y exempt),
  2. the class minus the tail is sum-free,
  3. special class: x+y > b+2a implies x+y-2a outside the class,
  4. other classes: x+y > a+b implies pi(x+y) outside the class.

Template values exist only after verification: constructing one re-runs
the full check and raises on failure, so downstream expansion code can
rely on the invariants.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import Coloring, Violation, verify_sum_free, verify_weakly_sum_free


def _check_s_template(c: Coloring, special: int) -> Violation | None:
    bad = verify_sum_free(c)
    if bad is not None:
        return bad
    p = c.length
    masks = c.masks()
    for x in range(1, p + 1):
        col = c.color_of(x)
        if col == special:
            continue
        a = masks[col]
        # wrapped pairs: y >= x, y > p - x, both in the class, x+y-p in the class
        lo = max(x, p - x + 1)
        cand = (a << (p - x)) & a & ~((1 << lo) - 1)
        if cand:
            y = (cand & -cand).bit_length() - 1
            return Violation(x, y, x + y - p, col, "s-wrap")
    return None


@dataclass(frozen=True)
class STemplate:
    coloring: Coloring
    special: int

    def __post_init__(self):
        if not (1 <= self.special <= self.coloring.num_colors):
            raise ValueError(f"special color {self.special} out of range")
        bad = _check_s_template(self.coloring, self.special)
        if bad is not None:
            raise ValueError(f"not an S-template: {bad}")

    @property
    def width(self) -> int:
        return self.coloring.length

    @property
    def num_colors(self) -> int:
        return self.coloring.num_colors


def verify_s_template(c: Coloring, special: int) -> STemplate | Violation:
    """STemplate on success, else the lexicographically first Violation.

    The plain sum-free clauses are checked before the wrap clauses; within
    each clause the witness has the smallest (x, y).
    """
    if not (1 <= special <= c.num_colors):
        raise ValueError(f"special color {special} out of range 1..{c.num_colors}")
    bad = _check_s_template(c, special)
    return STemplate(c, special) if bad is None else bad


def _check_ws_template(c: Coloring, a: int, b: int, special: int) -> Violation | None:
    bad = verify_weakly_sum_free(c)
    if bad is not None:
        return bad
    n = a + b
    masks = c.masks()
    tail_mask = (1 << (b + 1)) - 2  # bits 1..b

    # classes minus the tail are sum-free, x = y included
    for x in range(b + 1, n // 2 + 1):
        cls = masks[c.color_of(x)] & ~tail_mask
        hits = (cls >> x) & cls & ~((1 << x) - 1)
        if hits:
            y = (hits & -hits).bit_length() - 1
            return Violation(x, y, x + y, c.color_of(x), "ws-row-sumfree")

    # special class: deep wrapped sums stay out
    sp = masks[special]
    for x in range(1, n + 1):
        if not (sp >> x) & 1:
            continue
        # y in class, y >= x, x+y > b+2a, x+y-2a in class
        lo = max(x, b + 2 * a - x + 1)
        cand = (sp << (2 * a - x)) & sp & ~((1 << lo) - 1)
        if cand:
            y = (cand & -cand).bit_length() - 1
            return Violation(x, y, x + y - 2 * a, special, "ws-special-wrap")

    # other classes: projected sums stay out
    proj = [0] * (2 * n + 1)
    for s in range(2, 2 * n + 1):
        r = s % a
        proj[s] = r + a if r <= b else r
    for x in range(1, n + 1):
        col = c.color_of(x)
        if col == special:
            continue
        cls = masks[col]
        for y in range(max(x, n - x + 1), n + 1):
            if (cls >> y) & 1 and (cls >> proj[x + y]) & 1:
                return Violation(x, y, proj[x + y], col, "ws-regular-wrap")
    return None


@dataclass(frozen=True)
class WSTemplate:
    coloring: Coloring
    width: int
    tail: int
    special: int

    def __post_init__(self):
        if self.tail < 1 or self.width <= self.tail:
            raise ValueError(
                f"need width > tail >= 1, got width={self.width} tail={self.tail}"
            )
        if self.coloring.length != self.width + self.tail:
            raise ValueError(
                f"coloring covers [1,{self.coloring.length}], "
                f"expected width+tail = {self.width + self.tail}"
            )
        if not (1 <= self.special <= self.coloring.num_colors):
            raise ValueError(f"special color {self.special} out of range")
        bad = _check_ws_template(self.coloring, self.width, self.tail, self.special)
        if bad is not None:
            raise ValueError(f"not a WS-template: {bad}")

    @property
    def num_colors(self) -> int:
        return self.coloring.num_colors


def verify_ws_template(c: Coloring, width: int, tail: int,
                       special: int) -> WSTemplate | Violation:
    """WSTemplate on success, else the first Violation in clause order 1-4."""
    if tail < 1 or width <= tail:
        raise ValueError(f"need width > tail >= 1, got width={width} tail={tail}")
    if c.length != width + tail:
        raise ValueError(
            f"coloring covers [1,{c.length}], expected width+tail = {width + tail}"
        )
    if not (1 <= special <= c.num_colors):
        raise ValueError(f"special color {special} out of range 1..{c.num_colors}")
    bad = _check_ws_template(c, width, tail, special)
    return WSTemplate(c, width, tail, special) if bad is None else bad
