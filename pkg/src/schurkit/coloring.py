"""Colorings of [1,p] and the (weakly) sum-free verifiers.

A coloring assigns one of the colors 1..n to every integer in [1,p].  Color
classes double as the subsets of a partition, so "subset i" and "color i"
mean the same thing throughout.

Verification uses one bitmask per color (bit x set iff x has that color) so
a full check of a length-60000 coloring costs a few thousand word-wide shift
and AND operations per color instead of p^2 Python-level pair tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    """Certificate that a verification clause failed on a concrete pair.

    sum_image is x+y for the plain clauses and the wrapped value for the
    wrap-around clauses; clause names which condition was broken.
    """

    x: int
    y: int
    sum_image: int
    color: int
    clause: str

    def __str__(self) -> str:
        return (
            f"{self.clause}: x={self.x} y={self.y} -> {self.sum_image} "
            f"all in subset {self.color}"
        )


@dataclass(frozen=True)
class Coloring:
    """Total assignment of colors 1..num_colors to the integers 1..p.

    colors[i] is the color of the integer i+1.  Every color must be used at
    least once unless allow_empty is set (search code holds partial states
    where high colors are not used yet).
    """

    colors: tuple[int, ...]
    num_colors: int
    allow_empty: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("coloring must cover at least [1,1]")
        if self.num_colors < 1:
            raise ValueError("need at least one color")
        seen = set()
        for i, c in enumerate(self.colors):
            if not isinstance(c, int) or not (1 <= c <= self.num_colors):
                raise ValueError(
                    f"entry for integer {i + 1} is {c!r}, outside 1..{self.num_colors}"
                )
            seen.add(c)
        if not self.allow_empty and len(seen) != self.num_colors:
            missing = sorted(set(range(1, self.num_colors + 1)) - seen)
            raise ValueError(f"empty subsets: colors {missing} unused")

    @property
    def length(self) -> int:
        return len(self.colors)

    def color_of(self, x: int) -> int:
        """Color of the integer x (1-based)."""
        return self.colors[x - 1]

    def subset(self, color: int) -> tuple[int, ...]:
        """The integers carrying the given color, ascending."""
        return tuple(x for x in range(1, self.length + 1) if self.colors[x - 1] == color)

    def subsets(self) -> list[tuple[int, ...]]:
        return [self.subset(c) for c in range(1, self.num_colors + 1)]

    def masks(self) -> list[int]:
        """Per-color bitmasks; index 0 unused, bit x set iff color_of(x) == c."""
        out = [0] * (self.num_colors + 1)
        for x, c in enumerate(self.colors, start=1):
            out[c] |= 1 << x
        return out


def from_subsets(subsets: list[list[int]] | list[tuple[int, ...]],
                 allow_empty: bool = False) -> Coloring:
    """Build a coloring from subset lists; they must partition [1,max]."""
    cells: dict[int, int] = {}
    for c, sub in enumerate(subsets, start=1):
        for x in sub:
            if x in cells:
                raise ValueError(f"integer {x} appears in subsets {cells[x]} and {c}")
            cells[x] = c
    if not cells:
        raise ValueError("no integers given")
    p = max(cells)
    missing = [x for x in range(1, p + 1) if x not in cells]
    if missing:
        raise ValueError(f"integers not covered: {missing[:8]}")
    return Coloring(tuple(cells[x] for x in range(1, p + 1)), len(subsets),
                    allow_empty=allow_empty)


def _low_bit_index(m: int) -> int:
    return (m & -m).bit_length() - 1


def verify_sum_free(c: Coloring) -> Violation | None:
    """None iff every color class is sum-free (x = y pairs included).

    A class A fails if some x <= y in A has x+y in A.  On failure returns
    the violation with the lexicographically smallest (x, y).
    """
    masks = c.masks()
    p = c.length
    for x in range(1, p // 2 + 1):
        a = masks[c.color_of(x)]
        # bit y of (a >> x) is set iff x+y is in the class; restrict to y >= x
        hits = (a >> x) & a & ~((1 << x) - 1)
        if hits:
            y = _low_bit_index(hits)
            return Violation(x, y, x + y, c.color_of(x), "sum-free")
    return None


def verify_weakly_sum_free(c: Coloring) -> Violation | None:
    """None iff every color class is weakly sum-free (x = y pairs exempt)."""
    masks = c.masks()
    p = c.length
    for x in range(1, p // 2 + 1):
        a = masks[c.color_of(x)]
        hits = (a >> x) & a & ~((1 << (x + 1)) - 1)  # strictly y > x
        if hits:
            y = _low_bit_index(hits)
            return Violation(x, y, x + y, c.color_of(x), "weakly-sum-free")
    return None


def min_elements(c: Coloring) -> tuple[int, ...]:
    """Entry i-1 is the smallest integer colored i."""
    mins = [0] * (c.num_colors + 1)
    for x in range(c.length, 0, -1):
        mins[c.colors[x - 1]] = x
    if 0 in mins[1:]:
        empty = [i for i in range(1, c.num_colors + 1) if mins[i] == 0]
        raise ValueError(f"empty subsets: colors {empty}")
    return tuple(mins[1:])


def order_subsets(c: Coloring) -> Coloring:
    """Permute colors so the subset minima increase with the color index.

    Pure relabeling: subset contents are unchanged.  Idempotent.
    """
    mins = min_elements(c)
    by_min = sorted(range(1, c.num_colors + 1), key=lambda i: mins[i - 1])
    relabel = {old: new for new, old in enumerate(by_min, start=1)}
    return Coloring(tuple(relabel[x] for x in c.colors), c.num_colors,
                    allow_empty=c.allow_empty)


def is_symmetric(c: Coloring) -> bool:
    """True iff x and p+1-x always share a color (center cell exempt)."""
    p = c.length
    return all(
        c.colors[x - 1] == c.colors[p - x]
        for x in range(1, p // 2 + 1)
    )
