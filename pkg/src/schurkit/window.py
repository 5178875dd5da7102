"""Wrap-around arithmetic for the width-a / tail-b layout.

Integers above the tail are laid out in consecutive blocks of width a
starting at b+1.  pi projects any integer into the window [b+1, a+b]
preserving its residue mod a; lam returns the index of the block holding
it (block 1 is [b+1, a+b]; integers in the tail [1,b] get lam = 0).
"""

from __future__ import annotations


def _check(a: int, b: int, x: int) -> None:
    if b < 1 or a <= b:
        raise ValueError(f"need width > tail >= 1, got width={a} tail={b}")
    if x < 1:
        raise ValueError(f"x must be positive, got {x}")


def pi(a: int, b: int, x: int) -> int:
    """Wrap x into [b+1, a+b] keeping x mod a fixed."""
    _check(a, b, x)
    r = x % a
    return r + a if r <= b else r


def lam(a: int, b: int, x: int) -> int:
    """Block index of x: 1 + floor((x - b - 1) / a), floor toward -infinity.

    Satisfies x = a*lam(x) + pi(x) - a for every x >= 1; lam(x) = 0 exactly
    on the tail [1, b].
    """
    _check(a, b, x)
    return 1 + (x - b - 1) // a
