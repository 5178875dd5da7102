"""Exhaustive search oracles and the shared constraint grounding.

The exact small Schur / weak Schur values come from a dedicated bitset
backtracker (tight enough to settle 4 colors at desk scale).  Template
enumeration and CNF generation share one grounding of the defining
conditions into forbidden monochromatic tuples, so the backtracking
enumerator, the SAT encoder and the verifiers can all be played against
each other in tests.

Determinism: fixed variable order (increasing integer, increasing color)
everywhere except the 4-color weak witness hunt, which picks the most
constrained cell first; that order is still input-deterministic.  Worker
splits merge to the lexicographically least witness, so results do not
depend on SCHURKIT_WORKERS.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from multiprocessing import Pool
from typing import Iterator

from .coloring import Coloring
from .templates import STemplate, WSTemplate
from .window import pi

KINDS = ("sumfree-partition", "weak-partition", "s-template", "ws-template")

# exact values used as search ceilings (the certainty-shaded table cells)
EXACT_SCHUR = {1: 1, 2: 4, 3: 13, 4: 44, 5: 160}
EXACT_WEAK = {1: 2, 2: 8, 3: 23, 4: 66}


class IntractableSearch(RuntimeError):
    """Raised instead of ever silently truncating an exhaustive run."""


@dataclass(frozen=True)
class SearchSpec:
    """What to search for.

    length is the domain size for partition kinds; templates use width
    (plus tail for ws-template, domain width+tail) and a special color.
    min_starts maps a color to the smallest integer allowed to carry it
    (unit constraints that keep subset minima from being too small).
    symmetric forces x and domain+1-x to share a color.
    """

    kind: str
    num_colors: int
    length: int | None = None
    width: int | None = None
    tail: int | None = None
    special: int | None = None
    symmetric: bool = False
    min_starts: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}, want one of {KINDS}")
        if self.num_colors < 1:
            raise ValueError("need at least one color")
        template = self.kind.endswith("template")
        if template:
            if self.length is not None:
                raise ValueError("templates take width, not length")
            if self.width is not None and self.width < 1:
                raise ValueError("width must be positive")
            if self.special is None or not (1 <= self.special <= self.num_colors):
                raise ValueError("templates need a special color in range")
            if self.kind == "ws-template":
                if self.tail is None or self.tail < 1:
                    raise ValueError("ws-template needs a tail length >= 1")
                if self.width is not None and self.width <= self.tail:
                    raise ValueError("need width > tail")
            elif self.tail is not None:
                raise ValueError("tail only applies to ws-template")
        else:
            if self.width is not None or self.tail is not None or self.special is not None:
                raise ValueError("partition kinds take only length and colors")
            if self.length is None or self.length < 1:
                raise ValueError("partition kinds need a positive length")
        for c, start in self.min_starts:
            if not (1 <= c <= self.num_colors):
                raise ValueError(f"min_starts names color {c}, have {self.num_colors}")
            if start < 1:
                raise ValueError("min_starts values are integers >= 1")

    @property
    def domain_length(self) -> int:
        if self.kind == "ws-template":
            if self.width is None:
                raise ValueError("spec has no width set")
            return self.width + self.tail
        if self.kind == "s-template":
            if self.width is None:
                raise ValueError("spec has no width set")
            return self.width
        return self.length


def _norm_clause(points):
    """Canonical forbidden-tuple; None if one-hot coloring satisfies it."""
    seen: dict[int, int] = {}
    for pos, col in points:
        if seen.setdefault(pos, col) != col:
            return None
    return tuple(sorted(seen.items()))


def ground_clauses(spec: SearchSpec) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All forbidden monochromatic tuples for the spec's kind.

    Each clause is a tuple of (position, color) pairs that must not hold
    simultaneously.  Structural conditions (one color per integer,
    symmetry, minimum starts) are not included here; they are handled by
    the assignment model or emitted separately by the CNF encoder.
    """
    n = spec.num_colors
    out = set()

    def add(points):
        cl = _norm_clause(points)
        if cl is not None:
            out.add(cl)

    if spec.kind == "ws-template":
        a, b, s = spec.width, spec.tail, spec.special
        top = a + b
        for u in range(1, top + 1):
            for v in range(u + 1, top - u + 1):
                for c in range(1, n + 1):
                    add(((u, c), (v, c), (u + v, c)))  # weakly sum-free
        for u in range(b + 1, top + 1):
            for v in range(u, top - u + 1):
                for c in range(1, n + 1):
                    add(((u, c), (v, c), (u + v, c)))  # past the tail x=y counts
        for u in range(1, top + 1):
            for v in range(max(u, b + 2 * a + 1 - u), top + 1):
                w = u + v - 2 * a
                if w >= 1:
                    add(((u, s), (v, s), (w, s)))  # special deep wrap
        for u in range(1, top + 1):
            for v in range(max(u, top + 1 - u), top + 1):
                w = pi(a, b, u + v)
                for c in range(1, n + 1):
                    if c != s:
                        add(((u, c), (v, c), (w, c)))  # regular wrap
    else:
        p = spec.domain_length
        strict = spec.kind == "weak-partition"
        for u in range(1, p + 1):
            for v in range(u + 1 if strict else u, p - u + 1):
                for c in range(1, n + 1):
                    add(((u, c), (v, c), (u + v, c)))
        if spec.kind == "s-template":
            s = spec.special
            for u in range(1, p + 1):
                for v in range(max(u, p - u + 1), p + 1):
                    w = u + v - p
                    for c in range(1, n + 1):
                        if c != s:
                            add(((u, c), (v, c), (w, c)))
    return tuple(sorted(out, key=lambda cl: (len(cl), cl)))


def _iter_assignments(spec: SearchSpec, limit=None, node_budget=None):
    """Yield full color tuples satisfying the spec, lexicographically."""
    size = spec.domain_length
    n = spec.num_colors
    sym = spec.symmetric
    num_steps = (size + 1) // 2 if sym else size
    pos_at = []
    for t in range(1, num_steps + 1):
        mirror = size + 1 - t
        pos_at.append((t,) if not sym or mirror == t else (t, mirror))
    allowed = []
    for ps in pos_at:
        cand = set(range(1, n + 1))
        for c, start in spec.min_starts:
            if any(p_ < start for p_ in ps):
                cand.discard(c)
        allowed.append(tuple(sorted(cand)))

    step_of = (lambda pos: min(pos, size + 1 - pos)) if sym else (lambda pos: pos)
    by_step = [[] for _ in range(num_steps + 1)]
    for cl in ground_clauses(spec):
        by_step[max(step_of(pos) for pos, _ in cl)].append(cl)

    assign = [0] * (size + 1)
    choice = [0] * (num_steps + 2)
    nodes = 0
    found = 0
    t = 1
    while t >= 1:
        if t > num_steps:
            yield tuple(assign[1:])
            found += 1
            if limit is not None and found >= limit:
                return
            t -= 1
            continue
        i = choice[t]
        if i >= len(allowed[t - 1]):
            choice[t] = 0
            for p_ in pos_at[t - 1]:
                assign[p_] = 0
            t -= 1
            continue
        choice[t] = i + 1
        c = allowed[t - 1][i]
        for p_ in pos_at[t - 1]:
            assign[p_] = c
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise IntractableSearch(
                f"search needs more than {node_budget} nodes, refusing"
            )
        if not any(
            all(assign[pos] == col for pos, col in cl) for cl in by_step[t]
        ):
            t += 1
    return


def enumerate_colorings(spec: SearchSpec, limit=None,
                        node_budget=None) -> Iterator[Coloring]:
    """All colorings meeting the spec, as Coloring values, lex order.

    Colors may be unused in a solution (the CNF side has the same
    freedom), so the yielded colorings allow empty subsets.
    """
    for colors in _iter_assignments(spec, limit=limit, node_budget=node_budget):
        yield Coloring(colors, spec.num_colors, allow_empty=True)


def _as_template(spec: SearchSpec, coloring: Coloring):
    if spec.kind == "s-template":
        return STemplate(coloring, special=spec.special)
    return WSTemplate(coloring, width=spec.width, tail=spec.tail,
                      special=spec.special)


def brute_force_template(spec: SearchSpec, node_budget=20_000_000):
    """Exact maximum template width for the spec, with a witness.

    With spec.width set this is a feasibility probe at that width alone.
    Otherwise widths are scanned up to the exact-partition ceiling (a
    template's coloring is itself a (weakly) sum-free partition, so the
    record value bounds the width).  Returns (0, None) when no width
    works.
    """
    if not spec.kind.endswith("template"):
        raise ValueError("template search needs a template kind")
    if spec.width is not None:
        got = next(iter(enumerate_colorings(spec, limit=1,
                                            node_budget=node_budget)), None)
        return (spec.width, _as_template(spec, got)) if got else (0, None)

    n = spec.num_colors
    if spec.kind == "s-template":
        if n not in EXACT_SCHUR or n > 4:
            raise IntractableSearch(
                f"no width ceiling known for {n} colors at desk scale"
            )
        ceiling = EXACT_SCHUR[n]
        lo = 1
    else:
        if n not in EXACT_WEAK or n > 3:
            raise IntractableSearch(
                f"no width ceiling known for {n} colors at desk scale"
            )
        ceiling = EXACT_WEAK[n] - spec.tail
        lo = spec.tail + 1
    best, best_witness = 0, None
    for width in range(lo, ceiling + 1):
        probe = replace(spec, width=width)
        got = next(iter(enumerate_colorings(probe, limit=1,
                                            node_budget=node_budget)), None)
        if got is not None:
            best, best_witness = width, _as_template(probe, got)
    return best, best_witness


# dedicated partition oracles: canonical color order (a fresh color only
# right after all earlier ones) plus one forbidden-sums bitset per color


def _witness_fixed(n, p, weak, prefix=()):
    """Lex-least valid coloring of [1,p] extending prefix, or None."""
    forbid = [0] * (n + 1)
    members = [0] * (n + 1)
    top = (1 << (p + 1)) - 1
    assign = [0] * (p + 1)

    def place(x, c):
        bx = 1 << x
        grow = members[c] | bx
        forbid[c] |= ((grow if not weak else members[c]) << x) & top
        members[c] = grow
        assign[x] = c

    used = 0
    for x, c in enumerate(prefix, start=1):
        if forbid[c] & (1 << x):
            return None
        place(x, c)
        used = max(used, c)

    def dfs(x, used):
        if x > p:
            return True
        bx = 1 << x
        cap = min(used + 1, n)
        for c in range(1, cap + 1):
            if forbid[c] & bx:
                continue
            fold, mold = forbid[c], members[c]
            place(x, c)
            if dfs(x + 1, max(used, c)):
                return True
            forbid[c], members[c] = fold, mold
        return False

    return tuple(assign[1:]) if dfs(len(prefix) + 1, used) else None


def _prefixes_fixed(n, p, weak, depth):
    """All canonical valid prefixes of the fixed-order search, lex order."""
    out = []

    def dfs(x, used, forbid, members, acc):
        if x > depth:
            out.append(tuple(acc))
            return
        bx = 1 << x
        for c in range(1, min(used + 1, n) + 1):
            if forbid[c] & bx:
                continue
            grow = members[c] | bx
            f2 = list(forbid)
            m2 = list(members)
            f2[c] |= (grow if not weak else members[c]) << x
            m2[c] = grow
            dfs(x + 1, max(used, c), f2, m2, acc + [c])

    dfs(1, 0, [0] * (n + 1), [0] * (n + 1), [])
    return out


def _worker_witness(args):
    n, p, weak, prefix = args
    return _witness_fixed(n, p, weak, prefix)


def _witness_split(n, p, weak):
    """_witness_fixed, optionally split across SCHURKIT_WORKERS processes."""
    workers = int(os.environ.get("SCHURKIT_WORKERS", "1") or "1")
    if workers <= 1 or p < 8:
        return _witness_fixed(n, p, weak)
    depth = 4
    prefixes = _prefixes_fixed(n, p, weak, depth)
    while len(prefixes) < 2 * workers and depth < p:
        depth += 2
        prefixes = _prefixes_fixed(n, p, weak, depth)
    jobs = [(n, p, weak, pre) for pre in prefixes]
    with Pool(workers) as pool:
        results = pool.map(_worker_witness, jobs)
    hits = [r for r in results if r is not None]
    return min(hits) if hits else None


def brute_force_schur(n: int):
    """Exact largest p admitting a sum-free n-coloring, with witness.

    Settled by exhausting p+1: the backtracker visits every canonical
    assignment, so an empty run is a proof of impossibility.
    """
    if not 1 <= n <= 4:
        raise IntractableSearch("exact values beyond 4 colors are out of reach")
    value, witness = 0, None
    p = 1
    while True:
        got = _witness_split(n, p, weak=False)
        if got is None:
            break
        value, witness = p, got
        p += 1
    return value, Coloring(witness, n)


def _weak_witness_mrv(n, target, node_cap=50_000_000):
    """Most-constrained-cell-first hunt for one weak coloring of [1,target].

    Deterministic: scans cells in increasing order, keeps the first one
    with the fewest allowed colors, tries colors ascending with the
    canonical fresh-color cap.  Returns None if the node cap trips.
    """
    members = [0] * (n + 1)
    assign = [0] * (target + 1)
    unassigned = set(range(1, target + 1))
    nodes = 0

    def ok_color(x, c):
        m = members[c]
        if (m >> x) & m:  # y in class with x+y in class
            return False
        t = m & ((1 << x) - 1)
        while t:  # y < x in class with x-y in class, x-y != y
            lb = t & -t
            y = lb.bit_length() - 1
            t ^= lb
            z = x - y
            if z != y and z >= 1 and (m >> z) & 1:
                return False
        return True

    def dfs(used):
        nonlocal nodes
        if not unassigned:
            return True
        if nodes > node_cap:
            raise IntractableSearch(f"weak witness hunt passed {node_cap} nodes")
        best_x, best_cands = None, None
        for x in sorted(unassigned):
            cands = [c for c in range(1, min(used + 1, n) + 1) if ok_color(x, c)]
            if not cands:
                return False
            if best_cands is None or len(cands) < len(best_cands):
                best_x, best_cands = x, cands
                if len(cands) == 1:
                    break
        x = best_x
        unassigned.remove(x)
        for c in best_cands:
            nodes += 1
            members[c] |= 1 << x
            assign[x] = c
            if dfs(max(used, c)):
                return True
            members[c] &= ~(1 << x)
        unassigned.add(x)
        return False

    return tuple(assign[1:]) if dfs(0) else None


def brute_force_weak_schur(n: int):
    """(value, witness, exact) for weakly sum-free n-colorings.

    Exact (existence plus exhausted impossibility) up to 3 colors.  For 4
    colors only a witness at the known record length 66 is produced; the
    impossibility side is far outside desk scale, so exact=False.
    """
    if not 1 <= n <= 4:
        raise IntractableSearch("weak values beyond 4 colors are out of reach")
    if n <= 3:
        value, witness = 0, None
        p = 1
        while True:
            got = _witness_split(n, p, weak=True)
            if got is None:
                break
            value, witness = p, got
            p += 1
        return value, Coloring(witness, n), True
    target = EXACT_WEAK[4]
    got = _weak_witness_mrv(4, target)
    if got is None:
        raise IntractableSearch("no weak witness found at the record length")
    return target, Coloring(got, 4), False
