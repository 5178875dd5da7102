#!/usr/bin/env python3
"""Hunt for a sum-free 5-coloring of [1,160] and save it as a data file.

Strategy: weighted min-conflicts over the monochromatic triples
x + y = z (x <= y), with breakout weight bumps on plateaus.  Attempts
alternate between the palindromic subspace (cells x and 161-x share a
color, halving the space) and plain random restarts with a double step
budget.  A found witness is re-verified by the package verifier before
being written.

Constructive seeds were tried and are provably dead ends: no sum-free
5-coloring of [1,160] extends the length-154 expansion of table6, its
first row, or the length-138 expansion of table5 (exact DFS refutations).
"""

import sys
import time
from pathlib import Path

import numpy as np
from numba import njit

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from schurkit import corpus
from schurkit.coloring import Coloring, verify_sum_free
from schurkit.docio import doc_for, serialize_doc

P = 160
N = 5


def build_triples(p):
    rows = [(x, y, x + y) for x in range(1, p + 1)
            for y in range(x, p - x + 1)]
    return np.array(rows, dtype=np.int32) - 1  # 0-based cells


def build_incidence(triples, p):
    t = len(triples)
    counts = np.zeros(p, dtype=np.int64)
    for row in triples:
        for cell in set(row.tolist()):
            counts[cell] += 1
    starts = np.zeros(p + 1, dtype=np.int64)
    starts[1:] = np.cumsum(counts)
    flat = np.zeros(starts[-1], dtype=np.int32)
    fill = starts[:-1].copy()
    for tid in range(t):
        for cell in set(triples[tid].tolist()):
            flat[fill[cell]] = tid
            fill[cell] += 1
    return starts, flat


@njit(cache=True, inline="always")
def _after(triples, w, colors, cell, mate, cand):
    a, b, c = triples[w, 0], triples[w, 1], triples[w, 2]
    ca = cand if a == cell or a == mate else colors[a]
    cb = cand if b == cell or b == mate else colors[b]
    cc = cand if c == cell or c == mate else colors[c]
    return ca == cb and cb == cc


@njit(cache=True, inline="always")
def _contains(triples, w, cell):
    return (triples[w, 0] == cell or triples[w, 1] == cell
            or triples[w, 2] == cell)


@njit(cache=True)
def run(colors, n, triples, starts, flat, mate_of, max_steps, seed):
    # mate_of couples cells that must share a color (identity = no tie)
    np.random.seed(seed)
    t = len(triples)
    weights = np.ones(t, dtype=np.int64)
    viol = np.zeros(t, dtype=np.uint8)
    vio_ids = np.zeros(t, dtype=np.int32)
    vio_pos = np.full(t, -1, dtype=np.int32)
    n_vio = 0
    for tid in range(t):
        if (colors[triples[tid, 0]] == colors[triples[tid, 1]]
                and colors[triples[tid, 1]] == colors[triples[tid, 2]]):
            viol[tid] = 1
            vio_ids[n_vio] = tid
            vio_pos[tid] = n_vio
            n_vio += 1

    stall = 0
    best_seen = n_vio
    for step in range(max_steps):
        if n_vio == 0:
            return step
        tid = vio_ids[np.random.randint(n_vio)]
        cell = triples[tid, np.random.randint(3)]
        mate = mate_of[cell]
        old = colors[cell]
        if np.random.random() < 0.08:
            new = old
            while new == old:
                new = np.random.randint(n) + 1
        else:
            best_delta = np.int64(1 << 60)
            new = old
            n_best = 0
            for cand in range(1, n + 1):
                if cand == old:
                    continue
                delta = np.int64(0)
                for k in range(starts[cell], starts[cell + 1]):
                    w = flat[k]
                    after = _after(triples, w, colors, cell, mate, cand)
                    if after and not viol[w]:
                        delta += weights[w]
                    elif viol[w] and not after:
                        delta -= weights[w]
                if mate != cell:
                    for k in range(starts[mate], starts[mate + 1]):
                        w = flat[k]
                        if _contains(triples, w, cell):
                            continue
                        after = _after(triples, w, colors, cell, mate, cand)
                        if after and not viol[w]:
                            delta += weights[w]
                        elif viol[w] and not after:
                            delta -= weights[w]
                if delta < best_delta:
                    best_delta = delta
                    new = cand
                    n_best = 1
                elif delta == best_delta:
                    n_best += 1
                    if np.random.randint(n_best) == 0:
                        new = cand
            if best_delta > 0:
                stall += 1
                if stall >= 64:
                    for i in range(n_vio):
                        weights[vio_ids[i]] += 1
                    stall = 0
                continue
        colors[cell] = new
        if mate != cell:
            colors[mate] = new
        for k in range(starts[cell], starts[cell + 1]):
            w = flat[k]
            now = (colors[triples[w, 0]] == colors[triples[w, 1]]
                   and colors[triples[w, 1]] == colors[triples[w, 2]])
            if now and not viol[w]:
                viol[w] = 1
                vio_ids[n_vio] = w
                vio_pos[w] = n_vio
                n_vio += 1
            elif viol[w] and not now:
                viol[w] = 0
                last = n_vio - 1
                moved = vio_ids[last]
                at = vio_pos[w]
                vio_ids[at] = moved
                vio_pos[moved] = at
                vio_pos[w] = -1
                n_vio = last
        if mate != cell:
            for k in range(starts[mate], starts[mate + 1]):
                w = flat[k]
                if _contains(triples, w, cell):
                    continue
                now = (colors[triples[w, 0]] == colors[triples[w, 1]]
                       and colors[triples[w, 1]] == colors[triples[w, 2]])
                if now and not viol[w]:
                    viol[w] = 1
                    vio_ids[n_vio] = w
                    vio_pos[w] = n_vio
                    n_vio += 1
                elif viol[w] and not now:
                    viol[w] = 0
                    last = n_vio - 1
                    moved = vio_ids[last]
                    at = vio_pos[w]
                    vio_ids[at] = moved
                    vio_pos[moved] = at
                    vio_pos[w] = -1
                    n_vio = last
        if n_vio < best_seen:
            best_seen = n_vio
            stall = 0
    return -1


def main():
    out = corpus.data_path("sumfree5_160.schur")
    triples = build_triples(P)
    starts, flat = build_incidence(triples, P)
    identity = np.arange(P, dtype=np.int32)
    mirror = (P - 1) - identity  # couples x with P+1-x (0-based)
    rng = np.random.default_rng(20260819)
    t0 = time.time()
    attempt = 0
    while True:
        attempt += 1
        if attempt % 2:
            half = rng.integers(1, N + 1, size=P // 2).astype(np.uint8)
            colors = np.concatenate([half, half[::-1]])
            mate_of, kind, budget = mirror, "symmetric", 40_000_000
        else:
            colors = rng.integers(1, N + 1, size=P).astype(np.uint8)
            mate_of, kind, budget = identity, "plain", 80_000_000
        steps = run(colors, N, triples, starts, flat, mate_of, budget,
                    int(rng.integers(1, 2**31)))
        el = time.time() - t0
        if steps >= 0:
            w = Coloring(tuple(int(c) for c in colors), N)
            assert verify_sum_free(w) is None
            how = ("restricted to palindromic colorings"
                   if kind == "symmetric" else "with random restarts")
            doc = doc_for(w, "sumfree", provenance=(
                "sum-free 5-coloring of [1,160], the longest possible "
                "with 5 colors",
                "found by weighted min-conflicts local search "
                f"{how} (tools/find_160.py)",
            ))
            out.write_text(serialize_doc(doc))
            corpus.write_checksums()
            print(f"witness found: attempt {attempt} ({kind}) "
                  f"steps {steps} elapsed {el:.1f}s -> {out}")
            return
        print(f"attempt {attempt} ({kind}): no luck, elapsed {el:.1f}s",
              flush=True)


if __name__ == "__main__":
    main()
