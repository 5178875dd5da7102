#!/usr/bin/env python3
"""Regenerate the derived data files and the checksum manifest.

table6.schur and table8.schur are rebuilt from the verbatim printed
listings via the corpus protocols, so rerunning this script after an
edit to either printed file keeps the derived payloads honest.  The
witness files are re-verified (the length-44 one came out of
search.brute_force_schur(4), a few minutes of search; the length-160 one
out of tools/find_160.py).  The manifest is recomputed last.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from schurkit import corpus
from schurkit.coloring import Coloring, verify_sum_free
from schurkit.docio import doc_for, serialize_doc

S4_WITNESS = (1, 2, 1, 3, 1, 3, 2, 2, 4, 4, 4, 4, 3, 4, 1, 4, 1, 2, 1, 3, 2,
              3, 3, 2, 3, 1, 2, 1, 4, 3, 4, 3, 2, 4, 4, 4, 2, 2, 3, 1, 3, 1,
              2, 1)


def main():
    data = corpus.data_path("")

    repairs = corpus.discover_minimal_repairs(
        corpus.read_data("table6_printed.schur"), special_min=44)
    assert len(repairs) == 2, repairs
    best = repairs[0]
    doc = doc_for(best.coloring, "s-template", special=5, provenance=(
        "corpus id table6: width-111 5-color template, special color 5",
        "derived from table6_printed.schur; edits: " + "; ".join(best.edits),
        "lexicographically least of the 2 verified minimal repairs, "
        "see corpus.discover_minimal_repairs",
    ))
    (data / "table6.schur").write_text(serialize_doc(doc))
    print("table6.schur written")

    completed = corpus.complete_partial_ws_listing(
        corpus.read_data("table8_printed.schur"), corpus.table8_extension())
    doc = doc_for(completed, "ws-template", width=42, tail=23, special=4,
                  provenance=(
        "corpus id table8: 23-tail width-42 4-color template",
        "cells 43..65 are the lexicographically least completion of "
        "table8_printed.schur that also admits the one-number tail "
        "extension (the extra number is colored 1)",
        "see corpus.complete_partial_ws_listing",
    ))
    (data / "table8.schur").write_text(serialize_doc(doc))
    print("table8.schur written")

    ext = corpus.table8_extension()
    doc = doc_for(ext, "sumfree", provenance=(
        "one-cell extension tail for table8: colors position tail+1 (= 24) "
        "of the expansion window with color 1",
        "pass to `schurkit expand table8.schur <partition> --tail` to get "
        "the 42p+24-length records",
    ))
    (data / "table8_tail.schur").write_text(serialize_doc(doc))
    print("table8_tail.schur written")

    w = Coloring(S4_WITNESS, 4)
    assert verify_sum_free(w) is None
    doc = doc_for(w, "sumfree", provenance=(
        "sum-free 4-coloring of [1,44], the longest possible with 4 colors",
        "found by exhaustive search (search.brute_force_schur)",
    ))
    (data / "sumfree4_44.schur").write_text(serialize_doc(doc))
    print("sumfree4_44.schur written")

    w160 = data / "sumfree5_160.schur"
    if w160.exists():
        doc = corpus.parse_doc(w160.read_text())
        assert doc.kind == "sumfree" and doc.coloring.length == 160
        assert verify_sum_free(doc.coloring) is None
        print("sumfree5_160.schur re-verified")
    else:
        print("sumfree5_160.schur absent (tools/find_160.py makes it)")

    corpus.write_checksums()
    print("checksums written")


if __name__ == "__main__":
    main()
