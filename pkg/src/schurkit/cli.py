"""Command line front end.

Subcommands: verify, expand, bounds, encode, decode, search, corpus.
Exit codes are a stable contract for scripting: 0 success, 1 the input
is mathematically wrong (a verifier found a violation, a model does not
satisfy its instance), 2 usage or parse trouble.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bounds as bounds_mod
from .cnf import ModelViolation, encode_cnf, decode_model, parse_dimacs, \
    parse_model_file, to_dimacs
from .coloring import Coloring, Violation, min_elements, verify_sum_free, \
    verify_weakly_sum_free
from .corpus import check_corpus
from .docio import KINDS, ParseError, PartitionDoc, doc_for, parse_doc, \
    serialize_doc
from .expand import ExpansionReport, check_schur_tail, check_weak_tail, \
    expand_schur, expand_schur_with_tail, expand_weak, expand_weak_with_tail
from .search import IntractableSearch, SearchSpec, brute_force_schur, \
    brute_force_template, brute_force_weak_schur, enumerate_colorings
from .templates import verify_s_template, verify_ws_template

OK, BAD_MATH, BAD_USAGE = 0, 1, 2

# CLI kind vocabulary -> (search spec kind, output doc kind)
CLI_KINDS = {
    "sumfree": ("sumfree-partition", "sumfree"),
    "weak": ("weak-partition", "weakly-sumfree"),
    "s-template": ("s-template", "s-template"),
    "ws-template": ("ws-template", "ws-template"),
}


def _fail_usage(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return BAD_USAGE


def _fail_math(msg: str) -> int:
    print(msg, file=sys.stderr)
    return BAD_MATH


def _fmt_violation(v: Violation) -> str:
    return (f"violation [{v.clause}]: x={v.x} y={v.y} lands on {v.sum_image}, "
            f"all color {v.color}")


def _read_doc(path: str) -> PartitionDoc:
    return parse_doc(Path(path).read_text(), allow_empty=True)


def _verify_doc(doc: PartitionDoc):
    """None if the payload verifies under its kind tag, else the Violation."""
    if doc.kind == "sumfree":
        return verify_sum_free(doc.coloring)
    if doc.kind == "weakly-sumfree":
        return verify_weakly_sum_free(doc.coloring)
    if doc.kind == "s-template":
        got = verify_s_template(doc.coloring, doc.special)
    else:
        got = verify_ws_template(doc.coloring, doc.width, doc.tail, doc.special)
    return got if isinstance(got, Violation) else None


def _emit_doc(doc: PartitionDoc, out: str | None, summary: str) -> None:
    text = serialize_doc(doc)
    if out:
        Path(out).write_text(text)
        print(f"wrote {out}: {summary}")
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    try:
        doc = _read_doc(args.path)
        if args.kind or args.special or args.width or args.tail:
            kind = args.kind or doc.kind
            if kind in ("sumfree", "weakly-sumfree"):
                width = tail = special = None
            else:
                width = args.width or doc.width
                tail = args.tail or doc.tail
                special = args.special or doc.special
            doc = doc_for(doc.coloring, kind, width=width, tail=tail,
                          special=special, provenance=doc.provenance)
    except (OSError, ParseError) as err:
        return _fail_usage(str(err))
    bad = _verify_doc(doc)
    c = doc.coloring
    dims = f"p={c.length} n={c.num_colors}"
    if doc.kind == "ws-template":
        dims += f" width={doc.width} tail={doc.tail}"
    if doc.special is not None:
        dims += f" special={doc.special}"
    if bad is None:
        print(f"ok {doc.kind} {dims}")
        return OK
    print(f"{doc.kind} {dims}")
    return _fail_math(_fmt_violation(bad))


def _ordering_relabel(g: Coloring) -> tuple[tuple[int, int], ...]:
    mins = min_elements(g)
    order = sorted(range(1, g.num_colors + 1), key=lambda c: mins[c - 1])
    pairs = tuple((old, order.index(old) + 1)
                  for old in range(1, g.num_colors + 1))
    return pairs if any(a != b for a, b in pairs) else ()


def cmd_expand(args) -> int:
    try:
        tdoc = _read_doc(args.template)
        gdoc = _read_doc(args.partition)
        taildoc = _read_doc(args.tail) if args.tail else None
    except (OSError, ParseError) as err:
        return _fail_usage(str(err))

    if tdoc.kind not in ("s-template", "ws-template"):
        return _fail_usage(f"{args.template} is kind {tdoc.kind}; expand "
                           f"needs a template first")
    if gdoc.kind != "sumfree":
        return _fail_usage(
            f"kind-mismatch: the inner partition must be a sum-free "
            f"certificate (kind sumfree), {args.partition} is {gdoc.kind}")
    bad = verify_sum_free(gdoc.coloring)
    if bad is not None:
        return _fail_math(f"inner partition: {_fmt_violation(bad)}")
    bad = _verify_doc(tdoc)
    if bad is not None:
        return _fail_math(f"template: {_fmt_violation(bad)}")

    g = gdoc.coloring
    tail = taildoc.coloring if taildoc else None
    names = tuple(Path(p).name for p in
                  ((args.template, args.partition, args.tail) if args.tail
                   else (args.template, args.partition)))
    try:
        if tdoc.kind == "s-template":
            t = verify_s_template(tdoc.coloring, tdoc.special)
            if tail is not None:
                bad = check_schur_tail(t, tail)
                if bad is not None:
                    return _fail_math(f"tail: {_fmt_violation(bad)}")
                h = expand_schur_with_tail(t, g, tail)
                op, constant = "expand_schur_with_tail", tail.length
            else:
                h = expand_schur(t, g)
                op, constant = "expand_schur", h.length - t.width * g.length
            out_kind, mult = "sumfree", t.width
        else:
            t = verify_ws_template(tdoc.coloring, tdoc.width, tdoc.tail,
                                   tdoc.special)
            if tail is not None:
                bad = check_weak_tail(t, tail)
                if bad is not None:
                    return _fail_math(f"tail: {_fmt_violation(bad)}")
                h = expand_weak_with_tail(t, g, tail)
                op, constant = "expand_weak_with_tail", t.tail + tail.length
            else:
                h = expand_weak(t, g)
                op, constant = "expand_weak", t.tail
            out_kind, mult = "weakly-sumfree", t.width
    except ValueError as err:
        return _fail_usage(str(err))

    report = ExpansionReport(operation=op, inputs=names, length=h.length,
                             doc=doc_for(h, out_kind), multiplier=mult,
                             constant=constant,
                             relabeling=_ordering_relabel(g))
    outdoc = doc_for(h, out_kind, provenance=tuple(report.provenance_lines()))
    _emit_doc(outdoc, args.out,
              f"{out_kind} p={h.length} n={h.num_colors} "
              f"({mult}*{g.length}+{constant})")
    return OK


def cmd_bounds(args) -> int:
    if args.table3 and args.table4:
        return _fail_usage("pick one of --table3/--table4")
    if args.table3 or args.table4:
        kind = bounds_mod.S if args.table3 else bounds_mod.WS
        mismatches = 0
        for cell in bounds_mod.reproduce_tables():
            if cell.kind != kind:
                continue
            mark = " *" if cell.best else ""
            line = f"{cell.rule.label:>9}  n={cell.n:<3} {cell.computed:>10}{mark}"
            if not cell.ok:
                line += f"  MISMATCH published {cell.published}"
                mismatches += 1
            print(line)
        return BAD_MATH if mismatches else OK

    max_n = args.max_n
    s = bounds_mod.schur_ledger(max_n)
    ws = bounds_mod.weak_ledger(max_n, s)
    s.audit()
    ws.audit(s)

    def via(e):
        if e.rule is None:
            return f"base:{e.note}"
        return f"{e.rule.label} from S({e.pred})"

    print(f"{'n':>3} {'S':>12} {'via':<22} {'WS':>12} {'via':<22}")
    for n in range(1, max_n + 1):
        se, we = s.entries[n], ws.entries[n]
        print(f"{n:>3} {se.value:>12} {via(se):<22} "
              f"{we.value:>12} {via(we):<22}")
    print()
    for n in range(1, max_n + 1):
        print(ws.entries[n].machine_line(bounds_mod.WS))
    for n in range(1, max_n + 1):
        print(s.entries[n].machine_line(bounds_mod.S))
    return OK


def _spec_from_args(args) -> SearchSpec:
    spec_kind, _ = CLI_KINDS[args.kind]
    min_starts = []
    for item in args.min_start or ():
        color, _, start = item.partition(":")
        min_starts.append((int(color), int(start)))
    return SearchSpec(kind=spec_kind, num_colors=args.colors,
                      length=args.length, width=args.width, tail=args.tail,
                      special=args.special,
                      symmetric=bool(args.symmetric),
                      min_starts=tuple(min_starts))


def cmd_encode(args) -> int:
    try:
        spec = _spec_from_args(args)
        if spec.kind.endswith("template") and spec.width is None:
            return _fail_usage("encode needs --width for template kinds")
        inst = encode_cnf(spec, at_most_one=not args.no_at_most_one)
    except ValueError as err:
        return _fail_usage(str(err))
    text = to_dimacs(inst)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}: {inst.num_vars} vars "
              f"{len(inst.clauses)} clauses")
    else:
        sys.stdout.write(text)
    return OK


def cmd_decode(args) -> int:
    try:
        inst = parse_dimacs(Path(args.cnf).read_text())
        literals = parse_model_file(Path(args.model).read_text())
    except OSError as err:
        return _fail_usage(str(err))
    except ValueError as err:
        if "unsatisfiable" in str(err):
            return _fail_math(str(err))
        return _fail_usage(str(err))
    try:
        coloring = decode_model(inst, literals)
    except ModelViolation as err:
        return _fail_math(str(err))
    except ValueError as err:
        return _fail_usage(str(err))
    spec = inst.spec
    note = (f"decoded from {Path(args.model).name} against "
            f"{Path(args.cnf).name}; every clause checked and the "
            f"coloring re-verified")
    if spec.kind == "s-template":
        doc = doc_for(coloring, "s-template", special=spec.special,
                      provenance=(note,))
    elif spec.kind == "ws-template":
        doc = doc_for(coloring, "ws-template", width=spec.width,
                      tail=spec.tail, special=spec.special,
                      provenance=(note,))
    else:
        doc = doc_for(coloring,
                      "sumfree" if spec.kind == "sumfree-partition"
                      else "weakly-sumfree", provenance=(note,))
    _emit_doc(doc, args.out,
              f"{doc.kind} p={coloring.length} n={coloring.num_colors}")
    return OK


def cmd_search(args) -> int:
    try:
        spec_kind, _ = CLI_KINDS[args.kind]
        if spec_kind.endswith("template"):
            spec = _spec_from_args(args)
            width, witness = brute_force_template(
                spec, node_budget=args.node_budget)
            if witness is None:
                print(f"no {args.kind} at the requested size")
                return OK
            if spec.width is None:
                print(f"widest {args.kind} with {args.colors} colors: {width}")
            else:
                print(f"{args.kind} width {width}: found")
            if args.out:
                doc = doc_for(witness.coloring, args.kind,
                              width=width if args.kind == "ws-template"
                              else None,
                              tail=spec.tail, special=spec.special,
                              provenance=("exhaustive search witness",))
                _emit_doc(doc, args.out, f"width {width}")
            return OK
        if args.length is not None:
            spec = _spec_from_args(args)
            hit = next(iter(enumerate_colorings(spec, limit=1,
                                                node_budget=args.node_budget)),
                       None)
            if hit is None:
                print(f"no {args.kind} partition of [1,{args.length}] "
                      f"with {args.colors} colors")
                return OK
            print(f"{args.kind} partition of [1,{args.length}] "
                  f"with {args.colors} colors exists")
            if args.out:
                _, out_kind = CLI_KINDS[args.kind]
                _emit_doc(doc_for(hit, out_kind,
                                  provenance=("exhaustive search witness",)),
                          args.out, f"p={hit.length}")
            return OK
        if args.kind == "sumfree":
            value, witness = brute_force_schur(args.colors)
            print(f"S({args.colors}) = {value}")
            exact = True
        else:
            value, witness, exact = brute_force_weak_schur(args.colors)
            rel = "=" if exact else ">="
            print(f"WS({args.colors}) {rel} {value}")
        if args.out:
            _, out_kind = CLI_KINDS[args.kind]
            note = ("exhaustive search witness" if exact
                    else "search witness; exhaustiveness not established")
            _emit_doc(doc_for(witness, out_kind, provenance=(note,)),
                      args.out, f"p={witness.length}")
        return OK
    except IntractableSearch as err:
        return _fail_usage(f"refusing the search: {err}")
    except ValueError as err:
        return _fail_usage(str(err))


def cmd_corpus(args) -> int:
    ok, lines = check_corpus(rederive=not args.no_rederive)
    for line in lines:
        print(line)
    return OK if ok else BAD_MATH


def _add_spec_flags(sub, with_length=True):
    sub.add_argument("--kind", required=True, choices=sorted(CLI_KINDS))
    sub.add_argument("--colors", required=True, type=int)
    if with_length:
        sub.add_argument("--length", type=int,
                         help="domain size for partition kinds")
    sub.add_argument("--width", type=int, help="template width")
    sub.add_argument("--tail", type=int, help="ws-template tail length")
    sub.add_argument("--special", type=int, help="template special color")
    sub.add_argument("--symmetric", action="store_true",
                     help="force x and p+1-x to share a color")
    sub.add_argument("--min-start", action="append", metavar="COLOR:START",
                     help="smallest integer allowed to carry a color "
                          "(repeatable)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="schurkit",
        description="Certify, construct and search sum-free and weakly "
                    "sum-free partitions and their templates.")
    subs = ap.add_subparsers(dest="command", required=True)

    v = subs.add_parser("verify", help="check a partition/template file")
    v.add_argument("path")
    v.add_argument("--kind", choices=KINDS, help="override the kind tag")
    v.add_argument("--width", type=int)
    v.add_argument("--tail", type=int)
    v.add_argument("--special", type=int)
    v.set_defaults(fn=cmd_verify)

    e = subs.add_parser("expand",
                        help="blow up a partition through a template")
    e.add_argument("template")
    e.add_argument("partition")
    e.add_argument("--tail", help="custom tail coloring file")
    e.add_argument("--out", help="output file (default stdout)")
    e.set_defaults(fn=cmd_expand)

    b = subs.add_parser("bounds", help="lower-bound ledgers and tables")
    b.add_argument("max_n", type=int)
    b.add_argument("--table3", action="store_true",
                   help="reproduce the published 24-cell table of "
                        "chained bounds")
    b.add_argument("--table4", action="store_true",
                   help="same for the weak table")
    b.set_defaults(fn=cmd_bounds)

    en = subs.add_parser("encode", help="emit a DIMACS instance")
    _add_spec_flags(en)
    en.add_argument("--no-at-most-one", action="store_true",
                    help="drop the at-most-one-color clauses")
    en.add_argument("--out")
    en.set_defaults(fn=cmd_encode)

    de = subs.add_parser("decode",
                         help="turn a solver model into a verified file")
    de.add_argument("cnf")
    de.add_argument("model")
    de.add_argument("--out")
    de.set_defaults(fn=cmd_decode)

    se = subs.add_parser("search", help="exhaustive search at desk scale")
    _add_spec_flags(se)
    se.add_argument("--node-budget", type=int, default=20_000_000)
    se.add_argument("--out", help="write the witness here")
    se.set_defaults(fn=cmd_search)

    co = subs.add_parser("corpus", help="check every bundled payload")
    co.add_argument("--no-rederive", action="store_true",
                    help="skip re-deriving the repaired/completed payloads")
    co.set_defaults(fn=cmd_corpus)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
