import pytest

from schurkit.bounds import (
    PUBLISHED_S_CELLS,
    PUBLISHED_WS_CELLS,
    S,
    S_BASES,
    S_RULES,
    WS,
    WS_BASES,
    WS_RULES,
    growth_rate,
    reproduce_tables,
    sandwich_check,
    schur_ledger,
    weak_ledger,
)

# frozen chained values (computed once from the registered rules and bases,
# cross-checked against the published per-rule cells below)
S_CHAIN = {
    9: 17803, 10: 60948, 11: 203828, 12: 644628,
    13: 2011290, 14: 6765288, 15: 23160388,
}
WS_CHAIN = {
    6: 642, 7: 2146, 8: 6976, 9: 22536, 10: 71256, 11: 243794,
    12: 815314, 13: 2649772, 14: 8560800, 15: 27074400,
}


def test_seeded_bases():
    s = schur_ledger(8)
    assert [s.value(n) for n in range(1, 9)] == [1, 4, 13, 44, 160, 536,
                                                 1696, 5286]
    ws = weak_ledger(5, s)
    assert [ws.value(n) for n in range(1, 6)] == [2, 8, 23, 66, 196]
    # ties go to the rule, so several proved values carry rule derivations:
    # S(2)=3*1+1, S(3)=3*4+1, S(8)=33*160+6, WS(4)=42*1+24
    assert {n for n in range(1, 9) if s.is_exact(n)} == {1, 4, 5}
    assert (s.entries[2].rule.a, s.entries[2].pred) == (3, 1)
    assert (s.entries[8].rule.a, s.entries[8].pred) == (33, 5)
    assert {n for n in range(1, 6) if ws.is_exact(n)} == {1, 2, 3}
    e = ws.entries[4]
    assert e.value == 66 and (e.rule.a, e.rule.b, e.pred) == (42, 24, 1)


def test_chained_values():
    s = schur_ledger(15)
    for n, v in S_CHAIN.items():
        assert s.value(n) == v, n
    ws = weak_ledger(15, s)
    for n, v in WS_CHAIN.items():
        assert ws.value(n) == v, n


def test_derivations_recorded():
    s = schur_ledger(15)
    e = s.entries[10]
    assert (e.rule.a, e.rule.b, e.pred) == (380, 148, 5)
    assert e.machine_line(S) == "S 10 60948 rule:380x+148 pred:5"
    assert s.entries[5].machine_line(S) == "S 5 160 base:exact pred:-"
    # ties go to the rule: S(7) via the 1160-rule from S(1) equals the base
    e7 = s.entries[7]
    assert e7.value == 1696 and e7.rule is not None
    assert (e7.rule.a, e7.pred) == (1160, 1)


def test_audit_passes():
    s = schur_ledger(15)
    s.audit()
    ws = weak_ledger(15, s)
    ws.audit(s)


def test_overflow_headroom():
    # the chain must stay in exact integer arithmetic far beyond the table;
    # one rule application spans the whole 5-index gap
    s = schur_ledger(30)
    assert s.value(30) == 380 * s.value(25) + 148
    assert s.value(30) > 10 ** 15


def test_published_cells_all_match():
    cells = reproduce_tables()
    assert len(cells) == 48
    for cell in cells:
        assert cell.computed == cell.published, (cell.kind, cell.rule.a, cell.n)


def test_highlight_pattern():
    cells = reproduce_tables()
    s_best = {c.n: c.rule.a for c in cells if c.kind == S and c.best}
    assert s_best == {8: 33, 9: 111, 10: 380, 11: 380, 12: 380,
                      13: 33, 14: 380, 15: 380}
    ws_best = {c.n: c.rule.a for c in cells if c.kind == WS and c.best}
    assert ws_best == {8: 13, 9: 42, 10: 42, 11: 4, 12: 4,
                       13: 13, 14: 42, 15: 42}


def test_growth_rate():
    rule = next(r for r in S_RULES if r.a == 380)
    rate = growth_rate(rule)
    assert 3.2806 <= rate <= 3.2807
    assert rate > 3.28
    with pytest.raises(ValueError):
        growth_rate(next(r for r in WS_RULES if r.a == 42))


def test_sandwich_checks_for_corpus_widths():
    assert sandwich_check(S, 4, 33) is None
    assert sandwich_check(S, 5, 111) is None
    assert sandwich_check(S, 6, 380) is None
    assert sandwich_check(WS, 4, 42) is None
    assert sandwich_check(WS, 5, 132) is None


def test_sandwich_check_fails_loudly():
    msg = sandwich_check(S, 4, 45)
    assert msg is not None and "outside" in msg
    msg = sandwich_check(S, 7, 5287)
    assert msg is not None and "best known" in msg


def test_rules_registry_shape():
    assert [(r.a, r.b) for r in S_RULES] == [
        (3, 1), (9, 4), (33, 6), (111, 43), (380, 148), (1160, 536)
    ]
    assert [(r.a, r.b) for r in WS_RULES] == [
        (4, 2), (13, 8), (42, 24), (132, 26)
    ]
    assert len(S_BASES) == 8 and len(WS_BASES) == 5
