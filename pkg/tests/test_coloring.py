import pytest
from hypothesis import given
from hypothesis import strategies as st

from schurkit.coloring import (
    Coloring,
    from_subsets,
    is_symmetric,
    min_elements,
    order_subsets,
    verify_sum_free,
    verify_weakly_sum_free,
)

from oracles import naive_sum_free, naive_weakly_sum_free

W13 = Coloring((1, 2, 2, 1, 3, 3, 3, 3, 3, 1, 2, 2, 1), 3)


def small_colorings():
    return st.integers(1, 4).flatmap(
        lambda n: st.lists(st.integers(1, n), min_size=n, max_size=14).map(
            lambda cs: Coloring(tuple(cs), n, allow_empty=True)
        )
    )


def test_known_witness_is_sum_free():
    assert verify_sum_free(W13) is None
    assert verify_weakly_sum_free(W13) is None


def test_sum_free_catches_x_equals_y():
    # {1,2} breaks on 1+1=2, weak verification does not care
    c = Coloring((1, 1), 1)
    bad = verify_sum_free(c)
    assert bad is not None and (bad.x, bad.y, bad.sum_image) == (1, 1, 2)
    assert verify_weakly_sum_free(c) is None


@given(small_colorings())
def test_verifiers_agree_with_naive(c):
    subs = c.subsets()
    assert (verify_sum_free(c) is None) == (naive_sum_free(subs) is None)
    assert (verify_weakly_sum_free(c) is None) == (
        naive_weakly_sum_free(subs) is None
    )


@given(small_colorings())
def test_violation_reports_are_true(c):
    bad = verify_sum_free(c)
    if bad is not None:
        assert c.color_of(bad.x) == c.color_of(bad.y) == c.color_of(bad.sum_image)
        assert bad.x + bad.y == bad.sum_image
    bad = verify_weakly_sum_free(c)
    if bad is not None:
        assert bad.x != bad.y
        assert c.color_of(bad.x) == c.color_of(bad.y) == c.color_of(bad.sum_image)


def test_subset_round_trip():
    c = from_subsets([(1, 4), (2, 3)])
    assert c.colors == (1, 2, 2, 1)
    assert c.subsets() == [(1, 4), (2, 3)]
    with pytest.raises(ValueError):
        from_subsets([(1, 2), (2, 3)])  # 2 appears twice
    with pytest.raises(ValueError):
        from_subsets([(1, 3)])  # 2 missing


def test_ordering_and_mins():
    c = Coloring((2, 1, 1, 2), 2)
    assert min_elements(c) == (2, 1)
    ordered = order_subsets(c)
    assert ordered.colors == (1, 2, 2, 1)
    assert min_elements(ordered) == (1, 2)


def test_symmetry_predicate():
    assert is_symmetric(Coloring((1, 2, 2, 1), 2))
    assert not is_symmetric(Coloring((1, 2, 1, 2), 2))


def test_rejects_malformed():
    with pytest.raises(ValueError):
        Coloring((), 1)
    with pytest.raises(ValueError):
        Coloring((1, 3), 2)  # color out of range
    with pytest.raises(ValueError):
        Coloring((1, 1), 2)  # color 2 unused
    Coloring((1, 1), 2, allow_empty=True)  # but fine when allowed
