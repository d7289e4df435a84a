from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tournament_entropy.core import transitive
from tournament_entropy.entropy import exact_power_sum
from tournament_entropy.enumeration import enumerate_tournaments
from tournament_entropy.order import (
    T5_ORDER,
    build_order,
    element_covers,
    hasse_edges,
    named_4_tournaments,
    named_5_tournaments,
    power_sum_csv,
    to_dot,
)


def _closure(pairs, labels):
    rel = set(pairs)
    for k, i, j in product(labels, repeat=3):
        if (i, k) in rel and (k, j) in rel:
            rel.add((i, j))
    return rel


def test_argument_checks():
    with pytest.raises(ValueError):
        build_order([transitive(3), transitive(4)], 2)
    with pytest.raises(ValueError):
        build_order([], 2)
    with pytest.raises(ValueError):
        build_order([transitive(3)], 5)
    with pytest.raises(ValueError):
        build_order([transitive(3)] * 2, 2, ["a", "a"])


def test_singleton():
    order = build_order([transitive(4)], 2, ["x"])
    assert order.relation == set() and hasse_edges(order) == []


def test_distinct_values_give_chain():
    ts = list(enumerate_tournaments(4))
    order = build_order(ts, 4)
    assert len(order.classes()) == 4
    assert len(hasse_edges(order)) == 3


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([4, 5, 6]), st.sampled_from([2, 3, 4]))
def test_covers_generate_relation(n, alpha):
    ts = list(enumerate_tournaments(n))
    order = build_order(ts, alpha)
    labels = [e.label for e in order.elements]
    assert _closure(element_covers(order), labels) == order.relation
    assert len(order.classes()) == len({exact_power_sum(t, alpha) for t in ts})


def test_less_agrees_with_entropy():
    from tournament_entropy.entropy import renyi_exact

    named = dict(named_5_tournaments())
    order = build_order(list(named.values()), 2, list(named))
    assert order.less("TT5", "R5")
    assert renyi_exact(named["TT5"], 2).value < renyi_exact(named["R5"], 2).value
    with pytest.raises(KeyError):
        order.less("TT5", "nope")


def test_named_tournaments():
    assert [lab for lab, _ in named_4_tournaments()] == ["TS4", "TK4", "TO4", "TT4"]
    named = named_5_tournaments()
    assert tuple(lab for lab, _ in named) == T5_ORDER
    assert len({t for _, t in named}) == 12


def test_dot_output():
    named = named_4_tournaments()
    order = build_order([t for _, t in named], 2, [lab for lab, _ in named])
    dot = to_dot(order)
    assert dot == to_dot(order)
    assert dot.startswith("digraph H2 {") and "rankdir=BT" in dot
    assert '"TK4|TO4"' in dot
    twins = to_dot(order, merge=False)
    assert '"TK4";' in twins and '"TO4";' in twins and "|" not in twins


def test_power_sum_csv():
    text = power_sum_csv([("TT3", transitive(3))]).splitlines()
    assert text == ["label,raw2,raw3,raw4", "TT3,5,9,17"]
