import json
from itertools import combinations, permutations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tournament_entropy.core import (
    DuplicatePairError,
    LoopError,
    MissingPairError,
    RotationalSymbol,
    ScoreSequence,
    Tournament,
    TournamentError,
    VertexRangeError,
    canonical_form,
    consecutive_rotational,
    count_3cycles,
    count_c4_t4,
    cycles_through,
    from_arcs,
    hierarchy,
    induced_subtournament,
    is_doubly_regular,
    is_isomorphic,
    is_landau,
    is_nearly_regular,
    is_quasi_doubly_regular,
    is_regular,
    is_transitive,
    quadratic_residue_tournament,
    rotational,
    score_sequence,
    transitive,
)
from tournament_entropy.enumeration import enumerate_tournaments


@st.composite
def tournaments(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    return Tournament(n, draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1)))


def brute_3cycles(t):
    return sum(
        1
        for a, b, c in combinations(range(t.n), 3)
        if (t.beats(a, b) and t.beats(b, c) and t.beats(c, a)) or (t.beats(b, a) and t.beats(c, b) and t.beats(a, c))
    )


QR7 = quadratic_residue_tournament(7)
R7 = consecutive_rotational(7)
TS4 = from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])


def test_from_arcs_cycle():
    c3 = from_arcs(3, [(0, 1), (1, 2), (2, 0)])
    assert c3.beats(0, 1) and c3.beats(1, 2) and c3.beats(2, 0)
    assert sorted(c3.arcs()) == [(0, 1), (1, 2), (2, 0)]


def test_from_arcs_single_vertex():
    assert from_arcs(1, []).n == 1


@pytest.mark.parametrize(
    "arcs, err",
    [
        ([(0, 1), (1, 2)], MissingPairError),
        ([(0, 1), (1, 0), (1, 2), (2, 0)], DuplicatePairError),
        ([(0, 0), (0, 1), (1, 2), (2, 0)], LoopError),
        ([(0, 1), (1, 2), (2, 5)], VertexRangeError),
    ],
)
def test_from_arcs_errors(arcs, err):
    with pytest.raises(err):
        from_arcs(3, arcs)


def test_errors_are_value_errors():
    assert issubclass(MissingPairError, TournamentError) and issubclass(TournamentError, ValueError)


def test_transitive():
    assert score_sequence(transitive(3)).scores == (0, 1, 2)
    assert transitive(1).scores == (0,)
    t = transitive(6)
    assert all(t.beats(i, j) == (i > j) for i in range(6) for j in range(6) if i != j)


def test_rotational_examples():
    assert is_isomorphic(rotational(RotationalSymbol(7, frozenset({1, 2, 4}))), QR7)
    assert rotational(RotationalSymbol(7, frozenset({1, 2, 3}))) == R7
    assert consecutive_rotational(3) == rotational(RotationalSymbol(3, frozenset({1})))
    assert score_sequence(QR7).scores == (3,) * 7


@pytest.mark.parametrize("members", [{1, 6, 2}, {1, 2}, {0, 1, 2}])
def test_invalid_symbol(members):
    with pytest.raises(TournamentError):
        RotationalSymbol(7, frozenset(members))


def test_even_consecutive_rotational_rejected():
    with pytest.raises(TournamentError):
        consecutive_rotational(6)


@pytest.mark.parametrize("p", [1, 5, 9, 13])
def test_qr_rejects(p):
    with pytest.raises(TournamentError):
        quadratic_residue_tournament(p)


@pytest.mark.parametrize("p", [3, 7, 11, 19])
def test_qr_doubly_regular(p):
    t = quadratic_residue_tournament(p)
    k = (p - 3) // 4
    assert is_doubly_regular(t)
    assert all((t.out_masks[x] & t.out_masks[y]).bit_count() == k for x, y in combinations(range(p), 2))


def test_predicates():
    assert is_quasi_doubly_regular(consecutive_rotational(5))
    assert is_transitive(transitive(4)) and not is_regular(transitive(4))
    assert is_nearly_regular(TS4) and not is_nearly_regular(transitive(4))
    assert not is_doubly_regular(R7)


@given(st.sampled_from([3, 5, 7, 9, 11, 13]), st.randoms(use_true_random=False))
def test_rotational_always_regular(n, rnd):
    members = {d if rnd.random() < 0.5 else n - d for d in range(1, (n - 1) // 2 + 1)}
    assert is_regular(rotational(RotationalSymbol(n, frozenset(members))))


def test_score_sequences():
    assert score_sequence(TS4).scores == (1, 1, 2, 2)
    assert score_sequence(transitive(7)).scores == tuple(range(7))
    with pytest.raises(ValueError):
        ScoreSequence((0, 0, 3))
    assert is_landau((1, 1, 1)) and not is_landau((0, 0, 3))


def test_3cycle_examples():
    assert count_3cycles(transitive(8)) == 0
    assert count_3cycles(QR7) == 14 == brute_3cycles(QR7)
    # TS4 = C4 carries two 3-cycles
    assert count_3cycles(TS4) == 2 == brute_3cycles(TS4)


@pytest.mark.parametrize("n", range(1, 8))
def test_3cycles_match_brute_force(n):
    for t in enumerate_tournaments(n):
        assert count_3cycles(t) == brute_3cycles(t)
        assert sum(cycles_through(t)) == 3 * count_3cycles(t)


def test_c4_t4_examples():
    assert count_c4_t4(transitive(5))[:2] == (0, 5)
    assert count_c4_t4(QR7)[1] == 0
    assert count_c4_t4(R7)[1] == 7 == 7 * comb(3, 3)
    with pytest.raises(TournamentError):
        count_c4_t4(transitive(3))


@pytest.mark.parametrize("n", range(4, 9))
def test_four_subtournament_identities(n):
    for t in enumerate_tournaments(n):
        c4, t4, to4, tk4 = count_c4_t4(t)
        c3 = count_3cycles(t)
        assert c4 + t4 + to4 + tk4 == comb(n, 4)
        assert (n - 3) * c3 == 2 * c4 + to4 + tk4
        assert 4 * c4 == 4 * t4 - (n - 3) * (comb(n, 3) - 4 * c3)


def test_canonical_form_examples():
    assert canonical_form(rotational(RotationalSymbol(7, frozenset({1, 2, 4})))) == canonical_form(
        rotational(RotationalSymbol(7, frozenset({3, 5, 6})))
    )
    assert canonical_form(TS4) != canonical_form(transitive(4))
    assert len({canonical_form(t) for t in enumerate_tournaments(5)}) == 12


def test_qr7_and_complement_symbol_brute_force():
    a = rotational(RotationalSymbol(7, frozenset({1, 2, 4})))
    b = rotational(RotationalSymbol(7, frozenset({3, 5, 6})))
    assert any(b.relabel(p) == a for p in permutations(range(7)))


@settings(max_examples=60, deadline=None)
@given(tournaments(), st.randoms(use_true_random=False))
def test_canonical_form_relabel_invariant(t, rnd):
    form = canonical_form(t)
    for _ in range(100):
        order = list(range(t.n))
        rnd.shuffle(order)
        assert canonical_form(t.relabel(order)) == form


def test_induced_subtournament():
    c3 = consecutive_rotational(3)
    assert is_isomorphic(induced_subtournament(QR7, QR7.out_neighbors(0)), c3)
    assert is_transitive(induced_subtournament(R7, R7.out_neighbors(0)))
    assert induced_subtournament(QR7, [4]).n == 1
    with pytest.raises(VertexRangeError):
        induced_subtournament(QR7, [0, 7])


def test_hierarchy():
    from fractions import Fraction

    assert hierarchy(QR7) == 0
    assert hierarchy(transitive(3)) == 1
    assert hierarchy(TS4) == Fraction(1, 5)
    with pytest.raises(TournamentError):
        hierarchy(transitive(1))


@given(tournaments(min_n=2))
def test_score_sum_and_landau(t):
    assert sum(t.scores) == t.n * (t.n - 1) // 2
    assert is_landau(t.scores)


@given(tournaments())
def test_text_and_json_roundtrip(t):
    assert Tournament.from_text(t.to_text()) == t
    assert Tournament.from_json(t.to_json()) == t
    assert json.loads(t.to_json())["n"] == t.n


def test_text_format():
    assert transitive(3).to_text() == "n=3 bits=0"
    assert from_arcs(3, [(0, 1), (1, 2), (2, 0)]).to_text() == "n=3 bits=5"
    with pytest.raises(TournamentError):
        Tournament.from_text("bits=3")


@given(tournaments(min_n=2))
def test_converse_and_reverse(t):
    assert t.converse().converse() == t
    i, j = 0, 1
    assert t.reverse_arc(i, j).beats(i, j) == t.beats(j, i)
    assert t.reverse_arc(i, j).reverse_arc(j, i) == t


def test_relabel_requires_permutation():
    with pytest.raises(TournamentError):
        transitive(3).relabel([0, 0, 1])


def test_hashable_and_immutable():
    t = transitive(4)
    assert {t: 1}[transitive(4)] == 1
    with pytest.raises(AttributeError):
        t.n = 5
