from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from tournament_entropy.core import (
    Tournament,
    consecutive_rotational,
    from_arcs,
    quadratic_residue_tournament,
    transitive,
)
from tournament_entropy.entropy import power_sums
from tournament_entropy.spectral import (
    CharPoly,
    ZeroTraceError,
    char_poly,
    doubly_regular_spectrum,
    laplacian,
    normalization_constant,
    normalized_spectrum,
    power_sum_trace,
    roots,
    squarefree_decomposition,
    trace_of_power,
)
from tournament_entropy.walks import Digraph

TS4 = from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])


def _random_matrix(rng, n):
    return [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.randoms(use_true_random=False))
def test_char_poly_matches_sympy(n, rnd):
    m = _random_matrix(rnd, n)
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.Matrix(m).charpoly(x).as_expr(), x).all_coeffs()
    assert list(char_poly(m).coeffs) == [int(c) for c in expected]


def test_char_poly_examples():
    assert char_poly(laplacian(consecutive_rotational(3))).coeffs == (1, -3, 3, 0)
    # transitive Laplacians are triangular with the scores on the diagonal
    assert char_poly(laplacian(transitive(3))).coeffs == (1, -3, 2, 0)
    assert char_poly([[0, 0], [0, 0]]).coeffs == (1, 0, 0)
    with pytest.raises(ValueError):
        char_poly([[1, 2]])


def test_char_poly_call():
    p = CharPoly((1, -3, 2))
    assert p(1) == 0 and p(2) == 0 and p(0) == 2


def test_roots_of_power():
    spec = roots(CharPoly((1,) + (0,) * 5))
    assert len(spec) == 5 and all(z == 0 for z in spec.eigenvalues)


def test_repeated_roots():
    # (x - 1)^3 (x + 2)^2
    p = sympy.Poly((sympy.Symbol("x") - 1) ** 3 * (sympy.Symbol("x") + 2) ** 2)
    spec = roots(CharPoly(tuple(int(c) for c in p.all_coeffs())))
    mult = {round(z.real): k for z, k in spec.multiplicities()}
    assert mult == {1: 3, -2: 2}


def test_squarefree_decomposition():
    # x (x - 1)^2, lowest degree first
    parts = squarefree_decomposition([0, 1, -2, 1])
    assert parts == [([Fraction(0), Fraction(1)], 1), ([Fraction(-1), Fraction(1)], 2)]


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 9), st.randoms(use_true_random=False))
def test_normalized_spectrum_properties(n, rnd):
    t = Tournament(n, rnd.getrandbits(n * (n - 1) // 2))
    spec = normalized_spectrum(t)
    g = n * (n - 1) // 2
    assert len(spec) == n
    assert abs(sum(spec.eigenvalues) - 1) < 1e-9
    assert any(abs(z) < 1e-9 for z in spec.eigenvalues)
    # Gershgorin discs of L / g
    for z in spec.eigenvalues:
        assert any(abs(z - d / g) <= d / g + 1e-9 for d in t.scores)
    # conjugate-closed
    for z in spec.eigenvalues:
        assert min(abs(z.conjugate() - w) for w in spec.eigenvalues) < 1e-9


@pytest.mark.parametrize("p", [3, 7, 11, 19])
def test_qr_spectrum_closed_form(p):
    got = sorted(normalized_spectrum(quadratic_residue_tournament(p)).eigenvalues, key=lambda z: (z.real, z.imag))
    want = sorted(doubly_regular_spectrum(p).eigenvalues, key=lambda z: (z.real, z.imag))
    assert max(abs(a - b) for a, b in zip(got, want)) < 1e-9


def test_doubly_regular_spectrum_rejects():
    with pytest.raises(ValueError):
        doubly_regular_spectrum(5)


def test_normalization_constant():
    assert normalization_constant(transitive(5)) == Fraction(1, 10)
    with pytest.raises(ZeroTraceError):
        normalization_constant(Digraph(3))
    with pytest.raises(ZeroTraceError):
        normalized_spectrum(Digraph(2))


def test_power_sum_trace_examples():
    assert power_sum_trace(TS4, 2) == Fraction(10, 36)
    assert power_sum_trace(consecutive_rotational(5), 4) == Fraction(-20, 10**4)
    assert power_sum_trace(TS4, 1) == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 8), st.randoms(use_true_random=False))
def test_power_sum_trace_matches_eigenvalues(n, rnd):
    t = Tournament(n, rnd.getrandbits(n * (n - 1) // 2))
    spec = normalized_spectrum(t)
    for k in (2, 3, 4, 5):
        assert abs(spec.power_sum(k) - float(power_sum_trace(t, k))) < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 9), st.randoms(use_true_random=False))
def test_raw_sums_match_traces(n, rnd):
    t = Tournament(n, rnd.getrandbits(n * (n - 1) // 2))
    ps = power_sums(t)
    lap = laplacian(t)
    assert (ps.raw2, ps.raw3, ps.raw4) == tuple(trace_of_power(lap, k) for k in (2, 3, 4))


def test_trace_of_power_rejects():
    with pytest.raises(ValueError):
        trace_of_power([[1]], 0)


def test_laplacian_rejects_loops():
    class Loop:
        n = 1

        def arcs(self):
            return [(0, 0)]

    with pytest.raises(ValueError):
        laplacian(Loop())
