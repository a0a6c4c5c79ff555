from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_dicke_reduction, trace_out_loops
from resistcert._guards import GuardError
from resistcert.core import PureVector, SystemShape, outer, partial_trace
from resistcert.dicke import (DickeCombo, DickeMixture, KMixtureError, binom, dicke_expand,
                              hankel, is_k_mixture, mixture_operator, moments, reduce_combo,
                              reduce_dicke, reduce_mixture, weight_labels)


def test_expand_has_binomial_norm():
    vec, norm = dicke_expand(5, 2)
    assert norm == 10 == vec.norm2()
    assert sorted(vec.amplitudes) == weight_labels(5, 2)


def test_reduction_weights_closed_form():
    # |D^4_2> onto 2 qubits: s ones seen among 2 positions
    assert reduce_dicke(4, 2, 2).coeffs == (Fraction(1, 6), Fraction(4, 6), Fraction(1, 6))
    assert reduce_dicke(7, 0, 3).coeffs == (1, 0, 0, 0)


@pytest.mark.parametrize("n,i,k", [(4, 2, 2), (5, 1, 3), (6, 3, 4), (5, 5, 2)])
def test_reduction_matches_loop_oracle(n, i, k):
    assert dict(mixture_operator(reduce_dicke(n, i, k)).entries) == brute_dicke_reduction(n, i, k)


def test_reduction_is_the_same_on_every_subset():
    vec, norm = dicke_expand(5, 2)
    rho = outer(vec)
    ref = mixture_operator(reduce_dicke(5, 2, 3)).scaled(norm)
    for keep in combinations(range(5), 3):
        lost = [p for p in range(5) if p not in keep]
        assert partial_trace(rho, lost) == ref


def test_reduction_argument_checks():
    with pytest.raises(ValueError):
        reduce_dicke(5, 2, 5)
    with pytest.raises(ValueError):
        reduce_dicke(5, 6, 2)


def test_binomial_guard():
    with pytest.raises(GuardError):
        binom(65, 3)
    assert binom(5, 7) == 0


def test_combo_validation():
    with pytest.raises(ValueError):
        DickeCombo(5, {0: 1})
    with pytest.raises(ValueError):
        DickeCombo(5, {0: 1, 3: -1})
    with pytest.raises(ValueError):
        DickeCombo(5, {0: 1, 6: 1})
    assert DickeCombo(5, {3: 1, 0: 2, 1: 0}).support == [0, 3]


def test_gap_condition():
    combo = DickeCombo(7, {0: 1, 4: 1})
    assert is_k_mixture(combo, 3)
    assert not is_k_mixture(combo, 4)
    with pytest.raises(KMixtureError):
        reduce_combo(combo, 4)


def test_coherent_combo_reduces_to_incoherent_mixture():
    # unit amplitudes on |D^6_0> and |D^6_4> carry squared weights 1 and C(6,4)
    n, k = 6, 2
    amps = {x: 1 for i in (0, 4) for x in weight_labels(n, i)}
    pure = outer(PureVector(SystemShape(n, 2), amps))
    mix = reduce_combo(DickeCombo(n, {0: 1, 4: binom(n, 4)}), k)
    assert partial_trace(pure, range(k, n)) == mixture_operator(mix)


def test_moments_and_hankel_shapes():
    mix = DickeMixture(3, (1, 3, 3, 1))
    assert moments(mix) == [1, 1, 1, 1]
    pair = hankel(mix)
    assert pair.m0 == ((1, 1), (1, 1))
    assert pair.m1 == ((1, 1), (1, 1))
    pair4 = hankel(DickeMixture(4, (1, 0, 0, 0, 1)))
    assert len(pair4.m0) == 3 and len(pair4.m1) == 2
    assert pair4.m1[1][1] == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 9), st.data())
def test_reduction_preserves_trace_and_chains(n, data):
    i = data.draw(st.integers(0, n))
    k = data.draw(st.integers(2, n - 1))
    j = data.draw(st.integers(1, k - 1))
    mix = reduce_dicke(n, i, k)
    assert mix.trace() == 1
    assert reduce_mixture(mix, j) == reduce_dicke(n, i, j)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.data())
def test_mixture_reduction_matches_partial_trace(k, data):
    coeffs = data.draw(st.lists(st.fractions(0, 3, max_denominator=4), min_size=k + 1,
                                max_size=k + 1).filter(any))
    j = data.draw(st.integers(1, k - 1))
    mix = DickeMixture(k, tuple(coeffs))
    op = mixture_operator(mix)
    assert partial_trace(op, range(j, k)) == mixture_operator(reduce_mixture(mix, j))
    assert dict(partial_trace(op, range(j, k)).entries) == trace_out_loops(dict(op.entries), k,
                                                                          range(j, k))
