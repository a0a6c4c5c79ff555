from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import min_eigenvalue, principal_minor_sums, trace_out_loops
from resistcert._guards import GuardError
from resistcert.core import (DenseOperator, PureVector, SystemShape, char_coefficients,
                             format_fraction, is_psd, negative_coefficient, outer, partial_trace,
                             partial_transpose, quadratic_form, to_fraction)

small = st.fractions(min_value=-3, max_value=3, max_denominator=5)


@st.composite
def shapes(draw, max_parties=4):
    return SystemShape(draw(st.integers(2, max_parties)), draw(st.integers(2, 3)))


@st.composite
def pure_vectors(draw, shape=None):
    shape = shape or draw(shapes())
    label = st.tuples(*[st.integers(0, shape.local_dim - 1)] * shape.n_parties)
    amps = draw(st.dictionaries(label, small.filter(bool), min_size=1, max_size=5))
    return PureVector(shape, amps)


@st.composite
def mixed_states(draw):
    shape = draw(shapes())
    terms = draw(st.lists(pure_vectors(shape), min_size=1, max_size=3))
    rho = outer(terms[0])
    for t in terms[1:]:
        rho = rho + outer(t)
    return rho


@st.composite
def symmetric_matrices(draw, max_order=4):
    n = draw(st.integers(1, max_order))
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = draw(small)
    return m


# -- scalars and construction --------------------------------------------------

def test_to_fraction_accepts_exact_inputs():
    assert to_fraction("3/7") == Fraction(3, 7)
    assert to_fraction(" -2 ") == -2
    assert to_fraction(5) == 5
    assert to_fraction(Fraction(1, 3)) == Fraction(1, 3)


@pytest.mark.parametrize("bad", [0.5, True, "0.5", "1e3", ""])
def test_to_fraction_rejects_inexact_inputs(bad):
    with pytest.raises((TypeError, ValueError)):
        to_fraction(bad)


def test_format_fraction_always_has_a_denominator():
    assert format_fraction(Fraction(2)) == "2/1"
    assert format_fraction(Fraction(-6, 4)) == "-3/2"


def test_shape_and_label_validation():
    with pytest.raises(ValueError):
        SystemShape(0, 2)
    with pytest.raises(ValueError):
        SystemShape(3, 1)
    shape = SystemShape(3, 2)
    with pytest.raises(ValueError):
        shape.check_label((0, 1))
    with pytest.raises(ValueError):
        shape.check_label((0, 2, 0))


def test_zero_vector_rejected():
    with pytest.raises(ValueError):
        PureVector(SystemShape(2, 2), {(0, 0): 0})


def test_operator_must_be_symmetric():
    with pytest.raises(ValueError):
        DenseOperator(SystemShape(1, 2), {((0,), (1,)): 1})


def test_guard_on_operator_size(monkeypatch):
    monkeypatch.setattr("resistcert.core.size_limit", lambda: 3)
    with pytest.raises(GuardError):
        outer(PureVector(SystemShape(2, 2), {(0, 0): 1, (1, 1): 1}))


# -- partial trace --------------------------------------------------------------

def test_bell_pair_reduces_to_half_identity():
    bell = outer(PureVector(SystemShape(2, 2), {(0, 0): 1, (1, 1): 1}))
    red = partial_trace(bell, [0])
    assert dict(red.entries) == {((0,), (0,)): 1, ((1,), (1,)): 1}


def test_ghz_two_party_reduction_is_diagonal():
    ghz = outer(PureVector(SystemShape(3, 2), {(0, 0, 0): 1, (1, 1, 1): 1}))
    assert partial_trace(ghz, [2]).is_diagonal()


def test_partial_trace_keeps_ascending_order():
    psi = PureVector(SystemShape(3, 3), {(0, 1, 2): 1})
    red = partial_trace(outer(psi), [1])
    assert dict(red.entries) == {((0, 2), (0, 2)): 1}


def test_partial_trace_errors():
    rho = outer(PureVector(SystemShape(2, 2), {(0, 0): 1}))
    with pytest.raises(ValueError):
        partial_trace(rho, [0, 1])
    with pytest.raises(IndexError):
        partial_trace(rho, [2])


@settings(max_examples=60, deadline=None)
@given(mixed_states(), st.data())
def test_partial_trace_matches_loop_oracle_and_preserves_trace(rho, data):
    n = rho.shape.n_parties
    lost = data.draw(st.sets(st.integers(0, n - 1), max_size=n - 1))
    red = partial_trace(rho, lost)
    assert red.trace() == rho.trace()
    assert dict(red.entries) == trace_out_loops(dict(rho.entries), n, lost)


@settings(max_examples=60, deadline=None)
@given(mixed_states(), st.data())
def test_partial_traces_compose(rho, data):
    n = rho.shape.n_parties
    lost = sorted(data.draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n - 1)))
    first = data.draw(st.sampled_from(lost))
    step = partial_trace(rho, [first])
    keep = [p for p in range(n) if p != first]
    rest = [keep.index(p) for p in lost if p != first]
    assert partial_trace(step, rest) == partial_trace(rho, lost)


# -- partial transpose -----------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(mixed_states(), st.data())
def test_partial_transpose_is_an_involution(rho, data):
    n = rho.shape.n_parties
    side = data.draw(st.sets(st.integers(0, n - 1), min_size=1))
    once = partial_transpose(rho, side)
    assert once.trace() == rho.trace()
    assert partial_transpose(once, side) == rho


def test_bell_partial_transpose_is_not_psd():
    bell = outer(PureVector(SystemShape(2, 2), {(0, 0): 1, (1, 1): 1}))
    pt = partial_transpose(bell, 0)
    assert quadratic_form(pt, {(0, 1): 1, (1, 0): -1}) == -2
    _, m = pt.to_matrix([(0, 0), (0, 1), (1, 0), (1, 1)])
    assert not is_psd(m)


# -- exact PSD --------------------------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(symmetric_matrices())
def test_char_coefficients_match_principal_minor_sums(m):
    assert char_coefficients(m) == principal_minor_sums(m)


@settings(max_examples=80, deadline=None)
@given(symmetric_matrices())
def test_psd_agrees_with_floating_eigenvalues(m):
    lam = min_eigenvalue(m)
    if abs(lam) > 1e-9:
        assert is_psd(m) == (lam > 0)


@settings(max_examples=40, deadline=None)
@given(mixed_states())
def test_sums_of_projectors_are_psd(rho):
    _, m = rho.to_matrix()
    assert is_psd(m)


@settings(max_examples=80, deadline=None)
@given(symmetric_matrices(), st.data())
def test_negative_quadratic_form_implies_not_psd(m, data):
    v = data.draw(st.lists(small, min_size=len(m), max_size=len(m)))
    if quadratic_form(m, v) < 0:
        assert not is_psd(m)
        assert negative_coefficient(m) is not None


def test_psd_edge_cases():
    assert is_psd([[0, 0], [0, 0]])
    assert not is_psd([[0, 1], [1, 0]])
    assert not is_psd([[-1]])
    assert is_psd([[1, 1], [1, 1]])
    assert char_coefficients([]) == [1]
    with pytest.raises(ValueError):
        is_psd([[1, 2], [3, 4]])


def test_quadratic_form_dimension_checks():
    with pytest.raises(ValueError):
        quadratic_form([[1, 0], [0, 1]], [1, 2, 3])
    with pytest.raises(ValueError):
        quadratic_form([[1]], {3: 1})
    assert quadratic_form([[1, 0], [0, 1]], {1: 3}) == 9


def test_scaling_preserves_psd_status():
    m = [[2, 1, 0], [1, 2, 1], [0, 1, 2]]
    for c in (Fraction(1, 7), 3, Fraction(22, 5)):
        scaled = [[c * v for v in row] for row in m]
        assert is_psd(scaled) == is_psd(m)


def test_reductions_of_random_pure_states_cover_all_subsets():
    psi = PureVector(SystemShape(4, 2), {(0, 0, 0, 0): 1, (1, 1, 0, 1): 2, (0, 1, 1, 1): -1})
    rho = outer(psi)
    for size in range(1, 4):
        for lost in combinations(range(4), size):
            assert partial_trace(rho, lost).trace() == psi.norm2()
