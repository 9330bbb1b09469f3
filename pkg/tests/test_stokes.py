from __future__ import annotations

from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import as_fraction, exact_spectra, oracle_A, rationals
from rigiditykit.errors import DegenerateSpectrum, PositivityViolation
from rigiditykit.spectral import Spectrum
from rigiditykit.stokes import GradientData, A_via_L, A_via_triple_sum, rigidity_verdict

S012 = Spectrum.exact([0, 1, 2])


def _gradient(s, data):
    return data.draw(st.lists(rationals(10), min_size=s.n, max_size=s.n))


@pytest.mark.parametrize("f, A", [((6, 0, 0), -2), ((0, 0, 0), 0), ((6, 6, 6), -6)])
def test_examples(f, A):
    assert A_via_L(S012, f) == A
    assert A_via_triple_sum(S012, f) == A


def test_needs_three_values():
    with pytest.raises(DegenerateSpectrum):
        A_via_L(Spectrum.exact([0, 1]), (1, 1))
    with pytest.raises(DegenerateSpectrum):
        A_via_triple_sum(Spectrum.exact([0, 1]), (1, 1))


def test_gradient_length_checked():
    with pytest.raises(ValueError):
        A_via_L(S012, (1, 2))
    with pytest.raises(ValueError):
        GradientData.for_spectrum(S012, (1, 2, 3, 4))


@settings(max_examples=60)
@given(exact_spectra(3, 5, bound=12), st.data())
def test_two_routes_and_oracle_agree(s, data):
    f = _gradient(s, data)
    via_L = A_via_L(s, f)
    assert via_L == A_via_triple_sum(s, f)
    assert as_fraction(via_L) == oracle_A(list(s), f)


@settings(max_examples=100)
@given(exact_spectra(3, 7), st.data())
def test_nonpositive_and_zero_iff_gradient_zero(s, data):
    f = _gradient(s, data)
    A = A_via_L(s, f)
    assert A <= 0
    assert (A == 0) == all(x == 0 for x in f)


@given(exact_spectra(3, 6), st.data(), rationals().filter(lambda t: t != 0))
def test_quadratic_in_gradient(s, data, t):
    f = _gradient(s, data)
    t = mpq(t.numerator, t.denominator)
    assert A_via_L(s, [t * mpq(x.numerator, x.denominator) for x in f]) == t * t * A_via_L(s, f)


@given(exact_spectra(3, 6), st.integers(0, 5))
def test_single_component_is_negative(s, k):
    f = [0] * s.n
    f[k % s.n] = Fraction(7, 3)
    assert A_via_triple_sum(s, f) < 0


def test_verdict():
    flat = rigidity_verdict(S012, (0, 0, 0))
    assert flat.A == 0 and flat.is_rigid and flat.forced_f_zero
    bent = rigidity_verdict(S012, (6, 0, 0))
    assert bent.A == -2 and not bent.is_rigid and not bent.forced_f_zero


def test_float_kind_routes_agree():
    s = Spectrum.floats([-2.0, -0.5, 0.25, 1.0, 3.0])
    f = (0.5, -1.0, 2.0, 0.0, 1.5)
    assert A_via_L(s, f) == pytest.approx(A_via_triple_sum(s, f), rel=1e-9)
    assert rigidity_verdict(s, f).A < 0


def test_verdict_guards_against_positive_A(monkeypatch):
    import rigiditykit.stokes as stokes

    monkeypatch.setattr(stokes, "L_direct", lambda s, r: mpq(1))
    with pytest.raises(PositivityViolation):
        rigidity_verdict(S012, (1, 0, 0))
