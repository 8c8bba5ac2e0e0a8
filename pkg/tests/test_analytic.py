from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import polys
from starred.ambient import AmbientPoly
from starred.analytic import (
    contour_coefficient,
    contour_coefficients,
    continuity_check,
    defect_probe,
    defect_sum,
    falling_constants,
    invariant_star,
    lift,
    positivity_probe,
    sample_disc_points,
)
from starred.core import HRational, OmegaError, Signature, SYMBOLIC
from starred.reduced import ReducedPoly, Z, chart_denominator

S11, S12 = Signature(1, 1), Signature(1, 2)
F = Fraction


# -- contour coefficients --------------------------------------------------------


def test_constant_function():
    f = lift(ReducedPoly.constant(S12))
    for radius in (0.1, 0.3, 0.5):
        assert abs(contour_coefficient(f, (0,), (0,), S12, radius, 64) - 1) < 1e-10


@pytest.mark.parametrize("sig", [S11, S12])
def test_single_monomial(sig):
    f = lift(Z(sig, (1,), (1,)))
    assert abs(contour_coefficient(f, (1,), (1,), sig) - 1) < 1e-8
    assert abs(contour_coefficient(f, (2,), (2,), sig)) < 1e-8


def test_linear_combination():
    p = Z(S12, (2,), (1,), 2) + Z(S12, (0,), (1,), "-i")
    got = contour_coefficients(lift(p), [((2,), (1,)), ((0,), (1,)), ((1,), (1,))], S12)
    assert abs(got[((2,), (1,))] - 2) < 1e-8
    assert abs(got[((0,), (1,))] + 1j) < 1e-8
    assert abs(got[((1,), (1,))]) < 1e-8


def test_quadrature_parameters_validated():
    f = lift(ReducedPoly.constant(Signature(2, 3)))
    for radius in (0.0, -0.1, 1 / np.sqrt(2), 0.8):
        with pytest.raises(ValueError):
            contour_coefficient(f, (0, 0), (0, 0), Signature(2, 3), radius, 16)
    with pytest.raises(ValueError):
        contour_coefficient(f, (0, 0), (0, 0), Signature(2, 3), 0.3, 7)


def test_lift_rejects_symbolic():
    with pytest.raises(TypeError):
        lift(Z(S12, (1,), (1,), HRational.hbar()))


@settings(max_examples=15)
@given(st.data())
def test_coefficients_recovered_n1(data):
    sig = Signature(1, data.draw(st.integers(1, 2)))
    p = data.draw(polys(sig, max_deg=4, max_terms=4))
    keys = [((a,), (b,)) for a in range(5) for b in range(5 - a)]
    got = contour_coefficients(lift(p), keys, sig)
    for k in keys:
        assert abs(got[k] - complex(p.coeff(*k))) < 1e-8


@settings(max_examples=5)
@given(st.data())
def test_coefficients_recovered_n2(data):
    sig = Signature(2, data.draw(st.integers(1, 3)))
    p = data.draw(polys(sig, max_deg=2, max_terms=3))
    keys = [(P, Q) for P in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
            for Q in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)] if sum(P) + sum(Q) <= 2]
    got = contour_coefficients(lift(p), keys, sig, m=16)
    for k in keys:
        assert abs(got[k] - complex(p.coeff(*k))) < 1e-8


def test_quadrature_error_decays_geometrically():
    p = Z(S12, (2,), (1,), 3) + Z(S12, (1,), (3,)) + ReducedPoly.constant(S12, 2)
    f = lift(p)
    errs = []
    for m in (16, 32, 64):
        got = contour_coefficients(f, list(p.keys()), S12, radius=0.9, m=m)
        errs.append(max(abs(got[k] - complex(c)) for k, c in p.items()))
    assert errs[1] <= 0.5 * errs[0] and errs[2] <= 0.5 * errs[1]


# -- positivity ------------------------------------------------------------------


def test_positivity_example():
    rep = positivity_probe(Z(S11, (1,), (0,)), -1, [(0,)])
    assert rep.values[0] == pytest.approx(1.0)
    h = HRational.hbar()
    assert Z(S11, (0,), (1,)).star(Z(S11, (1,), (0,))) == (
        ReducedPoly.constant(S11, -h) + Z(S11, (1,), (1,), 1 - 2 * h) + Z(S11, (2,), (2,), 1 - h)
    )


@pytest.mark.parametrize("hbar", [F(-1, 4), F(-1, 2), F(-1)])
def test_positivity_holds_on_the_disc(hbar):
    rng = np.random.default_rng(11)
    pts = sample_disc_points(S11, 100, rng)
    for _ in range(20):
        terms = [(((int(rng.integers(0, 4)),), (int(rng.integers(0, 4)),)),
                  complex(*rng.integers(-3, 4, size=2))) for _ in range(3)]
        terms = [((P, Q), c) for (P, Q), c in terms if P[0] + Q[0] <= 3]
        f = ReducedPoly(S11, terms)
        rep = positivity_probe(f, hbar, pts)
        assert rep.expected_nonnegative and rep.ok
        assert rep.max_imag < 1e-9


def test_defect_sum_is_one_plus_hbar():
    h = HRational.hbar()
    for n in (1, 2, 3):
        sig = Signature(n, n + 1)
        assert defect_sum(sig) == ReducedPoly.constant(sig, 1 + n * h)
    assert defect_sum(S12, F(-2)) == ReducedPoly.constant(S12, -1)


def test_defect_witness_is_negative():
    pts = sample_disc_points(S12, 50, np.random.default_rng(0))
    rep = defect_probe(S12, -2, pts)
    assert rep.negative and not rep.expected_nonnegative and rep.ok
    assert max(abs(v + 1) for v in rep.values) < 1e-12


def test_probe_argument_checks():
    f = Z(S11, (1,), (0,))
    with pytest.raises(OmegaError):
        positivity_probe(f, F(1, 2), [(0,)])
    with pytest.raises(ValueError):
        positivity_probe(f, SYMBOLIC, [(0,)])
    with pytest.raises(ValueError):
        positivity_probe(f, 1j, [(0,)])
    with pytest.raises(ValueError):
        positivity_probe(f, -1, [(1.0,)])


def test_disc_sampling_margin():
    rng = np.random.default_rng(3)
    for sig in (S11, Signature(2, 1), S12):
        for w in sample_disc_points(sig, 40, rng):
            assert chart_denominator(sig, w) >= 0.05


# -- continuity ------------------------------------------------------------------


def test_falling_constants_bounds():
    c, C = falling_constants([-1, -F(1, 4)], 4)
    assert 0 < c <= 1 <= C
    # 1/hbar = -1: |(-1)_m| / m! = 1 for every m
    assert falling_constants([-1], 4) == (1.0, 1.0)


def test_invariant_star_rejects_noninvariant():
    with pytest.raises(ValueError):
        invariant_star(AmbientPoly.monomial(S12, (1, 0), (0, 0)), AmbientPoly.constant(S12), -1)
    with pytest.raises(OmegaError):
        invariant_star(AmbientPoly.constant(S12), AmbientPoly.constant(S12), F(1, 2))


def test_continuity_bound_small():
    rep = continuity_check(S11, [F(-1), F(-1, 2)], radii=(1, 3), max_degree=2)
    assert rep.ok and rep.checked > 0 and rep.worst_ratio <= 1
