from itertools import product
from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import F, monomials, polys, signatures
from starred.ambient import AmbientPoly
from starred.analytic import invariant_star
from starred.core import SYMBOLIC, HRational, OmegaError, Signature, SignatureError
from starred.core.hbar import falling_scaled, reduced_weight
from starred.reduced import (
    ChartDomainError,
    ReducedPoly,
    Y,
    Z,
    ambient_to_reduced,
    eval_red,
    limit_commutator,
    pad_to_reduced,
    poisson_red,
    reduced_conj,
    reduced_mul,
    reduced_to_fundamental,
    relation_polynomial,
    seminorm_red,
    star_red,
)

S11, S12 = Signature(1, 1), Signature(1, 2)
h = HRational.hbar()
ONE1 = Z(S12, (0,), (0,))


def z(sig, P, Q, c=1):
    return Z(sig, tuple(P), tuple(Q), c)


# -- examples ----------------------------------------------------------------


def test_padding():
    assert pad_to_reduced(((1,), (0,))) == ((0, 1), (1, 0))
    assert pad_to_reduced(((0,), (1,))) == ((1, 0), (0, 1))
    assert pad_to_reduced(((2,), (2,))) == ((0, 2), (0, 2))
    assert pad_to_reduced(((2, 1), (0, 1))) == ((0, 2, 1), (2, 0, 1))


def test_expansion():
    assert reduced_to_fundamental(((1, 1), (1, 1)), S12) == z(S12, [1], [1]) - z(S12, [2], [2])
    assert reduced_to_fundamental(((1, 1), (1, 1)), S11) == z(S11, [1], [1]) + z(S11, [2], [2])
    assert reduced_to_fundamental(((0, 2, 1), (0, 0, 3)), Signature(2, 2)) == z(Signature(2, 2), [2, 1], [0, 3])
    with pytest.raises(ValueError):
        reduced_to_fundamental(((1, 0), (0, 0)), S12)
    with pytest.raises(SignatureError):
        reduced_to_fundamental(((1,), (1,)), S12)


def test_relation_polynomial():
    for n in (1, 2, 3):
        for s in range(1, n + 2):
            sig = Signature(n, s)
            expected = ReducedPoly.constant(sig)
            for k in range(1, n + 1):
                e = tuple(int(j == k - 1) for j in range(n))
                expected -= Z(sig, e, e, sig.nu[k])
            assert relation_polynomial(sig) == expected


def test_mul_examples():
    f = z(S12, [2], [1], "1+i") + z(S12, [0], [3])
    assert reduced_mul(ONE1, f) == f
    assert z(S12, [1], [1]) * z(S12, [1], [1]) == z(S12, [2], [2])
    assert z(S12, [1], [0]) * z(S12, [0], [1]) == z(S12, [1], [1]) - z(S12, [2], [2])


def test_star_examples():
    got = star_red(z(S12, [1], [0]), z(S12, [0], [1]))
    assert got == z(S12, [1], [1]) - z(S12, [2], [2], 1 - h)
    # numeric evaluation agrees with substitution
    assert star_red(z(S12, [1], [0]), z(S12, [0], [1]), F(-1, 2)) == got.at_hbar(F(-1, 2))
    f = z(S12, [3], [1], 2) + z(S12, [0], [2])
    assert star_red(ONE1, f) == f == star_red(f, ONE1)


def test_defect_sum_example():
    E = [(1, 0), (0, 1)]
    total = ReducedPoly.zero(S12)
    for i in E:
        for j in E:
            total += star_red(Y(S12, j, i), Y(S12, i, j))
    assert total == ReducedPoly.constant(S12, 1 + h)


def test_star_rejects_poles():
    f, g = z(S12, [1], [0]), z(S12, [0], [1])
    for bad in (F(1, 3), 1, F(1, 1), 0, 0.5):
        with pytest.raises(OmegaError):
            star_red(f, g, bad)
    star_red(f, g, F(2, 3))
    star_red(f, g, -1.5)


def test_poisson_examples():
    a, b = z(S12, [0], [1]), z(S12, [1], [0])
    assert poisson_red(a, b) == ReducedPoly.constant(S12, "-i") + z(S12, [1], [1], "2i")
    assert not poisson_red(a + b, a + b)
    assert not poisson_red(ONE1, a)


def test_conj_examples():
    assert reduced_conj(z(S12, [1], [0])) == z(S12, [0], [1])
    assert reduced_conj(ReducedPoly.constant(S12, "i")) == ReducedPoly.constant(S12, "-i")


def test_eval_examples():
    assert eval_red(ONE1, [0.3 + 0.1j]) == pytest.approx(1)
    assert eval_red(z(S11, [1], [1]), [0.5]) == pytest.approx(1 / 3, abs=1e-15)
    assert eval_red(z(S12, [1], [1]), [0.5]) == pytest.approx(0.2, abs=1e-15)
    sym = z(S12, [1], [1], 1 - h)
    assert eval_red(sym, [0.5], F(1, 2)) == pytest.approx(0.1)
    with pytest.raises(TypeError):
        eval_red(sym, [0.5])
    for w in ([1.0], [2.0]):
        with pytest.raises(ChartDomainError):
            eval_red(z(S11, [1], [1]), w)
    with pytest.raises(SignatureError):
        eval_red(ONE1, [0.1, 0.2])


def test_seminorm_examples():
    assert seminorm_red(z(S12, [1], [1]), 2) == 4
    assert seminorm_red(ReducedPoly.zero(S12), 5) == 0
    assert seminorm_red(z(S12, [2], [1]), 3) == 27


def test_limit_examples():
    f, g = z(S12, [1], [0]), z(S12, [0], [1])
    res = limit_commutator(f, g)
    assert res.pointwise == z(S12, [1], [1]) - z(S12, [2], [2])
    assert limit_commutator(f, f).bracket == ReducedPoly.zero(S12)
    res = limit_commutator(f, ONE1)
    assert res.pointwise == f and not res.bracket


# -- properties -----------------------------------------------------------------


@given(st.data())
def test_symbolic_associativity(data):
    sig = data.draw(signatures(max_n=2))
    f, g, k = (data.draw(monomials(sig, 3)) for _ in range(3))
    assert star_red(star_red(f, g), k) == star_red(f, star_red(g, k))


@given(st.data())
def test_exact_associativity(data):
    sig = data.draw(signatures(max_n=3))
    hb = data.draw(st.sampled_from([F(-1), F(-1, 2), F(2, 3), F(3, 2), F(-7, 5)]))
    f, g, k = (data.draw(monomials(sig, 4)) for _ in range(3))
    assert star_red(star_red(f, g, hb), k, hb) == star_red(f, star_red(g, k, hb), hb)


@given(st.data())
def test_unit_and_hermitian(data):
    sig = data.draw(signatures())
    f, g = data.draw(polys(sig)), data.draw(polys(sig))
    one = ReducedPoly.constant(sig)
    assert star_red(one, f) == f == star_red(f, one)
    assert reduced_conj(star_red(f, g)) == star_red(reduced_conj(g), reduced_conj(f))


def _signed(sig, T):
    sgn = 1
    for k, t in enumerate(T):
        if sig.nu[k] < 0 and t % 2:
            sgn = -sgn
    return sgn


@given(st.data())
def test_scaling_consistency(data):
    """Rebuild the star product from ambient constants and the falling-factorial rescaling."""
    sig = data.draw(signatures())
    f, g = data.draw(monomials(sig, 3)), data.draw(monomials(sig, 3))
    (Pf, Qf), = f.keys()
    (Pg, Qg), = g.keys()
    P, Q = pad_to_reduced((Pf, Qf))
    R, S = pad_to_reduced((Pg, Qg))
    q, r = sum(Q), sum(R)
    expected = ReducedPoly.zero(sig)
    for T in product(*(range(min(a, b) + 1) for a, b in zip(Q, R))):
        t = sum(T)
        weight = reduced_weight(q, r, t)
        lhs = falling_scaled(q) * falling_scaled(r) * weight
        assert lhs == h**t * falling_scaled(q + r - t)
        c = _signed(sig, T)
        for a, b, k in zip(Q, R, T):
            c *= factorial(k) * comb(a, k) * comb(b, k)
        key = (tuple(x + y - k for x, y, k in zip(P, R, T)), tuple(x + y - k for x, y, k in zip(Q, S, T)))
        expected += reduced_to_fundamental(key, sig).scale(weight * c)
    assert star_red(f, g) == expected


@given(st.data())
def test_limits_recover_classical_structures(data):
    sig = data.draw(signatures())
    f, g = data.draw(polys(sig)), data.draw(polys(sig))
    res = limit_commutator(f, g)
    assert res.pointwise == reduced_mul(f, g)
    assert res.bracket == poisson_red(f, g)


@given(st.data())
def test_poisson_jacobi_and_leibniz(data):
    sig = data.draw(signatures())
    f, g, k = (data.draw(polys(sig, max_deg=2)) for _ in range(3))
    P = poisson_red
    assert P(f, g) == -P(g, f)
    assert not (P(f, P(g, k)) + P(g, P(k, f)) + P(k, P(f, g)))
    assert P(f, g * k) == P(f, g) * k + g * P(f, k)


@given(st.data())
def test_numeric_reduction_consistency(data):
    sig = data.draw(signatures(max_n=3))
    seed = data.draw(st.integers(0, 2**32 - 1))
    f = data.draw(monomials(sig, 4))
    (P, Q), = f.keys()
    rng = np.random.default_rng(seed)
    n = sig.n
    nu = np.array(sig.nu, dtype=float)
    while True:
        rho = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
        mu = float(np.sum(nu * np.abs(rho) ** 2))
        if mu > 1e-3 and abs(rho[0]) > 1e-3:
            break
    rho /= np.sqrt(mu)
    Pp, Qp = pad_to_reduced((P, Q))
    ambient = complex(np.prod(rho ** np.array(Pp)) * np.prod(np.conj(rho) ** np.array(Qp)))
    w = rho[1:] / rho[0]
    got = eval_red(f, w)
    assert abs(got - ambient) <= 1e-10 * max(1.0, abs(ambient))


@given(st.data())
def test_invariant_product_descends(data):
    sig = data.draw(signatures())
    f = data.draw(polys(sig, max_deg=4, ambient=True, invariant=True))
    g = data.draw(polys(sig, max_deg=4, ambient=True, invariant=True))
    hb = data.draw(st.sampled_from([SYMBOLIC, F(-1, 2), F(5, 2)]))
    lhs = ambient_to_reduced(invariant_star(f, g, hb))
    assert lhs == star_red(ambient_to_reduced(f), ambient_to_reduced(g), hb)


def test_ambient_to_reduced_rejects_non_invariant():
    with pytest.raises(ValueError):
        ambient_to_reduced(AmbientPoly.monomial(S12, (1, 0), (0, 0)))


def test_signature_mismatch():
    with pytest.raises(SignatureError):
        star_red(ONE1, ReducedPoly.constant(S11))
