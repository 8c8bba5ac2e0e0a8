import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import polys, signatures
from starred.ambient import AmbientPoly, ambient_conj, ambient_poisson, ambient_wick_star
from starred.core import Signature
from starred.reduced import ReducedPoly, Z, poisson_red, reduced_conj, relation_polynomial, star_red
from starred.wickrot import rotate_ambient, rotate_reduced, unrotate_ambient, unrotate_reduced

S11, S12 = Signature(1, 1), Signature(1, 2)


def test_ambient_examples():
    f = AmbientPoly.monomial(Signature(2, 3), (1, 2, 0), (0, 1, 1), "1+i")
    assert rotate_ambient(f) == f
    assert rotate_ambient(AmbientPoly.monomial(S11, (0, 1), (0, 0))) == AmbientPoly.monomial(S12, (0, 1), (0, 0), "i")
    assert rotate_ambient(AmbientPoly.monomial(S11, (0, 1), (0, 1))) == AmbientPoly.monomial(S12, (0, 1), (0, 1), -1)
    # block 0 is never rotated
    assert rotate_ambient(AmbientPoly.monomial(S11, (3, 0), (1, 0))).coeff((3, 0), (1, 0)) == 1


def test_reduced_examples():
    assert rotate_reduced(Z(S11, (1,), (0,))) == Z(S12, (1,), (0,), "i")
    assert rotate_reduced(Z(S11, (1,), (1,))) == Z(S12, (1,), (1,), -1)
    f = Z(Signature(2, 3), (2, 1), (0, 1), 5)
    assert rotate_reduced(f) == f
    # signature (2,2): only the second fundamental index rotates
    assert rotate_reduced(Z(Signature(2, 2), (1, 1), (0, 0))) == Z(Signature(2, 3), (1, 1), (0, 0), "i")


def test_output_signature():
    assert rotate_reduced(Z(Signature(3, 2), (0, 0, 0), (0, 0, 0))).sig == Signature(3, 4)


def test_unrotate_requires_compact_input():
    with pytest.raises(ValueError):
        unrotate_reduced(Z(S11, (1,), (0,)), 1)
    with pytest.raises(ValueError):
        unrotate_ambient(AmbientPoly.constant(S11), 1)


@given(st.data())
def test_reduced_intertwining(data):
    sig = data.draw(signatures())
    f, g = data.draw(polys(sig)), data.draw(polys(sig))
    R = rotate_reduced
    assert R(star_red(f, g)) == star_red(R(f), R(g))
    assert R(poisson_red(f, g)) == poisson_red(R(f), R(g))
    assert R(f * g) == R(f) * R(g)
    assert R(ReducedPoly.constant(sig)) == ReducedPoly.constant(sig.compact())
    assert unrotate_reduced(R(f), sig.s) == f


@given(st.data())
def test_ambient_intertwining(data):
    sig = data.draw(signatures())
    f, g = data.draw(polys(sig, ambient=True)), data.draw(polys(sig, ambient=True))
    R = rotate_ambient
    assert R(ambient_wick_star(f, g)) == ambient_wick_star(R(f), R(g))
    assert R(ambient_poisson(f, g)) == ambient_poisson(R(f), R(g))
    assert R(f * g) == R(f) * R(g)
    assert unrotate_ambient(R(f), sig.s) == f


@pytest.mark.parametrize("n", [1, 2, 3])
def test_not_a_star_isomorphism(n):
    for s in range(1, n + 1):
        sig = Signature(n, s)
        e_n = tuple(int(k == n - 1) for k in range(n))
        f = Z(sig, e_n, (0,) * n)
        lhs = rotate_reduced(reduced_conj(f))
        rhs = reduced_conj(rotate_reduced(f))
        assert lhs == -rhs and lhs != rhs
    # compact signature: rotation is the identity, compatible with conjugation
    sig = Signature(n, n + 1)
    f = Z(sig, (1,) + (0,) * (n - 1), (0,) * n)
    assert rotate_reduced(reduced_conj(f)) == reduced_conj(rotate_reduced(f))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_relation_polynomial_maps_to_compact_relation(n):
    for s in range(1, n + 2):
        sig = Signature(n, s)
        assert rotate_reduced(relation_polynomial(sig)) == relation_polynomial(sig.compact())


def test_conj_on_ambient_rotation():
    f = AmbientPoly.monomial(S11, (0, 1), (0, 0))
    assert rotate_ambient(ambient_conj(f)) == -ambient_conj(rotate_ambient(f))
