import pytest
from hypothesis import given
from hypothesis import strategies as st

from starred import _kernels_py, kernels

compiled = pytest.importorskip("starred._kernels")


@st.composite
def key_quads(draw):
    n = draw(st.integers(1, 3))
    s = draw(st.integers(1, n + 1))
    nu = tuple(1 if k < s else -1 for k in range(n + 1))
    key = st.tuples(*[st.integers(0, 3)] * n)
    return draw(key), draw(key), draw(key), draw(key), nu


def _norm(x):
    if isinstance(x, tuple):
        return x[0], x[1], sorted(x[2])
    return sorted(x)


@given(key_quads())
def test_compiled_matches_python(args):
    for name in ("reduced_star_terms", "reduced_mul_terms", "reduced_poisson_terms"):
        assert _norm(getattr(compiled, name)(*args)) == _norm(getattr(_kernels_py, name)(*args))
    P, Q, R, S, nu = args
    amb = [(0,) + P, (1,) + Q, (2,) + R, (0,) + S]
    assert sorted(compiled.ambient_star_terms(*amb, nu)) == sorted(_kernels_py.ambient_star_terms(*amb, nu))


def test_expansion_term_count():
    # C(min(P0, Q0) + n, n) terms
    from math import comb

    for n in (1, 2, 3):
        nu = (1,) * (n + 1)
        P = (3,) + (0,) * n
        Q = (2,) + (1,) * n
        assert len(_kernels_py.fundamental_expansion(P, Q, nu)) == comb(2 + n, n)
        assert len(compiled.fundamental_expansion(P, Q, nu)) == comb(2 + n, n)


def test_overflow_falls_back_to_python():
    big = (25,)
    with pytest.raises(OverflowError):
        compiled.ambient_star_terms(big, big, big, big, (1,))
    out = kernels.ambient_star_terms(big, big, big, big, (1,))
    assert out == _kernels_py.ambient_star_terms(big, big, big, big, (1,))


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")
