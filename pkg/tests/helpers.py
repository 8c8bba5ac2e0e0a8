"""Shared strategies for the test-suite."""

from fractions import Fraction

from hypothesis import strategies as st

from starred.ambient import AmbientPoly
from starred.core import GaussianRational, Signature
from starred.reduced import ReducedPoly

coeffs = st.builds(
    GaussianRational,
    st.fractions(min_value=-3, max_value=3, max_denominator=3),
    st.fractions(min_value=-3, max_value=3, max_denominator=3),
)


@st.composite
def signatures(draw, max_n=2):
    n = draw(st.integers(1, max_n))
    return Signature(n, draw(st.integers(1, n + 1)))


@st.composite
def keys(draw, length, max_deg, invariant=False):
    budget = draw(st.integers(0, max_deg))
    if invariant:
        budget -= budget % 2
    exps = []
    for half in range(2):
        left = budget // 2 if invariant else budget
        row = []
        for _ in range(length):
            e = draw(st.integers(0, left))
            row.append(e)
            left -= e
        if invariant and left:
            row[draw(st.integers(0, length - 1))] += left
        exps.append(tuple(row))
        if not invariant:
            budget -= sum(row)
    return exps[0], exps[1]


def polys(sig, max_deg=3, max_terms=3, ambient=False, invariant=False):
    L = sig.n + (1 if ambient else 0)
    k = keys(L, max_deg, invariant)
    cls = AmbientPoly if ambient else ReducedPoly
    return st.lists(st.tuples(k, coeffs), min_size=0, max_size=max_terms).map(lambda t: cls(sig, t))


def monomials(sig, max_deg=3, ambient=False):
    L = sig.n + (1 if ambient else 0)
    cls = AmbientPoly if ambient else ReducedPoly
    return keys(L, max_deg).map(lambda pq: cls.monomial(sig, *pq))


F = Fraction
