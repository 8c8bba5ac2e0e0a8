"""Star products re-derived from covariant derivatives and the tensor H, in the chart."""

from __future__ import annotations

from functools import lru_cache
from math import factorial

from ..ambient import AmbientPoly
from ..core.combinatorics import Signature
from ..core.hbar import HRational, falling_scaled
from ..core.scalars import ONE
from ..reduced import ReducedPoly
from .chart import ChartFunction, chart_ring
from .geometry import (
    christoffel,
    flat_H,
    flat_metric,
    h_red_components,
    metric_components,
    pair_with_H_power,
    sym_cov_derivative_power,
)

__all__ = [
    "OracleTruncationError",
    "to_chart",
    "star_red_oracle",
    "poisson_red_oracle",
    "ambient_wick_oracle",
    "ambient_pairing",
]


class OracleTruncationError(ArithmeticError):
    """The series had a nonzero term beyond the requested order."""


def to_chart(f) -> ChartFunction:
    """Chart form: ``Z[P,Q] = w^P wbar^Q / D^max(|P|,|Q|)``; ambient monomials map to ``z^P zbar^Q``."""
    if isinstance(f, AmbientPoly):
        ring = chart_ring(f.sig.n + 1)
        m = ring.m
        total = ring.zero()
        for (P, Q), c in f.items():
            mon = ring.R.one
            for k in range(m):
                mon *= ring.w[k] ** P[k] * ring.wb[k] ** Q[k]
            total = total + ring.poly(mon) * ring.const(c)
        return total
    sig = f.sig
    n = sig.n
    ring = chart_ring(n)
    D = ring.R.one + sum(sig.nu[k + 1] * ring.w[k] * ring.wb[k] for k in range(n))
    total = ring.zero()
    for (P, Q), c in f.items():
        mon = ring.R.one
        for k in range(n):
            mon *= ring.w[k] ** P[k] * ring.wb[k] ** Q[k]
        d = max(sum(P), sum(Q))
        total = total + ChartFunction(ring, mon, ring.R.zero, D**d) * ring.const(c)
    return total


@lru_cache(maxsize=None)
def _reduced_geometry(sig: Signature):
    return christoffel(metric_components(sig)), h_red_components(sig)


@lru_cache(maxsize=None)
def _flat_geometry(sig: Signature):
    return christoffel(flat_metric(sig)), flat_H(sig)


def _max_degree(f) -> int:
    return max((max(sum(P), sum(Q)) for P, Q in f.keys()), default=0)


def _series(F, G, n, Gamma, H, weight, r_max):
    ring = F.ring
    Df = sym_cov_derivative_power(F, r_max + 1, Gamma, n, "antihol", _cache=True)
    Dg = sym_cov_derivative_power(G, r_max + 1, Gamma, n, "hol", _cache=True)
    total = ring.zero()
    for r in range(r_max + 1):
        term = pair_with_H_power(Df[r], Dg[r], H, n)
        if term:
            total = total + term * weight(r)
    extra = pair_with_H_power(Df[r_max + 1], Dg[r_max + 1], H, n)
    if extra:
        raise OracleTruncationError(f"term of order {r_max + 1} does not vanish")
    return total


def _reduced_weight(ring, r):
    # hbar^r / (r! prod_{k<r} (1 - k hbar))
    return ring.hrational(HRational.hbar(r) / falling_scaled(r)) * (ONE / factorial(r))


def star_red_oracle(f: ReducedPoly, g: ReducedPoly, r_max: int | None = None) -> ChartFunction:
    """Sum over ``r`` of ``hbar^r / (r! A(r)) <(D^sym)^r f (x) (D^sym)^r g, H_red^r>``.

    The series terminates; by default it is summed up to the smaller of the two
    input degrees and the next term is checked to vanish.
    """
    f._same(g)
    sig = f.sig
    Gamma, H = _reduced_geometry(sig)
    if r_max is None:
        r_max = min(_max_degree(f), _max_degree(g))
    F, G = to_chart(f), to_chart(g)
    return _series(F, G, sig.n, Gamma, H, lambda r: _reduced_weight(F.ring, r), r_max)


def poisson_red_oracle(f: ReducedPoly, g: ReducedPoly) -> ChartFunction:
    """``(1/i)(<Df (x) Dg, H> - <Dg (x) Df, H>)`` in the chart."""
    f._same(g)
    sig = f.sig
    Gamma, H = _reduced_geometry(sig)
    F, G = to_chart(f), to_chart(g)
    n = sig.n

    def c1(a, b):
        Da = sym_cov_derivative_power(a, 1, Gamma, n, "antihol")
        Db = sym_cov_derivative_power(b, 1, Gamma, n, "hol")
        return pair_with_H_power(Da, Db, H, n)

    return (c1(F, G) - c1(G, F)) * F.ring.const("-i")


def ambient_pairing(f: AmbientPoly, g: AmbientPoly, r: int) -> ChartFunction:
    """``<(D^sym)^r f (x) (D^sym)^r g, H^r>`` for the flat ambient geometry."""
    Gamma, H = _flat_geometry(f.sig)
    F, G = to_chart(f), to_chart(g)
    m = f.sig.n + 1
    Df = sym_cov_derivative_power(F, r, Gamma, m, "antihol")
    Dg = sym_cov_derivative_power(G, r, Gamma, m, "hol")
    return pair_with_H_power(Df, Dg, H, m)


def ambient_wick_oracle(f: AmbientPoly, g: AmbientPoly, r_max: int | None = None) -> ChartFunction:
    """Flat-space oracle with weights ``lambda^r / r!``; ``h`` plays the role of ``lambda``."""
    f._same(g)
    Gamma, H = _flat_geometry(f.sig)
    if r_max is None:
        r_max = min(f.degree(), g.degree())
    F, G = to_chart(f), to_chart(g)
    ring = F.ring
    return _series(
        F, G, f.sig.n + 1, Gamma, H,
        lambda r: ring.poly(ring.h**r) * (ONE / factorial(r)), r_max,
    )
