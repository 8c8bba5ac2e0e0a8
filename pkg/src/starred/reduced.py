"""Polynomials on the reduced manifold in the fundamental-monomial basis."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from . import kernels
from ._poly import SparsePoly
from .ambient import AmbientPoly, hbar_scalar
from .core.combinatorics import Signature, SignatureError
from .core.hbar import SYMBOLIC, HRational, OmegaError, Symbolic, in_omega
from .core.hbar import reduced_weight as _reduced_weight
from .core.scalars import I, ONE

__all__ = [
    "ReducedPoly",
    "pad_to_reduced",
    "reduced_to_fundamental",
    "ambient_to_reduced",
    "reduced_mul",
    "star_red",
    "poisson_red",
    "reduced_conj",
    "eval_red",
    "seminorm_red",
    "limit_commutator",
    "LimitResult",
    "relation_polynomial",
    "ChartDomainError",
    "Z",
    "Y",
]

_MINUS_I = -I


class ChartDomainError(ValueError):
    """The point does not lie in the chart of the reduced manifold."""


class ReducedPoly(SparsePoly):
    """Sparse span of fundamental monomials ``Z[P, Q]`` with ``P, Q`` of length ``n``."""

    __slots__ = ()
    key_length_offset = 0
    _letter = "Z"

    def __mul__(self, other):
        if isinstance(other, ReducedPoly):
            return reduced_mul(self, other)
        return self.scale(other)

    def star(self, other, hbar=SYMBOLIC):
        return star_red(self, other, hbar)

    def evaluate(self, w, hbar=None):
        return eval_red(self, w, hbar)


def Z(sig: Signature, P, Q, c=ONE) -> ReducedPoly:
    return ReducedPoly.monomial(sig, P, Q, c)


def Y(sig: Signature, P, Q, c=ONE) -> ReducedPoly:
    """Reduced monomial with balanced ambient key, expanded in the fundamental basis."""
    return reduced_to_fundamental((tuple(P), tuple(Q)), sig).scale(c)


def pad_to_reduced(key):
    P, Q = key
    return kernels.pad(tuple(P), tuple(Q))


def reduced_to_fundamental(key, sig: Signature) -> ReducedPoly:
    P, Q = tuple(key[0]), tuple(key[1])
    if len(P) != sig.n + 1 or len(Q) != sig.n + 1:
        raise SignatureError(f"reduced monomial keys need length {sig.n + 1}")
    if sum(P) != sum(Q):
        raise ValueError(f"unbalanced key {P}, {Q}: |P| != |Q|")
    return ReducedPoly._from_acc(
        sig, {(Zp, Zq): w for Zp, Zq, w in kernels.fundamental_expansion(P, Q, sig.nu)}
    )


def ambient_to_reduced(f: AmbientPoly) -> ReducedPoly:
    """Restrict a U(1)-invariant ambient polynomial to the reduced manifold."""
    if not f.is_invariant():
        raise ValueError("only U(1)-invariant polynomials descend")
    acc = {}
    nu = f.sig.nu
    for (P, Q), c in f.items():
        for Zp, Zq, w in kernels.fundamental_expansion(P, Q, nu):
            v = c * w
            k = (Zp, Zq)
            acc[k] = acc[k] + v if k in acc else v
    return ReducedPoly._from_acc(f.sig, acc)


def relation_polynomial(sig: Signature) -> ReducedPoly:
    """``1 - sum_k nu_k Z[e_k, e_k]``, the expansion of ``Y[E_0, E_0]``."""
    n = sig.n
    E0 = (1,) + (0,) * n
    return reduced_to_fundamental((E0, E0), sig)


def _bilinear(f, g, kernel, emit_weight):
    f._same(g)
    nu = f.sig.nu
    acc = {}
    for (P, Q), a in f.items():
        for (R, S), b in g.items():
            ab = a * b
            for Zp, Zq, w in kernel(P, Q, R, S, nu):
                v = ab * emit_weight(w)
                k = (Zp, Zq)
                acc[k] = acc[k] + v if k in acc else v
    return ReducedPoly._from_acc(f.sig, acc)


def reduced_mul(f: ReducedPoly, g: ReducedPoly) -> ReducedPoly:
    return _bilinear(f, g, kernels.reduced_mul_terms, lambda w: w)


def poisson_red(f: ReducedPoly, g: ReducedPoly) -> ReducedPoly:
    return _bilinear(f, g, kernels.reduced_poisson_terms, lambda w: _MINUS_I * w)


@lru_cache(maxsize=4096)
def _numeric_weight(q, r, t, h):
    return _reduced_weight(q, r, t).evaluate(h)


def star_red(f: ReducedPoly, g: ReducedPoly, hbar=SYMBOLIC) -> ReducedPoly:
    """Reduced star product; numeric ``hbar`` must lie in the admissible domain."""
    f._same(g)
    symbolic = isinstance(hbar, Symbolic)
    if not symbolic:
        if not in_omega(hbar):
            raise OmegaError(f"hbar={hbar} is a pole of the reduced star product")
        h = hbar_scalar(hbar)
    nu = f.sig.nu
    # accumulate per (Z key, weight class) and apply the hbar weights once
    acc = {}
    for (P, Q), a in f.items():
        for (R, S), b in g.items():
            ab = a * b
            q, r, terms = kernels.reduced_star_terms(P, Q, R, S, nu)
            for t, Zp, Zq, w in terms:
                k = (Zp, Zq)
                cls = acc.setdefault(k, {})
                qrt = (q, r, t)
                v = ab * w
                cls[qrt] = cls[qrt] + v if qrt in cls else v
    out = {}
    for k, classes in acc.items():
        total = None
        for (q, r, t), v in classes.items():
            if not v:
                continue
            if symbolic:
                F = _reduced_weight(q, r, t)
                term = F * v if not isinstance(v, HRational) else v * F
            else:
                term = v * _numeric_weight(q, r, t, h)
            total = term if total is None else total + term
        if total is not None:
            out[k] = total
    return ReducedPoly._from_acc(f.sig, out)


def reduced_conj(f: ReducedPoly) -> ReducedPoly:
    return f.conj()


def seminorm_red(f: ReducedPoly, r) -> Fraction:
    return f.seminorm(r)


def chart_denominator(sig: Signature, w) -> float:
    return 1.0 + sum(v * abs(x) ** 2 for v, x in zip(sig.nu[1:], w))


def eval_red(f: ReducedPoly, w, hbar=None) -> complex:
    """Value at chart point ``w``; HRational coefficients need a numeric ``hbar``."""
    w = [complex(x) for x in w]
    if len(w) != f.sig.n:
        raise SignatureError(f"point must have {f.sig.n} coordinates")
    D = chart_denominator(f.sig, w)
    if not D > 0:
        raise ChartDomainError(f"1 + sum nu |w|^2 = {D} <= 0: point outside the chart")
    wb = [x.conjugate() for x in w]
    total = 0j
    for (P, Q), c in f.items():
        if isinstance(c, HRational):
            if hbar is None:
                raise TypeError("symbolic coefficients need a value of hbar")
            c = c.evaluate(hbar_scalar(hbar) if not isinstance(hbar, complex) else hbar)
        v = complex(c)
        for x, xb, p, q in zip(w, wb, P, Q):
            v *= x**p * xb**q
        total += v / D ** max(sum(P), sum(Q))
    return total


class LimitResult(NamedTuple):
    pointwise: ReducedPoly
    bracket: ReducedPoly


def limit_commutator(f: ReducedPoly, g: ReducedPoly) -> LimitResult:
    """Classical limits of the symbolic product and of its commutator divided by ``i hbar``.

    Raises ``ArithmeticError`` if they differ from the pointwise product and the
    reduced Poisson bracket.
    """
    fg = star_red(f, g, SYMBOLIC)
    gf = star_red(g, f, SYMBOLIC)
    pointwise = fg.at_zero()
    ih = HRational((0, I))
    comm = (fg - gf).map_coeffs(lambda c: HRational.coerce(c) / ih)
    bracket = comm.at_zero()
    if pointwise != reduced_mul(f, g):
        raise ArithmeticError("hbar -> 0 limit of f*g differs from the pointwise product")
    if bracket != poisson_red(f, g):
        raise ArithmeticError("first-order commutator differs from the Poisson bracket")
    return LimitResult(pointwise, bracket)
