"""Polynomial algebra on C^{1+n}: pointwise and Wick products, Poisson bracket, seminorms."""

from __future__ import annotations

from fractions import Fraction

from . import kernels
from ._poly import SparsePoly
from .core.combinatorics import Signature
from .core.hbar import SYMBOLIC, HRational, Symbolic, falling_scaled
from .core.scalars import I, ONE, as_gaussian

__all__ = [
    "AmbientPoly",
    "ambient_mul",
    "ambient_poisson",
    "ambient_wick_star",
    "ambient_conj",
    "ambient_seminorm",
    "u1_project",
    "s_scale_on_levelset",
    "permute_indices",
    "hbar_scalar",
]

_MINUS_I = -I


def hbar_scalar(h):
    """Exact scalar for a numeric parameter value (floats are converted exactly)."""
    if isinstance(h, Symbolic):
        return HRational.hbar()
    if isinstance(h, float):
        return as_gaussian(Fraction(h))
    return as_gaussian(h)


class AmbientPoly(SparsePoly):
    """Sparse span of ``z^P zbar^Q`` with ``P, Q`` of length ``1+n``."""

    __slots__ = ()
    key_length_offset = 1
    _letter = "M"

    def __mul__(self, other):
        if isinstance(other, AmbientPoly):
            return ambient_mul(self, other)
        return self.scale(other)

    def star(self, other, lam=SYMBOLIC):
        return ambient_wick_star(self, other, lam)

    def is_invariant(self) -> bool:
        return all(sum(P) == sum(Q) for P, Q in self.keys())

    def evaluate(self, z):
        """Value at ``z`` in C^{1+n} (coefficients must be numeric)."""
        z = [complex(x) for x in z]
        total = 0j
        for (P, Q), c in self.items():
            if isinstance(c, HRational):
                raise TypeError("evaluate needs numeric coefficients")
            v = complex(c)
            for zk, p, q in zip(z, P, Q):
                v *= zk**p * zk.conjugate() ** q
            total += v
        return total


def _pairwise(f, g, emit):
    f._same(g)
    acc = {}
    for (P, Q), a in f.items():
        for (R, S), b in g.items():
            ab = a * b if not isinstance(b, HRational) else b * a
            emit(acc, P, Q, R, S, ab)
    return acc


def ambient_mul(f: AmbientPoly, g: AmbientPoly) -> AmbientPoly:
    def emit(acc, P, Q, R, S, ab):
        k = (tuple(p + r for p, r in zip(P, R)), tuple(q + s for q, s in zip(Q, S)))
        acc[k] = acc[k] + ab if k in acc else ab

    return AmbientPoly._from_acc(f.sig, _pairwise(f, g, emit))


def ambient_poisson(f: AmbientPoly, g: AmbientPoly) -> AmbientPoly:
    nu = f.sig.nu

    def emit(acc, P, Q, R, S, ab):
        for Pn, Qn, w in kernels.ambient_poisson_terms(P, Q, R, S, nu):
            v = ab * (_MINUS_I * w)
            k = (Pn, Qn)
            acc[k] = acc[k] + v if k in acc else v

    return AmbientPoly._from_acc(f.sig, _pairwise(f, g, emit))


def ambient_wick_star(f: AmbientPoly, g: AmbientPoly, lam=SYMBOLIC) -> AmbientPoly:
    """Wick product with parameter ``lam`` (no poles; any value or SYMBOLIC)."""
    nu = f.sig.nu
    base = hbar_scalar(lam)
    powers = {}

    def power(t):
        if t not in powers:
            powers[t] = HRational.hbar(t) if isinstance(lam, Symbolic) else base**t
        return powers[t]

    def emit(acc, P, Q, R, S, ab):
        for t, Pn, Qn, w in kernels.ambient_star_terms(P, Q, R, S, nu):
            v = power(t) * (ab * w) if t else ab * w
            k = (Pn, Qn)
            acc[k] = acc[k] + v if k in acc else v

    return AmbientPoly._from_acc(f.sig, _pairwise(f, g, emit))


def ambient_conj(f: AmbientPoly) -> AmbientPoly:
    return f.conj()


def ambient_seminorm(f: AmbientPoly, r) -> Fraction:
    return f.seminorm(r)


def u1_project(f: AmbientPoly) -> AmbientPoly:
    return AmbientPoly._from_acc(f.sig, {k: c for k, c in f.items() if sum(k[0]) == sum(k[1])})


def s_scale_on_levelset(f: AmbientPoly, lam=SYMBOLIC) -> AmbientPoly:
    """Scale each invariant monomial by ``prod_{k<|P|} (1 - k lam)``."""
    if not f.is_invariant():
        raise ValueError("s_scale_on_levelset needs a U(1)-invariant polynomial")
    acc = {}
    for (P, Q), c in f.items():
        A = falling_scaled(sum(P))
        if not isinstance(lam, Symbolic):
            A = A.evaluate(hbar_scalar(lam))
        acc[(P, Q)] = A * c
    return AmbientPoly._from_acc(f.sig, acc)


def permute_indices(f: AmbientPoly, sigma) -> AmbientPoly:
    """Relabel index ``k`` as ``sigma[k]``; ``sigma`` must preserve the sign blocks."""
    sigma = tuple(sigma)
    nu = f.sig.nu
    if sorted(sigma) != list(range(len(nu))) or any(nu[k] != nu[sigma[k]] for k in range(len(nu))):
        raise ValueError("permutation must preserve the signature blocks")

    def move(P):
        out = [0] * len(P)
        for k, p in enumerate(P):
            out[sigma[k]] = p
        return tuple(out)

    return AmbientPoly._from_acc(f.sig, {(move(P), move(Q)): c for (P, Q), c in f.items()})


def monom(sig: Signature, P, Q, c=ONE) -> AmbientPoly:
    return AmbientPoly.monomial(sig, P, Q, c)
