"""Wick rotation: diagonal rescaling by powers of i into the compact signature."""

from __future__ import annotations

from .ambient import AmbientPoly
from .core.combinatorics import Signature
from .core.scalars import I, ONE
from .reduced import ReducedPoly

__all__ = ["rotate_ambient", "rotate_reduced", "unrotate_ambient", "unrotate_reduced"]

_POW_I = (ONE, I, -ONE, -I)


def _rescale(f, cls, start, sign, target):
    acc = {}
    for (P, Q), c in f.items():
        e = sum(P[start:]) + sum(Q[start:])
        acc[(P, Q)] = c * _POW_I[(sign * e) % 4]
    return cls._from_acc(target, acc)


def rotate_ambient(f: AmbientPoly) -> AmbientPoly:
    """``Monom{P}{Q} -> i^{sum_{k>=s} (P_k + Q_k)} Monom{P}{Q}`` in signature ``(n, 1+n)``."""
    return _rescale(f, AmbientPoly, f.sig.s, 1, f.sig.compact())


def rotate_reduced(f: ReducedPoly) -> ReducedPoly:
    """Same rescaling on fundamental keys, whose positions 0..n-1 carry indices 1..n."""
    return _rescale(f, ReducedPoly, f.sig.s - 1, 1, f.sig.compact())


def unrotate_ambient(f: AmbientPoly, s: int) -> AmbientPoly:
    """Inverse of :func:`rotate_ambient`, landing in signature ``(n, s)``."""
    if not f.sig.is_compact:
        raise ValueError("input must carry the compact signature")
    return _rescale(f, AmbientPoly, s, -1, Signature(f.sig.n, s))


def unrotate_reduced(f: ReducedPoly, s: int) -> ReducedPoly:
    if not f.sig.is_compact:
        raise ValueError("input must carry the compact signature")
    return _rescale(f, ReducedPoly, s - 1, -1, Signature(f.sig.n, s))
