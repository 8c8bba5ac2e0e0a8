"""Pure-Python structure-constant kernels.

All functions take multi-indices as tuples of ints and the sign vector ``nu``
(length ``1+n``) and return integer weights; scalar factors such as ``1/i`` or
the hbar-dependent weights are applied by the callers.
"""

from __future__ import annotations

from itertools import product
from math import comb, factorial

BACKEND = "python"


def _boxes(upper):
    return product(*(range(u + 1) for u in upper))


def _compositions(n, m):
    """All ``T`` in ``N^n`` with ``|T| <= m``."""
    if n == 0:
        yield ()
        return
    for first in range(m + 1):
        for rest in _compositions(n - 1, m - first):
            yield (first,) + rest


def pad(P, Q):
    """Fundamental key -> balanced ambient key (pad position 0)."""
    p, q = sum(P), sum(Q)
    if p <= q:
        return (q - p,) + tuple(P), (0,) + tuple(Q)
    return (0,) + tuple(P), (p - q,) + tuple(Q)


def ambient_star_terms(P, Q, R, S, nu):
    """``Monom{P}{Q} * Monom{R}{S}``: list of ``(|T|, P+R-T, Q+S-T, weight)``."""
    out = []
    bound = tuple(min(q, r) for q, r in zip(Q, R))
    for T in _boxes(bound):
        w = 1
        odd = 0
        for k, t in enumerate(T):
            if t:
                w *= factorial(t) * comb(Q[k], t) * comb(R[k], t)
                if nu[k] < 0:
                    odd += t
        if odd & 1:
            w = -w
        out.append((
            sum(T),
            tuple(p + r - t for p, r, t in zip(P, R, T)),
            tuple(q + s - t for q, s, t in zip(Q, S, T)),
            w,
        ))
    return out


def ambient_poisson_terms(P, Q, R, S, nu):
    """``i {Monom{P}{Q}, Monom{R}{S}}``: list of ``(key_P, key_Q, weight)``."""
    out = []
    for k in range(len(P)):
        c = nu[k] * (Q[k] * R[k] - P[k] * S[k])
        if c:
            Pn = list(p + r for p, r in zip(P, R))
            Qn = list(q + s for q, s in zip(Q, S))
            Pn[k] -= 1
            Qn[k] -= 1
            out.append((tuple(Pn), tuple(Qn), c))
    return out


def fundamental_expansion(P, Q, nu):
    """Balanced ambient key ``Y[P,Q]`` -> list of ``(Z_P, Z_Q, weight)``."""
    m = min(P[0], Q[0])
    Pp, Qp = P[1:], Q[1:]
    n = len(Pp)
    out = []
    for T in _compositions(n, m):
        t = sum(T)
        w = comb(m, t) * factorial(t)
        odd = t
        for k, tk in enumerate(T):
            if tk:
                w //= factorial(tk)
                if nu[k + 1] < 0:
                    odd += tk
        if odd & 1:
            w = -w
        out.append((
            tuple(a + b for a, b in zip(Pp, T)),
            tuple(a + b for a, b in zip(Qp, T)),
            w,
        ))
    return out


def reduced_star_terms(Pf, Qf, Pg, Qg, nu):
    """Structure constants of ``Z[Pf,Qf] * Z[Pg,Qg]`` before the hbar weights.

    Returns ``(q, r, terms)`` with ``q = |Q|`` and ``r = |R|`` of the padded
    keys and ``terms`` a list of ``(t, Z_P, Z_Q, weight)``, aggregated.
    """
    P, Q = pad(Pf, Qf)
    R, S = pad(Pg, Qg)
    acc = {}
    for t, Pn, Qn, w in ambient_star_terms(P, Q, R, S, nu):
        for Zp, Zq, c in fundamental_expansion(Pn, Qn, nu):
            key = (t, Zp, Zq)
            acc[key] = acc.get(key, 0) + w * c
    return sum(Q), sum(R), [(t, Zp, Zq, w) for (t, Zp, Zq), w in acc.items() if w]


def reduced_mul_terms(Pf, Qf, Pg, Qg, nu):
    """``Z[Pf,Qf] Z[Pg,Qg]`` in the fundamental basis: list of ``(Z_P, Z_Q, weight)``."""
    P, Q = pad(Pf, Qf)
    R, S = pad(Pg, Qg)
    return fundamental_expansion(
        tuple(a + b for a, b in zip(P, R)), tuple(a + b for a, b in zip(Q, S)), nu
    )


def reduced_poisson_terms(Pf, Qf, Pg, Qg, nu):
    """``i {Z[Pf,Qf], Z[Pg,Qg]}`` in the fundamental basis, aggregated."""
    P, Q = pad(Pf, Qf)
    R, S = pad(Pg, Qg)
    acc = {}
    for Pn, Qn, w in ambient_poisson_terms(P, Q, R, S, nu):
        for Zp, Zq, c in fundamental_expansion(Pn, Qn, nu):
            key = (Zp, Zq)
            acc[key] = acc.get(key, 0) + w * c
    return [(Zp, Zq, w) for (Zp, Zq), w in acc.items() if w]
