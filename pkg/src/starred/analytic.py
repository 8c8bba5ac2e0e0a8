"""Contour-integral coefficient extraction, positivity probes and continuity estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .ambient import AmbientPoly, hbar_scalar
from .core.combinatorics import Signature
from .core.hbar import OmegaError, Symbolic, in_omega
from .core.hbar import reduced_weight as _reduced_weight
from .reduced import ReducedPoly, Y, chart_denominator, eval_red, star_red

__all__ = [
    "lift",
    "contour_coefficient",
    "contour_coefficients",
    "PositivityReport",
    "positivity_probe",
    "defect_sum",
    "defect_probe",
    "invariant_star",
    "falling_constants",
    "ContinuityReport",
    "continuity_check",
    "sample_disc_points",
]

Sampler = Callable[[np.ndarray, np.ndarray], np.ndarray]


def lift(f: ReducedPoly) -> Sampler:
    """Vectorized ``(u, v) -> sum c u^P v^Q / (1 + sum nu u v)^max(|P|,|Q|)``.

    ``u`` and ``v`` are arrays of shape ``(N, n)``; ``v`` is independent of ``u``.
    """
    if f.is_symbolic():
        raise TypeError("lift needs numeric coefficients")
    nu = np.array(f.sig.nu[1:], dtype=float)
    terms = [(np.array(P), np.array(Q), complex(c), max(sum(P), sum(Q))) for (P, Q), c in f.items()]

    def sampler(u, v):
        u = np.asarray(u, dtype=complex)
        v = np.asarray(v, dtype=complex)
        D = 1 + (u * v) @ nu
        out = np.zeros(u.shape[0], dtype=complex)
        for P, Q, c, d in terms:
            out += c * np.prod(u**P, axis=1) * np.prod(v**Q, axis=1) / D**d
        return out

    return sampler


def _check_quadrature(n, radius, m):
    if m < 8:
        raise ValueError("need at least 8 quadrature nodes per circle")
    if not 0 < radius < 1 / math.sqrt(n):
        raise ValueError(f"radius must lie in (0, 1/sqrt(n)) = (0, {1 / math.sqrt(n):.6g})")


def _grid(n, radius, m):
    theta = 2 * np.pi * np.arange(m) / m
    circle = radius * np.exp(1j * theta)
    pts = np.array(list(product(circle, repeat=2 * n)), dtype=complex)
    return pts[:, :n], pts[:, n:]


def contour_coefficient(
    f: Sampler, P: Sequence[int], Q: Sequence[int], sig: Signature,
    radius: float | None = None, m: int = 64,
) -> complex:
    """Trapezoid rule on ``2n`` circles for the fundamental-basis coefficient ``c_{P,Q}``."""
    return contour_coefficients(f, [(P, Q)], sig, radius, m)[(tuple(P), tuple(Q))]


def contour_coefficients(f: Sampler, keys, sig: Signature, radius: float | None = None, m: int = 64) -> dict:
    """Several coefficients from one set of samples."""
    n = sig.n
    if radius is None:
        radius = 1 / (2 * math.sqrt(n))
    _check_quadrature(n, radius, m)
    u, v = _grid(n, radius, m)
    vals = f(u, v)
    D = 1 + (u * v) @ np.array(sig.nu[1:], dtype=float)
    out = {}
    for P, Q in keys:
        P, Q = tuple(P), tuple(Q)
        d = max(sum(P), sum(Q))
        weight = D ** (d - 1) / (np.prod(u ** np.array(P), axis=1) * np.prod(v ** np.array(Q), axis=1))
        out[(P, Q)] = complex(np.mean(vals * weight))
    return out


# ---------------------------------------------------------------------------
# positivity


@dataclass
class PositivityReport:
    sig: Signature
    hbar: Fraction
    values: list = field(default_factory=list)
    max_imag: float = 0.0
    expected_nonnegative: bool = False
    tol: float = 1e-12
    product: ReducedPoly | None = None

    @property
    def minimum(self) -> float:
        return min(self.values) if self.values else math.inf

    @property
    def ok(self) -> bool:
        """True unless a value below ``-tol`` occurs where positivity is expected."""
        return not self.expected_nonnegative or self.minimum >= -self.tol

    @property
    def negative(self) -> bool:
        return self.minimum < -self.tol


def _real_hbar(hbar) -> Fraction:
    if isinstance(hbar, (Symbolic, complex)):
        raise ValueError("positivity probes need a real numeric hbar")
    h = hbar_scalar(hbar)
    if not h.is_real():
        raise ValueError("positivity probes need a real numeric hbar")
    if not in_omega(h.re):
        raise OmegaError(f"hbar={hbar} is a pole of the reduced star product")
    return h.re


def positivity_probe(f: ReducedPoly, hbar, points, tol: float = 1e-12) -> PositivityReport:
    """Evaluate ``conj(f) * f`` at chart points; nonnegativity is expected for ``s = 1``, ``hbar < 0``."""
    h = _real_hbar(hbar)
    g = star_red(f.conj(), f, h)
    return _report(g, f.sig, h, points, tol)


def _report(g, sig, h, points, tol):
    rep = PositivityReport(sig, h, expected_nonnegative=(sig.s == 1 and h < 0), tol=tol, product=g)
    for w in points:
        if not chart_denominator(sig, w) > 0:
            raise ValueError(f"point {w} lies outside the chart")
        z = eval_red(g, w)
        rep.values.append(z.real)
        rep.max_imag = max(rep.max_imag, abs(z.imag))
    return rep


def defect_sum(sig: Signature, hbar=None) -> ReducedPoly:
    """``sum_{i,j=0}^n Y[E_j, E_i] * Y[E_i, E_j]`` (symbolic ``hbar`` by default)."""
    from .core.hbar import SYMBOLIC

    hbar = SYMBOLIC if hbar is None else hbar
    m = sig.n + 1
    E = [tuple(1 if k == i else 0 for k in range(m)) for i in range(m)]
    total = ReducedPoly.zero(sig)
    for i in range(m):
        for j in range(m):
            total = total + star_red(Y(sig, E[j], E[i]), Y(sig, E[i], E[j]), hbar)
    return total


def defect_probe(sig: Signature, hbar, points, tol: float = 1e-12) -> PositivityReport:
    """Positivity report for the defect sum, a sum of products ``conj(a) * a``."""
    h = _real_hbar(hbar)
    return _report(defect_sum(sig, h), sig, h, points, tol)


def sample_disc_points(sig: Signature, count: int, rng: np.random.Generator, margin: float = 0.05):
    """Random chart points with ``1 + sum nu |w|^2 >= margin``."""
    n = sig.n
    pts = []
    while len(pts) < count:
        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        if sig.s == 1:
            z *= rng.uniform(0, 1) ** (1 / (2 * n)) / np.linalg.norm(z)
        if chart_denominator(sig, z) >= margin:
            pts.append(tuple(complex(x) for x in z))
    return pts


# ---------------------------------------------------------------------------
# continuity


def invariant_star(f: AmbientPoly, g: AmbientPoly, hbar) -> AmbientPoly:
    """Product of U(1)-invariant ambient polynomials with the reduced structure-constant weights."""
    f._same(g)
    if not (f.is_invariant() and g.is_invariant()):
        raise ValueError("invariant_star needs U(1)-invariant inputs")
    symbolic = isinstance(hbar, Symbolic)
    if not symbolic:
        if not in_omega(hbar):
            raise OmegaError(f"hbar={hbar} is a pole of the reduced star product")
        h = hbar_scalar(hbar)
    nu = f.sig.nu
    acc = {}
    for (P, Q), a in f.items():
        q = sum(Q)
        for (R, S), b in g.items():
            r = sum(R)
            for t, Pn, Qn, w in kernels.ambient_star_terms(P, Q, R, S, nu):
                F = _reduced_weight(q, r, t)
                F = F if symbolic else F.evaluate(h)
                v = (F * (a * b)) * w if symbolic else a * b * F * w
                k = (Pn, Qn)
                acc[k] = acc[k] + v if k in acc else v
    return AmbientPoly._from_acc(f.sig, acc)


def falling_constants(hbars, m_max: int, grid: int = 200):
    """Empirical ``c <= (|(z)_m| / m!)^{1/m} <= C`` for ``z = 1/hbar``, ``1 <= m <= m_max``.

    The extremes are taken over the given ``hbars`` together with a uniform grid
    spanning their range; ``C`` is raised to at least 1.
    """
    hs = [float(h) for h in hbars]
    lo, hi = min(hs), max(hs)
    samples = hs + list(np.linspace(lo, hi, grid))
    c, C = math.inf, 0.0
    for h in samples:
        z = 1.0 / h
        acc = 1.0
        for m in range(1, m_max + 1):
            acc *= abs(z - (m - 1)) / m
            val = acc ** (1.0 / m)
            c = min(c, val)
            C = max(C, val)
    return c, max(C, 1.0)


@dataclass
class ContinuityReport:
    c: float
    C: float
    checked: int = 0
    violations: list = field(default_factory=list)
    worst_ratio: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations


def continuity_check(sig: Signature, hbars, radii=(1, 2), max_degree: int = 4) -> ContinuityReport:
    """Check ``||M * M'||_r <= (8 C r / c)^{|P+Q+R+S|}`` on all invariant monomial pairs."""
    m = sig.n + 1
    monos = []
    for d in range(0, max_degree // 2 + 1):
        comps = [T for T in product(range(d + 1), repeat=m) if sum(T) == d]
        monos += [(P, Q) for P in comps for Q in comps]
    m_max = 2 * (max_degree // 2)
    c, C = falling_constants(hbars, max(m_max, 1))
    rep = ContinuityReport(c, C)
    for h in hbars:
        for P, Q in monos:
            f = AmbientPoly.monomial(sig, P, Q)
            for R, S in monos:
                g = AmbientPoly.monomial(sig, R, S)
                prod_ = invariant_star(f, g, h)
                deg = sum(P) + sum(Q) + sum(R) + sum(S)
                for r in radii:
                    lhs = float(prod_.seminorm(r))
                    bound = (8 * C * r / c) ** deg
                    rep.checked += 1
                    ratio = lhs / bound
                    rep.worst_ratio = max(rep.worst_ratio, ratio)
                    if lhs > bound:
                        rep.violations.append((h, P, Q, R, S, r, lhs, bound))
    return rep
