"""Seeded verification suites; each returns a JSON-ready report."""

from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import product

import numpy as np

from .ambient import AmbientPoly, ambient_poisson, ambient_wick_star
from .analytic import (
    contour_coefficients,
    continuity_check,
    defect_probe,
    defect_sum,
    lift,
    positivity_probe,
    sample_disc_points,
)
from .core.combinatorics import Signature, verify_falling_rising
from .core.hbar import SYMBOLIC, HRational, Symbolic
from .core.scalars import GaussianRational
from .oracle import check_geometry, poisson_red_oracle, star_red_oracle, to_chart
from .reduced import (
    ReducedPoly,
    Z,
    limit_commutator,
    poisson_red,
    reduced_mul,
    relation_polynomial,
    star_red,
)
from .wickrot import rotate_ambient, rotate_reduced

__all__ = ["SUITES", "run_suite", "UnknownSuiteError", "random_monomial", "random_poly"]

DEFAULT_SEED = 20240611


class UnknownSuiteError(KeyError):
    pass


# ---------------------------------------------------------------------------
# random inputs


def _split(rng, total, parts):
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    edges = [0] + cuts + [total]
    return [b - a for a, b in zip(edges, edges[1:])]


def random_key(rng: random.Random, length: int, deg: int):
    d = rng.randint(0, deg)
    e = _split(rng, d, 2 * length)
    return tuple(e[:length]), tuple(e[length:])


def random_monomial(rng: random.Random, sig: Signature, deg: int, ambient=False):
    cls = AmbientPoly if ambient else ReducedPoly
    P, Q = random_key(rng, sig.n + (1 if ambient else 0), deg)
    return cls.monomial(sig, P, Q)


def random_poly(rng: random.Random, sig: Signature, deg: int, terms: int = 3, ambient=False, complex_=True):
    cls = AmbientPoly if ambient else ReducedPoly
    L = sig.n + (1 if ambient else 0)
    out = []
    for _ in range(rng.randint(1, terms)):
        re = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        im = Fraction(rng.randint(-4, 4), rng.randint(1, 3)) if complex_ else 0
        out.append((random_key(rng, L, deg), GaussianRational(re, im)))
    f = cls(sig, out)
    return f if f else cls.constant(sig, 1)


def _sigs(n, s, ns=(1, 2), s_choice="all"):
    if n is not None and s is not None:
        return [Signature(n, s)]
    out = []
    for nn in ([n] if n is not None else ns):
        if s is not None:
            out.append(Signature(nn, s))
            continue
        if s_choice == "all":
            ss = range(1, nn + 2)
        elif s_choice == "extremes":
            ss = sorted({1, nn + 1})
        else:
            ss = sorted({x for x in s_choice(nn) if 1 <= x <= nn + 1})
        out += [Signature(nn, x) for x in ss]
    return out


def _sig_str(sig):
    return f"n={sig.n},s={sig.s}"


def _hbar_str(h):
    return "symbolic" if isinstance(h, Symbolic) else str(h)


class _Collector:
    def __init__(self):
        self.cases = 0
        self.failures = []
        self.notes = []

    def check(self, case, ok, inputs, diff=""):
        self.cases += 1
        if not ok:
            self.failures.append({"case": case, "inputs": inputs, "diff": diff})


def _diff(a, b):
    try:
        return str(a - b)
    except Exception:  # pragma: no cover - mixed types only in reporting
        return f"{a} != {b}"


# ---------------------------------------------------------------------------
# suites


def suite_associativity(col, seed, n=None, s=None, hbar=None, deg=None, cases=None, **_):
    rng = random.Random(seed)
    plans = []
    if n is None and s is None and hbar is None:
        sym = _sigs(None, None, (1, 2), s_choice=lambda nn: (1, 2, nn + 1))
        plans += [(sig, SYMBOLIC, deg or 3, cases or 200) for sig in sym]
        exact = [Fraction(-1), Fraction(-1, 2), Fraction(2, 3), Fraction(3, 2)]
        plans += [
            (Signature(3, ss), h, deg or 4, cases or 50) for ss in (1, 2, 4) for h in exact
        ]
    else:
        h = SYMBOLIC if hbar is None else hbar
        plans += [(sig, h, deg or 3, cases or 50) for sig in _sigs(n, s)]
    for sig, h, d, count in plans:
        for i in range(count):
            f, g, k = (random_monomial(rng, sig, d) for _ in range(3))
            left = star_red(star_red(f, g, h), k, h)
            right = star_red(f, star_red(g, k, h), h)
            col.check(
                f"{_sig_str(sig)},hbar={_hbar_str(h)},#{i}",
                left == right,
                [str(f), str(g), str(k)],
                _diff(left, right),
            )


def suite_hermitian(col, seed, n=None, s=None, deg=None, cases=None, **_):
    rng = random.Random(seed)
    for sig in _sigs(n, s):
        for i in range(cases or 40):
            f = random_poly(rng, sig, deg or 3)
            g = random_poly(rng, sig, deg or 3)
            left = star_red(f, g).conj()
            right = star_red(g.conj(), f.conj())
            col.check(f"{_sig_str(sig)},#{i}", left == right, [str(f), str(g)], _diff(left, right))
            unit = ReducedPoly.constant(sig)
            col.check(
                f"{_sig_str(sig)},unit#{i}",
                star_red(unit, f) == f == star_red(f, unit),
                [str(f)],
            )


def suite_jacobi(col, seed, n=None, s=None, deg=None, cases=None, **_):
    rng = random.Random(seed)
    for sig in _sigs(n, s):
        for i in range(cases or 40):
            f, g, h = (random_poly(rng, sig, deg or 3) for _ in range(3))
            jac = (
                poisson_red(f, poisson_red(g, h))
                + poisson_red(g, poisson_red(h, f))
                + poisson_red(h, poisson_red(f, g))
            )
            col.check(f"{_sig_str(sig)},jacobi#{i}", not jac, [str(f), str(g), str(h)], str(jac))
            anti = poisson_red(f, g) + poisson_red(g, f)
            col.check(f"{_sig_str(sig)},antisym#{i}", not anti, [str(f), str(g)], str(anti))
            leib = poisson_red(f, g * h) - (poisson_red(f, g) * h + g * poisson_red(f, h))
            col.check(f"{_sig_str(sig)},leibniz#{i}", not leib, [str(f), str(g), str(h)], str(leib))


def suite_limits(col, seed, n=None, s=None, deg=None, cases=None, **_):
    rng = random.Random(seed)
    sigs = _sigs(n, s)
    total = cases or 100
    for i in range(total):
        sig = sigs[i % len(sigs)]
        f = random_poly(rng, sig, deg or 3)
        g = random_poly(rng, sig, deg or 3)
        try:
            limit_commutator(f, g)
            ok, diff = True, ""
        except ArithmeticError as exc:
            ok, diff = False, str(exc)
        col.check(f"{_sig_str(sig)},#{i}", ok, [str(f), str(g)], diff)


def suite_wick_iso(col, seed, n=None, s=None, deg=None, cases=None, **_):
    rng = random.Random(seed)
    for sig in _sigs(n, s):
        for i in range(cases or 100):
            f = random_poly(rng, sig, deg or 3)
            g = random_poly(rng, sig, deg or 3)
            Rf, Rg = rotate_reduced(f), rotate_reduced(g)
            for name, op in (("pointwise", reduced_mul), ("star", star_red), ("poisson", poisson_red)):
                left = rotate_reduced(op(f, g))
                right = op(Rf, Rg)
                col.check(f"{_sig_str(sig)},{name}#{i}", left == right, [str(f), str(g)], _diff(left, right))
        col.check(
            f"{_sig_str(sig)},relation",
            rotate_reduced(relation_polynomial(sig)) == relation_polynomial(sig.compact()),
            [_sig_str(sig)],
        )
        if sig.s < sig.n + 1:
            en = tuple(1 if k == sig.n - 1 else 0 for k in range(sig.n))
            w = Z(sig, en, (0,) * sig.n)
            a = rotate_reduced(w.conj())
            b = rotate_reduced(w).conj()
            col.check(f"{_sig_str(sig)},star-witness", a == -b and a != b, [str(w)], _diff(a, b))
            col.notes.append(
                {"signature": _sig_str(sig), "witness": str(w), "rotate(conj f)": str(a), "conj(rotate f)": str(b)}
            )


def suite_wick_iso_ambient(col, seed, n=None, s=None, deg=None, cases=None, **_):
    rng = random.Random(seed)
    for sig in _sigs(n, s):
        for i in range(cases or 30):
            f = random_poly(rng, sig, deg or 3, ambient=True)
            g = random_poly(rng, sig, deg or 3, ambient=True)
            Rf, Rg = rotate_ambient(f), rotate_ambient(g)
            for name, op in (("mul", lambda a, b: a * b), ("star", ambient_wick_star), ("poisson", ambient_poisson)):
                left = rotate_ambient(op(f, g))
                right = op(Rf, Rg)
                col.check(f"{_sig_str(sig)},{name}#{i}", left == right, [str(f), str(g)], _diff(left, right))


def _fundamental_keys(n, deg):
    keys = []
    for P in product(range(deg + 1), repeat=n):
        for Q in product(range(deg + 1), repeat=n):
            if sum(P) + sum(Q) <= deg:
                keys.append((P, Q))
    return keys


def suite_oracle(col, seed, n=None, s=None, deg=None, **_):
    d = 2 if deg is None else deg
    for sig in _sigs(n, s, (1, 2), s_choice="extremes"):
        keys = _fundamental_keys(sig.n, d)
        for k1 in keys:
            f = Z(sig, *k1)
            for k2 in keys:
                g = Z(sig, *k2)
                a = to_chart(star_red(f, g))
                b = star_red_oracle(f, g)
                col.check(f"{_sig_str(sig)},{k1}*{k2}", a == b, [str(f), str(g)], "" if a == b else f"{a} vs {b}")
        # first-order antisymmetrized term against the reduced bracket
        for k1 in keys:
            for k2 in keys:
                f, g = Z(sig, *k1), Z(sig, *k2)
                ok = poisson_red_oracle(f, g) == to_chart(poisson_red(f, g))
                col.check(f"{_sig_str(sig)},{{{k1},{k2}}}", ok, [str(f), str(g)])


def suite_geometry(col, seed, n=None, s=None, **_):
    for sig in _sigs(n, s, (1, 2)):
        rep = check_geometry(sig)
        for name, ok in rep.items():
            if ok is not None:
                col.check(f"{_sig_str(sig)},{name}", ok, [_sig_str(sig)])


def suite_positivity(col, seed, n=None, s=None, hbar=None, deg=None, cases=None, points=None, **_):
    rng = random.Random(seed)
    nrng = np.random.default_rng(seed)
    full = n is None and s is None and hbar is None
    if full or (s == 1):
        hbars = [Fraction(-1, 4), Fraction(-1, 2), Fraction(-1)] if hbar is None else [hbar]
        for sig in _sigs(n, 1 if s is None else s, (1, 2)):
            for h in hbars:
                for i in range(cases or 50):
                    f = random_poly(rng, sig, deg or 3)
                    pts = sample_disc_points(sig, points or 100, nrng)
                    rep = positivity_probe(f, h, pts)
                    col.check(
                        f"{_sig_str(sig)},hbar={h},#{i}",
                        rep.ok,
                        [str(f)],
                        f"min value {rep.minimum}",
                    )
    if full or (s is not None and s > 1):
        sig = Signature(1, 2) if full else Signature(n or 1, s)
        h = Fraction(-2) if hbar is None else hbar
        exact = defect_sum(sig)
        expected = HRational((1, sig.n))
        col.check(f"{_sig_str(sig)},defect-identity", exact == ReducedPoly.constant(sig, expected), [_sig_str(sig)], str(exact))
        pts = sample_disc_points(sig, points or 100, nrng) if sig.s == sig.n + 1 else [(0,) * sig.n]
        rep = defect_probe(sig, h, pts)
        value = expected.evaluate(h)
        col.check(
            f"{_sig_str(sig)},hbar={h},witness",
            all(abs(v - float(value.re)) < 1e-12 for v in rep.values),
            [str(h)],
            f"values {rep.values[:3]}...",
        )
        col.notes.append(
            {
                "witness": f"sum_ij Y[E_j,E_i]*Y[E_i,E_j] = {expected}",
                "hbar": str(h),
                "value": str(value),
                "expected_negative": value.re < 0,
                "observed_min": rep.minimum,
            }
        )


def suite_falling_rising(col, seed, k=None, order=None, **_):
    ks = [k] if k is not None else list(range(1, 7))
    N = 12 if order is None else order
    for kk in ks:
        col.check(f"k={kk},order={N}", verify_falling_rising(kk, N), [kk, N])


def suite_continuity(col, seed, n=None, s=None, deg=None, **_):
    K = [Fraction(-1) + Fraction(3, 4) * Fraction(j, 9) for j in range(10)]
    for sig in _sigs(n, s, (1, 2)):
        rep = continuity_check(sig, K, radii=(1, 2), max_degree=deg or 4)
        col.cases += rep.checked - len(rep.violations)
        for v in rep.violations:
            col.check(f"{_sig_str(sig)},{v[:6]}", False, [str(x) for x in v[:6]], f"{v[6]} > {v[7]}")
        col.notes.append({"signature": _sig_str(sig), "c": rep.c, "C": rep.C, "worst_ratio": rep.worst_ratio})


def suite_contour(col, seed, n=None, s=None, deg=None, cases=None, radius=None, nodes=None, **_):
    rng = random.Random(seed)
    nn = n or 1
    d = deg or (4 if nn == 1 else 2)
    m = nodes or (64 if nn == 1 else 16)
    for sig in _sigs(nn, s, (nn,)):
        keys = _fundamental_keys(sig.n, d)
        for i in range(cases or 20):
            f = random_poly(rng, sig, d, terms=5)
            got = contour_coefficients(lift(f), keys, sig, radius, m)
            err = max(abs(got[k] - complex(f.coeff(*k))) for k in keys)
            col.check(f"{_sig_str(sig)},#{i}", err < 1e-8, [str(f)], f"max error {err:.3e}")


SUITES = {
    "associativity": suite_associativity,
    "hermitian": suite_hermitian,
    "jacobi": suite_jacobi,
    "limits": suite_limits,
    "wick-iso": suite_wick_iso,
    "wick-iso-ambient": suite_wick_iso_ambient,
    "oracle": suite_oracle,
    "geometry": suite_geometry,
    "positivity": suite_positivity,
    "falling-rising": suite_falling_rising,
    "continuity": suite_continuity,
    "contour": suite_contour,
}


def run_suite(name: str, seed: int = DEFAULT_SEED, **params) -> dict:
    if name not in SUITES:
        raise UnknownSuiteError(name)
    col = _Collector()
    t0 = time.perf_counter()
    SUITES[name](col, seed, **params)
    return {
        "suite": name,
        "seed": seed,
        "params": {k: _hbar_str(v) if k == "hbar" else v for k, v in params.items() if v is not None},
        "cases": col.cases,
        "failures": col.failures,
        "notes": col.notes,
        "wall_time": time.perf_counter() - t0,
        "passed": not col.failures,
    }
