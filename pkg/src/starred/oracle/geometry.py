"""Chart geometry of the reduced manifold: metric, Levi-Civita connection, H_red, pi_red.

Coordinates are numbered ``0..n-1`` for ``w^k`` and ``n..2n-1`` for ``wbar^k``.
The symmetric product is normalized, so ``dwbar^k v dw^l`` contributes one half
of its coefficient to each of the two mixed blocks of the full metric matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product

from ..core.combinatorics import Signature
from .chart import ChartFunction, ChartRing, chart_ring
from .tensors import SymTensor

__all__ = [
    "Metric",
    "metric_components",
    "flat_metric",
    "christoffel",
    "h_red_components",
    "pi_red_components",
    "two_im",
    "sym_cov_derivative_power",
    "pair_with_H_power",
    "check_geometry",
    "matrix_inverse",
    "chart_D",
]

HALF = Fraction(1, 2)


@dataclass
class Metric:
    """Mixed components ``g_{kbar l}`` plus the full real-coordinate matrices."""

    ring: ChartRing
    n: int
    g: list  # g[k][l] = g_{kbar l}
    full: list  # 2n x 2n
    full_inv: list
    flat: bool = False

    @property
    def dim(self):
        return 2 * self.n


def chart_D(sig: Signature, ring: ChartRing | None = None) -> ChartFunction:
    """``1 + sum_k nu_k w^k wbar^k``."""
    r = ring or chart_ring(sig.n)
    D = r.one()
    for k in range(sig.n):
        D = D + r.var(k) * r.var(sig.n + k) * sig.nu[k + 1]
    return D


def matrix_inverse(M, ring: ChartRing):
    """Gauss-Jordan inverse over the chart function field."""
    N = len(M)
    A = [list(row) + [ring.one() if i == j else ring.zero() for j in range(N)] for i, row in enumerate(M)]
    for col in range(N):
        piv = next((r for r in range(col, N) if A[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular metric")
        A[col], A[piv] = A[piv], A[col]
        inv = A[col][col].inverse()
        A[col] = [x * inv for x in A[col]]
        for r in range(N):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [row[N:] for row in A]


def _full_from_mixed(g, n, ring):
    G = [[ring.zero() for _ in range(2 * n)] for _ in range(2 * n)]
    for k in range(n):
        for l in range(n):
            G[n + k][l] = g[k][l] * HALF
            G[l][n + k] = g[k][l] * HALF
    return G


def _make_metric(g, n, ring, flat=False):
    G = _full_from_mixed(g, n, ring)
    Ginv = matrix_inverse(G, ring)
    for i in range(2 * n):
        for j in range(2 * n):
            s = ring.zero()
            for k in range(2 * n):
                s = s + G[i][k] * Ginv[k][j]
            if s != (1 if i == j else 0):
                raise ArithmeticError("metric inverse check failed")
    return Metric(ring, n, g, G, Ginv, flat)


def metric_components(sig: Signature) -> Metric:
    """``g_{kbar l} = nu_k delta_kl / D - nu_k nu_l wbar^l w^k / D^2``."""
    n = sig.n
    r = chart_ring(n)
    D = chart_D(sig, r)
    Dinv = D.inverse()
    nu = sig.nu[1:]
    g = [[r.zero() for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for l in range(n):
            val = r.var(n + l) * r.var(k) * (-nu[k] * nu[l]) * Dinv * Dinv
            if k == l:
                val = val + Dinv * nu[k]
            g[k][l] = val
    return _make_metric(g, n, r)


def flat_metric(sig: Signature) -> Metric:
    """Constant metric ``sum_{k=0}^n nu_k dzbar^k v dz^k`` on the ambient space (diagnostic)."""
    m = sig.n + 1
    r = chart_ring(m)
    g = [[r.const(sig.nu[k]) if k == l else r.zero() for l in range(m)] for k in range(m)]
    return _make_metric(g, m, r, flat=True)


def christoffel(metric: Metric):
    """``Gamma[a][b][c] = 1/2 g^{ad} (d_b g_{dc} + d_c g_{bd} - d_d g_{bc})``."""
    N = metric.dim
    r = metric.ring
    G, Ginv = metric.full, metric.full_inv
    if metric.flat:
        return [[[r.zero() for _ in range(N)] for _ in range(N)] for _ in range(N)]
    dG = [[[G[i][j].diff(a) for j in range(N)] for i in range(N)] for a in range(N)]
    # first kind: Gamma_{d,bc}
    first = {}
    for d in range(N):
        for b in range(N):
            for c in range(b, N):
                first[(d, b, c)] = (dG[b][d][c] + dG[c][b][d] - dG[d][b][c]) * HALF
    Gam = [[[None] * N for _ in range(N)] for _ in range(N)]
    for a in range(N):
        for b in range(N):
            for c in range(b, N):
                s = r.zero()
                for d in range(N):
                    if Ginv[a][d]:
                        t = first[(d, b, c)]
                        if t:
                            s = s + Ginv[a][d] * t
                Gam[a][b][c] = s
                Gam[a][c][b] = s
    return Gam


def h_red_components(sig: Signature):
    """``H^{kbar l} = D (wbar^k w^l + nu_k delta_kl)``."""
    n = sig.n
    r = chart_ring(n)
    D = chart_D(sig, r)
    nu = sig.nu[1:]
    H = [[None] * n for _ in range(n)]
    for k in range(n):
        for l in range(n):
            v = r.var(n + k) * r.var(l)
            if k == l:
                v = v + nu[k]
            H[k][l] = D * v
    return H


def flat_H(sig: Signature):
    m = sig.n + 1
    r = chart_ring(m)
    return [[r.const(sig.nu[k]) if k == l else r.zero() for l in range(m)] for k in range(m)]


def pi_red_components(sig: Signature):
    """Full ``2n x 2n`` components of ``-2i D (sum wbar^k w^l d_kbar ^ d_l + sum nu_k d_kbar ^ d_k)``.

    The wedge is normalized, ``a ^ b = (a (x) b - b (x) a) / 2``.
    """
    n = sig.n
    r = chart_ring(n)
    D = chart_D(sig, r)
    nu = sig.nu[1:]
    mi = r.const("-i")
    P = [[r.zero() for _ in range(2 * n)] for _ in range(2 * n)]
    for k in range(n):
        for l in range(n):
            c = r.var(n + k) * r.var(l)
            if k == l:
                c = c + nu[k]
            c = mi * D * c
            P[n + k][l] = P[n + k][l] + c
            P[l][n + k] = P[l][n + k] - c
    return P


def two_im(H, n: int, ring: ChartRing):
    """Full components of ``(H - conj(H)) / i`` for ``H`` of type (0,1) (x) (1,0)."""
    T = [[ring.zero() for _ in range(2 * n)] for _ in range(2 * n)]
    mi = ring.const("-i")
    for k in range(n):
        for l in range(n):
            T[n + k][l] = T[n + k][l] + H[k][l] * mi
            # conj(H^{kbar l} d_kbar (x) d_l) = barswap(H^{kbar l}) d_k (x) d_lbar
            T[k][n + l] = T[k][n + l] - H[k][l].barswap() * mi
    return T


def _allowed(kind: str, n: int):
    if kind == "hol":
        return tuple(range(n))
    if kind == "antihol":
        return tuple(range(n, 2 * n))
    if kind == "full":
        return tuple(range(2 * n))
    raise ValueError(f"unknown derivative type {kind!r}")


def sym_cov_derivative_power(f: ChartFunction, r: int, Gamma, n: int, kind: str = "full", _cache=None):
    """``(D^sym)^r f`` restricted (at every step) to indices of the given type.

    ``(D^sym w)_{j0..jk} = 1/(k+1) sum_p (nabla_{j_p} w)_{j0..^jp..jk}``.
    """
    ring = f.ring
    allowed = _allowed(kind, n)
    zero = ring.zero()
    T = SymTensor.scalar(f, 2 * n, zero)
    out = [T]
    for k in range(r):
        T = _dsym_step(T, Gamma, allowed, zero)
        out.append(T)
    return out[r] if _cache is None else out


def _dsym_step(T: SymTensor, Gamma, allowed, zero):
    k = T.rank
    nabla = {}

    def nab(j, idx):
        key = (j, idx)
        if key not in nabla:
            val = T[idx].diff(j) if T[idx] else zero
            for m in range(k):
                for a in allowed:
                    G = Gamma[a][j][idx[m]]
                    if G:
                        other = T[idx[:m] + (a,) + idx[m + 1 :]]
                        if other:
                            val = val - G * other
            nabla[key] = val
        return nabla[key]

    comps = {}
    for key in combinations_with_replacement(allowed, k + 1):
        acc = zero
        for p in range(k + 1):
            acc = acc + nab(key[p], tuple(sorted(key[:p] + key[p + 1 :])))
        if acc:
            comps[key] = acc * Fraction(1, k + 1)
    return SymTensor(k + 1, T.dim, comps, zero)


def pair_with_H_power(a: SymTensor, b: SymTensor, H, n: int):
    """``sum prod_i H^{k_i l_i} a_{kbar_1..kbar_r} b_{l_1..l_r}`` over ordered index tuples."""
    if a.rank != b.rank:
        raise ValueError("rank mismatch")
    r = a.rank
    zero = a.zero
    if r == 0:
        return a[()] * b[()]
    total = zero
    for ks in product(range(n), repeat=r):
        av = a[tuple(n + k for k in ks)]
        if not av:
            continue
        for ls in product(range(n), repeat=r):
            bv = b[ls]
            if not bv:
                continue
            h = av * bv
            for k, l in zip(ks, ls):
                h = h * H[k][l]
                if not h:
                    break
            total = total + h
    return total


def check_geometry(sig: Signature | None = None, *, flat_sig: Signature | None = None) -> dict:
    """Exact checks of metric compatibility, torsion freeness, type purity and ``pi = 2 Im H``.

    Pass ``flat_sig`` instead of ``sig`` for the constant ambient metric diagnostic.
    """
    if flat_sig is not None:
        metric = flat_metric(flat_sig)
        H = flat_H(flat_sig)
    else:
        metric = metric_components(sig)
        H = h_red_components(sig)
    n = metric.n
    N = 2 * n
    ring = metric.ring
    Gam = christoffel(metric)
    G = metric.full
    report = {}

    ok = True
    for a in range(N):
        for b in range(N):
            for c in range(N):
                v = G[b][c].diff(a)
                for d in range(N):
                    if Gam[d][a][b] and G[d][c]:
                        v = v - Gam[d][a][b] * G[d][c]
                    if Gam[d][a][c] and G[b][d]:
                        v = v - Gam[d][a][c] * G[b][d]
                if v:
                    ok = False
    report["metric_compatible"] = ok

    report["torsion_free"] = all(
        Gam[a][b][c] == Gam[a][c][b] for a in range(N) for b in range(N) for c in range(N)
    )

    def typ(i):
        return i < n

    report["type_pure"] = all(
        not Gam[a][b][c] or typ(a) == typ(b) == typ(c)
        for a in range(N)
        for b in range(N)
        for c in range(N)
    )

    # H is the inverse of the mixed metric block: sum_l g_{kbar l} H^{mbar l} = delta
    inv_ok = True
    for k in range(n):
        for m in range(n):
            s = ring.zero()
            for l in range(n):
                s = s + metric.g[k][l] * H[m][l]
            if s != (1 if k == m else 0):
                inv_ok = False
    report["H_inverts_metric"] = inv_ok

    if flat_sig is None:
        P = pi_red_components(sig)
        T = two_im(H, n, ring)
        report["pi_equals_2ImH"] = all(P[i][j] == T[i][j] for i in range(N) for j in range(N))
        report["flat_connection"] = None
    else:
        report["flat_connection"] = all(not Gam[a][b][c] for a in range(N) for b in range(N) for c in range(N))
        report["pi_equals_2ImH"] = None
    return report
