# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled structure-constant kernels.

Same interface as ``_kernels_py``.  Weights are accumulated in 64-bit
integers; any overflow raises ``OverflowError`` and the dispatcher retries
with the Python implementation.
"""

from libc.string cimport memset

BACKEND = "cython"

cdef enum:
    MAXDIM = 32
    MAXFACT = 20

cdef extern from *:
    bint mul_overflow "__builtin_mul_overflow"(long long a, long long b, long long *res) nogil
    bint add_overflow "__builtin_add_overflow"(long long a, long long b, long long *res) nogil

cdef long long FACT[MAXFACT + 1]
cdef long long BINOM[64][64]


cdef void _init_tables():
    cdef int i, j
    FACT[0] = 1
    for i in range(1, MAXFACT + 1):
        FACT[i] = FACT[i - 1] * i
    memset(BINOM, 0, sizeof(BINOM))
    for i in range(64):
        BINOM[i][0] = 1
        for j in range(1, i + 1):
            if BINOM[i - 1][j - 1] > (<long long>1 << 61) or BINOM[i - 1][j] > (<long long>1 << 61):
                BINOM[i][j] = -1
            else:
                BINOM[i][j] = BINOM[i - 1][j - 1] + BINOM[i - 1][j]

_init_tables()


cdef inline long long _mul(long long a, long long b) except? -1:
    cdef long long r
    if mul_overflow(a, b, &r):
        raise OverflowError("kernel weight overflow")
    return r


cdef inline long long _binom(int n, int k) except? -1:
    if n >= 64 or BINOM[n][k] < 0:
        raise OverflowError("binomial out of table")
    return BINOM[n][k]


cdef inline long long _fact(int n) except? -1:
    if n > MAXFACT:
        raise OverflowError("factorial out of table")
    return FACT[n]


cdef int _load(object seq, int *out) except -1:
    cdef int i = 0
    for x in seq:
        if i >= MAXDIM:
            raise OverflowError("dimension too large for compiled kernel")
        out[i] = x
        i += 1
    return i


def pad(P, Q):
    p, q = sum(P), sum(Q)
    if p <= q:
        return (q - p,) + tuple(P), (0,) + tuple(Q)
    return (0,) + tuple(P), (p - q,) + tuple(Q)


def ambient_star_terms(P, Q, R, S, nu):
    cdef int cP[MAXDIM]
    cdef int cQ[MAXDIM]
    cdef int cR[MAXDIM]
    cdef int cS[MAXDIM]
    cdef int cN[MAXDIM]
    cdef int ub[MAXDIM]
    cdef int T[MAXDIM]
    cdef int d = _load(P, cP)
    _load(Q, cQ); _load(R, cR); _load(S, cS); _load(nu, cN)
    cdef int k, t, odd
    cdef long long w
    for k in range(d):
        ub[k] = cQ[k] if cQ[k] < cR[k] else cR[k]
        T[k] = 0
    out = []
    while True:
        w = 1
        odd = 0
        t = 0
        for k in range(d):
            if T[k]:
                w = _mul(w, _fact(T[k]))
                w = _mul(w, _binom(cQ[k], T[k]))
                w = _mul(w, _binom(cR[k], T[k]))
                t += T[k]
                if cN[k] < 0:
                    odd += T[k]
        if odd & 1:
            w = -w
        out.append((
            t,
            tuple([cP[k] + cR[k] - T[k] for k in range(d)]),
            tuple([cQ[k] + cS[k] - T[k] for k in range(d)]),
            w,
        ))
        k = 0
        while k < d and T[k] == ub[k]:
            T[k] = 0
            k += 1
        if k == d:
            break
        T[k] += 1
    return out


def ambient_poisson_terms(P, Q, R, S, nu):
    cdef int cP[MAXDIM]
    cdef int cQ[MAXDIM]
    cdef int cR[MAXDIM]
    cdef int cS[MAXDIM]
    cdef int cN[MAXDIM]
    cdef int d = _load(P, cP)
    _load(Q, cQ); _load(R, cR); _load(S, cS); _load(nu, cN)
    cdef int k, j
    cdef long long c
    out = []
    for k in range(d):
        c = cN[k] * (<long long>cQ[k] * cR[k] - <long long>cP[k] * cS[k])
        if c:
            out.append((
                tuple([cP[j] + cR[j] - (j == k) for j in range(d)]),
                tuple([cQ[j] + cS[j] - (j == k) for j in range(d)]),
                c,
            ))
    return out


cdef list _expand(int *cP, int *cQ, int d, int *cN):
    """Balanced key of length d -> fundamental terms."""
    cdef int m = cP[0] if cP[0] < cQ[0] else cQ[0]
    cdef int n = d - 1
    cdef int T[MAXDIM]
    cdef int k, t, odd, rem
    cdef long long w
    out = []
    for k in range(n):
        T[k] = 0
    t = 0
    while True:
        w = _mul(_binom(m, t), _fact(t))
        odd = t
        for k in range(n):
            if T[k]:
                w = w // _fact(T[k])
                if cN[k + 1] < 0:
                    odd += T[k]
        if odd & 1:
            w = -w
        out.append((
            tuple([cP[k + 1] + T[k] for k in range(n)]),
            tuple([cQ[k + 1] + T[k] for k in range(n)]),
            w,
        ))
        # next composition with |T| <= m (odometer, first index fastest)
        k = 0
        while k < n:
            if t < m:
                T[k] += 1
                t += 1
                break
            t -= T[k]
            T[k] = 0
            k += 1
        if k == n:
            break
    return out


def fundamental_expansion(P, Q, nu):
    cdef int cP[MAXDIM]
    cdef int cQ[MAXDIM]
    cdef int cN[MAXDIM]
    cdef int d = _load(P, cP)
    _load(Q, cQ); _load(nu, cN)
    return _expand(cP, cQ, d, cN)


def reduced_star_terms(Pf, Qf, Pg, Qg, nu):
    cdef int cP[MAXDIM]
    cdef int cQ[MAXDIM]
    cdef int cN[MAXDIM]
    cdef long long acc_w, w
    cdef int d, k
    P, Q = pad(Pf, Qf)
    R, S = pad(Pg, Qg)
    d = _load(nu, cN)
    acc = {}
    for t, Pn, Qn, w in ambient_star_terms(P, Q, R, S, nu):
        _load(Pn, cP)
        _load(Qn, cQ)
        for Zp, Zq, c in _expand(cP, cQ, d, cN):
            key = (t, Zp, Zq)
            acc_w = acc.get(key, 0)
            if add_overflow(acc_w, _mul(w, c), &acc_w):
                raise OverflowError("kernel weight overflow")
            acc[key] = acc_w
    return sum(Q), sum(R), [(t, Zp, Zq, v) for (t, Zp, Zq), v in acc.items() if v]


def reduced_mul_terms(Pf, Qf, Pg, Qg, nu):
    cdef int cP[MAXDIM]
    cdef int cQ[MAXDIM]
    cdef int cN[MAXDIM]
    P, Q = pad(Pf, Qf)
    R, S = pad(Pg, Qg)
    cdef int d = _load(nu, cN)
    _load([a + b for a, b in zip(P, R)], cP)
    _load([a + b for a, b in zip(Q, S)], cQ)
    return _expand(cP, cQ, d, cN)


def reduced_poisson_terms(Pf, Qf, Pg, Qg, nu):
    cdef int cP[MAXDIM]
    cdef int cQ[MAXDIM]
    cdef int cN[MAXDIM]
    cdef long long acc_w
    P, Q = pad(Pf, Qf)
    R, S = pad(Pg, Qg)
    cdef int d = _load(nu, cN)
    acc = {}
    for Pn, Qn, w in ambient_poisson_terms(P, Q, R, S, nu):
        _load(Pn, cP)
        _load(Qn, cQ)
        for Zp, Zq, c in _expand(cP, cQ, d, cN):
            key = (Zp, Zq)
            acc_w = acc.get(key, 0)
            if add_overflow(acc_w, _mul(w, c), &acc_w):
                raise OverflowError("kernel weight overflow")
            acc[key] = acc_w
    return [(Zp, Zq, v) for (Zp, Zq), v in acc.items() if v]
