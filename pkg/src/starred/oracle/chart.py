"""Exact rational functions of the chart coordinates ``w, wbar`` and of ``hbar``.

A value is stored as ``(re + i im) / den`` with three polynomials over Q in the
indeterminates ``w_1..w_m, wb_1..wb_m, h``.  Keeping the denominator real lets
all gcd work happen over Q, which is far faster than over Q(i).  Complex
conjugation is modelled by the bar-swap ``w <-> wb`` together with ``im -> -im``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from ..core.hbar import HRational
from ..core.scalars import as_gaussian

__all__ = ["ChartRing", "ChartFunction", "chart_ring"]


class ChartRing:
    """Polynomial ring ``Q[w_1..w_m, wb_1..wb_m, h]`` and helpers."""

    def __init__(self, m: int):
        self.m = m
        names = [f"w{k}" for k in range(1, m + 1)] + [f"wb{k}" for k in range(1, m + 1)] + ["h"]
        self.R, *gens = ring(",".join(names), QQ)
        self.w = tuple(gens[:m])
        self.wb = tuple(gens[m : 2 * m])
        self.h = gens[2 * m]
        self.coords = self.w + self.wb
        self._swap = tuple(range(m, 2 * m)) + tuple(range(m)) + (2 * m,)

    def __repr__(self):
        return f"ChartRing(m={self.m})"

    def qq(self, x):
        x = Fraction(x)
        return QQ(x.numerator, x.denominator)

    def swap_poly(self, p):
        sw = self._swap
        return self.R.from_dict({tuple(e[sw[i]] for i in range(len(e))): c for e, c in p.items()})

    def zero(self):
        return ChartFunction(self, self.R.zero, self.R.zero, self.R.one, normalized=True)

    def one(self):
        return ChartFunction(self, self.R.one, self.R.zero, self.R.one, normalized=True)

    def const(self, c):
        if isinstance(c, ChartFunction):
            return c
        if isinstance(c, HRational):
            return self.hrational(c)
        g = as_gaussian(c)
        return ChartFunction(self, self.R(self.qq(g.re)), self.R(self.qq(g.im)), self.R.one, normalized=True)

    def hrational(self, c: HRational):
        h = self.h
        re = self.R.zero
        im = self.R.zero
        for j, a in enumerate(c.num):
            if a:
                re += self.qq(a.re) * h**j
                im += self.qq(a.im) * h**j
        den = self.R.one
        for k, e in c.den:
            den *= (h if k == 0 else 1 - k * h) ** e
        return ChartFunction(self, re, im, den)

    def poly(self, p):
        return ChartFunction(self, self.R(p), self.R.zero, self.R.one)

    def var(self, a: int):
        """Coordinate ``a`` (``0..m-1`` holomorphic, ``m..2m-1`` antiholomorphic)."""
        return ChartFunction(self, self.coords[a], self.R.zero, self.R.one, normalized=True)


@lru_cache(maxsize=None)
def chart_ring(m: int) -> ChartRing:
    return ChartRing(m)


class ChartFunction:
    """Element of ``Q(i)(w, wb, h)`` in real-denominator normal form."""

    __slots__ = ("ring", "re", "im", "den")

    def __init__(self, ring_: ChartRing, re, im, den, normalized=False):
        self.ring = ring_
        if not normalized:
            re, im, den = _normalize(re, im, den)
        self.re, self.im, self.den = re, im, den

    # arithmetic ---------------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, ChartFunction):
            return other
        return self.ring.const(other)

    def __add__(self, other):
        o = self._lift(other)
        if not o:
            return self
        if not self:
            return o
        if self.den == o.den:
            return ChartFunction(self.ring, self.re + o.re, self.im + o.im, self.den)
        g = self.den.gcd(o.den)
        a = o.den.exquo(g)
        b = self.den.exquo(g)
        return ChartFunction(self.ring, self.re * a + o.re * b, self.im * a + o.im * b, self.den * a)

    __radd__ = __add__

    def __neg__(self):
        return ChartFunction(self.ring, -self.re, -self.im, self.den, normalized=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if not self or not o:
            return self.ring.zero()
        re = self.re * o.re - self.im * o.im
        im = self.re * o.im + self.im * o.re
        return ChartFunction(self.ring, re, im, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("ChartFunction division by zero")
        n2 = self.re**2 + self.im**2
        return ChartFunction(self.ring, self.re * self.den, -self.im * self.den, n2)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ChartFunction(self.ring, *_cpow(self.re, self.im, k), self.den**k)

    # calculus and involutions ------------------------------------------------

    def diff(self, a: int):
        """Partial derivative in coordinate ``a`` (see :meth:`ChartRing.var`)."""
        x = self.ring.coords[a]
        d = self.den
        dd = d.diff(x)
        if not dd:
            return ChartFunction(self.ring, self.re.diff(x), self.im.diff(x), d)
        return ChartFunction(
            self.ring,
            self.re.diff(x) * d - self.re * dd,
            self.im.diff(x) * d - self.im * dd,
            d * d,
        )

    def barswap(self):
        r = self.ring
        return ChartFunction(r, r.swap_poly(self.re), -r.swap_poly(self.im), r.swap_poly(self.den))

    # comparison ----------------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if not isinstance(other, ChartFunction):
            try:
                other = self.ring.const(other)
            except TypeError:
                return NotImplemented
        return self.re == other.re and self.im == other.im and self.den == other.den

    def __hash__(self):
        return hash((str(self.re), str(self.im), str(self.den)))

    def evaluate(self, point) -> complex:
        """Numeric value; ``point`` lists values for every generator, ``h`` last."""
        vals = [complex(v) for v in point]
        return (_ceval(self.re, vals) + 1j * _ceval(self.im, vals)) / _ceval(self.den, vals)

    def __repr__(self):
        if not self.im:
            return f"({self.re})/({self.den})"
        return f"(({self.re}) + i({self.im}))/({self.den})"


def _cpow(re, im, k):
    rr, ri = re.ring.one, re.ring.zero
    for _ in range(k):
        rr, ri = rr * re - ri * im, rr * im + ri * re
    return rr, ri


def _normalize(re, im, den):
    if not den:
        raise ZeroDivisionError("zero denominator")
    R = den.ring
    if not re and not im:
        return R.zero, R.zero, R.one
    if den != R.one:
        g = den.gcd(re) if re else den
        if im and g != R.one:
            g = g.gcd(im)
        if g != R.one:
            den = den.exquo(g)
            re = re.exquo(g) if re else re
            im = im.exquo(g) if im else im
    # pivot: lexicographically least monomial of the denominator gets coefficient 1
    c = den[min(den.keys())]
    if c != 1:
        inv = QQ.one / c
        den = den.mul_ground(inv)
        re = re.mul_ground(inv)
        im = im.mul_ground(inv)
    return re, im, den


def _ceval(p, vals):
    total = 0j
    for e, c in p.items():
        t = complex(float(c))
        for v, k in zip(vals, e):
            if k:
                t *= v**k
        total += t
    return total
