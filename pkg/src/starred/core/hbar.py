"""Rational functions of the deformation parameter and admissible parameter values.

Coefficients of star products are rational in the deformation parameter with
denominators built only from the factors ``hbar`` and ``(1 - k hbar)``.  The
:class:`HRational` type stores exactly that: a numerator polynomial over Q(i)
and a multiset of denominator factors, reduced so that no factor divides the
numerator.  This is a canonical form, so equality is structural.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .scalars import ONE, ZERO, GaussianRational, as_gaussian

__all__ = [
    "HRational",
    "Symbolic",
    "SYMBOLIC",
    "HbarValue",
    "parse_hbar",
    "in_omega",
    "falling_scaled",
    "OmegaError",
]


class OmegaError(ValueError):
    """The deformation parameter lies on a pole of the reduced star product."""


class Symbolic:
    """Marker for a symbolic (indeterminate) deformation parameter."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "SYMBOLIC"

    def __reduce__(self):
        return (Symbolic, ())


SYMBOLIC = Symbolic()

HbarValue = Union[Fraction, int, float, Symbolic]


def parse_hbar(text: str) -> HbarValue:
    """``"symbolic"`` -> SYMBOLIC, ``"p/q"`` or integer -> Fraction, decimal -> float."""
    t = text.strip()
    if t.lower() in ("symbolic", "sym", "h", "hbar"):
        return SYMBOLIC
    if any(c in t for c in ".eE") or t.lower() in ("nan", "inf", "-inf"):
        return float(t)
    return Fraction(t)


def in_omega(h) -> bool:
    """Whether ``h`` avoids ``{0} U {1/k : k = 1, 2, ...}``.

    Floats are compared bit-exactly against ``1.0/k``; values merely close to a
    pole are accepted.
    """
    if isinstance(h, Symbolic):
        return True
    if isinstance(h, float):
        if not math.isfinite(h):
            return False
        if h == 0.0:
            return False
        if 0.0 < h <= 1.0:
            k0 = round(1.0 / h)
            for k in (k0 - 1, k0, k0 + 1):
                if 1 <= k <= 2**53 and 1.0 / k == h:
                    return False
        return True
    if isinstance(h, GaussianRational):
        if not h.is_real():
            return True
        h = h.re
    if isinstance(h, complex):
        return h.imag != 0 or in_omega(h.real)
    h = Fraction(h)
    if h == 0:
        return False
    return not (h.numerator == 1 and h.denominator >= 1)


# ---------------------------------------------------------------------------
# univariate polynomial helpers on tuples of GaussianRational (low -> high)


def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = out[i] + x
    return _trim(out)


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def _pscale(a, c):
    if not c:
        return ()
    return tuple(x * c for x in a)


def _peval(a, x):
    acc = ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _factor_poly(k: int):
    """Coefficients of ``hbar`` (k == 0) or ``1 - k hbar``."""
    if k == 0:
        return (ZERO, ONE)
    return (ONE, GaussianRational._raw(-k, 0, 1))


def _divides(a, k: int) -> bool:
    if not a:
        return True
    if k == 0:
        return not a[0]
    return not _peval(a, GaussianRational._raw(1, 0, k))


def _divide(a, k: int):
    """Exact quotient of ``a`` by the factor with index ``k``."""
    if k == 0:
        return a[1:]
    # synthetic division by (hbar - 1/k), then divide by -k
    r = GaussianRational._raw(1, 0, k)
    n = len(a) - 1
    q = [ZERO] * n
    acc = ZERO
    for i in range(n, 0, -1):
        acc = acc * r + a[i]
        q[i - 1] = acc
    inv = GaussianRational._raw(-1, 0, k)
    return tuple(x * inv for x in q)


def _merge_max(d1, d2):
    m = dict(d1)
    for k, e in d2:
        if e > m.get(k, 0):
            m[k] = e
    return m


class HRational:
    """Rational function ``num(hbar) / prod_k f_k(hbar)^{m_k}`` over Q(i).

    ``f_0 = hbar`` and ``f_k = 1 - k hbar`` for ``k >= 1``.  Construction always
    cancels every denominator factor that divides the numerator.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=()):
        num = _trim(as_gaussian(c) for c in num)
        den = {k: e for k, e in (den.items() if isinstance(den, dict) else den) if e}
        if not num:
            den = {}
        for k in sorted(den):
            e = den[k]
            while e and _divides(num, k):
                num = _divide(num, k)
                e -= 1
            den[k] = e
        self.num = num
        self.den = tuple(sorted((k, e) for k, e in den.items() if e))
        self._hash = None

    @classmethod
    def const(cls, c) -> "HRational":
        return cls((c,))

    @classmethod
    def hbar(cls, power: int = 1) -> "HRational":
        return cls((ZERO,) * power + (ONE,))

    @classmethod
    def from_factors(cls, num, den) -> "HRational":
        return cls(num, den)

    @staticmethod
    def coerce(x) -> "HRational":
        if isinstance(x, HRational):
            return x
        return HRational((as_gaussian(x),))

    # structure ---------------------------------------------------------------

    def is_polynomial(self) -> bool:
        return not self.den

    def is_constant(self) -> bool:
        return not self.den and len(self.num) <= 1

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0] if self.num else ZERO

    def degree(self) -> int:
        return len(self.num) - 1

    def den_factors(self) -> dict:
        return dict(self.den)

    # arithmetic --------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, HRational):
            try:
                other = HRational.coerce(other)
            except TypeError:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return HRational(_padd(self.num, other.num), self.den)
        common = _merge_max(self.den, other.den)
        a = self._lift(common)
        b = other._lift(common)
        return HRational(_padd(a, b), common)

    __radd__ = __add__

    def _lift(self, common):
        num = self.num
        mine = dict(self.den)
        for k, e in common.items():
            for _ in range(e - mine.get(k, 0)):
                num = _pmul(num, _factor_poly(k))
        return num

    def __neg__(self):
        out = object.__new__(HRational)
        out.num, out.den, out._hash = _pneg(self.num), self.den, None
        return out

    def __sub__(self, other):
        return self + (-HRational.coerce(other))

    def __rsub__(self, other):
        return HRational.coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, HRational):
            if isinstance(other, (GaussianRational, int, Fraction)):
                if not other:
                    return HRational()
                out = object.__new__(HRational)
                c = as_gaussian(other)
                out.num, out.den, out._hash = tuple(x * c for x in self.num), self.den, None
                return out
            return NotImplemented
        den = dict(self.den)
        for k, e in other.den:
            den[k] = den.get(k, 0) + e
        return HRational(_pmul(self.num, other.num), den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by scalars or by elements whose numerator factors into ``hbar``, ``1 - k hbar``."""
        if isinstance(other, (GaussianRational, int, Fraction)):
            return self * as_gaussian(other).inverse()
        if not isinstance(other, HRational):
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("HRational division by zero")
        c, factors = _factor_family(other.num)
        num = _pscale(self.num, c.inverse())
        for k, e in other.den:
            for _ in range(e):
                num = _pmul(num, _factor_poly(k))
        den = dict(self.den)
        for k, e in factors.items():
            den[k] = den.get(k, 0) + e
        return HRational(num, den)

    def __pow__(self, k: int):
        result = HRational.const(1)
        for _ in range(k):
            result = result * self
        return result

    def conjugate(self) -> "HRational":
        out = object.__new__(HRational)
        out.num, out.den, out._hash = tuple(c.conjugate() for c in self.num), self.den, None
        return out

    # evaluation --------------------------------------------------------------

    def __call__(self, h):
        return self.evaluate(h)

    def evaluate(self, h):
        """Exact for rational/Gaussian ``h``, complex floating point for float/complex ``h``."""
        if isinstance(h, (int, Fraction, GaussianRational)):
            h = as_gaussian(h)
            num = _peval(self.num, h)
            den = ONE
            for k, e in self.den:
                den = den * (h if k == 0 else 1 - k * h) ** e
            if not den:
                raise ZeroDivisionError(f"pole of HRational at hbar={h}")
            return num / den
        h = complex(h)
        num = 0j
        for c in reversed(self.num):
            num = num * h + complex(c)
        den = 1.0 + 0j
        for k, e in self.den:
            den *= (h if k == 0 else 1 - k * h) ** e
        if den == 0:
            raise ZeroDivisionError(f"pole of HRational at hbar={h}")
        return num / den

    def evaluate_at_zero(self) -> GaussianRational:
        if dict(self.den).get(0, 0):
            raise ZeroDivisionError("HRational has a pole at hbar=0")
        return self.num[0] if self.num else ZERO

    # expanded form -----------------------------------------------------------

    def expanded(self):
        """``(num, den)`` coefficient tuples with ``den`` monic."""
        den = (ONE,)
        for k, e in self.den:
            for _ in range(e):
                den = _pmul(den, _factor_poly(k))
        lead = den[-1].inverse()
        return _pscale(self.num, lead), _pscale(den, lead)

    @classmethod
    def from_expanded(cls, num, den) -> "HRational":
        """Inverse of :meth:`expanded`; ``den`` must factor into ``hbar`` and ``(1 - k hbar)``."""
        den = _trim(as_gaussian(c) for c in den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        c, factors = _factor_family(den)
        return cls(_pscale(_trim(as_gaussian(x) for x in num), c.inverse()), factors)

    # comparison / display ----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, HRational):
            try:
                other = HRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"HRational({self})"

    def __str__(self):
        num = _poly_str(self.num)
        if not self.den:
            return num
        parts = []
        for k, e in self.den:
            f = "h" if k == 0 else f"(1-{k}h)" if k != 1 else "(1-h)"
            parts.append(f if e == 1 else f"{f}^{e}")
        return f"({num})/({'*'.join(parts)})"


def _poly_str(c):
    if not c:
        return "0"
    terms = []
    for i, x in enumerate(c):
        if not x:
            continue
        xs = str(x)
        if not x.is_real() and x.re != 0:
            xs = f"({xs})"
        if i == 0:
            terms.append(xs)
        else:
            mon = "h" if i == 1 else f"h^{i}"
            terms.append(mon if x == 1 else f"-{mon}" if x == -1 else f"{xs}*{mon}")
    return " + ".join(terms).replace("+ -", "- ")


def _factor_family(p):
    """Write ``p = c * prod f_k^{e_k}``; raise ValueError if impossible."""
    factors = {}
    while len(p) > 1 and not p[0]:
        p = p[1:]
        factors[0] = factors.get(0, 0) + 1
    if len(p) > 1:
        if any(not x.is_real() for x in p):
            raise ValueError("polynomial does not factor into (1 - k hbar) terms")
        scale = 1
        for x in p:
            scale = scale * x.re.denominator // math.gcd(scale, x.re.denominator)
        lead = abs((p[-1].re * scale).numerator)
        for k in _divisors(lead):
            while len(p) > 1 and _divides(p, k):
                p = _divide(p, k)
                factors[k] = factors.get(k, 0) + 1
        if len(p) > 1:
            raise ValueError("polynomial does not factor into (1 - k hbar) terms")
    return p[0], factors


def _divisors(m: int):
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def falling_scaled(m: int) -> HRational:
    """``hbar^m (1/hbar)_m = prod_{k=0}^{m-1} (1 - k hbar)`` as a polynomial."""
    if m < 0:
        raise ValueError("m must be non-negative")
    p = (ONE,)
    for k in range(1, m):
        p = _pmul(p, _factor_poly(k))
    return HRational(p)


@lru_cache(maxsize=None)
def reduced_weight(q: int, r: int, t: int) -> HRational:
    """``hbar^t A(q + r - t) / (A(q) A(r))`` with ``A = falling_scaled``."""
    num = (ZERO,) * t + (ONE,)
    for k in range(r, q + r - t):
        if k:
            num = _pmul(num, _factor_poly(k))
    return HRational(num, {k: 1 for k in range(1, q)})
