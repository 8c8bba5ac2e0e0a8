"""Sparse polynomial container shared by the ambient and reduced algebras."""

from __future__ import annotations

from fractions import Fraction

from .core.combinatorics import Signature, SignatureError
from .core.hbar import HRational
from .core.scalars import as_gaussian


def normalize_coeff(c):
    """Exact scalar or HRational; constant HRationals collapse to GaussianRational."""
    if isinstance(c, HRational):
        return c.constant_value() if c.is_constant() else c
    return as_gaussian(c)


def sort_key(key):
    P, Q = key
    return (sum(P) + sum(Q), P, Q)


class SparsePoly:
    """Immutable map from ``(P, Q)`` multi-index pairs to nonzero coefficients."""

    __slots__ = ("sig", "_terms")
    key_length_offset = 0  # key length is n + offset

    def __init__(self, sig: Signature, terms=None):
        self.sig = sig
        L = sig.n + self.key_length_offset
        clean = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        for (P, Q), c in items:
            P, Q = tuple(int(x) for x in P), tuple(int(x) for x in Q)
            if len(P) != L or len(Q) != L:
                raise SignatureError(f"multi-index length must be {L}, got {P}, {Q}")
            if min(P + Q, default=0) < 0:
                raise ValueError(f"negative multi-index entry in {P}, {Q}")
            c = normalize_coeff(c)
            if (P, Q) in clean:
                c = normalize_coeff(clean[(P, Q)] + c)
            clean[(P, Q)] = c
        self._terms = {k: clean[k] for k in sorted(clean, key=sort_key) if clean[k]}

    @classmethod
    def _from_acc(cls, sig, acc):
        out = object.__new__(cls)
        out.sig = sig
        out._terms = {
            k: normalize_coeff(acc[k]) for k in sorted(acc, key=sort_key) if acc[k]
        }
        return out

    # container protocol -------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    def coeff(self, P, Q):
        return self._terms.get((tuple(P), tuple(Q)), as_gaussian(0))

    def is_symbolic(self) -> bool:
        return any(isinstance(c, HRational) for c in self._terms.values())

    def degree(self) -> int:
        return max((sum(P) + sum(Q) for P, Q in self._terms), default=0)

    def _same(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.sig != self.sig:
            raise SignatureError(f"signature mismatch: {self.sig} vs {other.sig}")

    # linear structure ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, SparsePoly):
            other = self.constant(self.sig, other)
        self._same(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc[k] + c if k in acc else c
        return self._from_acc(self.sig, acc)

    __radd__ = __add__

    def __neg__(self):
        return self._from_acc(self.sig, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SparsePoly):
            other = self.constant(self.sig, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = normalize_coeff(c)
        if isinstance(c, HRational):
            return self._from_acc(self.sig, {k: c * v for k, v in self._terms.items()})
        return self._from_acc(self.sig, {k: v * c for k, v in self._terms.items()})

    def __rmul__(self, c):
        if isinstance(c, SparsePoly):
            return NotImplemented
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            try:
                other = self.constant(self.sig, other)
            except TypeError:
                return NotImplemented
        return type(self) is type(other) and self.sig == other.sig and self._terms == other._terms

    __hash__ = None

    # coefficient maps ---------------------------------------------------------

    def map_coeffs(self, fn):
        return self._from_acc(self.sig, {k: fn(c) for k, c in self._terms.items()})

    def at_hbar(self, h):
        """Evaluate HRational coefficients exactly at a rational/Gaussian ``h``."""
        h = as_gaussian(h)
        return self.map_coeffs(lambda c: c.evaluate(h) if isinstance(c, HRational) else c)

    def at_zero(self):
        return self.map_coeffs(lambda c: c.evaluate_at_zero() if isinstance(c, HRational) else c)

    def conj(self):
        return self._from_acc(self.sig, {(Q, P): c.conjugate() for (P, Q), c in self._terms.items()})

    def seminorm(self, r) -> Fraction:
        """``sum |c| r^{|P|+|Q|}`` with the exact majorant ``|re| + |im|`` for ``|c|``."""
        r = Fraction(r)
        if r < 1:
            raise ValueError("seminorm requires r >= 1")
        total = Fraction(0)
        for (P, Q), c in self._terms.items():
            if isinstance(c, HRational):
                raise TypeError("seminorm needs numeric coefficients; evaluate hbar first")
            total += c.majorant() * r ** (sum(P) + sum(Q))
        return total

    # constructors -------------------------------------------------------------

    @classmethod
    def constant(cls, sig, c=1):
        if isinstance(c, SparsePoly):
            raise TypeError("expected a scalar")
        z = (0,) * (sig.n + cls.key_length_offset)
        return cls(sig, {(z, z): c})

    @classmethod
    def zero(cls, sig):
        return cls(sig, {})

    @classmethod
    def monomial(cls, sig, P, Q, c=1):
        return cls(sig, {(tuple(P), tuple(Q)): c})

    def __repr__(self):
        return f"{type(self).__name__}(n={self.sig.n}, s={self.sig.s}, {self})"

    _letter = "M"

    def __str__(self):
        if not self._terms:
            return "0"
        out = ""
        for (P, Q), c in self._terms.items():
            mon = f"{self._letter}[{list(P)},{list(Q)}]"
            if isinstance(c, HRational):
                term, sign = f"({c})*{mon}", "+"
            elif c.is_real():
                sign = "-" if c.re < 0 else "+"
                mag = abs(c.re)
                term = mon if mag == 1 else f"{mag}*{mon}"
            else:
                sign = "-" if c.re < 0 or (c.re == 0 and c.im < 0) else "+"
                a = -c if sign == "-" else c
                term = f"{a}*{mon}" if a.re == 0 else f"({a})*{mon}"
            if not out:
                out = term if sign == "+" else f"-{term}"
            else:
                out += f" {sign} {term}"
        return out
