"""Multi-index combinatorics, signatures and truncated power series."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial, prod
from typing import Sequence

from .scalars import ONE, ZERO, as_gaussian

__all__ = [
    "Signature",
    "SignatureError",
    "multi_binom",
    "multi_factorial",
    "sgn_T",
    "TruncatedSeries",
    "verify_falling_rising",
]


class SignatureError(ValueError):
    """Operands carry different signatures or malformed keys."""


@dataclass(frozen=True)
class Signature:
    """Complex dimension ``n`` of the reduced manifold and the number ``s`` of positive signs."""

    n: int
    s: int
    nu: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not isinstance(self.s, int) or not 1 <= self.s <= 1 + self.n:
            raise ValueError(f"s must satisfy 1 <= s <= 1+n, got s={self.s!r}, n={self.n}")
        object.__setattr__(self, "nu", tuple(1 if k < self.s else -1 for k in range(1 + self.n)))

    @property
    def is_compact(self) -> bool:
        return self.s == 1 + self.n

    def compact(self) -> "Signature":
        return Signature(self.n, 1 + self.n)


def multi_binom(P: Sequence[int], Q: Sequence[int]) -> int:
    """``prod_k C(P_k, Q_k)``; requires ``Q <= P`` componentwise."""
    if len(P) != len(Q):
        raise ValueError("multi-indices of different length")
    if any(q < 0 or q > p for p, q in zip(P, Q)):
        raise ValueError(f"{tuple(Q)} is not <= {tuple(P)}")
    return prod(comb(p, q) for p, q in zip(P, Q))


def multi_factorial(T: Sequence[int]) -> int:
    return prod(factorial(t) for t in T)


def sgn_T(sig: Signature, T: Sequence[int]) -> int:
    """``prod_k nu_k^{T_k}``.

    Length ``n`` indices are read as ``k = 1..n``, length ``1+n`` as ``k = 0..n``.
    """
    if len(T) == sig.n:
        nu = sig.nu[1:]
    elif len(T) == sig.n + 1:
        nu = sig.nu
    else:
        raise ValueError(f"index of length {len(T)} does not fit n={sig.n}")
    odd = sum(t for t, v in zip(T, nu) if v < 0)
    return -1 if odd & 1 else 1


class TruncatedSeries:
    """Power series ``c_0 + c_1 x + ... + c_N x^N`` modulo ``x^{N+1}``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int):
        if order < 0:
            raise ValueError("order must be non-negative")
        c = [as_gaussian(x) for x in list(coeffs)[: order + 1]]
        c += [ZERO] * (order + 1 - len(c))
        self.order = order
        self.coeffs = tuple(c)

    @classmethod
    def const(cls, c, order: int) -> "TruncatedSeries":
        return cls([c], order)

    @classmethod
    def variable(cls, order: int) -> "TruncatedSeries":
        return cls([ZERO, ONE], order)

    def _check(self, other):
        if isinstance(other, TruncatedSeries):
            if other.order != self.order:
                raise ValueError("truncation orders differ")
            return other
        return TruncatedSeries.const(other, self.order)

    def __add__(self, other):
        other = self._check(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) + (-self)

    def __mul__(self, other):
        other = self._check(other)
        N = self.order
        out = [ZERO] * (N + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(N + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(out, N)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        c = self.coeffs
        if not c[0]:
            raise ZeroDivisionError("constant term is zero")
        inv0 = c[0].inverse()
        out = [inv0]
        for m in range(1, self.order + 1):
            acc = ZERO
            for j in range(1, m + 1):
                acc = acc + c[j] * out[m - j]
            out.append(-acc * inv0)
        return TruncatedSeries(out, self.order)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __pow__(self, k: int):
        result = TruncatedSeries.const(1, self.order)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"TruncatedSeries({[str(c) for c in self.coeffs]}, order={self.order})"


def verify_falling_rising(k: int, order: int) -> bool:
    """Check the rising/falling factorial identity as power series modulo ``lambda^{order+1}``.

    Left side: ``sum_{s<=order} lambda^s s! C(k+s-1, k-1)^2 / prod_{l=1}^{k+s} (1 + l lambda)``.
    Right side: ``1 / prod_{l=1}^{k-1} (1 - l lambda)``.
    """
    if k < 1 or order < 0:
        raise ValueError("need k >= 1 and order >= 0")
    lam = TruncatedSeries.variable(order)
    one = TruncatedSeries.const(1, order)
    lhs = TruncatedSeries.const(0, order)
    rising = one
    for l in range(1, k + 1):
        rising = rising * (one + l * lam)
    for s in range(order + 1):
        if s:
            rising = rising * (one + (k + s) * lam)
        c = factorial(s) * comb(k + s - 1, k - 1) ** 2
        lhs = lhs + (c * lam**s) / rising
    falling = one
    for l in range(1, k):
        falling = falling * (one - l * lam)
    return lhs == falling.inverse()
