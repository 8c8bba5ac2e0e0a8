"""Symmetric covariant tensors stored by their (fully symmetric) tensor components.

Conventions: ``a1 v ... v ak = (1/k!) sum_sigma a_sigma(1) (x) ... (x) a_sigma(k)``,
tensors pair by full contraction, and the insertion derivation acts as
``(i_b A)_{j2..jk} = k sum_j b^j A_{j j2..jk}``.  With these choices
``<w1 v .. v wk, a1 v .. v ak> = (1/k!) sum_sigma prod <wi, a_sigma(i)>``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from math import factorial

__all__ = ["SymTensor"]


def _canon(idx):
    return tuple(sorted(idx))


class SymTensor:
    """Rank ``r`` symmetric tensor on ``dim`` coordinates; components keyed by sorted index tuples."""

    __slots__ = ("rank", "dim", "comps", "zero")

    def __init__(self, rank: int, dim: int, comps: dict, zero=0):
        self.rank = rank
        self.dim = dim
        self.zero = zero
        self.comps = {_canon(k): v for k, v in comps.items() if v}

    def __getitem__(self, idx):
        return self.comps.get(_canon(idx), self.zero)

    def __eq__(self, other):
        return isinstance(other, SymTensor) and self.rank == other.rank and self.comps == other.comps

    __hash__ = None

    def keys(self, allowed=None):
        idx = range(self.dim) if allowed is None else allowed
        return combinations_with_replacement(idx, self.rank)

    @classmethod
    def scalar(cls, value, dim, zero=0):
        return cls(0, dim, {(): value}, zero)

    @classmethod
    def covector(cls, comps, zero=0):
        return cls(1, len(comps), {(j,): c for j, c in enumerate(comps)}, zero)

    def vee(self, other: "SymTensor") -> "SymTensor":
        """Normalized symmetric product."""
        k, l = self.rank, other.rank
        total = k + l
        out = {}
        for key in combinations_with_replacement(range(self.dim), total):
            # each distinct arrangement of the multiset stands for `mult` orderings
            acc = self.zero
            for perm in set(permutations(key)):
                acc = acc + self[perm[:k]] * other[perm[k:]]
            out[key] = acc * Fraction(_multiplicity(key), factorial(total))
        return SymTensor(total, self.dim, out, self.zero)

    def insert(self, beta) -> "SymTensor":
        k = self.rank
        out = {}
        for key in combinations_with_replacement(range(self.dim), k - 1):
            acc = self.zero
            for j in range(self.dim):
                if beta[j]:
                    acc = acc + beta[j] * self[(j,) + key]
            out[key] = acc * k
        return SymTensor(k - 1, self.dim, out, self.zero)

    def full_pair(self, other: "SymTensor"):
        """Contraction of all tensor components of ``self`` (covariant) with ``other`` (contravariant)."""
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        acc = self.zero
        for idx in product(range(self.dim), repeat=self.rank):
            a = self[idx]
            if a:
                b = other[idx]
                if b:
                    acc = acc + a * b
        return acc


def _multiplicity(key):
    m = 1
    for v in set(key):
        m *= factorial(key.count(v))
    return m

