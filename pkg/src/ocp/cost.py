"""Exact nonnegative integers stored as sparse sums of powers of two.

Covering costs are sums of ``2**u`` where ``u`` can be far too large to
materialize.  A :class:`BigCost` keeps only the exponents, normalized so that
no exponent repeats, which makes comparison a plain lexicographic check.
"""

from __future__ import annotations

import heapq
import math
from collections import Counter
from typing import Iterable

__all__ = ["BigCost", "cost_add", "cost_cmp", "cost_pow2"]


def _normalize(exponents: Iterable[int]) -> tuple[int, ...]:
    counts = Counter()
    for e in exponents:
        if e < 0:
            raise ValueError(f"negative exponent {e}")
        counts[e] += 1
    heap = list(counts)
    heapq.heapify(heap)
    out = []
    while heap:
        e = heapq.heappop(heap)
        c = counts.pop(e)
        if c & 1:
            out.append(e)
        if c >= 2:
            if (e + 1) not in counts:
                heapq.heappush(heap, e + 1)
            counts[e + 1] += c >> 1
    out.reverse()
    return tuple(out)


class BigCost:
    """Natural number ``sum(2**e for e in terms)`` with strictly decreasing terms.

    Instances are immutable and hashable.  Arithmetic never builds the full
    integer, so a cost such as ``2**(10**9)`` is cheap to add and compare.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[int] = ()):
        self._terms = _normalize(terms)

    @classmethod
    def _raw(cls, terms: tuple[int, ...]) -> "BigCost":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls) -> "BigCost":
        return cls._raw(())

    @classmethod
    def pow2(cls, e: int) -> "BigCost":
        if e < 0:
            raise ValueError(f"negative exponent {e}")
        return cls._raw((e,))

    @classmethod
    def from_int(cls, value: int) -> "BigCost":
        if value < 0:
            raise ValueError("BigCost cannot represent negative values")
        terms = []
        e = value.bit_length() - 1
        while value:
            if value >> e & 1:
                terms.append(e)
                value ^= 1 << e
            e -= 1
        return cls._raw(tuple(terms))

    @property
    def terms(self) -> tuple[int, ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def floor_log2(self) -> int:
        """Largest exponent, i.e. ``floor(log2(self))``; undefined for zero."""
        if not self._terms:
            raise ValueError("log2 of zero")
        return self._terms[0]

    def bit_length(self) -> int:
        return self._terms[0] + 1 if self._terms else 0

    def to_int(self) -> int:
        return sum(1 << e for e in self._terms)

    __int__ = to_int

    def log2(self) -> float:
        """Approximate base-2 logarithm, safe for astronomically large values."""
        if not self._terms:
            return float("-inf")
        top = self._terms[0]
        frac = sum(2.0 ** (e - top) for e in self._terms[:60])
        return top + math.log2(frac)

    def __add__(self, other: "BigCost") -> "BigCost":
        if not isinstance(other, BigCost):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        return BigCost._raw(_normalize(self._terms + other._terms))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BigCost):
            return self._terms == other._terms
        if isinstance(other, int) and not isinstance(other, bool):
            return other >= 0 and self._terms == BigCost.from_int(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._terms)

    # Normalized descending exponent tuples compare exactly like the integers.
    def __lt__(self, other: "BigCost") -> bool:
        return self._terms < _coerce(other)._terms

    def __le__(self, other: "BigCost") -> bool:
        return self._terms <= _coerce(other)._terms

    def __gt__(self, other: "BigCost") -> bool:
        return self._terms > _coerce(other)._terms

    def __ge__(self, other: "BigCost") -> bool:
        return self._terms >= _coerce(other)._terms

    def __repr__(self) -> str:
        if not self._terms:
            return "BigCost(0)"
        if self._terms[0] < 64:
            return f"BigCost({self.to_int()})"
        return "BigCost(" + " + ".join(f"2^{e}" for e in self._terms) + ")"

    def __str__(self) -> str:
        if self._terms and self._terms[0] >= 256:
            return " + ".join(f"2^{e}" for e in self._terms)
        return str(self.to_int())


def _coerce(value) -> BigCost:
    if isinstance(value, BigCost):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return BigCost.from_int(value)
    raise TypeError(f"cannot compare BigCost with {type(value).__name__}")


def cost_add(a: BigCost, b: BigCost) -> BigCost:
    return a + b


def cost_cmp(a: BigCost, b: BigCost) -> int:
    """Three-way comparison: -1, 0 or 1."""
    a, b = _coerce(a), _coerce(b)
    return (a._terms > b._terms) - (a._terms < b._terms)


def cost_pow2(e: int) -> BigCost:
    return BigCost.pow2(e)
