"""Lyndon words over '0' < '1', standard bracketings, and the graded basis
of the primitive subspace they span."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import concat_product
from .series import XSeries
from .words import XWord


def lyndon_words(k: int) -> list[XWord]:
    """All Lyndon words of length k over '0' < '1', by Duval's algorithm."""
    if k <= 0:
        return []
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == k:
            out.append("".join("01"[i] for i in w))
        while len(w) < k:
            w.append(w[-m])
        while w and w[-1] == 1:
            w.pop()
    return sorted(out)


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    m, count = n, 0
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            count += 1
        else:
            p += 1
    if m > 1:
        count += 1
    return -1 if count % 2 else 1


def witt_number(k: int, alphabet_size: int = 2) -> int:
    """Dimension of the degree-k part of the free Lie algebra on the alphabet:
    (1/k) * sum over d | k of mu(d) * size^(k/d)."""
    total = 0
    for d in range(1, k + 1):
        if k % d == 0:
            total += _mobius(d) * alphabet_size ** (k // d)
    return total // k


def standard_factorization(w: XWord) -> tuple[XWord, XWord]:
    """Split a Lyndon word of length >= 2 as u*v with v the longest proper
    Lyndon suffix; both factors are Lyndon."""
    if len(w) < 2:
        raise ValueError("standard factorization needs length >= 2")
    # the longest proper suffix that is Lyndon is the smallest proper suffix
    # in lexicographic order
    best = min(range(1, len(w)), key=lambda i: w[i:])
    return w[:best], w[best:]


def _bracket(a: XSeries, b: XSeries) -> XSeries:
    return concat_product(a, b) - concat_product(b, a)


@lru_cache(maxsize=None)
def _expand(w: XWord) -> XSeries:
    if len(w) == 1:
        return XSeries.word(w)
    u, v = standard_factorization(w)
    return _bracket(_expand(u).with_bound(len(w)), _expand(v).with_bound(len(w)))


@dataclass(frozen=True)
class LyndonBasisElement:
    """A Lyndon word together with its standard bracketing expanded into words.

    The expansions at a fixed weight are linearly independent and span the
    weight-graded piece of the primitive subspace; their count is the Witt
    number.
    """

    lyndon_word: XWord
    expansion: XSeries


def lyndon_primitive_basis(k: int) -> list[LyndonBasisElement]:
    """One element per Lyndon word of length k, sorted lexicographically."""
    if k < 1:
        raise ValueError("weight must be >= 1")
    return [LyndonBasisElement(w, _expand(w)) for w in lyndon_words(k)]
