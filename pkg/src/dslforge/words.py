"""Words over the two-letter alphabet and over the graded alphabet y1, y2, ...

X-words are strings of '0' and '1' ('0' is the first letter of the alphabet,
'1' the second); the leftmost character is the leftmost letter.  Y-words are
tuples of positive integers.  Both encodings are canonical and hashable, so
they serve directly as dictionary keys in sparse series.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator

XWord = str
YWord = tuple  # tuple[int, ...]

X0 = "0"
X1 = "1"


def xweight(w: XWord) -> int:
    return len(w)


def xdepth(w: XWord) -> int:
    """Number of occurrences of the second letter."""
    return w.count(X1)


def yweight(w: YWord) -> int:
    return sum(w)


def ydepth(w: YWord) -> int:
    return len(w)


def is_xword(w: object) -> bool:
    return isinstance(w, str) and all(c in "01" for c in w)


def is_yword(w: object) -> bool:
    return isinstance(w, tuple) and all(isinstance(k, int) and k >= 1 for k in w)


def all_xwords(k: int) -> Iterator[XWord]:
    """All X-words of weight k, in lexicographic order ('0' < '1')."""
    if k == 0:
        yield ""
        return
    for n in range(2**k):
        yield format(n, "0{}b".format(k))


def all_ywords(k: int) -> Iterator[YWord]:
    """All Y-words of weight k (compositions of k), lexicographic order."""
    if k == 0:
        yield ()
        return
    for first in range(1, k + 1):
        for rest in all_ywords(k - first):
            yield (first,) + rest


def shuffle_words(u: XWord, v: XWord) -> dict[XWord, int]:
    """Expand the interleaving product of two X-words into a word -> multiplicity map."""
    n = len(u) + len(v)
    out: dict[XWord, int] = {}
    for positions in combinations(range(n), len(u)):
        chars = [""] * n
        for c, i in zip(u, positions):
            chars[i] = c
        it = iter(v)
        for i in range(n):
            if not chars[i]:
                chars[i] = next(it)
        w = "".join(chars)
        out[w] = out.get(w, 0) + 1
    return out


def shuffle_pairing(terms: dict[XWord, object], u: XWord, v: XWord):
    """Pair a coefficient map against u interleaved with v, without expanding
    the product into a dictionary first (memory-friendly at high weight)."""
    n = len(u) + len(v)
    total = 0
    for positions in combinations(range(n), len(u)):
        chars = [""] * n
        for c, i in zip(u, positions):
            chars[i] = c
        it = iter(v)
        for i in range(n):
            if not chars[i]:
                chars[i] = next(it)
        c = terms.get("".join(chars))
        if c is not None:
            total = total + c
    return total


def harmonic_words(u: YWord, v: YWord) -> dict[YWord, int]:
    """Expand the overlapping shuffle of two Y-words: interleavings plus the
    merge term that adds the two leading parts."""
    memo: dict[tuple[YWord, YWord], dict[YWord, int]] = {}

    def rec(a: YWord, b: YWord) -> dict[YWord, int]:
        if not a:
            return {b: 1}
        if not b:
            return {a: 1}
        key = (a, b)
        hit = memo.get(key)
        if hit is not None:
            return hit
        out: dict[YWord, int] = {}
        for head, tail in (((a[0],), rec(a[1:], b)), ((b[0],), rec(a, b[1:])),
                           ((a[0] + b[0],), rec(a[1:], b[1:]))):
            for w, m in tail.items():
                ww = head + w
                out[ww] = out.get(ww, 0) + m
        memo[key] = out
        return out

    return rec(u, v)


def x_run_lengths(w: XWord) -> list[int]:
    """Lengths of the maximal '0'-runs around the '1' letters, left to right.

    A word with d occurrences of '1' yields d+1 run lengths (outer runs may
    be zero): w = 0^a1 1 0^a2 1 ... 1 0^a_{d+1}.
    """
    runs = w.split(X1)
    return [len(r) for r in runs]


def leading_blocks(w: XWord) -> YWord | None:
    """Read a word starting with '1' as blocks 1 0^{k-1} -> k, left to right.

    Returns None when the word has a leading '0'.  The empty word reads as ().
    """
    if not w:
        return ()
    if w[0] != X1:
        return None
    runs = x_run_lengths(w)
    # runs[0] == 0 here; block i is '1' followed by runs[i+1] zeros
    return tuple(r + 1 for r in runs[1:])


def trailing_blocks(w: XWord) -> YWord | None:
    """Read a word ending with '1' as blocks 0^{k-1} 1 -> k, left to right.

    Returns None when the word has a trailing '0' or is empty.
    """
    if not w or w[-1] != X1:
        return None
    runs = x_run_lengths(w)
    # runs[-1] == 0 here; block i is runs[i] zeros followed by '1'
    return tuple(r + 1 for r in runs[:-1])


def from_leading_blocks(w: YWord) -> XWord:
    """Inverse of leading_blocks: (k1, ..., kr) -> 1 0^{k1-1} ... 1 0^{kr-1}."""
    return "".join(X1 + X0 * (k - 1) for k in w)


def from_trailing_blocks(w: YWord) -> XWord:
    """(k1, ..., kr) -> 0^{k1-1} 1 ... 0^{kr-1} 1."""
    return "".join(X0 * (k - 1) + X1 for k in w)
