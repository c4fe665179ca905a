"""Sparse rational series over X-words, Y-words, and T-graded Y-words.

Every series carries an explicit weight_bound: terms above the bound are
dropped on construction, and binary operations truncate to the minimum of the
two bounds.  Coefficients are exact rationals; zero coefficients are never
stored.  Instances are immutable by convention: no method mutates terms, and
all operations return new series.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import NonzeroLowWeight
from .words import (
    XWord,
    YWord,
    is_xword,
    is_yword,
    xweight,
    yweight,
)

Rational = Fraction
TWord = tuple  # (t_exp, YWord)

JSON_FORMAT = "ncseries-v1"


def _coeff(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _normalize(items: Iterable[tuple], weight_bound: int, weight) -> dict:
    out: dict = {}
    for w, c in items:
        if weight(w) > weight_bound:
            continue
        c = _coeff(c)
        if c == 0:
            continue
        acc = out.get(w)
        if acc is None:
            out[w] = c
        else:
            acc = acc + c
            if acc == 0:
                del out[w]
            else:
                out[w] = acc
    return out


class _SeriesOps:
    """Shared arithmetic for the three sparse series classes."""

    terms: Mapping
    weight_bound: int

    @classmethod
    def _weight(cls, key) -> int:
        raise NotImplementedError

    def _make(self, items, bound):
        return type(self)(items, bound)

    def coeff(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def support(self):
        return self.terms.keys()

    def component(self, k: int):
        """The weight-k homogeneous part, same bound."""
        w = type(self)._weight
        return self._make(
            ((key, c) for key, c in self.terms.items() if w(key) == k), self.weight_bound
        )

    def min_weight(self) -> int | None:
        w = type(self)._weight
        return min((w(k) for k in self.terms), default=None)

    def max_weight(self) -> int | None:
        w = type(self)._weight
        return max((w(k) for k in self.terms), default=None)

    def truncate(self, bound: int):
        """Drop terms above bound and record the new (lower) bound."""
        return self._make(self.terms.items(), min(bound, self.weight_bound))

    def with_bound(self, bound: int):
        """Re-declare the truncation order (may raise or lower it)."""
        return self._make(self.terms.items(), bound)

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        bound = min(self.weight_bound, other.weight_bound)
        out = dict(self.terms)
        for w, c in other.terms.items():
            acc = out.get(w)
            if acc is None:
                out[w] = c
            else:
                acc = acc + c
                if acc == 0:
                    del out[w]
                else:
                    out[w] = acc
        return self._make(out.items(), bound)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._make(((w, -c) for w, c in self.terms.items()), self.weight_bound)

    def scale(self, c):
        c = _coeff(c)
        if c == 0:
            return self._make((), self.weight_bound)
        return self._make(((w, c * v) for w, v in self.terms.items()), self.weight_bound)

    def __mul__(self, c):
        return self.scale(c)

    def __rmul__(self, c):
        return self.scale(c)

    def __bool__(self):
        return bool(self.terms)


def _sorted_items(terms: Mapping) -> list:
    return sorted(terms.items(), key=lambda kv: (len(str(kv[0])), str(kv[0])))


@dataclass(frozen=True, eq=True)
class XSeries(_SeriesOps):
    """Rational formal sum of X-words, truncated at weight_bound."""

    terms: dict
    weight_bound: int

    def __init__(self, items=(), weight_bound: int = 0):
        if isinstance(items, Mapping):
            items = items.items()
        terms = _normalize(items, weight_bound, xweight)
        for w in terms:
            if not is_xword(w):
                raise ValueError(f"not an X-word: {w!r}")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "weight_bound", weight_bound)

    @classmethod
    def _weight(cls, key) -> int:
        return len(key)

    @classmethod
    def zero(cls, bound: int) -> "XSeries":
        return cls((), bound)

    @classmethod
    def unit(cls, bound: int) -> "XSeries":
        return cls([("", 1)], bound)

    @classmethod
    def word(cls, w: XWord, coeff=1, bound: int | None = None) -> "XSeries":
        return cls([(w, coeff)], len(w) if bound is None else bound)

    def __eq__(self, other):
        return (
            type(other) is XSeries
            and self.terms == other.terms
            and self.weight_bound == other.weight_bound
        )

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return f"XSeries(0; bound={self.weight_bound})"
        body = " + ".join(
            f"{coeff_str(c)}*[{w or '1'}]" for w, c in _sorted_items(self.terms)
        )
        return f"XSeries({body}; bound={self.weight_bound})"

    def to_json_dict(self) -> dict:
        return {
            "format": JSON_FORMAT,
            "alphabet": "x01",
            "weight_bound": self.weight_bound,
            "terms": [
                {"word": w, "coeff": coeff_str(c)} for w, c in _sorted_items(self.terms)
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "XSeries":
        if data.get("format") != JSON_FORMAT:
            raise ValueError(f"unknown series format: {data.get('format')!r}")
        if data.get("alphabet") != "x01":
            raise ValueError(f"expected alphabet 'x01', got {data.get('alphabet')!r}")
        return cls(
            [(t["word"], Fraction(t["coeff"])) for t in data["terms"]],
            int(data["weight_bound"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, text: str) -> "XSeries":
        return cls.from_json_dict(json.loads(text))


@dataclass(frozen=True, eq=True)
class YSeries(_SeriesOps):
    """Rational formal sum of Y-words, truncated at weight_bound."""

    terms: dict
    weight_bound: int

    def __init__(self, items=(), weight_bound: int = 0):
        if isinstance(items, Mapping):
            items = items.items()
        terms = _normalize(items, weight_bound, yweight)
        for w in terms:
            if not is_yword(w):
                raise ValueError(f"not a Y-word: {w!r}")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "weight_bound", weight_bound)

    @classmethod
    def _weight(cls, key) -> int:
        return sum(key)

    @classmethod
    def zero(cls, bound: int) -> "YSeries":
        return cls((), bound)

    @classmethod
    def unit(cls, bound: int) -> "YSeries":
        return cls([((), 1)], bound)

    @classmethod
    def word(cls, w: YWord, coeff=1, bound: int | None = None) -> "YSeries":
        w = tuple(w)
        return cls([(w, coeff)], sum(w) if bound is None else bound)

    def __eq__(self, other):
        return (
            type(other) is YSeries
            and self.terms == other.terms
            and self.weight_bound == other.weight_bound
        )

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return f"YSeries(0; bound={self.weight_bound})"
        body = " + ".join(
            f"{coeff_str(c)}*y{list(w) if w else '[]'}" for w, c in _sorted_items(self.terms)
        )
        return f"YSeries({body}; bound={self.weight_bound})"

    def to_json_dict(self) -> dict:
        return {
            "format": JSON_FORMAT,
            "alphabet": "y",
            "weight_bound": self.weight_bound,
            "terms": [
                {"yword": list(w), "coeff": coeff_str(c)}
                for w, c in _sorted_items(self.terms)
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "YSeries":
        if data.get("format") != JSON_FORMAT:
            raise ValueError(f"unknown series format: {data.get('format')!r}")
        if data.get("alphabet") != "y":
            raise ValueError(f"expected alphabet 'y', got {data.get('alphabet')!r}")
        return cls(
            [(tuple(t["yword"]), Fraction(t["coeff"])) for t in data["terms"]],
            int(data["weight_bound"]),
        )


def _tweight(key: TWord) -> int:
    t, w = key
    return t + 1 + sum(w)


@dataclass(frozen=True, eq=True)
class TYSeries(_SeriesOps):
    """Rational formal sum of (t_exp, Y-word) pairs.

    The graded weight of a term (t, w) is t + 1 + wt(w): it equals the weight
    of any X-word that projects onto the term, so binary truncation composes
    with the projection from X-series.
    """

    terms: dict
    weight_bound: int

    def __init__(self, items=(), weight_bound: int = 0):
        if isinstance(items, Mapping):
            items = items.items()
        terms = _normalize(items, weight_bound, _tweight)
        for t, w in terms:
            if not (isinstance(t, int) and t >= 0 and is_yword(w)):
                raise ValueError(f"not a (t_exp, Y-word) key: {(t, w)!r}")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "weight_bound", weight_bound)

    @classmethod
    def _weight(cls, key) -> int:
        return _tweight(key)

    @classmethod
    def zero(cls, bound: int) -> "TYSeries":
        return cls((), bound)

    def __eq__(self, other):
        return (
            type(other) is TYSeries
            and self.terms == other.terms
            and self.weight_bound == other.weight_bound
        )

    __hash__ = None

    def t_layer(self, t: int) -> YSeries:
        """The Y-series multiplying T^t, with the bound lowered accordingly."""
        return YSeries(
            ((w, c) for (s, w), c in self.terms.items() if s == t),
            max(self.weight_bound - t - 1, 0),
        )

    def __repr__(self):
        if not self.terms:
            return f"TYSeries(0; bound={self.weight_bound})"
        body = " + ".join(
            f"{coeff_str(c)}*T^{t}*y{list(w) if w else '[]'}"
            for (t, w), c in sorted(self.terms.items())
        )
        return f"TYSeries({body}; bound={self.weight_bound})"

    def to_json_dict(self) -> dict:
        return {
            "format": JSON_FORMAT,
            "alphabet": "ty",
            "weight_bound": self.weight_bound,
            "terms": [
                {"t": t, "yword": list(w), "coeff": coeff_str(c)}
                for (t, w), c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "TYSeries":
        if data.get("format") != JSON_FORMAT:
            raise ValueError(f"unknown series format: {data.get('format')!r}")
        if data.get("alphabet") != "ty":
            raise ValueError(f"expected alphabet 'ty', got {data.get('alphabet')!r}")
        return cls(
            [((int(t["t"]), tuple(t["yword"])), Fraction(t["coeff"])) for t in data["terms"]],
            int(data["weight_bound"]),
        )


@dataclass(frozen=True)
class CornerDecomposition:
    """The four middle series of a sorting by first and last letter.

    For an input with zero coefficients at weight <= 1, the input equals
    x0*c00*x0 + x0*c01*x1 + x1*c10*x0 + x1*c11*x1 on every weight >= 2
    component; each middle series is two weights lighter.
    """

    c00: XSeries
    c01: XSeries
    c10: XSeries
    c11: XSeries

    def reassemble(self) -> XSeries:
        parts = []
        for (a, b), mid in self.items():
            for w, c in mid.terms.items():
                parts.append((a + w + b, c))
        bound = min(s.weight_bound for s in (self.c00, self.c01, self.c10, self.c11)) + 2
        return XSeries(parts, bound)

    def items(self):
        return (
            (("0", "0"), self.c00),
            (("0", "1"), self.c01),
            (("1", "0"), self.c10),
            (("1", "1"), self.c11),
        )


def corner_decompose(a: XSeries) -> CornerDecomposition:
    """Sort every word of a by its first and last letter.

    Raises NonzeroLowWeight unless the coefficients of the empty word, of x0,
    and of x1 all vanish.
    """
    for w in ("", "0", "1"):
        if a.coeff(w) != 0:
            raise NonzeroLowWeight(
                f"corner decomposition needs zero coefficient on {w or 'the empty word'}"
            )
    corners: dict[tuple, list] = {("0", "0"): [], ("0", "1"): [], ("1", "0"): [], ("1", "1"): []}
    for w, c in a.terms.items():
        corners[(w[0], w[-1])].append((w[1:-1], c))
    bound = max(a.weight_bound - 2, 0)
    return CornerDecomposition(
        c00=XSeries(corners[("0", "0")], bound),
        c01=XSeries(corners[("0", "1")], bound),
        c10=XSeries(corners[("1", "0")], bound),
        c11=XSeries(corners[("1", "1")], bound),
    )


def load_series(path) -> XSeries | YSeries | TYSeries:
    """Load a series of any of the three alphabets from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    alphabet = data.get("alphabet")
    if alphabet == "x01":
        return XSeries.from_json_dict(data)
    if alphabet == "y":
        return YSeries.from_json_dict(data)
    if alphabet == "ty":
        return TYSeries.from_json_dict(data)
    raise ValueError(f"unknown alphabet: {alphabet!r}")
