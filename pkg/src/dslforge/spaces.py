"""Compile graded subspace definitions into exact linear systems.

Stage 1 picks the coordinates: spaces that include primitivity are
parametrized by the Lyndon-bracketing basis of the primitive subspace (186
coordinates at weight 11 instead of 2048 raw word coordinates); the strong
parity space alone is compiled over raw word coordinates.  Stage 2 emits one
row per residual linear condition.  Kernels are computed exactly and
re-expanded into series through the chosen coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    harmonic_primitivity_defect,
    q_right,
    shuffle_primitivity_defect,
    shuffle_words,
    star_word,
)
from .linalg import kernel_basis
from .lyndon import lyndon_primitive_basis, witt_number
from .series import XSeries, corner_decompose
from .words import all_xwords, all_ywords, harmonic_words

# Bumped when the emitted rows or the pivot rule change; part of cache keys.
SCHEMA_VERSION = "s1p1"

_KNOWN = {
    "dmr": (3, ("star-harmonic",)),
    "addmr": (4, ("sharp-harmonic", "sharp-depth-one")),
    "fad": (3, ("corner00",)),
    "vstrprty": (2, ("parity",)),
    "addmr-fad": (4, ("sharp-harmonic", "sharp-depth-one", "corner00")),
    "addmr-fad-parity": (
        4,
        ("sharp-harmonic", "sharp-depth-one", "corner00", "parity"),
    ),
    "fad-parity": (3, ("corner00", "parity")),
}


@dataclass(frozen=True)
class SpaceId:
    """Identifier of a defined subspace; intersections carry the union of
    their factors' condition sets."""

    name: str
    min_weight_arg: int | None = None

    @classmethod
    def parse(cls, text: str) -> "SpaceId":
        text = text.strip().lower()
        if text in _KNOWN:
            return cls(text)
        if text == "f2":
            return cls("f2geq", 1)
        if text.startswith("f2geq"):
            arg = text[len("f2geq") :].lstrip(":-")
            if arg.isdigit() and int(arg) >= 1:
                return cls("f2geq", int(arg))
        raise ValueError(f"unknown space id: {text!r}")

    @property
    def key(self) -> str:
        if self.name == "f2geq":
            return "f2" if self.min_weight_arg == 1 else f"f2geq{self.min_weight_arg}"
        return self.name

    def min_weight(self) -> int:
        if self.name == "f2geq":
            return self.min_weight_arg or 1
        return _KNOWN[self.name][0]

    def condition_tags(self) -> tuple[str, ...]:
        if self.name == "f2geq":
            return ()
        return _KNOWN[self.name][1]

    def uses_lyndon(self) -> bool:
        return self.name != "vstrprty"

    def __str__(self) -> str:
        return self.key


DMR = SpaceId("dmr")
ADDMR = SpaceId("addmr")
FAD = SpaceId("fad")
VSTRPRTY = SpaceId("vstrprty")
ADDMR_FAD = SpaceId("addmr-fad")
ADDMR_FAD_PARITY = SpaceId("addmr-fad-parity")
FAD_PARITY = SpaceId("fad-parity")


def F2GEQ(m: int) -> SpaceId:
    return SpaceId("f2geq", m)


@dataclass(frozen=True)
class ConstraintMatrix:
    """Exact system whose kernel is the weight-k piece of the space.

    column_kind is 'lyndon' (columns are Lyndon-bracketing coordinates of the
    primitive subspace; column_series holds the expansions) or 'word' (raw
    word coordinates).
    """

    rows: list
    column_kind: str
    column_labels: list
    column_series: list
    space: SpaceId
    weight: int


@dataclass(frozen=True)
class SubspaceBasis:
    space: SpaceId
    weight: int
    vectors: list

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def to_json_dict(self) -> dict:
        return {
            "format": "basis-v1",
            "schema": SCHEMA_VERSION,
            "space": self.space.key,
            "weight": self.weight,
            "dimension": self.dimension,
            "vectors": [v.to_json_dict() for v in self.vectors],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SubspaceBasis":
        return cls(
            space=SpaceId.parse(data["space"]),
            weight=int(data["weight"]),
            vectors=[XSeries.from_json_dict(v) for v in data["vectors"]],
        )


def _identity_rows(ncols: int) -> list:
    rows = []
    for i in range(ncols):
        row = [0] * ncols
        row[i] = 1
        rows.append(row)
    return rows


def _star_harmonic_rows(columns: list[XSeries], k: int) -> list:
    """One row per nonempty Y-word pair (u, v), wt u <= wt v, total weight k:
    the functional psi -> <star_word(psi) | u * v>."""
    stars = [star_word(c).terms for c in columns]
    index: dict = {}
    for j, terms in enumerate(stars):
        for w, c in terms.items():
            index.setdefault(w, []).append((j, c))
    rows = []
    n = len(columns)
    for wu in range(1, k // 2 + 1):
        for u in all_ywords(wu):
            for v in all_ywords(k - wu):
                if wu == k - wu and v < u:
                    continue
                row = [Fraction(0)] * n
                for w, mult in harmonic_words(u, v).items():
                    for j, c in index.get(w, ()):
                        row[j] += mult * c
                rows.append(row)
    return rows


def _sharp_harmonic_rows(columns: list[XSeries], k: int) -> list:
    """One row per l >= 1 and nonempty pair (u, v) with l + wt u + wt v = k:
    the functional psi -> <q_right(psi) | y_l (u * v)>."""
    images = [q_right(c).terms for c in columns]
    index: dict = {}
    for j, terms in enumerate(images):
        for w, c in terms.items():
            index.setdefault(w, []).append((j, c))
    rows = []
    n = len(columns)
    for m in range(2, k):
        layers = list(range(1, k - m + 1))
        for wu in range(1, m // 2 + 1):
            for u in all_ywords(wu):
                for v in all_ywords(m - wu):
                    if wu == m - wu and v < u:
                        continue
                    expansion = harmonic_words(u, v)
                    for l in layers:
                        row = [0] * n
                        touched = False
                        for w, mult in expansion.items():
                            for j, c in index.get((l,) + w, ()):
                                row[j] += mult * c
                                touched = True
                        if touched:
                            rows.append(row)
    return rows


def _sharp_depth_one_rows(columns: list[XSeries], k: int) -> list:
    """The explicit depth-one tail row: <psi | x1 x0^{k-2} x1> = 0."""
    if k < 2:
        return []
    w = "1" + "0" * (k - 2) + "1"
    return [[c.coeff(w) for c in columns]]


def _corner00_rows(columns: list[XSeries], k: int) -> list:
    """One row per word x0*w*x0 appearing in some column."""
    support = set()
    for c in columns:
        for w in c.terms:
            if len(w) >= 2 and w[0] == "0" and w[-1] == "0":
                support.add(w)
    return [[c.coeff(w) for c in columns] for w in sorted(support)]


def _parity_rows(columns: list[XSeries], k: int, all_words: bool) -> list:
    """One row per middle word w of weight k-2:
    <.|x1 w x1> + <.|x1 w x0> + <.|x0 w x1>."""
    if k < 2:
        return []
    if all_words:
        middles = list(all_xwords(k - 2))
    else:
        support = set()
        for c in columns:
            for w in c.terms:
                if len(w) >= 2 and (w[0], w[-1]) != ("0", "0"):
                    support.add(w[1:-1])
        middles = sorted(support)
    rows = []
    for w in middles:
        rows.append(
            [
                c.coeff("1" + w + "1") + c.coeff("1" + w + "0") + c.coeff("0" + w + "1")
                for c in columns
            ]
        )
    return rows


_ROW_BUILDERS = {
    "star-harmonic": _star_harmonic_rows,
    "sharp-harmonic": _sharp_harmonic_rows,
    "sharp-depth-one": _sharp_depth_one_rows,
    "corner00": _corner00_rows,
}


def compile_constraints(space: SpaceId, k: int) -> ConstraintMatrix:
    """Two-stage compilation of the weight-k piece of a space.

    Below the space's weight threshold the result has full-rank rows and an
    empty kernel.
    """
    if k < 1:
        raise ValueError("weight must be >= 1")
    if space.uses_lyndon():
        basis = lyndon_primitive_basis(k)
        labels = [e.lyndon_word for e in basis]
        columns = [e.expansion for e in basis]
        kind = "lyndon"
    else:
        labels = sorted(all_xwords(k))
        columns = [XSeries.word(w, 1, k) for w in labels]
        kind = "word"
    if k < space.min_weight():
        rows = _identity_rows(len(columns))
    else:
        rows = []
        for tag in space.condition_tags():
            if tag == "parity":
                rows.extend(_parity_rows(columns, k, all_words=not space.uses_lyndon()))
            else:
                rows.extend(_ROW_BUILDERS[tag](columns, k))
    return ConstraintMatrix(
        rows=rows,
        column_kind=kind,
        column_labels=labels,
        column_series=columns,
        space=space,
        weight=k,
    )


def compile_primitivity_raw(k: int) -> ConstraintMatrix:
    """Primitivity over raw word coordinates: one row per nonempty pair
    (u, v), |u| <= |v|, |u|+|v| = k, with entries the interleaving
    multiplicities.  Oracle for the Lyndon parametrization."""
    labels = sorted(all_xwords(k))
    pos = {w: i for i, w in enumerate(labels)}
    rows = []
    for lu in range(1, k // 2 + 1):
        for u in all_xwords(lu):
            for v in all_xwords(k - lu):
                if lu == k - lu and v < u:
                    continue
                row = [0] * len(labels)
                for w, m in shuffle_words(u, v).items():
                    row[pos[w]] += m
                rows.append(row)
    return ConstraintMatrix(
        rows=rows,
        column_kind="word",
        column_labels=labels,
        column_series=[XSeries.word(w, 1, k) for w in labels],
        space=F2GEQ(1),
        weight=k,
    )


def rational_kernel(matrix: ConstraintMatrix) -> SubspaceBasis:
    """Exact nullspace of the compiled system, re-expanded into series."""
    ncols = len(matrix.column_labels)
    vectors = []
    for coords in kernel_basis(matrix.rows, ncols):
        terms: dict = {}
        for c, col in zip(coords, matrix.column_series):
            if c == 0:
                continue
            for w, cw in col.terms.items():
                acc = terms.get(w)
                acc = c * cw if acc is None else acc + c * cw
                if acc == 0:
                    terms.pop(w, None)
                else:
                    terms[w] = acc
        vectors.append(XSeries(terms, matrix.weight))
    return SubspaceBasis(space=matrix.space, weight=matrix.weight, vectors=vectors)


@dataclass(frozen=True)
class MembershipReport:
    """Independent re-verification of the defining conditions on a series.

    Built from direct defect recomputation, never from the compiled matrix;
    violations list at most the first 10 offending conditions.
    """

    space: SpaceId
    passed: bool
    violations: list
    weights_checked: list

    def to_json_dict(self) -> dict:
        return {
            "space": self.space.key,
            "pass": self.passed,
            "violations": self.violations,
            "weights_checked": self.weights_checked,
        }


_MAX_VIOLATIONS = 10


def membership_check(space: SpaceId, s: XSeries) -> MembershipReport:
    """Check every defining condition of the space on each weight component."""
    violations: list = []
    weights = sorted({len(w) for w in s.terms})
    bound = s.weight_bound

    def record(weight, condition, detail):
        if len(violations) < _MAX_VIOLATIONS:
            violations.append(
                {"weight": weight, "condition": condition, "detail": detail}
            )
        return len(violations) >= _MAX_VIOLATIONS

    min_wt = space.min_weight()
    for k in weights:
        if k < min_wt:
            if record(k, "min-weight", f"nonzero component below weight {min_wt}"):
                break

    tags = space.condition_tags()
    if space.uses_lyndon():
        for k in weights:
            if len(violations) >= _MAX_VIOLATIONS:
                break
            for u, v, val in shuffle_primitivity_defect(s, k):
                if record(k, "primitive", {"u": u, "v": v, "value": str(val)}):
                    break

    if "star-harmonic" in tags:
        star = star_word(s)
        for k in weights:
            if len(violations) >= _MAX_VIOLATIONS:
                break
            for u, v, val in harmonic_primitivity_defect(star, k):
                if record(
                    k,
                    "star-harmonic",
                    {"u": list(u), "v": list(v), "value": str(val)},
                ):
                    break

    if "sharp-harmonic" in tags:
        image = q_right(s).terms
        for k in weights:
            if len(violations) >= _MAX_VIOLATIONS:
                break
            for m in range(2, k):
                for wu in range(1, m // 2 + 1):
                    for u in all_ywords(wu):
                        for v in all_ywords(m - wu):
                            if wu == m - wu and v < u:
                                continue
                            expansion = harmonic_words(u, v)
                            for l in range(1, k - m + 1):
                                val = 0
                                for w, mult in expansion.items():
                                    c = image.get((l,) + w)
                                    if c is not None:
                                        val += mult * c
                                if val:
                                    record(
                                        k,
                                        "sharp-harmonic",
                                        {
                                            "t_exp": l - 1,
                                            "u": list(u),
                                            "v": list(v),
                                            "value": str(val),
                                        },
                                    )

    if "sharp-depth-one" in tags:
        for k in weights:
            if k >= 2:
                val = s.coeff("1" + "0" * (k - 2) + "1")
                if val:
                    record(k, "sharp-depth-one", {"value": str(val)})

    if "corner00" in tags or "parity" in tags:
        low_ok = all(s.coeff(w) == 0 for w in ("", "0", "1"))
        if not low_ok:
            record(min(weights, default=0), "corner", "nonzero weight <= 1 terms")
        else:
            corners = corner_decompose(s)
            if "corner00" in tags and not corners.c00.is_zero():
                for w, c in sorted(corners.c00.terms.items()):
                    if record(
                        len(w) + 2, "corner00", {"word": "0" + w + "0", "value": str(c)}
                    ):
                        break
            if "parity" in tags:
                parity = corners.c11 + corners.c10 + corners.c01
                for w, c in sorted(parity.terms.items()):
                    if record(
                        len(w) + 2, "parity", {"middle": w, "value": str(c)}
                    ):
                        break

    return MembershipReport(
        space=space,
        passed=not violations,
        violations=violations,
        weights_checked=weights,
    )


def dimension_table(
    spaces: list[SpaceId], k_max: int, use_cache: bool = True
) -> dict:
    """Kernel dimension for each space and 1 <= k <= k_max."""
    from .cache import get_basis

    out: dict = {}
    for space in spaces:
        out[space.key] = [
            get_basis(space, k, use_cache=use_cache).dimension
            for k in range(1, k_max + 1)
        ]
    return out


def f2_dimension(k: int) -> int:
    """Independent count oracle for the primitive space: the Witt number."""
    return witt_number(k)
