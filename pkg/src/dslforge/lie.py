"""Derivations, brackets, twisted products, and the conjugation decomposition.

The common setting: series whose x1-coefficient and x0-power coefficients
(including the empty word) vanish form a Lie algebra under the derivation
bracket; series with x1-coefficient 1 and vanishing x0-powers form a group
under substitution.  The bracketing-with-x1 map links the two pictures and
is inverted weightwise by an exact linear solve over the Lyndon basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    concat_exp,
    concat_inverse,
    concat_product,
    is_primitive,
)
from .errors import (
    NonUnitConstant,
    NonzeroConstant,
    NotInImage,
    NotInTm1,
    NotInTM1,
    NotPrimitive,
    PreconditionViolation,
)
from .linalg import solve_exact
from .lyndon import lyndon_primitive_basis
from .series import XSeries, corner_decompose
from .words import XWord, all_xwords


def derive_d(psi: XSeries, target: XSeries) -> XSeries:
    """The derivation sending x0 to 0 and x1 to psi, applied to target.

    On a word, sums over the positions of '1' the word with that letter
    replaced by psi; extended bilinearly and truncated to the lower bound.
    """
    bound = min(psi.weight_bound, target.weight_bound)
    out: dict[XWord, Fraction] = {}
    for w, cw in target.terms.items():
        for i, ch in enumerate(w):
            if ch != "1":
                continue
            room = bound - (len(w) - 1)
            for p, cp in psi.terms.items():
                if len(p) > room:
                    continue
                nw = w[:i] + p + w[i + 1 :]
                c = cw * cp
                acc = out.get(nw)
                acc = c if acc is None else acc + c
                if acc == 0:
                    out.pop(nw, None)
                else:
                    out[nw] = acc
    return XSeries(out, bound)


def _check_tm1(a: XSeries, where: str) -> None:
    if a.coeff("1") != 0:
        raise NotInTm1(f"{where}: coefficient of x1 must vanish")
    for n in range(0, a.weight_bound + 1):
        if a.coeff("0" * n) != 0:
            raise NotInTm1(f"{where}: coefficient of x0^{n} must vanish")


def is_tm1_shaped(a: XSeries) -> bool:
    if a.coeff("1") != 0:
        return False
    return all(a.coeff("0" * n) == 0 for n in range(0, a.weight_bound + 1))


def bracket1(a: XSeries, b: XSeries, check: bool = True) -> XSeries:
    """Derivation bracket d_a(b) - d_b(a) on tm1-shaped series."""
    if check:
        _check_tm1(a, "bracket1")
        _check_tm1(b, "bracket1")
    return derive_d(a, b) - derive_d(b, a)


def bracket_racinet(a: XSeries, b: XSeries, check: bool = True) -> XSeries:
    """Bracket d_[x1,a](b) - d_[x1,b](a) + [a,b] on primitive series of
    weight >= 2; bracketing with x1 turns it into bracket1."""
    if check:
        for s, name in ((a, "a"), (b, "b")):
            mw = s.min_weight()
            if mw is not None and mw < 2:
                raise NotPrimitive(f"bracket_racinet: {name} has weight < 2 terms")
            if not is_primitive(s):
                raise NotPrimitive(f"bracket_racinet: {name} is not primitive")
    return (
        derive_d(ad_x1(a), b)
        - derive_d(ad_x1(b), a)
        + concat_product(a, b)
        - concat_product(b, a)
    )


def ad_x1(a: XSeries) -> XSeries:
    """x1*a - a*x1, truncated at a's bound."""
    x1 = XSeries.word("1", 1, a.weight_bound)
    return concat_product(x1, a) - concat_product(a, x1)


def ad_x1_inverse(v: XSeries, check: bool = True) -> XSeries:
    """The primitive psi with no pure-x1-power component and [x1, psi] = v.

    Solved weightwise as an exact linear system over the Lyndon coordinates
    of the one-lighter primitive space.  Raises NotInImage when the system is
    inconsistent (the input then violates the image characterization:
    primitive with vanishing 00-corner).
    """
    if check:
        mw = v.min_weight()
        if mw is not None and mw < 3:
            raise PreconditionViolation("ad_x1_inverse: input has weight < 3 terms")
        if not is_primitive(v):
            raise NotPrimitive("ad_x1_inverse: input is not primitive")
        if mw is not None and not corner_decompose(v).c00.is_zero():
            raise NotInImage("ad_x1_inverse: nonzero 00-corner")
    bound = v.weight_bound
    result = XSeries.zero(max(bound - 1, 0))
    for n in sorted({len(w) for w in v.terms}):
        comp = v.component(n)
        basis = [
            e for e in lyndon_primitive_basis(n - 1) if e.lyndon_word != "1" * (n - 1)
        ]
        images = [ad_x1(e.expansion.with_bound(n)) for e in basis]
        words = sorted(all_xwords(n))
        rows = [[img.coeff(w) for img in images] for w in words]
        rhs = [comp.coeff(w) for w in words]
        sol = solve_exact(rows, rhs)
        if sol is None:
            raise NotInImage(f"ad_x1_inverse: no primitive preimage at weight {n}")
        part = XSeries.zero(max(bound - 1, 0))
        for c, e in zip(sol, basis):
            if c != 0:
                part = part + e.expansion.with_bound(max(bound - 1, 0)).scale(c)
        result = result + part
    return result


def kappa_substitute(f: XSeries, target: XSeries) -> XSeries:
    """Algebra endomorphism fixing x0 and sending x1 to f, applied wordwise."""
    if f.coeff("") != 0:
        raise NonzeroConstant("kappa substitution needs <f | 1> = 0")
    bound = min(f.weight_bound, target.weight_bound)
    fmin = f.min_weight()
    grow = (fmin or 1) - 1  # each substituted '1' adds at least this much weight
    out = XSeries.zero(bound)
    for w, c in target.terms.items():
        if len(w) + w.count("1") * grow > bound:
            continue
        piece = XSeries.unit(bound)
        run = 0
        ok = True
        for ch in w:
            if ch == "0":
                run += 1
                continue
            if run:
                piece = concat_product(piece, XSeries.word("0" * run, 1, bound))
                run = 0
            piece = concat_product(piece, f.with_bound(bound))
            if piece.is_zero():
                ok = False
                break
        if ok and run:
            piece = concat_product(piece, XSeries.word("0" * run, 1, bound))
        if ok and not piece.is_zero():
            out = out + piece.scale(c)
    return out


def ihara_product(a: XSeries, b: XSeries) -> XSeries:
    """Twisted product a * kappa_{a^{-1} x1 a}(b) on unit-constant series."""
    for s, name in ((a, "left"), (b, "right")):
        if s.coeff("") != 1:
            raise NonUnitConstant(f"ihara_product: {name} factor needs constant term 1")
    bound = min(a.weight_bound, b.weight_bound)
    a = a.truncate(bound)
    x1 = XSeries.word("1", 1, bound)
    conj = concat_product(concat_product(concat_inverse(a), x1), a)
    return concat_product(a, kappa_substitute(conj, b.truncate(bound)))


def _check_TM1(a: XSeries, where: str) -> None:
    if a.coeff("1") != 1:
        raise NotInTM1(f"{where}: coefficient of x1 must be 1")
    for n in range(0, a.weight_bound + 1):
        if a.coeff("0" * n) != 0:
            raise NotInTM1(f"{where}: coefficient of x0^{n} must vanish")


def ihara1_product(a: XSeries, b: XSeries) -> XSeries:
    """Substitution product kappa_a(b) on group-shaped series (x1-coefficient
    1, all x0-powers zero)."""
    _check_TM1(a, "ihara1_product")
    _check_TM1(b, "ihara1_product")
    return kappa_substitute(a, b)


def tm1_inverse(a: XSeries) -> XSeries:
    """Two-sided inverse for the substitution product, built by zeroing the
    defect weight by weight."""
    _check_TM1(a, "tm1_inverse")
    bound = a.weight_bound
    x1 = XSeries.word("1", 1, bound)
    inv = x1
    for k in range(2, bound + 1):
        err = (kappa_substitute(a, inv) - x1).component(k)
        if not err.is_zero():
            inv = inv - err
    return inv


def exp_ihara1(psi: XSeries) -> XSeries:
    """Sum over n of d_psi^n(x1) / n!; terminates at the bound since each
    application raises weight."""
    mw = psi.min_weight()
    if mw is not None and mw < 2:
        raise NotInTm1("exp_ihara1: lowest weight must be >= 2")
    _check_tm1(psi, "exp_ihara1")
    bound = psi.weight_bound
    term = XSeries.word("1", 1, bound)
    acc = term
    n = 0
    while True:
        n += 1
        term = derive_d(psi, term).scale(Fraction(1, n))
        if term.is_zero():
            break
        acc = acc + term
    return acc


@dataclass(frozen=True)
class FadDecomposition:
    """Outcome of the weightwise conjugation-recovery recursion.

    psi_parts maps weight m >= 2 to the recovered homogeneous generator;
    residuals maps weight n >= 3 to the 00-corner obstruction at that weight
    (reassembled as a full series).  Membership holds exactly when every
    recorded residual vanishes up to the bound.
    """

    psi_parts: dict[int, XSeries]
    residuals: dict[int, XSeries]
    is_member: bool

    def psi(self, bound: int) -> XSeries:
        total = XSeries.zero(bound)
        for part in self.psi_parts.values():
            total = total + part.with_bound(bound)
        return total


def _ad(a: XSeries, b: XSeries) -> XSeries:
    return concat_product(a, b) - concat_product(b, a)


def fad_decompose(phi: XSeries) -> FadDecomposition:
    """Decide whether phi is a conjugate x1 series, recovering the conjugator.

    Runs the weight recursion: at each weight n the part of phi not explained
    by nested brackets of the already-recovered generators must be a bracket
    with x1, which happens exactly when its 00-corner vanishes.  On the first
    nonzero residual the recursion stops (later steps depend on the missing
    generator) and is_member is False.  On success the reconstruction
    exp(-psi) x1 exp(psi) is checked against phi up to the bound.
    """
    bound = phi.weight_bound
    diff = phi - XSeries.word("1", 1, bound)
    mw = diff.min_weight()
    if mw is not None and mw < 3:
        raise PreconditionViolation("fad_decompose: phi - x1 has weight < 3 terms")
    if not is_primitive(diff):
        raise PreconditionViolation("fad_decompose: phi - x1 is not primitive")

    psi_parts: dict[int, XSeries] = {}
    residuals: dict[int, XSeries] = {}
    member = True
    ad_cache: dict[tuple[int, ...], XSeries] = {}

    def nested_ad(ms: tuple[int, ...]) -> XSeries:
        """ad(psi_{m1}) o ... o ad(psi_{mr}) applied to x1, memoized."""
        hit = ad_cache.get(ms)
        if hit is not None:
            return hit
        if not ms:
            out = XSeries.word("1", 1, bound)
        else:
            out = _ad(psi_parts[ms[0]].with_bound(bound), nested_ad(ms[1:]))
        ad_cache[ms] = out
        return out

    def compositions(total: int, parts_at_least: int = 2):
        if total == 0:
            yield ()
            return
        for first in range(parts_at_least, total + 1):
            for rest in compositions(total - first, parts_at_least):
                yield (first,) + rest

    factorial = [1]
    for i in range(1, bound + 2):
        factorial.append(factorial[-1] * i)

    for n in range(3, bound + 1):
        u_n = XSeries.zero(bound)
        if n >= 5:
            for ms in compositions(n - 1):
                r = len(ms)
                if r < 2:
                    continue
                sign = Fraction((-1) ** r, factorial[r])
                u_n = u_n + nested_ad(ms).scale(sign)
        target = diff.component(n).with_bound(bound) - u_n
        if target.is_zero():
            psi_parts[n - 1] = XSeries.zero(n - 1)
            residuals[n] = XSeries.zero(bound)
            continue
        c00 = corner_decompose(target).c00
        if not c00.is_zero():
            x0 = XSeries.word("0", 1, bound)
            residuals[n] = concat_product(concat_product(x0, c00.with_bound(bound)), x0)
            member = False
            break
        residuals[n] = XSeries.zero(bound)
        psi_parts[n - 1] = ad_x1_inverse(target.truncate(n), check=False).component(n - 1)

    if member:
        psi = XSeries.zero(bound)
        for part in psi_parts.values():
            psi = psi + part.with_bound(bound)
        x1 = XSeries.word("1", 1, bound)
        rebuilt = concat_product(
            concat_product(concat_exp(-psi), x1), concat_exp(psi)
        )
        if rebuilt != phi.truncate(bound):
            raise AssertionError("fad_decompose: reconstruction mismatch")

    psi_parts = {m: p for m, p in psi_parts.items() if not p.is_zero()}
    return FadDecomposition(psi_parts=psi_parts, residuals=residuals, is_member=member)
