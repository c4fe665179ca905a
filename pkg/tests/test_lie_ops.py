from __future__ import annotations

import random
from fractions import Fraction

import pytest

from dslforge.algebra import concat_exp, concat_product, is_primitive
from dslforge.errors import (
    NonzeroConstant,
    NotInImage,
    NotInTM1,
    NotInTm1,
    NotPrimitive,
    PreconditionViolation,
)
from dslforge.lie import (
    ad_x1,
    ad_x1_inverse,
    bracket1,
    bracket_racinet,
    derive_d,
    exp_ihara1,
    fad_decompose,
    ihara1_product,
    ihara_product,
    kappa_substitute,
    tm1_inverse,
)
from dslforge.lyndon import lyndon_primitive_basis
from dslforge.series import XSeries, corner_decompose
from dslforge.verify import random_tm1_element


def _commutator(a: XSeries, b: XSeries) -> XSeries:
    return concat_product(a, b) - concat_product(b, a)


def _random_primitive(rng: random.Random, weight: int, bound: int) -> XSeries:
    out = XSeries.zero(bound)
    for e in lyndon_primitive_basis(weight):
        c = rng.randint(-2, 2)
        if c:
            out = out + e.expansion.with_bound(bound).scale(c)
    return out


def test_derive_d_examples() -> None:
    psi = XSeries([("01", 1)], 4)
    assert derive_d(psi, XSeries.word("11", 1, 4)) == XSeries(
        [("011", 1), ("101", 1)], 4
    )
    assert derive_d(psi, XSeries.word("00", 1, 4)).is_zero()
    assert derive_d(psi, XSeries.word("01", 1, 4)) == XSeries([("001", 1)], 4)


def test_bracket1_examples() -> None:
    a = XSeries([("01", 1)], 3)
    b = XSeries([("11", 1)], 3)
    assert bracket1(a, a).is_zero()
    assert bracket1(a, b) == XSeries([("101", 1)], 3)
    with pytest.raises(NotInTm1):
        bracket1(XSeries.word("1", 1, 2), a.truncate(2))
    with pytest.raises(NotInTm1):
        bracket1(XSeries.word("00", 1, 2), a.truncate(2))


def test_bracket_racinet_basics() -> None:
    rng = random.Random(31)
    a = _random_primitive(rng, 2, 5)
    assert bracket_racinet(a, a).is_zero()
    assert bracket_racinet(XSeries.zero(5), a).is_zero()
    with pytest.raises(NotPrimitive):
        bracket_racinet(XSeries.word("01", 1, 3), a.truncate(3))
    with pytest.raises(NotPrimitive):
        bracket_racinet(XSeries.word("1", 1, 3), a.truncate(3))


def test_racinet_bracket_intertwined_by_ad_x1() -> None:
    rng = random.Random(37)
    for _ in range(8):
        ka = rng.randint(2, 4)
        kb = rng.randint(2, 4)
        bound = ka + kb + 1
        a = _random_primitive(rng, ka, bound)
        b = _random_primitive(rng, kb, bound)
        lhs = ad_x1(bracket_racinet(a, b, check=False))
        rhs = bracket1(ad_x1(a), ad_x1(b), check=False)
        assert lhs == rhs


def test_ad_x1_examples() -> None:
    assert ad_x1(XSeries.word("0", 1, 2)) == XSeries([("10", 1), ("01", -1)], 2)
    assert ad_x1(XSeries.word("1", 1, 2)).is_zero()
    comm = XSeries([("01", 1), ("10", -1)], 3)
    assert ad_x1(comm) == XSeries([("101", 2), ("110", -1), ("011", -1)], 3)


def test_ad_x1_image_has_zero_corner00() -> None:
    rng = random.Random(41)
    for k in range(2, 7):
        psi = _random_primitive(rng, k, k + 1)
        if psi.is_zero():
            continue
        image = ad_x1(psi)
        assert corner_decompose(image).c00.is_zero()
        assert is_primitive(image)


def test_ad_x1_inverse_round_trips() -> None:
    comm = XSeries([("01", 1), ("10", -1)], 3)
    v = ad_x1(comm)
    assert ad_x1_inverse(v) == comm.with_bound(2)
    assert ad_x1_inverse(XSeries.zero(4)).is_zero()
    # weight-4 image example
    e = lyndon_primitive_basis(3)[0].expansion.with_bound(4)  # [x0,[x0,x1]]
    assert ad_x1_inverse(ad_x1(e)) == e.with_bound(3)


def test_ad_x1_inverse_exhaustive_on_corner_free_space() -> None:
    # for weights 3..7: every primitive with zero 00-corner has a preimage,
    # computed over the compiled corner-free kernel, and round-trips exactly
    from dslforge.spaces import FAD, compile_constraints, rational_kernel

    for k in range(3, 8):
        basis = rational_kernel(compile_constraints(FAD, k))
        for v in basis.vectors:
            psi = ad_x1_inverse(v)
            assert ad_x1(psi.with_bound(k)) == v
            # normalization: no pure x1-power component
            assert psi.coeff("1" * (k - 1)) == 0


def test_ad_x1_inverse_rejects_nonimage() -> None:
    # x0 x1 x0 has a 00-corner, cannot be [x1, psi]
    with pytest.raises((NotInImage, NotPrimitive, PreconditionViolation)):
        ad_x1_inverse(XSeries.word("010", 1, 3))


def test_kappa_substitute_examples() -> None:
    f = XSeries([("01", 2)], 4)
    assert kappa_substitute(f, XSeries.word("010", 1, 4)) == XSeries([("0010", 2)], 4)
    x1 = XSeries.word("1", 1, 3)
    s = XSeries([("10", 1), ("0", 2)], 3)
    assert kappa_substitute(x1, s) == s
    f = XSeries([("11", 1)], 3)
    assert kappa_substitute(f, XSeries.word("10", 1, 3)) == XSeries([("110", 1)], 3)
    with pytest.raises(NonzeroConstant):
        kappa_substitute(XSeries.unit(3), s)


def test_ihara_product_examples() -> None:
    one = XSeries.unit(4)
    rng = random.Random(43)
    from dslforge.verify import random_unit_series

    b = random_unit_series(rng, 4)
    assert ihara_product(one, b) == b
    assert ihara_product(b, one) == b
    a = XSeries([("", 1), ("1", 1)], 2)
    assert ihara_product(a, a) == XSeries([("", 1), ("1", 2), ("11", 1)], 2)


def test_ihara1_product_examples() -> None:
    x1 = XSeries.word("1", 1, 3)
    a = XSeries([("1", 1), ("01", 1)], 3)
    b = XSeries([("1", 1), ("10", 1)], 3)
    assert ihara1_product(x1, b) == b
    assert ihara1_product(a, x1) == a
    assert ihara1_product(a, b) == XSeries(
        [("1", 1), ("01", 1), ("10", 1), ("010", 1)], 3
    )
    with pytest.raises(NotInTM1):
        ihara1_product(XSeries.word("0", 1, 2), x1.truncate(2))


def test_tm1_inverse() -> None:
    x1 = XSeries.word("1", 1, 5)
    assert tm1_inverse(x1) == x1
    a = XSeries([("1", 1), ("01", 1)], 5)
    inv = tm1_inverse(a)
    assert inv == XSeries(
        [("1", 1), ("01", -1), ("001", 1), ("0001", -1), ("00001", 1)], 5
    )
    assert ihara1_product(a, inv) == x1
    assert ihara1_product(inv, a) == x1
    rng = random.Random(47)
    from dslforge.verify import random_group_shaped

    for _ in range(5):
        a = random_group_shaped(rng, 5)
        inv = tm1_inverse(a)
        assert ihara1_product(a, inv) == x1
        assert ihara1_product(inv, a) == x1


def test_exp_ihara1() -> None:
    assert exp_ihara1(XSeries.zero(4)) == XSeries.word("1", 1, 4)
    psi = XSeries([("01", 1)], 3)
    assert exp_ihara1(psi) == XSeries(
        [("1", 1), ("01", 1), ("001", Fraction(1, 2))], 3
    )
    # homogeneous psi of weight k contributes itself at weight k+1... n=1 term
    rng = random.Random(53)
    psi = random_tm1_element(rng, 3, 7)
    e = exp_ihara1(psi)
    assert e.component(4) == derive_d(psi, XSeries.word("1", 1, 7)).component(4)
    with pytest.raises(NotInTm1):
        exp_ihara1(XSeries.word("1", 1, 3))


def test_exp_ihara1_inverse_relation() -> None:
    rng = random.Random(59)
    x1 = XSeries.word("1", 1, 7)
    for _ in range(4):
        k = rng.randint(2, 4)
        psi = random_tm1_element(rng, k, 7)
        e = exp_ihara1(psi)
        assert e.coeff("1") == 1
        assert all(e.coeff("0" * n) == 0 for n in range(8))
        assert tm1_inverse(e) == exp_ihara1(-psi)
        assert ihara1_product(e, exp_ihara1(-psi)) == x1


def test_fad_decompose_conjugation_round_trip() -> None:
    bound = 6
    psi2 = XSeries([("01", 1), ("10", -1)], bound)
    x1 = XSeries.word("1", 1, bound)
    phi = concat_product(concat_product(concat_exp(-psi2), x1), concat_exp(psi2))
    dec = fad_decompose(phi)
    assert dec.is_member
    assert dec.psi_parts == {2: psi2.truncate(2)}


def test_fad_decompose_unit() -> None:
    dec = fad_decompose(XSeries.word("1", 1, 5))
    assert dec.is_member
    assert dec.psi_parts == {}


def test_fad_decompose_rejects_unconjugatable() -> None:
    # x1 + [x1,[x0,x1]] with no higher corrections fails at weight 5
    w3 = XSeries([("101", 2), ("110", -1), ("011", -1)], 5)
    phi = XSeries.word("1", 1, 5) + w3
    dec = fad_decompose(phi)
    assert not dec.is_member
    res5 = dec.residuals[5]
    assert not res5.is_zero()
    # independent evaluation: the weight-5 obstruction is -(1/2) ad(psi2)^2(x1)
    # restricted to its 00-corner words
    psi2 = XSeries([("01", 1), ("10", -1)], 5)
    x1 = XSeries.word("1", 1, 5)
    u5 = _commutator(psi2, _commutator(psi2, x1)).scale(Fraction(1, 2))
    expected = XSeries(
        [(w, -c) for w, c in u5.terms.items() if w[0] == "0" and w[-1] == "0"], 5
    )
    assert res5 == expected
    assert res5.coeff("01110") == -1


def test_fad_decompose_precondition() -> None:
    with pytest.raises(PreconditionViolation):
        fad_decompose(XSeries([("1", 1), ("01", 1)], 4))  # weight-2 tail
    with pytest.raises(PreconditionViolation):
        fad_decompose(XSeries([("1", 1), ("011", 1)], 4))  # not primitive


def test_fad_decompose_random_round_trips() -> None:
    rng = random.Random(61)
    bound = 7
    x1 = XSeries.word("1", 1, bound)
    for _ in range(5):
        psi = XSeries.zero(bound)
        for k in (2, 3):
            psi = psi + _random_primitive(rng, k, bound)
        phi = concat_product(
            concat_product(concat_exp(-psi), x1), concat_exp(psi)
        )
        dec = fad_decompose(phi)
        assert dec.is_member
        assert dec.psi(bound) == psi
