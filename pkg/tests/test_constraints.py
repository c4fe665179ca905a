from __future__ import annotations

import pytest

from dslforge.cache import clear_cache, get_basis, list_entries, load_basis, store_basis
from dslforge.lyndon import witt_number
from dslforge.series import XSeries
from dslforge.spaces import (
    ADDMR,
    ADDMR_FAD,
    ADDMR_FAD_PARITY,
    DMR,
    F2GEQ,
    FAD,
    VSTRPRTY,
    SpaceId,
    SubspaceBasis,
    compile_constraints,
    compile_primitivity_raw,
    dimension_table,
    membership_check,
    rational_kernel,
)


def test_space_id_parse() -> None:
    assert SpaceId.parse("dmr") == DMR
    assert SpaceId.parse("ADDMR-FAD") == ADDMR_FAD
    assert SpaceId.parse("f2") == F2GEQ(1)
    assert SpaceId.parse("f2geq3") == F2GEQ(3)
    assert SpaceId.parse("f2geq:4") == F2GEQ(4)
    with pytest.raises(ValueError):
        SpaceId.parse("nope")
    with pytest.raises(ValueError):
        SpaceId.parse("f2geq0")


def test_zero_space_below_threshold() -> None:
    for space in (DMR, ADDMR, FAD):
        for k in range(1, space.min_weight()):
            assert rational_kernel(compile_constraints(space, k)).dimension == 0
    assert rational_kernel(compile_constraints(F2GEQ(4), 3)).dimension == 0
    assert rational_kernel(compile_constraints(F2GEQ(4), 4)).dimension == witt_number(4)


def test_fad_weight3() -> None:
    # [x0,[x0,x1]] has 00-corner word 010 with coefficient -2, so only the
    # other weight-3 bracket survives; this matches the image of bracketing
    # x1 against the one-dimensional weight-2 primitive space.
    m = compile_constraints(FAD, 3)
    assert len(m.column_labels) == 2
    basis = rational_kernel(m)
    assert basis.dimension == 1
    assert basis.vectors[0] == XSeries([("011", 1), ("101", -2), ("110", 1)], 3)
    from dslforge.lie import ad_x1

    comm = XSeries([("01", 1), ("10", -1)], 3)
    image = ad_x1(comm)
    # spans the same line
    assert image == basis.vectors[0].scale(-1)


def test_dimension_rows_up_to_7() -> None:
    expected = {
        "dmr": [0, 0, 1, 0, 1, 0, 1],
        "addmr": [0, 0, 0, 2, 2, 3, 3],
        "addmr-fad": [0, 0, 0, 1, 0, 1, 0],
        "addmr-fad-parity": [0, 0, 0, 1, 0, 1, 0],
    }
    table = dimension_table(
        [DMR, ADDMR, ADDMR_FAD, ADDMR_FAD_PARITY], 7, use_cache=False
    )
    assert table == expected


def test_vstrprty_raw_compile() -> None:
    m = compile_constraints(VSTRPRTY, 2)
    assert m.column_kind == "word"
    basis = rational_kernel(m)
    assert basis.dimension == 3
    for v in basis.vectors:
        assert membership_check(VSTRPRTY, v).passed
    assert rational_kernel(compile_constraints(VSTRPRTY, 1)).dimension == 0


def test_membership_examples() -> None:
    rep = membership_check(DMR, XSeries.word("01", 1, 2))
    assert not rep.passed
    assert any(
        v["condition"] == "primitive" and v["detail"]["u"] == "0" and v["detail"]["v"] == "1"
        for v in rep.violations
    )
    comm3 = XSeries([("101", 2), ("110", -1), ("011", -1)], 3)  # [x1,[x0,x1]]
    assert membership_check(FAD, comm3).passed


def test_every_basis_vector_passes_membership() -> None:
    for space in (DMR, ADDMR, FAD, ADDMR_FAD, ADDMR_FAD_PARITY):
        for k in range(1, 8):
            basis = rational_kernel(compile_constraints(space, k))
            for v in basis.vectors:
                assert membership_check(space, v).passed, (space.key, k)


def test_basis_vectors_linearly_independent() -> None:
    from dslforge.linalg import kernel_basis
    from dslforge.words import all_xwords

    for space, k in ((ADDMR, 4), (ADDMR, 6), (ADDMR_FAD, 6), (VSTRPRTY, 4)):
        basis = rational_kernel(compile_constraints(space, k))
        if basis.dimension == 0:
            continue
        words = sorted(all_xwords(k))
        rows = [[v.coeff(w) for v in basis.vectors] for w in words]
        assert kernel_basis(rows, basis.dimension) == []


def test_dmr_weight_11_computed() -> None:
    # not tabulated in the acceptance data; the artifact computes it
    assert rational_kernel(compile_constraints(DMR, 11)).dimension == 2


def test_monotone_dimensions() -> None:
    for k in range(1, 8):
        d_fp = rational_kernel(compile_constraints(ADDMR_FAD_PARITY, k)).dimension
        d_f = rational_kernel(compile_constraints(ADDMR_FAD, k)).dimension
        d = rational_kernel(compile_constraints(ADDMR, k)).dimension
        assert d_fp <= d_f <= d


def test_raw_vs_lyndon_oracle_equivalence() -> None:
    for k in range(1, 8):
        raw = rational_kernel(compile_primitivity_raw(k))
        lyn = rational_kernel(compile_constraints(F2GEQ(1), k))
        assert raw.dimension == lyn.dimension == witt_number(k)
        for v in raw.vectors:
            assert membership_check(F2GEQ(1), v).passed
        for v in lyn.vectors:
            assert membership_check(F2GEQ(1), v).passed


def test_composite_spaces_raw_oracle() -> None:
    # recompute dmr/addmr dimensions over raw word coordinates, bypassing
    # the bracketing parametrization entirely
    from dslforge.spaces import (
        _corner00_rows,
        _parity_rows,
        _sharp_depth_one_rows,
        _sharp_harmonic_rows,
        _star_harmonic_rows,
    )
    from dslforge.linalg import kernel_basis
    from dslforge.words import all_xwords

    for k in range(3, 7):
        labels = sorted(all_xwords(k))
        cols = [XSeries.word(w, 1, k) for w in labels]
        prim = compile_primitivity_raw(k).rows
        dmr_rows = prim + _star_harmonic_rows(cols, k)
        dim = len(kernel_basis(dmr_rows, len(cols)))
        assert dim == rational_kernel(compile_constraints(DMR, k)).dimension

        if k >= 4:
            addmr_rows = (
                prim
                + _sharp_harmonic_rows(cols, k)
                + _sharp_depth_one_rows(cols, k)
            )
            dim = len(kernel_basis(addmr_rows, len(cols)))
            assert dim == rational_kernel(compile_constraints(ADDMR, k)).dimension

            afp_rows = (
                addmr_rows + _corner00_rows(cols, k) + _parity_rows(cols, k, True)
            )
            dim = len(kernel_basis(afp_rows, len(cols)))
            assert (
                dim
                == rational_kernel(compile_constraints(ADDMR_FAD_PARITY, k)).dimension
            )


def test_cache_round_trip(tmp_path, monkeypatch) -> None:
    monkeypatch.setenv("DSLFORGE_CACHE_DIR", str(tmp_path))
    assert load_basis(DMR, 3) is None
    basis = get_basis(DMR, 3)
    assert basis.dimension == 1
    names = list_entries()
    assert names == ["dmr-3-s1p1.json"]
    reloaded = load_basis(DMR, 3)
    assert reloaded is not None
    assert reloaded.vectors == basis.vectors
    # byte-for-byte determinism of the stored artifact
    payload = (tmp_path / names[0]).read_bytes()
    store_basis(basis)
    assert (tmp_path / names[0]).read_bytes() == payload
    assert clear_cache() == 1
    assert list_entries() == []


def test_cache_schema_mismatch_ignored(tmp_path, monkeypatch) -> None:
    monkeypatch.setenv("DSLFORGE_CACHE_DIR", str(tmp_path))
    basis = get_basis(DMR, 3)
    path = tmp_path / "dmr-3-s1p1.json"
    data = path.read_text().replace("s1p1", "s0p0")
    path.write_text(data)
    assert load_basis(DMR, 3) is None
    # still resolvable by recompute
    assert get_basis(DMR, 3).vectors == basis.vectors


def test_basis_json_round_trip() -> None:
    basis = rational_kernel(compile_constraints(ADDMR, 4))
    data = basis.to_json_dict()
    assert data["format"] == "basis-v1"
    back = SubspaceBasis.from_json_dict(data)
    assert back.space == basis.space
    assert back.weight == basis.weight
    assert back.vectors == basis.vectors
