"""Family constructors: RM generators and laws, GRS, fixtures, groups, grammar."""

import itertools
from fractions import Fraction

import pytest

from starpir.algebra import GF2, make_field
from starpir.codes import star_product
from starpir.errors import ValidationError
from starpir.families import (
    GrsSpec,
    affine_group,
    evaluation_points,
    fixture,
    grs,
    grs_code,
    grs_rate,
    parse_code_spec,
    reed_muller,
    repetition,
    rm_dimension,
    rm_params_of_spec,
    translation_group,
)

REFERENCE_RM14 = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0],
    [1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0],
    [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0],
]


def test_rm14_generator_matches_reference_matrix():
    assert [list(r) for r in reed_muller(1, 4).generator.rows] == REFERENCE_RM14
    assert fixture("RM14-G").generator == reed_muller(1, 4).generator


def test_rm_edge_cases():
    assert reed_muller(0, 4) == repetition(GF2, 16)
    assert reed_muller(2, 4).k == 11
    with pytest.raises(ValidationError):
        reed_muller(5, 4)
    with pytest.raises(ValidationError):
        reed_muller(-1, 4)


def test_rm_dimension_and_distance_suite():
    for m in range(1, 6):
        for r in range(m + 1):
            code = reed_muller(r, m)
            assert code.k == rm_dimension(r, m)
            if code.k <= 20:
                assert code.min_distance() == 1 << (m - r)


def test_rm_star_law():
    for m in range(1, 6):
        for r in range(m + 1):
            for rp in range(m - r + 1):
                prod = star_product(reed_muller(r, m), reed_muller(rp, m))
                assert prod == reed_muller(r + rp, m)


def test_rm_duality_law():
    for m in range(1, 6):
        for r in range(m):
            assert reed_muller(r, m).dual() == reed_muller(m - r - 1, m)


def test_kernel_of_rm14_spans_rm24():
    ker = reed_muller(1, 4).generator.right_kernel()
    from starpir.codes import from_generator

    assert from_generator(GF2, ker) == reed_muller(2, 4)


def test_min_weight_supports_are_flats():
    # supports of minimum-weight words are affine subspaces: closed under
    # x + y + z for any three member points
    for m in range(2, 5):
        points = evaluation_points(m)
        vectors = [sum(b << i for i, b in enumerate(p)) for p in points]
        index_of = {v: i for i, v in enumerate(vectors)}
        for r in range(1, m):
            code = reed_muller(r, m)
            w = 1 << (m - r)
            for cw in code.codewords():
                if sum(cw) != w:
                    continue
                support = [i for i, v in enumerate(cw) if v]
                sup_vecs = [vectors[i] for i in support]
                sup_set = set(sup_vecs)
                for a, b, c in itertools.combinations(sup_vecs, 3):
                    assert (a ^ b ^ c) in sup_set
                assert all(index_of[v] in support for v in sup_set)


def test_grs_is_mds():
    f11 = make_field(11)
    for n, k in [(8, 3), (7, 2), (6, 4), (9, 5)]:
        c = grs_code(f11, n, k)
        assert (c.n, c.k) == (n, k)
        assert c.min_distance() == n - k + 1
    f16 = make_field(2, 4)
    c = grs_code(f16, 6, 3)
    assert c.min_distance() == 4


def test_grs_k1_all_ones_is_repetition():
    f = make_field(11)
    c = grs(GrsSpec(f, tuple(range(5)), None, 1))
    assert c == repetition(f, 5)


def test_grs_every_k_subset_information_set():
    f17 = make_field(17)
    c = grs_code(f17, 16, 5)
    for coords in itertools.combinations(range(16), 5):
        assert c.is_information_set(coords)


def test_grs_validation():
    f = make_field(11)
    with pytest.raises(ValidationError):
        GrsSpec(f, (1, 1, 2), None, 2)  # repeated points
    with pytest.raises(ValidationError):
        GrsSpec(f, (1, 2, 3), (1, 0, 1), 2)  # zero multiplier
    with pytest.raises(ValidationError):
        GrsSpec(f, (1, 2, 3), None, 4)  # k > n
    with pytest.raises(ValidationError):
        grs_code(f, 12, 3)  # n > q


def test_grs_rate_formula():
    assert grs_rate(8, 4, 3) == Fraction(1, 4)
    assert grs_rate(16, 5, 3) == Fraction(9, 16)
    with pytest.raises(ValidationError):
        grs_rate(8, 4, 5)


def test_fixture_names():
    with pytest.raises(ValidationError):
        fixture("C9")


def test_groups_transitive_and_automorphic():
    for m in (2, 3, 4):
        trans = translation_group(m)
        aff = affine_group(m)
        assert trans.is_transitive()
        assert aff.is_transitive()
        code = reed_muller(1, m)
        for g in aff.generators:
            assert code.is_automorphism(g)


def test_affine_orbit_size_of_information_set():
    # affine images of a 5-point information set of RM(1,4): stabilizers have
    # order 120, giving 322560/120 = 2688 distinct sets
    aff = affine_group(4)
    s = reed_muller(1, 4).information_set()
    assert len(aff.orbit_of_set(s)) == 2688


def test_translation_orbit_of_odd_set_has_full_length():
    trans = translation_group(4)
    s = reed_muller(2, 4).information_set()
    assert len(trans.orbit_of_set(s)) == 16


def test_parse_code_spec():
    assert parse_code_spec("RM:1,4") == reed_muller(1, 4)
    assert parse_code_spec("REP:2,8") == repetition(GF2, 8)
    assert parse_code_spec("FIX:C1") == fixture("C1")
    assert parse_code_spec("GRS:11,8,3") == grs_code(make_field(11), 8, 3)
    with pytest.raises(ValidationError):
        parse_code_spec("RM:1")
    with pytest.raises(ValidationError):
        parse_code_spec("XX:1,2")
    with pytest.raises(ValidationError):
        parse_code_spec("FILE:/nonexistent/path.txt")


def test_parse_code_spec_file(tmp_path):
    from starpir.algebra import format_matrix

    path = tmp_path / "code.txt"
    path.write_text(format_matrix(reed_muller(1, 3).generator))
    c = parse_code_spec(f"FILE:{path}")
    assert c == reed_muller(1, 3)


def test_rm_params_of_spec():
    assert rm_params_of_spec("RM:2,5") == (2, 5)
    assert rm_params_of_spec("REP:2,4") is None
    assert rm_params_of_spec("RM:x,y") is None
