"""Linear-code operations: duals, star products, weights, information sets."""

import itertools
import random

import pytest

from starpir.algebra import GF2, Matrix, make_field
from starpir.codes import (
    from_generator,
    from_parity_check,
    star_product,
    star_vectors,
)
from starpir.errors import BudgetExceededError, ValidationError
from starpir.families import fixture, reed_muller, repetition


def rand_code(f, n, rng):
    while True:
        k = rng.randrange(1, n)
        rows = [[rng.randrange(f.q) for _ in range(n)] for _ in range(k)]
        m = Matrix(f, rows)
        if m.rank() >= 1:
            return from_generator(f, m)


def test_from_generator_collapses_duplicates():
    g = Matrix(GF2, [[1, 0, 1], [1, 0, 1], [0, 1, 1]])
    c = from_generator(GF2, g)
    assert c.k == 2
    stacked = from_generator(GF2, Matrix(GF2, list(g.rows) + list(g.rows)))
    assert stacked == c


def test_from_generator_rejects_zero():
    with pytest.raises(ValidationError):
        from_generator(GF2, Matrix.zeros(GF2, 2, 4))


def test_repetition_from_all_ones():
    c = from_generator(GF2, Matrix(GF2, [[1] * 16]))
    assert (c.n, c.k) == (16, 1)
    assert c == reed_muller(0, 4)


def test_from_parity_check_fixtures():
    c1 = fixture("C1")
    assert (c1.n, c1.k, c1.min_distance()) == (5, 3, 2)
    c2 = fixture("C2")
    assert (c2.n, c2.k, c2.min_distance()) == (11, 6, 4)


def test_from_parity_check_even_weight():
    c = from_parity_check(GF2, Matrix(GF2, [[1] * 6]))
    assert c.k == 5
    for cw in c.codewords():
        assert sum(cw) % 2 == 0


def test_from_parity_check_full_rank_square_rejected():
    with pytest.raises(ValidationError):
        from_parity_check(GF2, Matrix.identity(GF2, 3))


def test_dual_involution_random():
    rng = random.Random(11)
    for f in (GF2, make_field(11)):
        for _ in range(15):
            c = rand_code(f, 7, rng)
            if c.k == c.n:
                continue
            assert c.dual().dual() == c


def test_dual_of_repetition_is_even_weight():
    rep = repetition(GF2, 8)
    d = rep.dual()
    assert d.k == 7
    assert all(sum(cw) % 2 == 0 for cw in d.codewords())


def test_dual_dimensions_of_c1():
    assert fixture("C1").dual().k == 2


def test_star_product_vector_level():
    assert star_vectors(GF2, (1, 0, 1), (1, 1, 0)) == (1, 0, 0)


def test_star_with_repetition_is_identity():
    rng = random.Random(2)
    for f in (GF2, make_field(11)):
        c = rand_code(f, 6, rng)
        assert star_product(c, repetition(f, 6)) == c


def test_star_commutative_and_monotone():
    rng = random.Random(6)
    c = rand_code(GF2, 8, rng)
    d = rand_code(GF2, 8, rng)
    assert star_product(c, d) == star_product(d, c)
    both = star_product(c, repetition(GF2, 8))
    assert both.k >= c.k


def test_min_distance_examples():
    assert repetition(GF2, 9).min_distance() == 9
    assert reed_muller(1, 4).min_distance() == 8


def test_weight_count_examples():
    rep = repetition(make_field(11), 4)
    assert rep.weight_count(4) == 10  # q - 1 full-weight words
    assert rep.weight_count(0) == 1
    assert reed_muller(1, 3).weight_count(4) == 14


def test_enumeration_budget():
    c = reed_muller(1, 4)
    with pytest.raises(BudgetExceededError):
        c.min_distance(budget=8)


def test_is_information_set():
    c1 = fixture("C1")
    assert c1.is_information_set((0, 1, 2))
    with pytest.raises(ValidationError):
        c1.is_information_set((0, 1))
    # two equal columns can never be jointly independent
    c = from_generator(GF2, Matrix(GF2, [[1, 1, 0], [0, 0, 1]]))
    assert not c.is_information_set((0, 1))


def test_mds_every_subset_is_information_set():
    from starpir.families import grs_code

    f = make_field(11)
    c = grs_code(f, 8, 3)
    for coords in itertools.combinations(range(8), 3):
        assert c.is_information_set(coords)


def test_disjoint_information_sets_repetition():
    rep = repetition(GF2, 16)
    sets = rep.disjoint_information_sets(16)
    assert len(sets) == 16
    assert sorted(s[0] for s in sets) == list(range(16))
    seven = rep.disjoint_information_sets(7)
    assert len({j for s in seven for j in s}) == 7
    with pytest.raises(ValidationError):
        rep.disjoint_information_sets(17)


def test_disjoint_information_sets_guarantee_on_fixtures():
    import math

    for c in (
        fixture("C1"),
        fixture("C2"),
        reed_muller(1, 4),
        reed_muller(2, 4),
        reed_muller(1, 3),
        repetition(GF2, 16),
    ):
        bound = math.ceil(c.min_distance() / c.k)
        sets = c.disjoint_information_sets(bound)
        assert len(sets) == bound
        seen = set()
        for s in sets:
            assert c.is_information_set(s)
            assert not (seen & set(s))
            seen |= set(s)


def test_every_information_set_submatrix_inverts():
    for c in (fixture("C1"), fixture("C2"), reed_muller(1, 4)):
        s = c.information_set()
        sub = c.restrict(s)
        inv = sub.invert()
        assert sub.multiply(inv) == Matrix.identity(c.field, c.k)


def test_restrict_full_range_returns_generator():
    c = fixture("C1")
    assert c.restrict(range(c.n)) == c.generator


def test_restrict_rm14_rank_claims():
    rm14 = reed_muller(1, 4)
    for coords in itertools.combinations(range(16), 3):
        assert rm14.restrict(coords).rank() == 3
    # a minimum-weight dual-star support defeats the rank
    rm24 = reed_muller(2, 4)
    support = next(
        tuple(i for i, v in enumerate(cw) if v)
        for cw in rm24.codewords()
        if sum(cw) == 4
    )
    assert rm14.restrict(support).rank() < 4


def test_permutation_automorphisms():
    rep = repetition(GF2, 6)
    ident = tuple(range(6))
    assert rep.is_automorphism(ident)
    swap = (1, 0, 2, 3, 4, 5)
    assert rep.is_automorphism(swap)
    c1 = fixture("C1")
    assert c1.is_automorphism(tuple(range(5)))
    with pytest.raises(ValidationError):
        c1.is_automorphism((0, 0, 1, 2, 3))


def test_translation_is_rm_automorphism():
    from starpir.families import translation_group

    rm14 = reed_muller(1, 4)
    for g in translation_group(4).generators:
        assert rm14.is_automorphism(g)


def test_permuted_code_roundtrip():
    c = fixture("C2")
    sigma = tuple(reversed(range(11)))
    back = c.permuted(sigma).permuted(sigma)
    assert back == c
