"""Protocol simulation: storage, queries, responses, reconstruction."""

import random

import pytest

from starpir.algebra import GF2, Matrix, make_field
from starpir.errors import ValidationError
from starpir.families import fixture, grs_code, reed_muller, repetition
from starpir.plans import plan_basic, plan_from_sets, plan_rm, plan_symmetric
from starpir.protocol import (
    Database,
    make_queries,
    decode_responses,
    random_database,
    respond,
    retrieve,
    store,
)


class ZeroRng:
    """Randomness source that always draws the zero codeword."""

    def getrandbits(self, _):
        return 0

    def randrange(self, _):
        return 0


def c1_plan():
    return plan_symmetric(fixture("C1"), repetition(GF2, 5), (0, 1, 2))


def test_store_replication_gives_equal_columns():
    rep = repetition(GF2, 6)
    db = random_database(GF2, 2, 3, 1, 5)
    system = store(db, rep)
    first = system.server_column(0)
    assert all(system.server_column(j) == first for j in range(6))
    assert first == db.stacked().column(0)


def test_store_unit_message_yields_generator_row():
    rm14 = reed_muller(1, 4)
    db = Database(GF2, [Matrix(GF2, [[1, 0, 0, 0, 0]])])
    system = store(db, rm14)
    assert tuple(system.server_column(j)[0] for j in range(16)) == (1,) * 16


def test_store_shape_mismatch():
    with pytest.raises(ValidationError):
        store(random_database(GF2, 1, 1, 3, 0), repetition(GF2, 4))


def test_storage_tolerates_erasures():
    # any 7 erased columns leave a full-rank restriction (distance 8)
    rm14 = reed_muller(1, 4)
    rng = random.Random(99)
    for _ in range(1000):
        erased = set(rng.sample(range(16), 7))
        rest = [j for j in range(16) if j not in erased]
        assert rm14.restrict(rest).rank() == 5


def test_generic_field_store_matches_matrix_product():
    f11 = make_field(11)
    code = grs_code(f11, 8, 3)
    db = random_database(f11, 2, 2, 3, 7)
    system = store(db, code)
    y = db.stacked().multiply(code.generator)
    for j in range(8):
        assert system.server_column(j) == y.column(j)


def test_zero_randomness_queries_reduce_to_selectors():
    plan = c1_plan()
    m_files = 2
    target = 2
    batch = make_queries(plan, m_files, target, ZeroRng())
    b = plan.row_count
    for gamma in range(plan.iteration_count):
        asg = plan.assignments[gamma]
        for j in range(plan.n):
            vec = batch.query_vector(gamma, j)
            expect = [0] * (m_files * b)
            if j in asg:
                expect[(target - 1) * b + asg[j]] = 1
            assert list(vec) == expect


def test_repetition_queries_identical_outside_iteration_set():
    rep4 = repetition(GF2, 4)
    plan = plan_from_sets(rep4, rep4, [(0,)], [(0,)])
    batch = make_queries(plan, 1, 1, 3)
    outside = [batch.query_vector(0, j) for j in range(1, 4)]
    assert outside.count(outside[0]) == 3


def test_query_marginal_is_uniform_chi_square():
    scipy_stats = pytest.importorskip("scipy.stats")
    plan = plan_rm(1, 1, 4)
    cells = 1 << (1 * plan.row_count)  # M*b = 5 bits per query
    counts = [0] * cells
    draws = 10000
    for seed in range(draws):
        batch = make_queries(plan, 1, 1, seed)
        vec = batch.query_vector(0, 3)
        counts[sum(v << i for i, v in enumerate(vec))] += 1
    result = scipy_stats.chisquare(counts)
    assert result.pvalue > 0.01


def test_server_response_zero_query():
    db = random_database(GF2, 2, 2, 3, 1)
    system = store(db, fixture("C1"))
    assert system.server_response(0, (0,) * 4) == 0
    with pytest.raises(ValidationError):
        system.server_response(0, (0,) * 3)


def test_zero_randomness_response_equals_selector_image():
    plan = c1_plan()
    db = random_database(GF2, 2, plan.row_count, 3, 21)
    system = store(db, fixture("C1"))
    target = 1
    batch = make_queries(plan, 2, target, ZeroRng())
    responses = respond(system, batch)
    y = db.files[target - 1].multiply(plan.storage.generator)
    for gamma in range(plan.iteration_count):
        asg = plan.assignments[gamma]
        expect = tuple(
            y.get(asg[j], j) if j in asg else 0 for j in range(plan.n)
        )
        assert responses.vectors[gamma] == expect


def test_response_membership_in_star_code():
    # responses minus the zero-randomness image lie in the star code
    plan = c1_plan()
    db = random_database(GF2, 3, plan.row_count, 3, 8)
    system = store(db, fixture("C1"))
    f = plan.field
    h = plan.parity
    zero_batch = make_queries(plan, 3, 2, ZeroRng())
    zero_resp = respond(system, zero_batch)
    for seed in range(20):
        batch = make_queries(plan, 3, 2, seed)
        resp = respond(system, batch)
        for gamma in range(plan.iteration_count):
            diff = [
                f.sub(a, b)
                for a, b in zip(resp.vectors[gamma], zero_resp.vectors[gamma])
            ]
            assert all(f.dot(row, diff) == 0 for row in h.rows)


def test_batch_respond_matches_per_server():
    plan = c1_plan()
    db = random_database(GF2, 2, plan.row_count, 3, 13)
    system = store(db, fixture("C1"))
    batch = make_queries(plan, 2, 1, 5)
    fast = respond(system, batch)
    for gamma in range(plan.iteration_count):
        slow = tuple(
            system.server_response(j, batch.query_vector(gamma, j))
            for j in range(plan.n)
        )
        assert fast.vectors[gamma] == slow


def test_batch_respond_matches_per_server_generic_field():
    f11 = make_field(11)
    storage = grs_code(f11, 10, 3)
    plan = plan_basic(storage, repetition(f11, 10))
    db = random_database(f11, 2, plan.row_count, 3, 4)
    system = store(db, storage)
    batch = make_queries(plan, 2, 2, 6)
    fast = respond(system, batch)
    for gamma in range(plan.iteration_count):
        slow = tuple(
            system.server_response(j, batch.query_vector(gamma, j))
            for j in range(plan.n)
        )
        assert fast.vectors[gamma] == slow


def test_decode_roundtrip_c1():
    plan = c1_plan()
    db = random_database(GF2, 3, plan.row_count, 3, 2)
    system = store(db, fixture("C1"))
    for w in (1, 2, 3):
        for seed in range(10):
            batch = make_queries(plan, 3, w, seed)
            got = decode_responses(plan, respond(system, batch))
            assert got == db.files[w - 1]


def test_retrieve_roundtrip_generic_field_mixed_plan():
    f11 = make_field(11)
    storage = grs_code(f11, 10, 3)
    plan = plan_basic(storage, repetition(f11, 10))
    db = random_database(f11, 2, plan.row_count, 3, 31)
    system = store(db, storage)
    for w in (1, 2):
        for seed in range(5):
            assert retrieve(system, plan, 2, w, seed) == db.files[w - 1]


def test_retrieve_download_accounting():
    plan = c1_plan()
    db = random_database(GF2, 2, plan.row_count, 3, 77)
    system = store(db, fixture("C1"))
    batch = make_queries(plan, 2, 1, 0)
    responses = respond(system, batch)
    downloaded = sum(len(v) for v in responses.vectors)
    assert downloaded == plan.n * plan.iteration_count
    useful = plan.row_count * plan.k
    from fractions import Fraction

    assert Fraction(useful, downloaded) == plan.rate


def test_trivial_two_server_round_trip():
    rep2 = repetition(GF2, 2)
    plan = plan_from_sets(rep2, rep2, [(0,)], [(0,)])
    db = random_database(GF2, 2, 1, 1, 6)
    system = store(db, rep2)
    for w in (1, 2):
        assert retrieve(system, plan, 2, w, 0) == db.files[w - 1]


def test_retrieve_validates_arguments():
    plan = c1_plan()
    db = random_database(GF2, 2, plan.row_count, 3, 1)
    system = store(db, fixture("C1"))
    with pytest.raises(ValidationError):
        retrieve(system, plan, 2, 0, 0)
    with pytest.raises(ValidationError):
        retrieve(system, plan, 2, 3, 0)
    with pytest.raises(ValidationError):
        retrieve(system, plan, 3, 1, 0)
    bad_db = random_database(GF2, 2, plan.row_count + 1, 3, 1)
    bad_system = store(bad_db, fixture("C1"))
    with pytest.raises(ValidationError):
        retrieve(bad_system, plan, 2, 1, 0)


def test_query_batch_records_seed_and_codewords():
    plan = c1_plan()
    batch = make_queries(plan, 2, 1, 123)
    assert batch.seed == 123
    assert len(batch.codewords) == plan.iteration_count
    assert len(batch.codewords[0]) == 2 * plan.row_count
    again = make_queries(plan, 2, 1, 123)
    assert again.rows == batch.rows
