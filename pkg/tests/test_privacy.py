"""Collusion audits: rank criterion, counts, bounds, distribution checks."""

import itertools
from fractions import Fraction
from math import comb

import pytest

from starpir.algebra import GF2
from starpir.errors import BudgetExceededError, ValidationError
from starpir.families import fixture, reed_muller, repetition
from starpir.plans import plan_from_sets
from starpir.privacy import (
    audit,
    collusion_bound,
    collusion_parameter,
    empirical_query_distribution,
    min_weight_count_rm,
    protects_set,
    unprotected_count,
)


def test_protects_set_examples():
    rm14 = reed_muller(1, 4)
    assert protects_set(rm14, ())
    for size in (1, 2, 3):
        for coalition in itertools.combinations(range(16), size):
            assert protects_set(rm14, coalition)
    support = next(
        tuple(i for i, v in enumerate(cw) if v)
        for cw in reed_muller(2, 4).codewords()
        if sum(cw) == 4
    )
    assert not protects_set(rm14, support)
    with pytest.raises(ValidationError):
        protects_set(rm14, (16,))


def test_collusion_parameter_examples():
    assert collusion_parameter(repetition(GF2, 7)) == 1
    assert collusion_parameter(reed_muller(1, 4)) == 3
    assert collusion_parameter(reed_muller(2, 5)) == 7


def test_unprotected_count_rm14():
    rm14 = reed_muller(1, 4)
    assert unprotected_count(rm14, 3) == 0
    assert unprotected_count(rm14, 5) == 1680
    assert unprotected_count(rm14, 4) == reed_muller(2, 4).weight_count(4)
    assert unprotected_count(rm14, 4) == 140


def test_unprotected_count_budget():
    with pytest.raises(BudgetExceededError):
        unprotected_count(reed_muller(1, 5), 16)


def test_min_weight_count_formula():
    for m in range(1, 6):
        assert min_weight_count_rm(0, m) == 1
    assert min_weight_count_rm(2, 4) == 140
    assert min_weight_count_rm(1, 3) == 14
    # cross-check the formula against exhaustive enumeration
    for (rho, m) in [(1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]:
        code = reed_muller(rho, m)
        assert code.weight_count(code.min_distance()) == min_weight_count_rm(rho, m)


def test_collusion_bound_values():
    info4 = collusion_bound(1, 4, 4)
    assert info4.count == 140
    assert info4.tight
    assert info4.probability == Fraction(140, comb(16, 4))
    info5 = collusion_bound(1, 4, 5)
    assert info5.count == 1680
    assert info5.tight
    info6 = collusion_bound(1, 4, 6)
    assert info6.count == 9240
    assert not info6.tight
    assert unprotected_count(reed_muller(1, 4), 6) <= info6.count
    with pytest.raises(ValidationError):
        collusion_bound(1, 4, 3)  # below the dual distance
    with pytest.raises(ValidationError):
        collusion_bound(1, 4, 6 + 100)


def test_bound_equals_exact_count_when_tight():
    rm14 = reed_muller(1, 4)
    for t in (4, 5):
        assert unprotected_count(rm14, t) == collusion_bound(1, 4, t).count


def test_rank_criterion_equals_dual_support_criterion():
    # protected iff no dual codeword support fits inside the coalition
    for code in (reed_muller(1, 3), fixture("C1"), reed_muller(1, 4)):
        dual_supports = [
            frozenset(i for i, v in enumerate(cw) if v)
            for cw in code.dual().codewords()
            if any(cw)
        ]
        for t in range(1, min(5, code.n + 1)):
            for coalition in itertools.combinations(range(code.n), t):
                cset = frozenset(coalition)
                by_rank = protects_set(code, coalition)
                by_support = not any(s <= cset for s in dual_supports)
                assert by_rank == by_support


def test_min_weight_support_union_bound():
    # distinct minimum-weight words overlap in at most half a support
    for m in (2, 3, 4):
        for rho in range(1, m):
            code = reed_muller(rho, m)
            w = 1 << (m - rho)
            supports = [
                frozenset(i for i, v in enumerate(cw) if v)
                for cw in code.codewords()
                if sum(cw) == w
            ]
            floor = 3 * (1 << (m - rho - 1))
            for a, b in itertools.combinations(supports, 2):
                assert len(a | b) >= floor


def tiny_plan():
    rep4 = repetition(GF2, 4)
    return plan_from_sets(rep4, rep4, [(0,)], [(0,)])


def test_exhaustive_distribution_tiny_instance():
    plan = tiny_plan()
    assert empirical_query_distribution(plan, 2, (0,)).private
    assert not empirical_query_distribution(plan, 2, (0, 1)).private
    assert empirical_query_distribution(plan, 2, ()).private


def test_exhaustive_distribution_budget():
    plan = plan_from_sets(
        repetition(GF2, 4), reed_muller(1, 2), [(0,)], [(0,)]
    )
    with pytest.raises(BudgetExceededError):
        empirical_query_distribution(plan, 3, (0, 1), budget=4)


def test_sampled_distribution_separates_protected_from_not():
    plan = tiny_plan()
    safe = empirical_query_distribution(
        plan, 2, (0,), mode="sampled", samples=500, seed=1
    )
    assert safe.tv_distance < 0.2
    leaky = empirical_query_distribution(
        plan, 2, (0, 1), mode="sampled", samples=500, seed=1
    )
    assert leaky.tv_distance > 0.8
    assert leaky.samples == 500


def test_distribution_mode_validation():
    with pytest.raises(ValidationError):
        empirical_query_distribution(tiny_plan(), 2, (0,), mode="guess")


def test_audit_reports():
    report = audit(reed_muller(1, 4), 5, rm_params=(1, 4), label="RM:1,4")
    assert report.total == 4368
    assert report.unprotected == 1680
    assert report.protected_fraction == Fraction(2688, 4368)
    assert report.bound_count == 1680
    assert report.tight
    bound_only = audit(reed_muller(1, 4), 6, rm_params=(1, 4), mode="bound")
    assert bound_only.unprotected is None
    assert bound_only.bound_count == 9240
    with pytest.raises(ValidationError):
        audit(reed_muller(1, 4), 4, mode="bound")  # no RM parameters given
