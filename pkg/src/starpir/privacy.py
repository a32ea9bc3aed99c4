"""Collusion-resistance auditing.

A coalition T is protected exactly when the retrieval code has full rank on
the columns T; equivalently, no dual codeword's support fits inside T.  The
rank criterion is the audit definition here; exhaustive joint-distribution
checks confirm it on tiny instances, and sampled mode reports an empirical
total-variation distance rather than any mutual-information estimate.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Optional

from .codes import DEFAULT_ENUM_BUDGET, LinearCode
from .errors import BudgetExceededError, ValidationError
from .plans import RetrievalPlan
from .protocol import make_queries

DEFAULT_SUBSET_BUDGET = 10**7
DEFAULT_DISTRIBUTION_BUDGET = 1 << 20


def protects_set(retrieval: LinearCode, coalition: Iterable[int]) -> bool:
    """True iff the joint query distribution at these servers carries no
    information: the retrieval code's columns there are linearly independent."""
    t = tuple(sorted(set(coalition)))
    for j in t:
        if not 0 <= j < retrieval.n:
            raise ValidationError(f"server index {j} out of range")
    if not t:
        return True
    return retrieval._columns_rank(t) == len(t)


def collusion_parameter(
    retrieval: LinearCode, budget: int = DEFAULT_ENUM_BUDGET
) -> int:
    """Largest t with every size-t coalition protected: dual distance - 1."""
    return retrieval.dual().min_distance(budget) - 1


def unprotected_count(
    retrieval: LinearCode, t: int, budget: int = DEFAULT_SUBSET_BUDGET
) -> int:
    """Exact number of size-t coalitions with a rank defect, by exhaustive
    subset enumeration.  This is the independent oracle behind every
    protected-fraction claim."""
    n = retrieval.n
    if not 0 <= t <= n:
        raise ValidationError(f"coalition size {t} out of range")
    total = comb(n, t)
    if total > budget:
        raise BudgetExceededError(
            f"enumerating {total} coalitions exceeds budget {budget}"
        )
    if t == 0:
        return 0
    count = 0
    for coalition in itertools.combinations(range(n), t):
        if retrieval._columns_rank(coalition) < t:
            count += 1
    return count


def min_weight_count_rm(rho: int, m: int) -> int:
    """Closed-form count of minimum-weight codewords of RM(rho, m)."""
    if not 0 <= rho <= m:
        raise ValidationError("need 0 <= rho <= m")
    num = 1
    den = 1
    for i in range(m - rho):
        num *= (1 << (m - i)) - 1
        den *= (1 << (m - rho - i)) - 1
    if num % den:
        raise ValidationError("internal: count formula did not divide evenly")
    return (1 << rho) * (num // den)


@dataclass(frozen=True)
class BoundInfo:
    """Closed-form upper bound on unprotected size-t coalitions for
    RM(r, m) retrieval: each minimum-weight dual codeword's support lies in
    C(2^m - 2^(r+1), t - 2^(r+1)) size-t sets.  Tight when t < 3 * 2^r,
    because distinct minimal supports then cannot share one coalition."""

    count: int
    probability: Fraction
    tight: bool


def collusion_bound(r: int, m: int, t: int) -> BoundInfo:
    if not 0 <= r < m:
        raise ValidationError("need 0 <= r < m")
    n = 1 << m
    lo = 1 << (r + 1)
    if not lo <= t <= n:
        raise ValidationError(
            f"bound applies for {lo} <= t <= {n}, got t={t}"
        )
    minimal = min_weight_count_rm(m - r - 1, m)
    count = comb(n - lo, t - lo) * minimal
    return BoundInfo(
        count=count,
        probability=Fraction(count, comb(n, t)),
        tight=t < 3 * (1 << r),
    )


@dataclass(frozen=True)
class CollusionReport:
    """Audit result for one coalition size."""

    code: str
    coalition_size: int
    total: int
    unprotected: Optional[int]
    protected_fraction: Optional[Fraction]
    bound_count: Optional[int]
    bound_fraction: Optional[Fraction]
    tight: Optional[bool]


def audit(
    retrieval: LinearCode,
    t: int,
    rm_params: Optional[tuple[int, int]] = None,
    mode: str = "exact",
    budget: int = DEFAULT_SUBSET_BUDGET,
    label: str = "",
) -> CollusionReport:
    """Exact and/or formula-bound audit of all size-t coalitions.

    mode "exact" enumerates; mode "bound" only evaluates the closed form and
    requires rm_params = (r, m) describing the retrieval code.
    """
    n = retrieval.n
    total = comb(n, t)
    bound_count = bound_fraction = tight = None
    if rm_params is not None:
        r, m = rm_params
        if (1 << m) != n:
            raise ValidationError("rm_params length mismatch")
        lo = 1 << (r + 1)
        if t >= lo:
            info = collusion_bound(r, m, t)
            bound_count = info.count
            bound_fraction = info.probability
            tight = info.tight
        elif mode == "bound":
            # below the dual distance everything is protected
            bound_count = 0
            bound_fraction = Fraction(0)
            tight = True
    if mode == "bound":
        if rm_params is None:
            raise ValidationError("bound mode needs Reed-Muller parameters")
        return CollusionReport(
            label, t, total, None, None, bound_count, bound_fraction, tight
        )
    if mode != "exact":
        raise ValidationError(f"unknown audit mode {mode!r}")
    unprotected = unprotected_count(retrieval, t, budget)
    return CollusionReport(
        label,
        t,
        total,
        unprotected,
        Fraction(total - unprotected, total),
        bound_count,
        bound_fraction,
        tight,
    )


# ---------------------------------------------------------------------------
# Joint query distribution checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DistributionAudit:
    """Outcome of a joint-query-distribution comparison across targets."""

    mode: str
    coalition: tuple
    file_count: int
    private: Optional[bool]
    tv_distance: Optional[float]
    samples: Optional[int]


def _restricted_queries(plan, file_count, target, codewords, coalition):
    """Coalition view of the queries for fixed randomness: per iteration and
    coalition member, the full length-(M*b) query vector."""
    f = plan.field
    b = plan.row_count
    w_idx = target - 1
    view = []
    for gamma in range(plan.iteration_count):
        asg = plan.assignments[gamma]
        base = gamma * file_count * b
        for j in coalition:
            q = [codewords[base + i * b + beta][j]
                 for i in range(file_count) for beta in range(b)]
            if j in asg:
                idx = w_idx * b + asg[j]
                q[idx] = f.add(q[idx], 1)
            view.append(tuple(q))
    return tuple(view)


def empirical_query_distribution(
    plan: RetrievalPlan,
    file_count: int,
    coalition: Iterable[int],
    mode: str = "exhaustive",
    samples: int = 10000,
    seed: int = 0,
    budget: int = DEFAULT_DISTRIBUTION_BUDGET,
) -> DistributionAudit:
    """Compare the coalition's joint query distribution across all targets.

    Exhaustive mode enumerates every randomness assignment (all choices of
    the M*s*b retrieval codewords) and declares "private" exactly when the
    distributions for all targets coincide.  Sampled mode estimates the
    largest pairwise total-variation distance over `samples` seeded runs per
    target.
    """
    coalition = tuple(sorted(set(coalition)))
    for j in coalition:
        if not 0 <= j < plan.n:
            raise ValidationError(f"server index {j} out of range")
    if not coalition:
        return DistributionAudit(mode, coalition, file_count, True, 0.0, None)
    d = plan.retrieval
    slots = file_count * plan.iteration_count * plan.row_count
    if mode == "exhaustive":
        size = d.field.q**d.k
        if size**slots > budget:
            raise BudgetExceededError(
                f"{size}^{slots} randomness assignments exceed budget {budget}"
            )
        codeword_pool = [
            d.encode(msg)
            for msg in itertools.product(d.field.elements(), repeat=d.k)
        ]
        dists = []
        for target in range(1, file_count + 1):
            counter: Counter = Counter()
            for assignment in itertools.product(codeword_pool, repeat=slots):
                counter[
                    _restricted_queries(plan, file_count, target, assignment, coalition)
                ] += 1
            dists.append(counter)
        private = all(dists[0] == other for other in dists[1:])
        return DistributionAudit(mode, coalition, file_count, private, None, None)
    if mode == "sampled":
        counters = []
        for target in range(1, file_count + 1):
            counter = Counter()
            for run in range(samples):
                batch = make_queries(plan, file_count, target, seed + run)
                flat = []
                for cws in batch.codewords:
                    for cw in cws:
                        if isinstance(cw, int):
                            flat.append(tuple((cw >> j) & 1 for j in range(plan.n)))
                        else:
                            flat.append(cw)
                counter[
                    _restricted_queries(plan, file_count, target, flat, coalition)
                ] += 1
            counters.append(counter)
        tv = 0.0
        for a, b_ in itertools.combinations(counters, 2):
            keys = set(a) | set(b_)
            dist = sum(abs(a[k] - b_[k]) for k in keys) / (2.0 * samples)
            tv = max(tv, dist)
        return DistributionAudit(mode, coalition, file_count, None, tv, samples)
    raise ValidationError(f"unknown mode {mode!r}; use exhaustive or sampled")
