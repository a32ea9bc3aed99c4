"""Retrieval plans: the combinatorial data that turns a storage/retrieval
code pair into an executable private-retrieval scheme.

A plan consists of row sets S_1..S_b (information sets of the storage code,
one per file row), iteration sets J_1..J_s (each extendable to an information
set of the dual of the star code), and per-iteration selector matrices that
say which file row is downloaded from which server in which iteration.  A
plan is valid when

  (1) every S_beta is an information set of the storage code,
  (2) every J_gamma is contained in an information set of (C * D)^perp,
  (3) every server appears in equally many S's and J's,

and the selectors hit each (server, row) pair with the server in that row's
set exactly once.  Plans are validated eagerly on construction; an invalid
plan cannot exist downstream.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

from .algebra import Matrix, format_matrix, parse_matrix
from .codes import DEFAULT_ENUM_BUDGET, LinearCode, star_product
from .errors import (
    CapExceededError,
    PlanConditionError,
    StarPirError,
    ValidationError,
)
from .families import affine_group, reed_muller, rm_dimension, translation_group
from .groups import PermutationGroup

DEFAULT_PLAN_CAP = 4096
DEFAULT_SEARCH_LIMIT = 256


def _normalize_sets(sets: Iterable[Iterable[int]], n: int, label: str) -> tuple:
    out = []
    for s in sets:
        t = tuple(sorted(set(s)))
        for j in t:
            if not 0 <= j < n:
                raise ValidationError(f"{label} contains out-of-range server {j}")
        out.append(t)
    return tuple(out)


class RetrievalPlan:
    """Validated scheme data for one storage/retrieval code pair.

    Treat instances as immutable.  `assignments[gamma]` maps each server in
    J_gamma to the file row whose symbol that server contributes during
    iteration gamma.
    """

    __slots__ = (
        "storage",
        "retrieval",
        "star",
        "dual_star",
        "parity",
        "row_sets",
        "iteration_sets",
        "assignments",
        "strategy",
        "notes",
        "_cache",
    )

    def __init__(
        self,
        storage: LinearCode,
        retrieval: LinearCode,
        row_sets: Sequence[Sequence[int]],
        iteration_sets: Sequence[Sequence[int]],
        assignments: Sequence[dict],
        strategy: str = "custom",
        notes: Sequence[str] = (),
    ):
        if storage.field != retrieval.field:
            raise ValidationError("storage and retrieval codes need one field")
        if storage.n != retrieval.n:
            raise ValidationError("storage and retrieval codes need one length")
        n = storage.n
        star = star_product(storage, retrieval)
        if star.k == n:
            raise ValidationError(
                "star code spans the whole space; responses carry no signal"
            )
        dual_star = star.dual()
        row_sets = _normalize_sets(row_sets, n, "row set")
        iteration_sets = _normalize_sets(iteration_sets, n, "iteration set")
        if not row_sets or not iteration_sets:
            raise ValidationError("plan needs at least one row and iteration set")
        _validate_conditions(storage, dual_star, row_sets, iteration_sets)

        if len(assignments) != len(iteration_sets):
            raise ValidationError("one assignment per iteration required")
        b = len(row_sets)
        row_membership = [set(s) for s in row_sets]
        seen_pairs = set()
        frozen = []
        for gamma, (jset, asg) in enumerate(zip(iteration_sets, assignments)):
            if set(asg) != set(jset):
                raise ValidationError(
                    f"iteration {gamma}: selector support differs from J"
                )
            for j, beta in asg.items():
                if not 0 <= beta < b:
                    raise ValidationError(f"iteration {gamma}: row {beta} out of range")
                if j not in row_membership[beta]:
                    raise ValidationError(
                        f"iteration {gamma}: server {j} not in row set {beta}"
                    )
                if (j, beta) in seen_pairs:
                    raise ValidationError(
                        f"(server {j}, row {beta}) selected more than once"
                    )
                seen_pairs.add((j, beta))
            frozen.append(dict(sorted(asg.items())))
        expected = {(j, beta) for beta, s in enumerate(row_sets) for j in s}
        if seen_pairs != expected:
            missing = sorted(expected - seen_pairs)[:3]
            raise ValidationError(f"uncovered (server, row) pairs, e.g. {missing}")

        self.storage = storage
        self.retrieval = retrieval
        self.star = star
        self.dual_star = dual_star
        self.parity = star.parity_check()
        self.row_sets = row_sets
        self.iteration_sets = iteration_sets
        self.assignments = tuple(frozen)
        self.strategy = strategy
        self.notes = tuple(notes)
        self._cache = {}

    # -- derived parameters --

    @property
    def field(self):
        return self.storage.field

    @property
    def n(self) -> int:
        return self.storage.n

    @property
    def k(self) -> int:
        return self.storage.k

    @property
    def row_count(self) -> int:
        return len(self.row_sets)

    @property
    def iteration_count(self) -> int:
        return len(self.iteration_sets)

    @property
    def rate(self) -> Fraction:
        return Fraction(
            self.row_count * self.storage.k, self.n * self.iteration_count
        )

    def e_matrix(self, gamma: int) -> Matrix:
        """The n x b selector matrix of one iteration: row j is the standard
        basis vector of the assigned file row for j in J_gamma, else zero."""
        rows = [[0] * self.row_count for _ in range(self.n)]
        for j, beta in self.assignments[gamma].items():
            rows[j][beta] = 1
        return Matrix(self.field, rows)

    def containing_information_set(self, gamma: int) -> tuple:
        """An information set of the dual star code containing J_gamma."""
        key = ("info", gamma)
        if key not in self._cache:
            j = self.iteration_sets[gamma]
            chosen = list(j)
            ds = self.dual_star
            r = len(chosen)
            for c in range(self.n):
                if r == ds.k:
                    break
                if c in j:
                    continue
                if ds._columns_rank(chosen + [c]) > r:
                    chosen.append(c)
                    r += 1
            if r != ds.k:
                raise StarPirError("internal: J does not extend to an information set")
            self._cache[key] = tuple(sorted(chosen))
        return self._cache[key]

    def __repr__(self) -> str:
        return (
            f"RetrievalPlan(b={self.row_count}, s={self.iteration_count}, "
            f"rate={self.rate}, strategy={self.strategy!r})"
        )


def _validate_conditions(
    storage: LinearCode,
    dual_star: LinearCode,
    row_sets: Sequence[tuple],
    iteration_sets: Sequence[tuple],
) -> None:
    for idx, s in enumerate(row_sets):
        if len(s) != storage.k or not storage.is_information_set(s):
            raise PlanConditionError(
                1,
                s,
                f"row set #{idx} {tuple(x + 1 for x in s)} is not an "
                "information set of the storage code",
            )
    for idx, j in enumerate(iteration_sets):
        if not dual_star.extends_to_information_set(j):
            raise PlanConditionError(
                2,
                j,
                f"iteration set #{idx} {tuple(x + 1 for x in j)} does not extend "
                "to an information set of the dual star code",
            )
    n = storage.n
    row_counts = [0] * n
    it_counts = [0] * n
    for s in row_sets:
        for x in s:
            row_counts[x] += 1
    for s in iteration_sets:
        for x in s:
            it_counts[x] += 1
    for x in range(n):
        if row_counts[x] != it_counts[x]:
            raise PlanConditionError(
                3,
                x,
                f"server {x + 1} appears in {row_counts[x]} row sets but "
                f"{it_counts[x]} iteration sets",
            )


def pir_rate(plan: RetrievalPlan) -> Fraction:
    """Useful symbols per downloaded symbol, b*k / (n*s), in lowest terms."""
    return plan.rate


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def plan_from_sets(
    storage: LinearCode,
    retrieval: LinearCode,
    row_sets: Sequence[Iterable[int]],
    iteration_sets: Sequence[Iterable[int]],
    strategy: str = "from-sets",
    notes: Sequence[str] = (),
) -> RetrievalPlan:
    """Build the selectors for given set collections by the smallest-row rule.

    Iterations are processed in order; within one, each participating server
    is assigned the smallest file row beta whose set contains it and whose
    (server, row) slot no earlier iteration used.  The coverage condition
    makes this assignment total and bijective onto {(j, beta) : j in S_beta}.
    """
    n = storage.n
    row_sets = _normalize_sets(row_sets, n, "row set")
    iteration_sets = _normalize_sets(iteration_sets, n, "iteration set")
    if not row_sets or not iteration_sets:
        raise ValidationError("plan needs at least one row and iteration set")
    star = star_product(storage, retrieval)
    if star.k == n:
        raise ValidationError(
            "star code spans the whole space; responses carry no signal"
        )
    _validate_conditions(storage, star.dual(), row_sets, iteration_sets)

    rows_of: dict[int, list[int]] = {}
    for beta, s in enumerate(row_sets):
        for j in s:
            rows_of.setdefault(j, []).append(beta)
    pointer = dict.fromkeys(rows_of, 0)
    assignments = []
    for jset in iteration_sets:
        asg = {}
        for j in jset:
            lst = rows_of.get(j)
            p = pointer.get(j, 0)
            if lst is None or p >= len(lst):
                raise StarPirError(
                    "internal: row selection exhausted despite balanced coverage"
                )
            asg[j] = lst[p]
            pointer[j] = p + 1
        assignments.append(asg)
    return RetrievalPlan(
        storage, retrieval, row_sets, iteration_sets, assignments, strategy, notes
    )


def plan_basic(
    storage: LinearCode,
    retrieval: LinearCode,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> RetrievalPlan:
    """Baseline plan downloading d(star) - 1 symbols per iteration.

    Writing c = d(star) - 1 and k for the storage dimension: with c <= k a
    single information set is reused with a rotating window of width c/b per
    row; with c = g*k, g disjoint information sets are drained in one
    iteration; mixed c combines both.  Rate is always c/n.
    """
    star = star_product(storage, retrieval)
    c = star.min_distance(budget) - 1
    if c == 0:
        raise ValidationError("star code has distance 1; nothing can be retrieved")
    k = storage.k
    n = storage.n

    if c <= k:
        s_set = storage.information_set()
        row_sets, iteration_sets, assignments = _rotating_window(
            sorted(s_set), c, row_offset=0, total_rows=None
        )
        return RetrievalPlan(
            storage, retrieval, row_sets, iteration_sets, assignments, "basic"
        )

    g, cbar = divmod(c, k)
    if cbar == 0:
        sets = storage.disjoint_information_sets(g)
        assignment = {}
        union = []
        for beta, s in enumerate(sets):
            union.extend(s)
            for j in s:
                assignment[j] = beta
        return RetrievalPlan(
            storage, retrieval, sets, [sorted(union)], [assignment], "basic"
        )

    sets = storage.disjoint_information_sets(g + 1)
    tail_rows, tail_iters, tail_asg = _rotating_window(
        sorted(sets[g]), cbar, row_offset=None, total_rows=None
    )
    s = len(tail_iters)
    bbar = len(tail_rows)
    row_sets = []
    for i in range(g):
        row_sets.extend([sets[i]] * s)
    row_sets.extend(tail_rows)
    iteration_sets = []
    assignments = []
    for gamma in range(s):
        jset = []
        asg = {}
        for i in range(g):
            for j in sets[i]:
                jset.append(j)
                asg[j] = i * s + gamma
        for j in tail_iters[gamma]:
            jset.append(j)
            asg[j] = g * s + tail_asg[gamma][j]
        iteration_sets.append(sorted(jset))
        assignments.append(asg)
    return RetrievalPlan(
        storage, retrieval, row_sets, iteration_sets, assignments, "basic"
    )


def _rotating_window(s_sorted: list, c: int, row_offset, total_rows):
    """Window schedule on one information set for c <= k downloads per round.

    With b = lcm(c, k)/k rows and s = lcm(c, k)/c rounds, round gamma pulls
    row beta's symbols from the width-a window starting at position
    a*(gamma + beta) of the set, positions mod k, where a = c/b.  After s
    rounds every (position, row) pair was pulled exactly once.
    """
    k = len(s_sorted)
    l = lcm(c, k)
    b = l // k
    s = l // c
    a = c // b
    row_sets = [tuple(s_sorted)] * b
    iteration_sets = []
    assignments = []
    for gamma in range(s):
        jset = []
        asg = {}
        for beta in range(b):
            startpos = a * (gamma + beta)
            for t in range(a):
                j = s_sorted[(startpos + t) % k]
                jset.append(j)
                asg[j] = beta
        iteration_sets.append(sorted(jset))
        assignments.append(asg)
    return row_sets, iteration_sets, assignments


def plan_symmetric(
    storage: LinearCode, retrieval: LinearCode, info_set: Iterable[int]
) -> RetrievalPlan:
    """Plan using every size-c subset of one information set as an iteration
    set, c being the dual star dimension; requires all of them to be
    information sets of the dual star code.  Rate c/n."""
    s_set = tuple(sorted(set(info_set)))
    star = star_product(storage, retrieval)
    if star.k == storage.n:
        raise ValidationError(
            "star code spans the whole space; responses carry no signal"
        )
    dual_star = star.dual()
    c = dual_star.k
    k = storage.k
    if len(s_set) != k or not storage.is_information_set(s_set):
        raise PlanConditionError(
            1, s_set, "given set is not an information set of the storage code"
        )
    if c > k:
        raise ValidationError(
            f"dual star dimension {c} exceeds storage dimension {k}; "
            "the symmetric construction does not apply"
        )
    for sub in itertools.combinations(s_set, c):
        if not dual_star.is_information_set(sub):
            raise ValidationError(
                f"subset {tuple(x + 1 for x in sub)} is not an information set "
                "of the dual star code"
            )
    iteration_sets = list(itertools.combinations(s_set, c))
    b = c * len(iteration_sets) // k
    row_sets = [s_set] * b
    return plan_from_sets(storage, retrieval, row_sets, iteration_sets, "symmetric")


def plan_cyclic(
    storage: LinearCode,
    retrieval: LinearCode,
    info_set: Iterable[int],
    window: Iterable[int],
) -> RetrievalPlan:
    """Plan whose iteration sets are all cyclic shifts of one subset J inside
    an information set S of the storage code.

    The positions of J within the sorted S are rotated through all |S|
    offsets; every shift must be an information set of the dual star code.
    Gives b = |J| rows, s = |S| iterations, rate |J|/n.
    """
    s_set = tuple(sorted(set(info_set)))
    j_set = tuple(sorted(set(window)))
    if not set(j_set) <= set(s_set):
        raise ValidationError("J must be a subset of S")
    star = star_product(storage, retrieval)
    if star.k == storage.n:
        raise ValidationError(
            "star code spans the whole space; responses carry no signal"
        )
    dual_star = star.dual()
    if len(s_set) != storage.k or not storage.is_information_set(s_set):
        raise PlanConditionError(
            1, s_set, "given set is not an information set of the storage code"
        )
    c = dual_star.k
    if len(j_set) != c:
        raise ValidationError(
            f"J must have the dual star dimension {c}, got {len(j_set)}"
        )
    pos = {v: i for i, v in enumerate(s_set)}
    positions = [pos[j] for j in j_set]
    klen = len(s_set)
    shifts = []
    for delta in range(klen):
        shift = tuple(sorted(s_set[(p + delta) % klen] for p in positions))
        if not dual_star.is_information_set(shift):
            raise ValidationError(
                f"shift by {delta}, {tuple(x + 1 for x in shift)}, is not an "
                "information set of the dual star code"
            )
        shifts.append(shift)
    row_sets = [s_set] * len(j_set)
    return plan_from_sets(storage, retrieval, row_sets, shifts, "cyclic")


def plan_orbit(
    storage: LinearCode,
    retrieval: LinearCode,
    info_set: Iterable[int],
    dual_info_set: Iterable[int],
    storage_group: PermutationGroup,
    star_group: PermutationGroup,
    cap: int = DEFAULT_PLAN_CAP,
) -> RetrievalPlan:
    """Plan built from the orbits of S and J under transitive automorphism
    groups of the storage code and of the dual star code.

    Transitivity makes per-server coverage counts x = |orbit(S)|*|S|/n and
    y = |orbit(J)|*|J|/n uniform; taking lcm(x, y)/x copies of the S-orbit
    and lcm(x, y)/y copies of the J-orbit balances them.  Fails when the
    resulting row or iteration count exceeds `cap`, reporting both so the
    caller can switch strategy.  Rate dim(dual star)/n.
    """
    s_set = tuple(sorted(set(info_set)))
    j_set = tuple(sorted(set(dual_info_set)))
    n = storage.n
    star = star_product(storage, retrieval)
    if star.k == n:
        raise ValidationError(
            "star code spans the whole space; responses carry no signal"
        )
    dual_star = star.dual()
    for label, group in (("storage", storage_group), ("star", star_group)):
        if group.n != n:
            raise ValidationError(f"{label} group acts on the wrong point count")
        if not group.is_transitive():
            raise ValidationError(f"{label} group is not transitive")
    for g in storage_group.generators:
        if not storage.is_automorphism(g):
            raise ValidationError(
                "storage group generator is not an automorphism of the storage code"
            )
    for g in star_group.generators:
        if not dual_star.is_automorphism(g):
            raise ValidationError(
                "star group generator is not an automorphism of the dual star code"
            )
    if len(s_set) != storage.k or not storage.is_information_set(s_set):
        raise PlanConditionError(
            1, s_set, "S is not an information set of the storage code"
        )
    if len(j_set) != dual_star.k or not dual_star.is_information_set(j_set):
        raise PlanConditionError(
            2, j_set, "J is not an information set of the dual star code"
        )

    orbit_limit = 4 * max(cap, 1)
    try:
        orbit_s = storage_group.orbit_of_set(s_set, limit=orbit_limit)
    except ValidationError:
        raise CapExceededError(orbit_limit, 0, cap)
    try:
        orbit_j = star_group.orbit_of_set(j_set, limit=orbit_limit)
    except ValidationError:
        raise CapExceededError(0, orbit_limit, cap)

    x = len(orbit_s) * len(s_set)
    y = len(orbit_j) * len(j_set)
    if x % n or y % n:
        raise StarPirError("internal: transitive orbit coverage must divide n")
    x //= n
    y //= n
    common = lcm(x, y)
    alpha = common // x
    beta = common // y
    b = alpha * len(orbit_s)
    s = beta * len(orbit_j)
    if b > cap or s > cap:
        raise CapExceededError(b, s, cap)
    row_sets = [tuple(sorted(o)) for o in orbit_s] * alpha
    iteration_sets = [tuple(sorted(o)) for o in orbit_j] * beta
    return plan_from_sets(storage, retrieval, row_sets, iteration_sets, "orbit")


# ---------------------------------------------------------------------------
# Searches and ladders
# ---------------------------------------------------------------------------


def _search_cyclic_pair(
    storage: LinearCode,
    dual_star: LinearCode,
    search_limit: int,
) -> Optional[tuple[tuple, tuple]]:
    """First (S, J) with every cyclic shift of J inside S an information set
    of the dual star code.  S ranges over information sets of the storage
    code in lexicographic order (at most `search_limit` candidates), J over
    c-subsets of S in lexicographic order, aborting a candidate at its first
    failing shift."""
    c = dual_star.k
    k = storage.k
    if c > k:
        return None
    if dual_star.field.q == 2:
        colbits = dual_star._column_bits()

        def independent(cols) -> bool:
            basis: dict[int, int] = {}
            for j in cols:
                v = colbits[j]
                while v:
                    h = v.bit_length() - 1
                    b = basis.get(h)
                    if b is None:
                        basis[h] = v
                        break
                    v ^= b
                if not v:
                    return False
            return True

    else:

        def independent(cols) -> bool:
            return dual_star._columns_rank(list(cols)) == len(cols)

    for count, s_set in enumerate(storage.iter_information_sets()):
        if count >= search_limit:
            return None
        klen = len(s_set)
        for positions in itertools.combinations(range(klen), c):
            ok = True
            for delta in range(klen):
                if not independent(
                    [s_set[(p + delta) % klen] for p in positions]
                ):
                    ok = False
                    break
            if ok:
                return s_set, tuple(s_set[p] for p in positions)
    return None


def _search_symmetric_set(
    storage: LinearCode, dual_star: LinearCode, search_limit: int
) -> Optional[tuple]:
    """First information set of the storage code all of whose c-subsets are
    information sets of the dual star code."""
    c = dual_star.k
    if c > storage.k:
        return None
    for count, s_set in enumerate(storage.iter_information_sets()):
        if count >= search_limit:
            return None
        if all(
            dual_star.extends_to_information_set(sub)
            for sub in itertools.combinations(s_set, c)
        ):
            return s_set
    return None


def plan_rm(
    r: int,
    r_prime: int,
    m: int,
    cap: int = DEFAULT_PLAN_CAP,
    search_limit: int = DEFAULT_SEARCH_LIMIT,
) -> RetrievalPlan:
    """Plan for Reed-Muller storage RM(r, m) and retrieval RM(r', m).

    Strategy ladder: (1) a searched cyclic-shift pair; (2) orbits under the
    translation group of GF(2)^m; (3) orbits under the full affine group;
    otherwise fail.  Translations come before the full group because their
    orbits have at most n sets, while full affine orbits of typical
    information sets already exceed the default cap when the storage code is
    a repetition code.  The achieved rate always equals dim(dual star)/n.
    """
    if m < 1:
        raise ValidationError("m must be positive")
    if not 0 <= r_prime < m - r:
        raise ValidationError("need 0 <= r' < m - r")
    storage = reed_muller(r, m)
    retrieval = reed_muller(r_prime, m)
    star = star_product(storage, retrieval)
    dual_star = star.dual()
    n = 1 << m

    plan = None
    pair = _search_cyclic_pair(storage, dual_star, search_limit)
    if pair is not None:
        plan = plan_cyclic(storage, retrieval, pair[0], pair[1])
    if plan is None:
        s_set = storage.information_set()
        j_set = dual_star.information_set()
        for group_maker in (translation_group, affine_group):
            group = group_maker(m)
            try:
                plan = plan_orbit(
                    storage, retrieval, s_set, j_set, group, group, cap
                )
                break
            except CapExceededError:
                continue
    if plan is None:
        raise CapExceededError(0, 0, cap)

    expected = Fraction(rm_dimension(m - r - r_prime - 1, m), n)
    if plan.rate != expected:
        raise StarPirError(
            f"internal: plan rate {plan.rate} differs from dual star "
            f"dimension rate {expected}"
        )
    notes = list(plan.notes)
    alt = Fraction(rm_dimension(m - r - r_prime, m), n)
    if alt != expected:
        notes.append(
            f"rate {expected} equals the dual star dimension over n; the "
            f"binomial sum through degree {m - r - r_prime} would give {alt}"
        )
    return RetrievalPlan(
        storage,
        retrieval,
        plan.row_sets,
        plan.iteration_sets,
        plan.assignments,
        plan.strategy,
        notes,
    )


def plan_auto(
    storage: LinearCode,
    retrieval: LinearCode,
    budget: int = DEFAULT_ENUM_BUDGET,
    search_limit: int = DEFAULT_SEARCH_LIMIT,
) -> RetrievalPlan:
    """General-purpose ladder for arbitrary code pairs: a searched symmetric
    plan, then a searched cyclic plan, then the baseline plan."""
    star = star_product(storage, retrieval)
    if star.k == storage.n:
        raise ValidationError(
            "star code spans the whole space; responses carry no signal"
        )
    dual_star = star.dual()
    s_set = _search_symmetric_set(storage, dual_star, search_limit)
    if s_set is not None:
        return plan_symmetric(storage, retrieval, s_set)
    pair = _search_cyclic_pair(storage, dual_star, search_limit)
    if pair is not None:
        return plan_cyclic(storage, retrieval, pair[0], pair[1])
    return plan_basic(storage, retrieval, budget)


# ---------------------------------------------------------------------------
# Manifest format: header "n k b s", then b row-set lines and s
# iteration-set lines of 1-based indices, then the s selector matrices in
# the standard matrix text format.  Round-trips byte-exactly.
# ---------------------------------------------------------------------------


def format_plan(plan: RetrievalPlan) -> str:
    parts = [
        f"{plan.n} {plan.storage.k} {plan.row_count} {plan.iteration_count}"
    ]
    for s in plan.row_sets:
        parts.append(" ".join(str(j + 1) for j in s))
    for s in plan.iteration_sets:
        parts.append(" ".join(str(j + 1) for j in s))
    text = "\n".join(parts) + "\n"
    for gamma in range(plan.iteration_count):
        text += format_matrix(plan.e_matrix(gamma))
    return text


def parse_plan(
    text: str, storage: LinearCode, retrieval: LinearCode
) -> RetrievalPlan:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValidationError("empty plan manifest")
    try:
        n, k, b, s = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise ValidationError(f"bad manifest header: {exc}") from exc
    if n != storage.n or k != storage.k:
        raise ValidationError(
            f"manifest is for an [{n},{k}] storage code, got "
            f"[{storage.n},{storage.k}]"
        )
    if len(lines) < 1 + b + s:
        raise ValidationError("manifest truncated in the set lists")
    def read_set(line: str) -> tuple:
        vals = [int(t) - 1 for t in line.split()]
        return tuple(sorted(vals))

    row_sets = [read_set(lines[1 + i]) for i in range(b)]
    iteration_sets = [read_set(lines[1 + b + i]) for i in range(s)]
    matrix_lines = lines[1 + b + s :]
    expected = s * (1 + n)
    if len(matrix_lines) != expected:
        raise ValidationError(
            f"expected {expected} selector-matrix lines, got {len(matrix_lines)}"
        )
    assignments = []
    for gamma in range(s):
        chunk = matrix_lines[gamma * (1 + n) : (gamma + 1) * (1 + n)]
        mat = parse_matrix("\n".join(chunk), storage.field)
        if (mat.nrows, mat.ncols) != (n, b):
            raise ValidationError(
                f"selector matrix {gamma} has shape {mat.nrows}x{mat.ncols}, "
                f"expected {n}x{b}"
            )
        asg = {}
        for j, row in enumerate(mat.rows):
            support = [i for i, v in enumerate(row) if v]
            if not support:
                continue
            if len(support) > 1 or row[support[0]] != 1:
                raise ValidationError(
                    f"selector matrix {gamma} row {j} is not zero or a "
                    "standard basis vector"
                )
            asg[j] = support[0]
        assignments.append(asg)
    return RetrievalPlan(
        storage, retrieval, row_sets, iteration_sets, assignments, "manifest"
    )
