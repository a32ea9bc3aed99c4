"""Orchestration shared by the CLI and the HTTP service: resolve code specs,
choose plans, run retrieval demos, run audits.

All index sets crossing this boundary are 1-based server labels.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .codes import DEFAULT_ENUM_BUDGET, LinearCode, star_product
from .errors import BudgetExceededError, ValidationError
from .families import parse_code_spec, rm_params_of_spec
from .plans import (
    RetrievalPlan,
    _search_cyclic_pair,
    _search_symmetric_set,
    parse_plan,
    plan_auto,
    plan_basic,
    plan_cyclic,
    plan_rm,
    plan_symmetric,
)
from .privacy import CollusionReport, audit, collusion_parameter, protects_set
from .protocol import random_database, retrieve, store

PLAN_MODES = ("auto", "auto-basic", "auto-symmetric", "auto-cyclic")


def resolve_plan(
    code_spec: str,
    dcode_spec: str,
    plan_spec: str = "auto",
    budget: int = DEFAULT_ENUM_BUDGET,
) -> tuple[LinearCode, LinearCode, RetrievalPlan]:
    storage = parse_code_spec(code_spec)
    retrieval = parse_code_spec(dcode_spec)
    if plan_spec == "auto":
        rm_c = rm_params_of_spec(code_spec)
        rm_d = rm_params_of_spec(dcode_spec)
        if rm_c and rm_d and rm_c[1] == rm_d[1]:
            plan = plan_rm(rm_c[0], rm_d[0], rm_c[1])
        else:
            plan = plan_auto(storage, retrieval, budget)
    elif plan_spec == "auto-basic":
        plan = plan_basic(storage, retrieval, budget)
    elif plan_spec == "auto-symmetric":
        dual_star = star_product(storage, retrieval).dual()
        s_set = _search_symmetric_set(storage, dual_star, 256)
        if s_set is None:
            raise ValidationError(
                "no information set satisfies the symmetric condition"
            )
        plan = plan_symmetric(storage, retrieval, s_set)
    elif plan_spec == "auto-cyclic":
        dual_star = star_product(storage, retrieval).dual()
        pair = _search_cyclic_pair(storage, dual_star, 256)
        if pair is None:
            raise ValidationError("no cyclic-shift pair found")
        plan = plan_cyclic(storage, retrieval, pair[0], pair[1])
    else:
        path = Path(plan_spec)
        if not path.is_file():
            raise ValidationError(
                f"plan {plan_spec!r} is neither a mode {PLAN_MODES} nor a file"
            )
        plan = parse_plan(path.read_text(), storage, retrieval)
    return storage, retrieval, plan


@dataclass
class SchemeSummary:
    n: int
    storage_dimension: int
    retrieval_dimension: int
    storage_distance: Optional[int]
    retrieval_dual_distance: Optional[int]
    star_dimension: int
    dual_star_dimension: int
    rows_per_file: int
    iterations: int
    rate: Fraction
    collusion: Optional[int]
    strategy: str
    notes: tuple = ()

    def lines(self) -> list[str]:
        def show(v):
            return "n/a (budget exceeded)" if v is None else str(v)

        out = [
            f"servers:             {self.n}",
            f"storage code:        [{self.n},{self.storage_dimension}]"
            f" distance {show(self.storage_distance)}",
            f"retrieval code:      [{self.n},{self.retrieval_dimension}]"
            f" dual distance {show(self.retrieval_dual_distance)}",
            f"star code:           [{self.n},{self.star_dimension}]",
            f"dual star dimension: {self.dual_star_dimension}",
            f"plan strategy:       {self.strategy}",
            f"rows per file (b):   {self.rows_per_file}",
            f"iterations (s):      {self.iterations}",
            f"PIR rate:            {self.rate.numerator}/{self.rate.denominator}"
            f" (= {float(self.rate):.10f})",
            f"collusion protection: {show(self.collusion)}",
        ]
        for note in self.notes:
            out.append(f"note: {note}")
        return out


def scheme_summary(
    code_spec: str,
    dcode_spec: str,
    plan_spec: str = "auto",
    budget: int = DEFAULT_ENUM_BUDGET,
) -> SchemeSummary:
    storage, retrieval, plan = resolve_plan(code_spec, dcode_spec, plan_spec, budget)

    def guarded(fn):
        try:
            return fn()
        except BudgetExceededError:
            return None

    return SchemeSummary(
        n=storage.n,
        storage_dimension=storage.k,
        retrieval_dimension=retrieval.k,
        storage_distance=guarded(lambda: storage.min_distance(budget)),
        retrieval_dual_distance=guarded(lambda: retrieval.dual().min_distance(budget)),
        star_dimension=plan.star.k,
        dual_star_dimension=plan.dual_star.k,
        rows_per_file=plan.row_count,
        iterations=plan.iteration_count,
        rate=plan.rate,
        collusion=guarded(lambda: collusion_parameter(retrieval, budget)),
        strategy=plan.strategy,
        notes=plan.notes,
    )


@dataclass
class RetrievalDemo:
    target: int
    file_rows: list
    download_symbols: int
    rate: Fraction
    verified: bool
    rows_per_file: int
    iterations: int


def run_retrieval_demo(
    code_spec: str,
    dcode_spec: str,
    plan_spec: str,
    file_count: int,
    target: int,
    seed: int,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> RetrievalDemo:
    """Simulate a full retrieval against a seed-generated random database and
    check the answer against the stored file."""
    if file_count < 1:
        raise ValidationError("need at least one file")
    if not 1 <= target <= file_count:
        raise ValidationError(f"target must be in [1, {file_count}]")
    storage_code, _, plan = resolve_plan(code_spec, dcode_spec, plan_spec, budget)
    rng = random.Random(seed)
    database = random_database(
        storage_code.field, file_count, plan.row_count, storage_code.k, rng
    )
    system = store(database, storage_code)
    recovered = retrieve(system, plan, file_count, target, rng)
    return RetrievalDemo(
        target=target,
        file_rows=[list(r) for r in recovered.rows],
        download_symbols=plan.n * plan.iteration_count,
        rate=plan.rate,
        verified=recovered == database.files[target - 1],
        rows_per_file=plan.row_count,
        iterations=plan.iteration_count,
    )


@dataclass
class AuditOutcome:
    report: Optional[CollusionReport]
    coalition: Optional[tuple]
    coalition_protected: Optional[bool]

    def lines(self) -> list[str]:
        out = []
        if self.coalition is not None:
            labels = ",".join(str(j + 1) for j in self.coalition)
            verdict = "protected" if self.coalition_protected else "NOT protected"
            out.append(f"coalition {{{labels}}}: {verdict}")
        if self.report is not None:
            r = self.report
            out.append(f"retrieval code:     {r.code}")
            out.append(f"coalition size:     {r.coalition_size}")
            out.append(f"total coalitions:   {r.total}")
            if r.unprotected is not None:
                protected = r.total - r.unprotected
                out.append(f"unprotected:        {r.unprotected}")
                out.append(
                    f"protected:          {protected}/{r.total}"
                    f" (= {float(r.protected_fraction):.10f})"
                )
            if r.bound_count is not None:
                tightness = "tight" if r.tight else "upper bound only"
                out.append(f"formula bound:      {r.bound_count} ({tightness})")
        return out

    def csv(self) -> str:
        r = self.report
        header = "t,total,unprotected,protected_frac,bound_count,tight"
        if r is None:
            return header + "\n"
        frac = (
            ""
            if r.protected_fraction is None
            else f"{r.protected_fraction.numerator}/{r.protected_fraction.denominator}"
        )
        vals = [
            str(r.coalition_size),
            str(r.total),
            "" if r.unprotected is None else str(r.unprotected),
            frac,
            "" if r.bound_count is None else str(r.bound_count),
            "" if r.tight is None else str(r.tight).lower(),
        ]
        return header + "\n" + ",".join(vals) + "\n"


def run_audit(
    dcode_spec: str,
    t: int,
    mode: str = "exact",
    coalition: Optional[Sequence[int]] = None,
    budget: int = 10**7,
) -> AuditOutcome:
    """Audit one coalition (1-based labels) or all coalitions of size t."""
    retrieval = parse_code_spec(dcode_spec)
    if coalition is not None:
        zero_based = tuple(sorted(j - 1 for j in coalition))
        return AuditOutcome(
            None, zero_based, protects_set(retrieval, zero_based)
        )
    report = audit(
        retrieval,
        t,
        rm_params=rm_params_of_spec(dcode_spec),
        mode=mode,
        budget=budget,
        label=dcode_spec,
    )
    return AuditOutcome(report, None, None)
