"""Rate tables: PIR rate against storage code rate for the RM and GRS
families, including two built-in comparison series, rendered as CSV.

RM rates come straight from the dual star dimension (no plan construction is
needed for the value); GRS rates use the MDS scheme formula
(n - (k + t - 1)) / n.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ValidationError
from .families import grs_rate, rm_dimension

CSV_HEADER = "n,code,code_rate,t,pir_rate_frac,pir_rate_dec,family"

# collusion levels are dual distances minus one of RM retrieval codes
_FIG_LEFT_LENGTHS = (8, 32, 128, 512)
_FIG_LEFT_COLLUSION = (1, 3, 7)
_FIG_RIGHT_COLLUSION = (1, 3, 7, 15, 31)


@dataclass(frozen=True)
class RateTableRow:
    n: int
    code: str
    code_rate: Fraction
    t: int
    pir_rate: Fraction
    family: str


def rm_pir_rate(r: int, r_prime: int, m: int) -> Fraction:
    """dim(dual star)/n for RM(r, m) storage and RM(r', m) retrieval."""
    if not 0 <= r_prime < m - r:
        raise ValidationError("need 0 <= r' < m - r")
    return Fraction(rm_dimension(m - r - r_prime - 1, m), 1 << m)


def _collusion_order(t: int) -> int:
    """r' with t = 2^(r'+1) - 1, or -1 when t is not of that form."""
    v = t + 1
    if v & (v - 1):
        return -1
    return v.bit_length() - 2


def fig_left_rows() -> list[RateTableRow]:
    """Rate-1/2 storage codes of growing length, per collusion level."""
    rows = []
    for n in _FIG_LEFT_LENGTHS:
        m = n.bit_length() - 1
        r = (m - 1) // 2  # RM(r, m) of code rate exactly 1/2 (m odd)
        k = rm_dimension(r, m)
        for t in _FIG_LEFT_COLLUSION:
            rp = _collusion_order(t)
            if 0 <= rp < m - r:
                rows.append(
                    RateTableRow(
                        n, f"RM({r},{m})", Fraction(k, n), t,
                        rm_pir_rate(r, rp, m), "RM",
                    )
                )
    for n in _FIG_LEFT_LENGTHS:
        k = n // 2
        for t in _FIG_LEFT_COLLUSION:
            if 1 <= t <= n - k:
                rows.append(
                    RateTableRow(
                        n, f"GRS[{n},{k}]", Fraction(k, n), t,
                        grs_rate(n, k, t), "GRS",
                    )
                )
    return rows


def fig_right_rows() -> list[RateTableRow]:
    """All RM storage rates at length 64, per collusion level; the GRS
    comparison series carries the agreeing no-collusion points plus the
    endpoints k = 1 and k = n - t of each colluding series."""
    n = 64
    m = 6
    rows = []
    for r in range(m):
        k = rm_dimension(r, m)
        for t in _FIG_RIGHT_COLLUSION:
            rp = _collusion_order(t)
            if 0 <= rp < m - r:
                rows.append(
                    RateTableRow(
                        n, f"RM({r},{m})", Fraction(k, n), t,
                        rm_pir_rate(r, rp, m), "RM",
                    )
                )
    for r in range(m):
        k = rm_dimension(r, m)
        if 1 <= n - k:
            rows.append(
                RateTableRow(
                    n, f"GRS[{n},{k}]", Fraction(k, n), 1, grs_rate(n, k, 1), "GRS"
                )
            )
    for t in _FIG_RIGHT_COLLUSION[1:]:
        for k in (1, n - t):
            rows.append(
                RateTableRow(
                    n, f"GRS[{n},{k}]", Fraction(k, n), t, grs_rate(n, k, t), "GRS"
                )
            )
    return rows


def custom_rows(m: int, collusions: Sequence[int]) -> list[RateTableRow]:
    """RM storage rates at length 2^m for the given collusion levels, with
    GRS comparison rows at the same dimensions."""
    if m < 1:
        raise ValidationError("m must be positive")
    n = 1 << m
    rows = []
    for t in collusions:
        if _collusion_order(t) < 0:
            raise ValidationError(
                f"collusion level {t} is not 2^(r'+1)-1 for integer r'"
            )
    for r in range(m):
        k = rm_dimension(r, m)
        for t in collusions:
            rp = _collusion_order(t)
            if rp < m - r:
                rows.append(
                    RateTableRow(
                        n, f"RM({r},{m})", Fraction(k, n), t,
                        rm_pir_rate(r, rp, m), "RM",
                    )
                )
    for r in range(m):
        k = rm_dimension(r, m)
        for t in collusions:
            if 1 <= t <= n - k:
                rows.append(
                    RateTableRow(
                        n, f"GRS[{n},{k}]", Fraction(k, n), t,
                        grs_rate(n, k, t), "GRS",
                    )
                )
    return rows


def series_rows(series: str, m: int = 0, collusions: Sequence[int] = ()) -> list[RateTableRow]:
    if series == "fig-left":
        return fig_left_rows()
    if series == "fig-right":
        return fig_right_rows()
    if series == "custom":
        return custom_rows(m, collusions)
    raise ValidationError(
        f"unknown series {series!r}; use fig-left, fig-right or custom"
    )


def rows_to_csv(rows: Sequence[RateTableRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for row in rows:
        writer.writerow(
            [
                row.n,
                row.code,
                f"{float(row.code_rate):.10f}",
                row.t,
                f"{row.pir_rate.numerator}/{row.pir_rate.denominator}",
                f"{float(row.pir_rate):.10f}",
                row.family,
            ]
        )
    return out.getvalue()
