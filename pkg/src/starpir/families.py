"""Code family constructors: Reed-Muller, generalized Reed-Solomon,
repetition, and a few fixed example codes, plus a small text grammar for
naming codes on command lines.

Reed-Muller conventions (fixed so generators are reproducible):

* Evaluation points of GF(2)^m are enumerated in descending binary-counter
  order: point j (1-based) has coordinate vector (x_1, ..., x_m) equal to the
  bits of 2^m - j, most significant bit first.  Under this order x_1
  evaluates to 1 on the first half of the coordinates.
* Generator rows are the evaluation vectors of monomials in
  degree-lexicographic order with x_1 outermost: 1; x_1, ..., x_m;
  x_1 x_2, x_1 x_3, ...; and so on up to the requested degree.
"""

from __future__ import annotations

import itertools
from math import comb
from pathlib import Path
from typing import Optional, Sequence

from .algebra import GF2, Field, Matrix, field_of_order, parse_matrix
from .codes import LinearCode, from_parity_check
from .errors import ValidationError
from .groups import PermutationGroup

MAX_RM_VARIABLES = 16


def rm_dimension(r: int, m: int) -> int:
    return sum(comb(m, i) for i in range(r + 1))


def evaluation_points(m: int) -> tuple[tuple[int, ...], ...]:
    """Coordinate vectors of the 2^m evaluation points, in generator order."""
    n = 1 << m
    pts = []
    for j in range(1, n + 1):
        t = n - j
        pts.append(tuple((t >> (m - i)) & 1 for i in range(1, m + 1)))
    return tuple(pts)


def reed_muller(r: int, m: int) -> LinearCode:
    """Evaluations of all degree <= r multilinear polynomials on GF(2)^m."""
    if m < 1 or m > MAX_RM_VARIABLES:
        raise ValidationError(f"variable count m must be in [1, {MAX_RM_VARIABLES}]")
    if not 0 <= r <= m:
        raise ValidationError(f"order r must satisfy 0 <= r <= m, got r={r}, m={m}")
    pts = evaluation_points(m)
    rows = []
    for d in range(r + 1):
        for combo in itertools.combinations(range(m), d):
            row = [1] * len(pts)
            for i in combo:
                row = [a & p[i] for a, p in zip(row, pts)]
            rows.append(row)
    return LinearCode(GF2, Matrix(GF2, rows))


def repetition(field: Field, n: int) -> LinearCode:
    if n < 1:
        raise ValidationError("length must be positive")
    return LinearCode(field, Matrix(field, [[1] * n]))


class GrsSpec:
    """Parameters of a generalized Reed-Solomon code: distinct evaluation
    points, nonzero column multipliers, dimension k <= n <= q."""

    __slots__ = ("field", "points", "multipliers", "k")

    def __init__(
        self,
        field: Field,
        points: Sequence[int],
        multipliers: Optional[Sequence[int]] = None,
        k: int = 1,
    ):
        points = tuple(points)
        if multipliers is None:
            multipliers = (1,) * len(points)
        multipliers = tuple(multipliers)
        if len(set(points)) != len(points):
            raise ValidationError("evaluation points must be distinct")
        if len(multipliers) != len(points):
            raise ValidationError("one multiplier per point required")
        for a in points:
            field.check(a)
        for a in multipliers:
            if field.check(a) == 0:
                raise ValidationError("multipliers must be nonzero")
        if not 1 <= k <= len(points):
            raise ValidationError(f"need 1 <= k <= n, got k={k}, n={len(points)}")
        if len(points) > field.q:
            raise ValidationError("length cannot exceed the field order")
        self.field = field
        self.points = points
        self.multipliers = multipliers
        self.k = k


def grs(spec: GrsSpec) -> LinearCode:
    """Generator row i holds multiplier_j * point_j^i; the result is MDS."""
    f = spec.field
    rows = []
    for i in range(spec.k):
        rows.append([f.mul(v, f.pow(a, i)) for a, v in zip(spec.points, spec.multipliers)])
    return LinearCode(f, Matrix(f, rows))


def grs_code(field: Field, n: int, k: int) -> LinearCode:
    """GRS with the canonical default spec: points 0..n-1, all-ones multipliers."""
    return grs(GrsSpec(field, tuple(range(n)), None, k))


def grs_rate(n: int, k: int, t: int):
    """Scheme rate (n - (k + t - 1)) / n for an MDS storage/retrieval pair
    protecting against t collusion; requires 1 <= t <= n - k."""
    from fractions import Fraction

    if not 1 <= t <= n - k:
        raise ValidationError(f"need 1 <= t <= n - k, got t={t}, n={n}, k={k}")
    return Fraction(n - (k + t - 1), n)


# ---------------------------------------------------------------------------
# Fixed example codes
# ---------------------------------------------------------------------------

_C1_PARITY = [
    [1, 1, 0, 1, 0],
    [0, 1, 1, 0, 1],
]

_C2_PARITY = [
    [1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0],
    [0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    [0, 0, 1, 0, 0, 0, 1, 1, 0, 1, 1],
    [0, 0, 0, 1, 0, 0, 1, 0, 1, 1, 0],
    [0, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1],
]

_RM14_GENERATOR = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0],
    [1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0],
    [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0],
]

FIXTURE_NAMES = ("C1", "C2", "RM14-G")


def fixture(name: str) -> LinearCode:
    """The fixed example codes, embedded bit for bit."""
    if name == "C1":
        return from_parity_check(GF2, Matrix(GF2, _C1_PARITY))
    if name == "C2":
        return from_parity_check(GF2, Matrix(GF2, _C2_PARITY))
    if name == "RM14-G":
        return LinearCode(GF2, Matrix(GF2, _RM14_GENERATOR))
    raise ValidationError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")


# ---------------------------------------------------------------------------
# Automorphism groups acting on RM coordinates
# ---------------------------------------------------------------------------


def _point_index(m: int, vector: int) -> int:
    # inverse of the evaluation-point order: vector bits -> 1-based j = 2^m - value
    n = 1 << m
    return n - 1 - vector


def _point_vector(m: int, index: int) -> int:
    n = 1 << m
    return n - 1 - index


def translation_group(m: int) -> PermutationGroup:
    """Translations v -> v + e_i of GF(2)^m acting on RM coordinates.

    Transitive, and every translation is an automorphism of every RM(r, m).
    """
    n = 1 << m
    gens = []
    for i in range(m):
        t = 1 << i
        gens.append(tuple(_point_index(m, _point_vector(m, j) ^ t) for j in range(n)))
    return PermutationGroup(gens)


def _linear_point_permutation(m: int, matrix_rows: Sequence[int]) -> tuple:
    n = 1 << m

    def apply(v: int) -> int:
        out = 0
        for r in range(m):
            if (matrix_rows[r] & v).bit_count() & 1:
                out |= 1 << r
        return out

    return tuple(_point_index(m, apply(_point_vector(m, j))) for j in range(n))


def affine_group(m: int) -> PermutationGroup:
    """The full affine group of GF(2)^m acting on RM coordinates.

    Generators: the m unit translations plus a generating pair for the linear
    part, namely the coordinate rotation x_i -> x_{i+1} and the transvection
    adding coordinate 2 into coordinate 1.  Affine maps preserve polynomial
    degree, so all generators are automorphisms of every RM(r, m).
    """
    gens = list(translation_group(m).generators)
    if m > 1:
        rotation = [1 << ((r + 1) % m) for r in range(m)]
        transvection = [1 << r for r in range(m)]
        transvection[0] |= 1 << 1
        gens.append(_linear_point_permutation(m, rotation))
        gens.append(_linear_point_permutation(m, transvection))
    return PermutationGroup(gens)


# ---------------------------------------------------------------------------
# Command-line code grammar:
#   RM:r,m        Reed-Muller
#   GRS:q,n,k     generalized Reed-Solomon with default points/multipliers
#   REP:q,n       repetition code
#   FIX:C1|C2|RM14-G   fixed example codes
#   FILE:path     generator matrix in the standard text format
# ---------------------------------------------------------------------------


def parse_code_spec(spec: str) -> LinearCode:
    try:
        kind, _, arg = spec.partition(":")
        kind = kind.upper()
        if not arg:
            raise ValidationError(f"malformed code spec {spec!r}")
        if kind == "RM":
            r, m = (int(x) for x in arg.split(","))
            return reed_muller(r, m)
        if kind == "GRS":
            q, n, k = (int(x) for x in arg.split(","))
            return grs_code(field_of_order(q), n, k)
        if kind == "REP":
            q, n = (int(x) for x in arg.split(","))
            return repetition(field_of_order(q), n)
        if kind == "FIX":
            return fixture(arg)
        if kind == "FILE":
            text = Path(arg).read_text()
            mat = parse_matrix(text)
            from .codes import from_generator

            return from_generator(mat.field, mat)
    except (ValueError, OSError) as exc:
        raise ValidationError(f"cannot parse code spec {spec!r}: {exc}") from exc
    raise ValidationError(
        f"unknown code kind in {spec!r}; use RM: GRS: REP: FIX: or FILE:"
    )


def rm_params_of_spec(spec: str) -> Optional[tuple[int, int]]:
    """(r, m) when the spec names a Reed-Muller code, else None."""
    kind, _, arg = spec.partition(":")
    if kind.upper() != "RM" or not arg:
        return None
    try:
        r, m = (int(x) for x in arg.split(","))
    except ValueError:
        return None
    return (r, m)
