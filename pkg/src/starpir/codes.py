"""Linear codes: duals, star products, weight enumeration, information sets.

A LinearCode is a row space with a distinguished generator basis.  The stored
basis matters: storage encoding and decoding use it verbatim, so constructors
that normalize (``from_generator``) are separate from ones that keep a
caller-chosen basis (``LinearCode(field, matrix)``).

Index sets over code coordinates are 0-based throughout the library; the CLI
and file formats use 1-based server labels and convert at that boundary.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Optional, Sequence

from .algebra import Field, Matrix, _pack_bits
from .errors import BudgetExceededError, ValidationError

DEFAULT_ENUM_BUDGET = 1 << 24


class LinearCode:
    """An [n, k] linear code presented by a full-rank generator matrix."""

    __slots__ = (
        "field",
        "generator",
        "n",
        "k",
        "_parity",
        "_weights",
        "_canonical",
        "_colbits",
    )

    def __init__(self, field: Field, generator: Matrix):
        if generator.field != field:
            raise ValidationError("generator field mismatch")
        if generator.nrows == 0 or generator.ncols == 0:
            raise ValidationError("dimension-0 code rejected")
        if generator.rank() != generator.nrows:
            raise ValidationError("generator rows are dependent; use from_generator")
        self.field = field
        self.generator = generator
        self.n = generator.ncols
        self.k = generator.nrows
        self._parity = None
        self._weights = None
        self._canonical = None
        self._colbits = None

    # -- presentation-independent identity --

    def canonical_generator(self) -> Matrix:
        if self._canonical is None:
            self._canonical = self.generator.rref()[0]
        return self._canonical

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearCode)
            and self.field == other.field
            and self.n == other.n
            and self.canonical_generator() == other.canonical_generator()
        )

    def __hash__(self) -> int:
        return hash((self.field, self.n, self.canonical_generator()))

    def __repr__(self) -> str:
        return f"LinearCode[{self.n},{self.k}] over {self.field!r}"

    # -- duality --

    def parity_check(self) -> Matrix:
        """An (n-k) x n matrix whose rows span the dual code."""
        if self._parity is None:
            self._parity = self.generator.right_kernel()
        return self._parity

    def dual(self) -> "LinearCode":
        if self.k == self.n:
            raise ValidationError("dual of the full space is dimension 0")
        return LinearCode(self.field, self.parity_check())

    # -- encoding --

    def encode(self, message: Sequence[int]) -> tuple:
        if len(message) != self.k:
            raise ValidationError("message length must equal dimension")
        f = self.field
        out = [0] * self.n
        for coeff, row in zip(message, self.generator.rows):
            if coeff == 0:
                continue
            for j, g in enumerate(row):
                if g:
                    out[j] = f.add(out[j], f.mul(coeff, g))
        return tuple(out)

    # -- weight enumeration (the exhaustive oracle for all distance claims) --

    def _weight_counts(self, budget: int) -> list[int]:
        if self._weights is not None:
            return self._weights
        total = self.field.q**self.k
        if total > budget:
            raise BudgetExceededError(
                f"enumerating {total} codewords exceeds budget {budget}"
            )
        counts = [0] * (self.n + 1)
        if self.field.q == 2:
            rows = [_pack_bits(r) for r in self.generator.rows]
            cw = 0
            counts[0] += 1
            for i in range(1, 1 << self.k):
                cw ^= rows[(i & -i).bit_length() - 1]
                counts[cw.bit_count()] += 1
        elif self.field.h == 1:
            # odometer walk: one message symbol steps per iteration, so the
            # codeword update is a single generator-row addition (scalar
            # multiples are iterated additions in a prime field)
            p = self.field.p
            rows = [tuple(r) for r in self.generator.rows]
            supports = [
                tuple(j for j, v in enumerate(r) if v) for r in rows
            ]
            cw = [0] * self.n
            msg = [0] * self.k
            counts[0] += 1
            for _ in range(total - 1):
                i = 0
                while True:
                    row = rows[i]
                    for j in supports[i]:
                        s = cw[j] + row[j]
                        cw[j] = s if s < p else s - p
                    msg[i] += 1
                    if msg[i] < p:
                        break
                    msg[i] = 0
                    i += 1
                counts[self.n - cw.count(0)] += 1
        else:
            for msg in itertools.product(self.field.elements(), repeat=self.k):
                w = sum(1 for a in self.encode(msg) if a)
                counts[w] += 1
        self._weights = counts
        return counts

    def min_distance(self, budget: int = DEFAULT_ENUM_BUDGET) -> int:
        counts = self._weight_counts(budget)
        for w in range(1, self.n + 1):
            if counts[w]:
                return w
        raise ValidationError("zero code has no distance")  # unreachable: k >= 1

    def weight_count(self, w: int, budget: int = DEFAULT_ENUM_BUDGET) -> int:
        if not 0 <= w <= self.n:
            raise ValidationError(f"weight {w} out of range")
        return self._weight_counts(budget)[w]

    def codewords(self, budget: int = DEFAULT_ENUM_BUDGET) -> Iterator[tuple]:
        total = self.field.q**self.k
        if total > budget:
            raise BudgetExceededError(
                f"enumerating {total} codewords exceeds budget {budget}"
            )
        for msg in itertools.product(self.field.elements(), repeat=self.k):
            yield self.encode(msg)

    # -- information sets --

    def _column_bits(self) -> list:
        """Generator columns packed as k-bit ints (GF(2) only); cached."""
        if self._colbits is None:
            cols = [0] * self.n
            for i, row in enumerate(self.generator.rows):
                bit = 1 << i
                for j, v in enumerate(row):
                    if v:
                        cols[j] |= bit
            self._colbits = cols
        return self._colbits

    def _columns_rank(self, cols: Sequence[int]) -> int:
        for c in cols:
            if not 0 <= c < self.n:
                raise ValidationError(f"coordinate {c} out of range")
        if self.field.q == 2:
            colbits = self._column_bits()
            basis: dict[int, int] = {}
            rank = 0
            for c in cols:
                v = colbits[c]
                while v:
                    h = v.bit_length() - 1
                    if h in basis:
                        v ^= basis[h]
                    else:
                        basis[h] = v
                        rank += 1
                        break
            return rank
        return self.generator.submatrix(col_idx=list(cols)).rank()

    def is_information_set(self, coords: Iterable[int]) -> bool:
        coords = sorted(set(coords))
        if len(coords) != self.k:
            raise ValidationError(
                f"information set must have size {self.k}, got {len(coords)}"
            )
        return self._columns_rank(coords) == self.k

    def extends_to_information_set(self, coords: Iterable[int]) -> bool:
        """True iff the generator columns at coords are linearly independent."""
        coords = sorted(set(coords))
        if len(coords) > self.k:
            return False
        return self._columns_rank(coords) == len(coords)

    def information_set(self, within: Optional[Sequence[int]] = None) -> tuple:
        """First information set in lexicographic greedy order, optionally
        restricted to the given coordinates."""
        pool = range(self.n) if within is None else sorted(within)
        if self.field.q == 2:
            colbits = self._column_bits()
            basis: dict[int, int] = {}
            chosen = []
            for c in pool:
                v = colbits[c]
                while v:
                    h = v.bit_length() - 1
                    b = basis.get(h)
                    if b is None:
                        basis[h] = v
                        chosen.append(c)
                        break
                    v ^= b
                if len(chosen) == self.k:
                    return tuple(chosen)
            raise ValidationError("no information set within the given coordinates")
        chosen = []
        r = 0
        for c in pool:
            if self._columns_rank(chosen + [c]) > r:
                chosen.append(c)
                r += 1
                if r == self.k:
                    return tuple(chosen)
        raise ValidationError("no information set within the given coordinates")

    def iter_information_sets(self) -> Iterator[tuple]:
        """All information sets in lexicographic order (depth-first search
        over columns, extending only independent prefixes)."""
        if self.field.q == 2:
            colbits = self._column_bits()
            n, k = self.n, self.k

            def rec2(chosen: list[int], start: int, basis: dict) -> Iterator[tuple]:
                if len(chosen) == k:
                    yield tuple(chosen)
                    return
                for c in range(start, n):
                    if n - c < k - len(chosen):
                        break
                    v = colbits[c]
                    while v:
                        h = v.bit_length() - 1
                        b = basis.get(h)
                        if b is None:
                            break
                        v ^= b
                    if v:
                        basis[h] = v
                        chosen.append(c)
                        yield from rec2(chosen, c + 1, basis)
                        chosen.pop()
                        del basis[h]

            yield from rec2([], 0, {})
            return

        def rec(chosen: list[int], start: int) -> Iterator[tuple]:
            if len(chosen) == self.k:
                yield tuple(chosen)
                return
            for c in range(start, self.n):
                if self.n - c < self.k - len(chosen):
                    break
                if self._columns_rank(chosen + [c]) == len(chosen) + 1:
                    yield from rec(chosen + [c], c + 1)

        yield from rec([], 0)

    def disjoint_information_sets(self, count: int) -> list[tuple]:
        """Pairwise-disjoint information sets, built greedily: pick one, then
        look for the next among the untouched coordinates, and repeat.  Always
        succeeds for count <= ceil(d/k); larger requests are best-effort."""
        if count < 1:
            raise ValidationError("count must be positive")
        used: set[int] = set()
        sets = []
        for _ in range(count):
            pool = [c for c in range(self.n) if c not in used]
            try:
                s = self.information_set(within=pool)
            except ValidationError:
                raise ValidationError(
                    f"only {len(sets)} disjoint information sets exist along "
                    f"this greedy construction, {count} requested"
                )
            sets.append(s)
            used.update(s)
        return sets

    # -- coordinate restriction and permutations --

    def restrict(self, coords: Sequence[int]) -> Matrix:
        """The k x |coords| column submatrix of the generator."""
        return self.generator.submatrix(col_idx=list(coords))

    def permuted(self, sigma: Sequence[int]) -> "LinearCode":
        """Code with columns rearranged: new column j is old column sigma[j]."""
        _check_permutation(sigma, self.n)
        g = Matrix(self.field, [[row[sigma[j]] for j in range(self.n)] for row in self.generator.rows])
        return LinearCode(self.field, g)

    def is_automorphism(self, sigma: Sequence[int]) -> bool:
        return self.permuted(sigma) == self


def _check_permutation(sigma: Sequence[int], n: int) -> None:
    if len(sigma) != n or sorted(sigma) != list(range(n)):
        raise ValidationError("not a permutation of the coordinate range")


def from_generator(field: Field, g: Matrix) -> LinearCode:
    """Code spanned by the rows of g; stores the RREF row basis."""
    if g.field != field:
        raise ValidationError("field mismatch")
    red, pivots = g.rref()
    if not pivots:
        raise ValidationError("dimension-0 code rejected")
    basis = Matrix(field, red.rows[: len(pivots)])
    return LinearCode(field, basis)


def from_parity_check(field: Field, h: Matrix) -> LinearCode:
    """Code whose codewords are annihilated by the rows of h."""
    if h.field != field:
        raise ValidationError("field mismatch")
    kernel = h.right_kernel()
    if kernel.nrows == 0:
        raise ValidationError("parity-check matrix has full column rank: zero code")
    return LinearCode(field, kernel)


def star_product(c: LinearCode, d: LinearCode) -> LinearCode:
    """Span of all component-wise products of codewords of c and d.

    Pairwise products of basis rows suffice: the component-wise product is
    bilinear, so they span the whole product space.
    """
    if c.field != d.field:
        raise ValidationError("star product needs a common field")
    if c.n != d.n:
        raise ValidationError("star product needs equal lengths")
    f = c.field
    rows = []
    for a in c.generator.rows:
        for b in d.generator.rows:
            rows.append([f.mul(x, y) for x, y in zip(a, b)])
    return from_generator(f, Matrix(f, rows))


def star_vectors(field: Field, u: Sequence[int], v: Sequence[int]) -> tuple:
    if len(u) != len(v):
        raise ValidationError("length mismatch")
    return tuple(field.mul(a, b) for a, b in zip(u, v))


def apply_permutation(code: LinearCode, sigma: Sequence[int]) -> LinearCode:
    return code.permuted(sigma)


def is_automorphism(code: LinearCode, sigma: Sequence[int]) -> bool:
    return code.is_automorphism(sigma)
