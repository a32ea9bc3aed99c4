"""Exact arithmetic in GF(p) and GF(2^h), and dense matrices over those fields.

Field elements are canonical integer representatives in [0, q): residues for
prime fields, polynomial bit-vectors (bit i = coefficient of x^i) for binary
extensions.  All operations are exact; nothing here ever rounds.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .errors import SingularMatrixError, ValidationError

MAX_FIELD_ORDER = 1 << 16

# Fixed irreducible polynomials over GF(2), one per extension degree.
# Bit i is the coefficient of x^i; bit h is always set.  Shipping fixed
# constants keeps every GF(2^h) result reproducible across runs.
DEFAULT_BINARY_MODULI = {
    2: 0b111,                # x^2 + x + 1
    3: 0b1011,               # x^3 + x + 1
    4: 0b10011,              # x^4 + x + 1
    5: 0b100101,             # x^5 + x^2 + 1
    6: 0b1000011,            # x^6 + x + 1
    7: 0b10001001,           # x^7 + x^3 + 1
    8: 0b100011101,          # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,         # x^9 + x^4 + 1
    10: 0b10000001001,       # x^10 + x^3 + 1
    11: 0b100000000101,      # x^11 + x^2 + 1
    12: 0b1000001010011,     # x^12 + x^6 + x^4 + x + 1
    13: 0b10000000011011,    # x^13 + x^4 + x^3 + x + 1
    14: 0b100010001000011,   # x^14 + x^10 + x^6 + x + 1
    15: 0b1000000000000011,  # x^15 + x + 1
    16: 0b10001000000001011,  # x^16 + x^12 + x^3 + x + 1
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# -- GF(2)[x] helpers for modulus validation --------------------------------

def _poly2_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _poly2_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm and a:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _poly2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _poly2_mod(a, b)
    return a


def _poly2_powmod_x(e: int, m: int) -> int:
    """x^e mod m in GF(2)[x]."""
    result = 1
    base = 2  # the polynomial x
    while e:
        if e & 1:
            result = _poly2_mod(_poly2_mul(result, base), m)
        base = _poly2_mod(_poly2_mul(base, base), m)
        e >>= 1
    return result


def _is_irreducible(modulus: int, h: int) -> bool:
    """Rabin test: x^(2^h) == x mod f, and gcd(x^(2^(h/d)) - x, f) = 1
    for every prime divisor d of h."""
    if modulus.bit_length() - 1 != h:
        return False
    if _poly2_powmod_x(1 << h, modulus) != 2:
        return False
    hh = h
    divisors = set()
    d = 2
    while d * d <= hh:
        if hh % d == 0:
            divisors.add(d)
            while hh % d == 0:
                hh //= d
        d += 1
    if hh > 1:
        divisors.add(hh)
    for d in divisors:
        t = _poly2_powmod_x(1 << (h // d), modulus) ^ 2
        if _poly2_gcd(t, modulus) != 1:
            return False
    return True


class Field:
    """Finite field of order p^h with exact integer-representative arithmetic.

    Prime fields (h = 1) use residue arithmetic mod p.  Binary extensions
    (p = 2, h > 1) use polynomial arithmetic mod an irreducible modulus.
    Instances are immutable and safe to share.
    """

    __slots__ = ("p", "h", "q", "modulus")

    def __init__(self, p: int, h: int = 1, modulus: Optional[int] = None):
        if h < 1:
            raise ValidationError(f"extension degree must be >= 1, got {h}")
        if not _is_prime(p):
            raise ValidationError(f"{p} is not prime")
        if h > 1 and p != 2:
            raise ValidationError(
                "only prime fields and binary extensions are supported"
            )
        q = p**h
        if q > MAX_FIELD_ORDER:
            raise ValidationError(f"field order {q} exceeds cap {MAX_FIELD_ORDER}")
        if h == 1:
            if modulus is not None:
                raise ValidationError("modulus only applies to extension fields")
        else:
            if modulus is None:
                modulus = DEFAULT_BINARY_MODULI[h]
            if not _is_irreducible(modulus, h):
                raise ValidationError(
                    f"modulus {bin(modulus)} is not irreducible of degree {h}"
                )
        self.p = p
        self.h = h
        self.q = q
        self.modulus = modulus

    @property
    def kind(self) -> str:
        return "prime" if self.h == 1 else "binary-extension"

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise ValidationError(f"{a!r} is not an element of {self}")
        return a

    def add(self, a: int, b: int) -> int:
        if self.h == 1:
            return (a + b) % self.p
        return a ^ b

    def sub(self, a: int, b: int) -> int:
        if self.h == 1:
            return (a - b) % self.p
        return a ^ b

    def neg(self, a: int) -> int:
        if self.h == 1:
            return (-a) % self.p
        return a

    def mul(self, a: int, b: int) -> int:
        if self.h == 1:
            return (a * b) % self.p
        out = 0
        m = self.modulus
        hb = 1 << self.h
        while b:
            if b & 1:
                out ^= a
            b >>= 1
            a <<= 1
            if a & hb:
                a ^= m
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        if self.h == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.h == 1:
            return pow(a, e, self.p)
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        if len(u) != len(v):
            raise ValidationError("dot product needs equal lengths")
        acc = 0
        for a, b in zip(u, v):
            acc = self.add(acc, self.mul(a, b))
        return acc

    def elements(self) -> range:
        return range(self.q)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and (self.p, self.h, self.modulus) == (other.p, other.h, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.h, self.modulus))

    def __repr__(self) -> str:
        if self.h == 1:
            return f"GF({self.p})"
        return f"GF(2^{self.h})"


def make_field(p: int, h: int = 1, modulus: Optional[int] = None) -> Field:
    """Construct GF(p^h).  For h > 1 requires p = 2; modulus defaults to the
    shipped irreducible for that degree."""
    return Field(p, h, modulus)


GF2 = make_field(2)

_OPS = {
    "add": lambda f, a, b: f.add(a, b),
    "sub": lambda f, a, b: f.sub(a, b),
    "mul": lambda f, a, b: f.mul(a, b),
    "div": lambda f, a, b: f.div(a, b),
    "neg": lambda f, a: f.neg(a),
    "inv": lambda f, a: f.inv(a),
    "pow": lambda f, a, e: f.pow(a, e),
}


def element_arithmetic(field: Field, op: str, *operands: int) -> int:
    """Dispatch a named field operation on canonical representatives."""
    if op not in _OPS:
        raise ValidationError(f"unknown field operation {op!r}")
    if op != "pow":
        for a in operands:
            field.check(a)
    else:
        field.check(operands[0])
    return _OPS[op](field, *operands)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


class Matrix:
    """Immutable dense matrix over a Field; entries are canonical ints."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(r) for r in rows)
        if rows:
            ncols = len(rows[0])
            for r in rows:
                if len(r) != ncols:
                    raise ValidationError("ragged rows")
                for a in r:
                    field.check(a)
        else:
            ncols = 0
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows

    # -- constructors --

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, [[0] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def row_vector(cls, field: Field, entries: Sequence[int]) -> "Matrix":
        return cls(field, [list(entries)])

    @classmethod
    def column_vector(cls, field: Field, entries: Sequence[int]) -> "Matrix":
        return cls(field, [[e] for e in entries])

    # -- access --

    def get(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.field, self.rows))

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols})"

    # -- basic algebra --

    def transpose(self) -> "Matrix":
        return Matrix(self.field, zip(*self.rows)) if self.nrows else Matrix(
            self.field, []
        )

    def add(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        f = self.field
        return Matrix(
            f,
            [
                [f.add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def scale(self, c: int) -> "Matrix":
        f = self.field
        f.check(c)
        return Matrix(f, [[f.mul(c, a) for a in r] for r in self.rows])

    def multiply(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise ValidationError("field mismatch")
        if self.ncols != other.nrows:
            raise ValidationError(
                f"dimension mismatch: {self.nrows}x{self.ncols} times "
                f"{other.nrows}x{other.ncols}"
            )
        f = self.field
        cols = other.transpose().rows
        if f.q == 2:
            # parity of bitwise AND per (row, col) pair
            packed_cols = [_pack_bits(c) for c in cols]
            out = []
            for r in self.rows:
                pr = _pack_bits(r)
                out.append([(pr & pc).bit_count() & 1 for pc in packed_cols])
            return Matrix(f, out)
        return Matrix(f, [[f.dot(r, c) for c in cols] for r in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return self.multiply(other)

    def submatrix(self, row_idx: Sequence[int] = None, col_idx: Sequence[int] = None) -> "Matrix":
        rset = range(self.nrows) if row_idx is None else row_idx
        cset = range(self.ncols) if col_idx is None else col_idx
        for j in cset:
            if not 0 <= j < self.ncols:
                raise ValidationError(f"column index {j} out of range")
        for i in rset:
            if not 0 <= i < self.nrows:
                raise ValidationError(f"row index {i} out of range")
        return Matrix(self.field, [[self.rows[i][j] for j in cset] for i in rset])

    def stack(self, other: "Matrix") -> "Matrix":
        if self.field != other.field or self.ncols != other.ncols:
            raise ValidationError("stack needs same field and width")
        return Matrix(self.field, self.rows + other.rows)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def _same_shape(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise ValidationError("field mismatch")
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValidationError("shape mismatch")

    # -- elimination --

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns.

        Pivot choice is the first nonzero entry scanning left to right, top
        to bottom, so the output is deterministic.
        """
        f = self.field
        if f.q == 2:
            bits = [_pack_bits(r) for r in self.rows]
            red, pivots = _rref_gf2(bits, self.ncols)
            rows = [_unpack_bits(b, self.ncols) for b in red]
            rows += [[0] * self.ncols] * (self.nrows - len(rows))
            return Matrix(f, rows), tuple(pivots)
        work = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            piv = None
            for i in range(r, self.nrows):
                if work[i][c] != 0:
                    piv = i
                    break
            if piv is None:
                continue
            work[r], work[piv] = work[piv], work[r]
            scale = f.inv(work[r][c])
            if scale != 1:
                work[r] = [f.mul(scale, a) for a in work[r]]
            for i in range(self.nrows):
                if i != r and work[i][c] != 0:
                    factor = work[i][c]
                    work[i] = [
                        f.sub(a, f.mul(factor, b)) for a, b in zip(work[i], work[r])
                    ]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return Matrix(f, work), tuple(pivots)

    def rank(self) -> int:
        if self.field.q == 2:
            return _rank_gf2([_pack_bits(r) for r in self.rows])
        return len(self.rref()[1])

    def right_kernel(self) -> "Matrix":
        """Basis of {v : M v^T = 0}, one row per free column of the RREF."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.ncols) if c not in pivot_set]
        f = self.field
        basis = []
        for fc in free:
            v = [0] * self.ncols
            v[fc] = 1
            for i, pc in enumerate(pivots):
                v[pc] = f.neg(red.rows[i][fc])
            basis.append(v)
        return Matrix(f, basis) if basis else Matrix(f, [[]] * 0)

    def invert(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValidationError("only square matrices invert")
        n = self.nrows
        aug = Matrix(
            self.field,
            [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)],
        )
        red, pivots = aug.rref()
        if tuple(pivots) != tuple(range(n)):
            raise SingularMatrixError("matrix is singular")
        return Matrix(self.field, [r[n:] for r in red.rows])

    def solve(self, rhs: Sequence[int]) -> tuple:
        """Unique solution v of (self) v = rhs for full-column-rank self."""
        if len(rhs) != self.nrows:
            raise ValidationError("rhs length mismatch")
        f = self.field
        aug = Matrix(f, [list(r) + [b] for r, b in zip(self.rows, rhs)])
        red, pivots = aug.rref()
        if any(p == self.ncols for p in pivots):
            raise ValidationError("inconsistent system")
        if len(pivots) != self.ncols:
            raise ValidationError("system is underdetermined")
        v = [0] * self.ncols
        for i, p in enumerate(pivots):
            v[p] = red.rows[i][self.ncols]
        return tuple(v)


# -- GF(2) bitset kernels ----------------------------------------------------


def _pack_bits(row: Sequence[int]) -> int:
    v = 0
    for i, a in enumerate(row):
        if a:
            v |= 1 << i
    return v


def _unpack_bits(v: int, n: int) -> list[int]:
    return [(v >> i) & 1 for i in range(n)]


def _rank_gf2(bits: list[int]) -> int:
    work = list(bits)
    nrows = len(work)
    r = 0
    maxbits = max(bits).bit_length() if bits else 0
    for col in range(maxbits):
        piv = None
        for i in range(r, nrows):
            if (work[i] >> col) & 1:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        wr = work[r]
        for i in range(nrows):
            if i != r and ((work[i] >> col) & 1):
                work[i] ^= wr
        r += 1
        if r == nrows:
            break
    return r


def _rref_gf2(bits: list[int], ncols: int) -> tuple[list[int], list[int]]:
    work = list(bits)
    pivots = []
    r = 0
    nrows = len(work)
    for col in range(ncols):
        piv = None
        for i in range(r, nrows):
            if (work[i] >> col) & 1:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        wr = work[r]
        for i in range(nrows):
            if i != r and ((work[i] >> col) & 1):
                work[i] ^= wr
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return [w for w in work[:r]], pivots


# -- module-level operation aliases (thin wrappers over methods) -------------


def rank(m: Matrix) -> int:
    return m.rank()


def right_kernel(m: Matrix) -> Matrix:
    return m.right_kernel()


def invert(m: Matrix) -> Matrix:
    return m.invert()


def multiply(a: Matrix, b: Matrix) -> Matrix:
    return a.multiply(b)


# ---------------------------------------------------------------------------
# Text format: first line "q n_rows n_cols", then one line per row of
# whitespace-separated canonical representatives.
# ---------------------------------------------------------------------------


def field_of_order(q: int) -> Field:
    """Field for a stated order: prime q, or 2^h with the default modulus."""
    if _is_prime(q):
        return make_field(q)
    h = q.bit_length() - 1
    if q == 1 << h:
        return make_field(2, h)
    raise ValidationError(f"unsupported field order {q}")


def format_matrix(m: Matrix) -> str:
    lines = [f"{m.field.q} {m.nrows} {m.ncols}"]
    for r in m.rows:
        lines.append(" ".join(str(a) for a in r))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, field: Optional[Field] = None) -> Matrix:
    tokens = text.split()
    if len(tokens) < 3:
        raise ValidationError("matrix text too short")
    q, nrows, ncols = (int(t) for t in tokens[:3])
    if field is None:
        field = field_of_order(q)
    elif field.q != q:
        raise ValidationError(f"matrix order {q} does not match field {field}")
    body = tokens[3:]
    if len(body) != nrows * ncols:
        raise ValidationError(
            f"expected {nrows * ncols} entries, got {len(body)}"
        )
    it = iter(int(t) for t in body)
    rows = [[next(it) for _ in range(ncols)] for _ in range(nrows)]
    return Matrix(field, rows)
