"""The executable retrieval protocol over an in-process multi-server store.

Files are b x k matrices; the stack of all files is encoded column-wise
across n simulated servers.  A retrieval of file w draws one random retrieval
codeword per (file, iteration, row) slot, perturbs the target file's block
with the plan's selector rows, collects one scalar response per server per
iteration, and reconstructs the file by projecting responses onto the dual
star code and inverting information-set submatrices.

Servers are modeled by `server_response`, which sees one column and one
query vector and nothing else; `respond` is the client-side batch wrapper
(over GF(2) it evaluates all servers at once via packed rows, which a test
checks against the per-server function).

File indices w are 1-based, matching the CLI; coordinates stay 0-based.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence, Union

from .algebra import Matrix, _pack_bits
from .codes import LinearCode
from .errors import StarPirError, ValidationError
from .plans import RetrievalPlan

Rng = Union[int, random.Random]


def _as_rng(rng: Rng) -> tuple[random.Random, Optional[int]]:
    """Accept a seed or any generator exposing getrandbits/randrange."""
    if isinstance(rng, int):
        return random.Random(rng), rng
    return rng, None


class Database:
    """M files of identical shape b x k over one field."""

    __slots__ = ("field", "files", "rows_per_file", "columns")

    def __init__(self, field, files: Sequence[Matrix]):
        files = tuple(files)
        if not files:
            raise ValidationError("database needs at least one file")
        b, k = files[0].nrows, files[0].ncols
        for f in files:
            if f.field != field:
                raise ValidationError("file field mismatch")
            if (f.nrows, f.ncols) != (b, k):
                raise ValidationError("all files must share one shape")
        self.field = field
        self.files = files
        self.rows_per_file = b
        self.columns = k

    @property
    def file_count(self) -> int:
        return len(self.files)

    def stacked(self) -> Matrix:
        rows = []
        for f in self.files:
            rows.extend(f.rows)
        return Matrix(self.field, rows)


def random_database(
    field, file_count: int, rows_per_file: int, columns: int, rng: Rng = 0
) -> Database:
    rand, _ = _as_rng(rng)
    q = field.q
    files = [
        Matrix(
            field,
            [
                [rand.randrange(q) for _ in range(columns)]
                for _ in range(rows_per_file)
            ],
        )
        for _ in range(file_count)
    ]
    return Database(field, files)


class StorageSystem:
    """Encoded database split column-wise across n simulated servers."""

    __slots__ = ("code", "file_count", "rows_per_file", "columns", "_row_bits")

    def __init__(self, code: LinearCode, file_count: int, rows_per_file: int,
                 columns: Sequence[Sequence[int]], row_bits=None):
        self.code = code
        self.file_count = file_count
        self.rows_per_file = rows_per_file
        self.columns = tuple(tuple(c) for c in columns)
        self._row_bits = row_bits

    @property
    def n(self) -> int:
        return self.code.n

    def server_column(self, j: int) -> tuple:
        return self.columns[j]

    def server_response(self, j: int, query: Sequence[int]) -> int:
        """One server's scalar answer: its query dotted with its column."""
        col = self.columns[j]
        if len(query) != len(col):
            raise ValidationError(
                f"query length {len(query)} does not match column height {len(col)}"
            )
        return self.code.field.dot(query, col)


def store(database: Database, code: LinearCode) -> StorageSystem:
    """Encode the stacked files with the storage code and split by column."""
    if database.field != code.field:
        raise ValidationError("database and code field mismatch")
    if database.columns != code.k:
        raise ValidationError(
            f"files have {database.columns} columns, storage code expects {code.k}"
        )
    x = database.stacked()
    if code.field.q == 2:
        g_bits = [_pack_bits(r) for r in code.generator.rows]
        row_bits = []
        for row in x.rows:
            acc = 0
            for coeff, g in zip(row, g_bits):
                if coeff:
                    acc ^= g
            row_bits.append(acc)
        n = code.n
        columns = [
            tuple((r >> j) & 1 for r in row_bits) for j in range(n)
        ]
        return StorageSystem(
            code, database.file_count, database.rows_per_file, columns, row_bits
        )
    y = x.multiply(code.generator)
    columns = [y.column(j) for j in range(code.n)]
    return StorageSystem(code, database.file_count, database.rows_per_file, columns)


class QueryBatch:
    """All queries of one retrieval, plus the randomness for audit replays.

    `rows[gamma][i*b + beta]` is the vector over servers holding the random
    retrieval codeword for (file i, iteration gamma, row beta), with the
    selector row added into the target file's block.  Over GF(2) the vectors
    are packed ints (bit j = server j); otherwise tuples.
    """

    __slots__ = ("plan", "file_count", "target", "seed", "rows", "codewords")

    def __init__(self, plan, file_count, target, seed, rows, codewords):
        self.plan = plan
        self.file_count = file_count
        self.target = target
        self.seed = seed
        self.rows = rows
        self.codewords = codewords

    def query_vector(self, gamma: int, j: int) -> tuple:
        """The length-(M*b) query sent to server j in iteration gamma."""
        packed = isinstance(self.rows[gamma][0], int)
        if packed:
            return tuple((row >> j) & 1 for row in self.rows[gamma])
        return tuple(row[j] for row in self.rows[gamma])


def make_queries(
    plan: RetrievalPlan, file_count: int, target: int, rng: Rng = 0
) -> QueryBatch:
    """Draw the M*s*b random retrieval codewords and assemble all queries.

    Codewords are uniform over the retrieval code (uniform messages pushed
    through the generator, a bijection onto the code).  Draw order is
    iteration-major, then file, then row.  `target` is 1-based.
    """
    if not 1 <= target <= file_count:
        raise ValidationError(f"target must be in [1, {file_count}]")
    rand, seed = _as_rng(rng)
    d = plan.retrieval
    b = plan.row_count
    w_idx = target - 1
    rows_all = []
    codewords_all = []
    if plan.field.q == 2:
        g_bits = [_pack_bits(r) for r in d.generator.rows]
        dim = d.k
        for gamma in range(plan.iteration_count):
            rows = []
            for _ in range(file_count * b):
                msg = rand.getrandbits(dim)
                cw = 0
                mm = msg
                while mm:
                    low = (mm & -mm).bit_length() - 1
                    cw ^= g_bits[low]
                    mm &= mm - 1
                rows.append(cw)
            codewords_all.append(tuple(rows))
            rows = list(rows)
            for j, beta in plan.assignments[gamma].items():
                rows[w_idx * b + beta] ^= 1 << j
            rows_all.append(tuple(rows))
    else:
        q = plan.field.q
        f = plan.field
        for gamma in range(plan.iteration_count):
            rows = []
            for _ in range(file_count * b):
                msg = tuple(rand.randrange(q) for _ in range(d.k))
                rows.append(d.encode(msg))
            codewords_all.append(tuple(rows))
            rows = [list(r) for r in rows]
            for j, beta in plan.assignments[gamma].items():
                idx = w_idx * b + beta
                rows[idx][j] = f.add(rows[idx][j], 1)
            rows_all.append(tuple(tuple(r) for r in rows))
    return QueryBatch(plan, file_count, target, seed, tuple(rows_all), tuple(codewords_all))


class ResponseBatch:
    """Per-iteration response vectors, one scalar per server."""

    __slots__ = ("plan", "vectors")

    def __init__(self, plan, vectors):
        self.plan = plan
        self.vectors = tuple(tuple(v) for v in vectors)


def respond(storage: StorageSystem, batch: QueryBatch) -> ResponseBatch:
    """Collect every server's answer for every iteration (client-side loop)."""
    plan = batch.plan
    n = plan.n
    if storage.n != n:
        raise ValidationError("storage and plan disagree on server count")
    height = storage.file_count * storage.rows_per_file
    if height != batch.file_count * plan.row_count:
        raise ValidationError("storage shape does not match the query batch")
    vectors = []
    if storage._row_bits is not None and isinstance(batch.rows[0][0], int):
        row_bits = storage._row_bits
        mask = (1 << n) - 1
        for rows in batch.rows:
            acc = 0
            for qrow, yrow in zip(rows, row_bits):
                acc ^= qrow & yrow
            acc &= mask
            vectors.append(tuple((acc >> j) & 1 for j in range(n)))
    else:
        for gamma in range(plan.iteration_count):
            vectors.append(
                tuple(
                    storage.server_response(j, batch.query_vector(gamma, j))
                    for j in range(n)
                )
            )
    return ResponseBatch(plan, vectors)


def _solver_for_iteration(plan: RetrievalPlan, gamma: int) -> tuple:
    key = ("solver", gamma)
    if key not in plan._cache:
        info = plan.containing_information_set(gamma)
        sub = plan.parity.submatrix(col_idx=list(info))
        plan._cache[key] = (info, sub.invert())
    return plan._cache[key]


def _row_decoder(plan: RetrievalPlan, beta: int) -> Matrix:
    s_set = plan.row_sets[beta]
    key = ("rowinv", s_set)
    if key not in plan._cache:
        plan._cache[key] = plan.storage.restrict(s_set).invert()
    return plan._cache[key]


def decode_responses(plan: RetrievalPlan, responses: ResponseBatch) -> Matrix:
    """Reconstruct the target file from the response vectors.

    Each iteration's response vector, projected by the star code's parity
    check, determines the downloaded symbols supported on J_gamma: the
    projection is solved on the information set of the dual star code that
    contains J_gamma.  Afterwards each file row beta holds one encoded symbol
    per server of S_beta, and inverting the storage generator's S_beta
    columns yields the row.
    """
    if responses.plan is not plan:
        raise ValidationError("responses were produced for a different plan")
    f = plan.field
    h = plan.parity
    n = plan.n
    recovered: dict[tuple[int, int], int] = {}
    for gamma, r in enumerate(responses.vectors):
        if len(r) != n:
            raise ValidationError("response vector has wrong length")
        syndrome = [f.dot(row, r) for row in h.rows]
        info, inv = _solver_for_iteration(plan, gamma)
        values = [f.dot(row, syndrome) for row in inv.rows]
        asg = plan.assignments[gamma]
        jset = plan.iteration_sets[gamma]
        for idx, j in enumerate(info):
            if j in asg:
                recovered[(asg[j], j)] = values[idx]
            elif values[idx] != 0:
                raise StarPirError(
                    "internal: nonzero symbol recovered outside the iteration set"
                )
        for j in jset:
            if (asg[j], j) not in recovered:
                raise StarPirError("internal: downloaded symbol missing")
    rows_out = []
    for beta, s_set in enumerate(plan.row_sets):
        y_vals = [recovered[(beta, j)] for j in s_set]
        inv = _row_decoder(plan, beta)
        rows_out.append([f.dot(y_vals, inv.column(t)) for t in range(plan.k)])
    return Matrix(f, rows_out)


def retrieve(
    storage: StorageSystem,
    plan: RetrievalPlan,
    file_count: int,
    target: int,
    rng: Rng = 0,
) -> Matrix:
    """Run one full retrieval: queries, responses, reconstruction."""
    if storage.file_count != file_count:
        raise ValidationError("file count does not match the storage system")
    if storage.rows_per_file != plan.row_count:
        raise ValidationError(
            f"storage has {storage.rows_per_file} rows per file, plan needs "
            f"{plan.row_count}"
        )
    batch = make_queries(plan, file_count, target, rng)
    responses = respond(storage, batch)
    return decode_responses(plan, responses)
