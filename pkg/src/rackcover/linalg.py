"""Exact sparse linear algebra over Q(zeta_N), plus integer Smith normal form.

Matrices are stored sparsely (no zero entries, one entry per position) and
all elimination runs in exact field arithmetic.  Pivot columns are chosen
sparsity-greedily (fewest nonzeros first) because the matrices arising from
quantum symmetrizers are monomial-sparse.  Vectors are dicts index -> scalar.

Ranks reported by this module always come from exact elimination; modular
shortcuts are deliberately not used.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

from .cyclotomic import CycScalar
from .errors import BoundExceededError, InternalCheckError, NonSquareError

Vector = dict[int, CycScalar]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class ExactMatrix:
    """Sparse matrix over one cyclotomic field Q(zeta_N).

    Entries are normalized so that every stored scalar shares the matrix
    order and no stored scalar is zero.
    """

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        order = 1
        cleaned: dict[tuple[int, int], CycScalar] = {}
        for (r, c), value in (entries or {}).items():
            if not 0 <= r < rows or not 0 <= c < cols:
                raise ValueError(f"entry ({r},{c}) outside {rows}x{cols}")
            if isinstance(value, (int, Fraction)):
                value = CycScalar.rational(value)
            if value.is_zero:
                continue
            order = _lcm(order, value.order)
            cleaned[(r, c)] = value
        self.order = order
        self.entries = {
            pos: value.lift(order) for pos, value in cleaned.items()
        }

    @classmethod
    def from_dense(cls, data) -> "ExactMatrix":
        entries = {}
        for r, row in enumerate(data):
            for c, value in enumerate(row):
                entries[(r, c)] = value
        return cls(len(data), len(data[0]) if data else 0, entries)

    def row_dicts(self) -> list[Vector]:
        rows: list[Vector] = [dict() for _ in range(self.rows)]
        for (r, c), value in sorted(self.entries.items()):
            rows[r][c] = value
        return rows

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.cols,
            self.rows,
            {(c, r): v for (r, c), v in self.entries.items()},
        )

    def apply(self, vector: Vector) -> Vector:
        """Matrix times column vector, sparse."""
        out: Vector = {}
        for (r, c), value in self.entries.items():
            coeff = vector.get(c)
            if coeff is not None:
                acc = out.get(r)
                out[r] = value * coeff if acc is None else acc + value * coeff
        return {r: v for r, v in out.items() if not v.is_zero}

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def _eliminate(rows: list[Vector]) -> list[tuple[int, Vector]]:
    """Sparse Gauss-Jordan. Returns [(pivot_col, reduced_row)] with every
    pivot column appearing in exactly its own row, pivot coefficient 1.

    Pivot column choice: fewest nonzeros among active rows, ties by column
    index; pivot row: fewest nonzeros, ties by original position.  This is
    deterministic, so results do not depend on dict iteration quirks.
    """
    active = [dict(r) for r in rows if r]
    pivots: list[tuple[int, Vector]] = []
    while active:
        counts: dict[int, int] = {}
        for row in active:
            for col in row:
                counts[col] = counts.get(col, 0) + 1
        col = min(counts, key=lambda c: (counts[c], c))
        best_i = min(
            (i for i, row in enumerate(active) if col in row),
            key=lambda i: (len(active[i]), i),
        )
        pivot = active.pop(best_i)
        inv = pivot[col].inverse()
        pivot = {c: v * inv for c, v in pivot.items()}
        remaining = []
        for row in active:
            coeff = row.get(col)
            if coeff is None:
                remaining.append(row)
                continue
            new_row = dict(row)
            del new_row[col]
            for c, v in pivot.items():
                if c == col:
                    continue
                acc = new_row.get(c)
                val = -coeff * v if acc is None else acc - coeff * v
                if val.is_zero:
                    new_row.pop(c, None)
                else:
                    new_row[c] = val
            if new_row:
                remaining.append(new_row)
        active = remaining
        # back-substitute into already-found pivot rows
        for k, (pcol, prow) in enumerate(pivots):
            coeff = prow.get(col)
            if coeff is None:
                continue
            new_row = dict(prow)
            del new_row[col]
            for c, v in pivot.items():
                if c == col:
                    continue
                acc = new_row.get(c)
                val = -coeff * v if acc is None else acc - coeff * v
                if val.is_zero:
                    new_row.pop(c, None)
                else:
                    new_row[c] = val
            pivots[k] = (pcol, new_row)
        pivots.append((col, pivot))
    pivots.sort(key=lambda t: t[0])
    return pivots


def rank(matrix: ExactMatrix) -> int:
    return len(_eliminate(matrix.row_dicts()))


def rank_kernel(matrix: ExactMatrix) -> tuple[int, list[Vector]]:
    """Exact rank and a basis of the right kernel {v : A v = 0}.

    The returned basis vectors are verified against the matrix; a failure
    here is a bug, not bad input.
    """
    pivots = _eliminate(matrix.row_dicts())
    pivot_cols = {col for col, _ in pivots}
    kernel: list[Vector] = []
    for free in range(matrix.cols):
        if free in pivot_cols:
            continue
        vec: Vector = {free: CycScalar.one(matrix.order)}
        for col, row in pivots:
            coeff = row.get(free)
            if coeff is not None:
                vec[col] = -coeff
        kernel.append(vec)
    for vec in kernel:
        if matrix.apply(vec):
            raise InternalCheckError("kernel vector not annihilated")
    if len(pivots) + len(kernel) != matrix.cols:
        raise InternalCheckError("rank + nullity != cols")
    return len(pivots), kernel


def determinant(matrix: ExactMatrix) -> CycScalar:
    """Exact determinant by fraction Gaussian elimination with row swaps."""
    if matrix.rows != matrix.cols:
        raise NonSquareError(f"{matrix.rows}x{matrix.cols} matrix")
    n = matrix.rows
    if n == 0:
        return CycScalar.one()
    rows = matrix.row_dicts()
    sign = 1
    det = CycScalar.one(matrix.order)
    for col in range(n):
        pivot_at = next(
            (i for i in range(col, n) if rows[i].get(col)), None
        )
        if pivot_at is None:
            return CycScalar.zero(matrix.order)
        if pivot_at != col:
            rows[col], rows[pivot_at] = rows[pivot_at], rows[col]
            sign = -sign
        pivot = rows[col]
        det = det * pivot[col]
        inv = pivot[col].inverse()
        for i in range(col + 1, n):
            coeff = rows[i].get(col)
            if coeff is None:
                continue
            factor = coeff * inv
            new_row = dict(rows[i])
            del new_row[col]
            for c, v in pivot.items():
                if c <= col:
                    continue
                acc = new_row.get(c)
                val = -factor * v if acc is None else acc - factor * v
                if val.is_zero:
                    new_row.pop(c, None)
                else:
                    new_row[c] = val
            rows[i] = new_row
    return det * sign if sign < 0 else det


def row_space_basis(rows: list[Vector]) -> list[tuple[int, Vector]]:
    """Reduced basis of the span of the given vectors (row-reduced form)."""
    return _eliminate(rows)


class IncrementalSpan:
    """Grow a subspace one vector at a time, remembering which of the
    inserted vectors were kept as a basis.

    Feeding vectors in a fixed order yields the lexicographically-first
    maximal independent subset, which is what the graded-basis choices in
    the higher modules rely on.  `coordinates` expresses a member of the
    span in terms of the kept vectors exactly.
    """

    def __init__(self):
        self._pivots: list[tuple[int, Vector, dict[int, CycScalar]]] = []
        self.kept: list[int] = []

    @property
    def dim(self) -> int:
        return len(self._pivots)

    def _reduce(self, vector: Vector):
        residual = dict(vector)
        combo: dict[int, CycScalar] = {}
        for col, row, expr in self._pivots:
            coeff = residual.get(col)
            if coeff is None:
                continue
            del residual[col]
            for c, v in row.items():
                if c == col:
                    continue
                acc = residual.get(c)
                val = -coeff * v if acc is None else acc - coeff * v
                if val.is_zero:
                    residual.pop(c, None)
                else:
                    residual[c] = val
            for tag, v in expr.items():
                acc = combo.get(tag)
                val = coeff * v if acc is None else acc + coeff * v
                if val.is_zero:
                    combo.pop(tag, None)
                else:
                    combo[tag] = val
        return residual, combo

    def add(self, vector: Vector, tag: int) -> bool:
        """Insert; returns True when the vector enlarged the span."""
        residual, combo = self._reduce(vector)
        if not residual:
            return False
        col = min(residual)
        inv = residual[col].inverse()
        row = {c: v * inv for c, v in residual.items()}
        # expression of the new pivot row in terms of kept vectors:
        # row = inv * (vector - sum combo[tag'] * kept_tag')
        expr = {tag: inv}
        for t, v in combo.items():
            expr[t] = -inv * v
        self._pivots.append((col, row, expr))
        self.kept.append(tag)
        return True

    def contains(self, vector: Vector) -> bool:
        residual, _ = self._reduce(vector)
        return not residual

    def coordinates(self, vector: Vector) -> dict[int, CycScalar] | None:
        """Coefficients over the kept tags, or None if not in the span."""
        residual, combo = self._reduce(vector)
        if residual:
            return None
        return combo


# ---------------------------------------------------------------------------
# Smith normal form over the integers
# ---------------------------------------------------------------------------


class SNFResult:
    """diag: nonzero invariant factors d_1 | d_2 | ... | d_r, all positive.

    U and V are unimodular with U * M * V = D (D the diagonal matrix padded
    with zeros to the input shape); free_rank = cols - r.
    """

    def __init__(self, diag, free_rank, U, V, shape):
        self.diag = tuple(diag)
        self.free_rank = free_rank
        self.U = U
        self.V = V
        self.shape = shape

    def __repr__(self):
        return f"SNFResult(diag={self.diag}, free_rank={self.free_rank})"


def smith_normal_form(matrix: list[list[int]], cols: int | None = None) -> SNFResult:
    """Smith normal form of an integer matrix (list of rows).

    `cols` is needed only when the matrix has no rows (so the generator
    count cannot be inferred).  The output divisibility chain is
    normalized: d_1 | d_2 | ... | d_r.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else (cols or 0)
    if matrix and any(len(row) != ncols for row in matrix):
        raise ValueError("ragged integer matrix")
    a = [list(map(int, row)) for row in matrix]
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        for k in range(ncols):
            a[i][k] -= q * a[j][k]
        for k in range(nrows):
            u[i][k] -= q * u[j][k]

    def col_op(i, j, q):  # col_i -= q * col_j
        for k in range(nrows):
            a[k][i] -= q * a[k][j]
        for k in range(ncols):
            v[k][i] -= q * v[k][j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for k in range(nrows):
            a[k][i], a[k][j] = a[k][j], a[k][i]
        for k in range(ncols):
            v[k][i], v[k][j] = v[k][j], v[k][i]

    def row_negate(i):
        for k in range(ncols):
            a[i][k] = -a[i][k]
        for k in range(nrows):
            u[i][k] = -u[i][k]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        # locate the smallest nonzero entry in the trailing block
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j]:
                    key = (abs(a[i][j]), i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        # clear row t and column t
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        col_swap(t, j)
                        dirty = True
        # make the pivot divide the whole trailing block
        pivot = a[t][t]
        offender = next(
            (
                (i, j)
                for i in range(t + 1, nrows)
                for j in range(t + 1, ncols)
                if a[i][j] % pivot
            ),
            None,
        )
        if offender is not None:
            row_op(t, offender[0], -1)  # row_t += row_i; reruns the clearing
            continue
        if a[t][t] < 0:
            row_negate(t)
        t += 1

    diag = [a[i][i] for i in range(t)]
    # the divisibility chain is automatic with the full-pivot strategy, but
    # verify rather than trust it
    for i in range(1, len(diag)):
        if diag[i] % diag[i - 1]:
            raise InternalCheckError("SNF divisibility chain broken")
    result = SNFResult(diag, ncols - len(diag), u, v, (nrows, ncols))
    _check_snf(matrix, result)
    return result


def _check_snf(matrix, result):
    nrows, ncols = result.shape
    for i in range(nrows):
        for j in range(ncols):
            total = sum(
                result.U[i][k] * matrix[k][m] * result.V[m][j]
                for k in range(nrows)
                for m in range(ncols)
            )
            want = result.diag[i] if i == j and i < len(result.diag) else 0
            if total != want:
                raise InternalCheckError("U*M*V != D in Smith normal form")


def abelian_invariants(matrix: list[list[int]], ngens: int) -> tuple[int, tuple[int, ...]]:
    """(free rank, torsion invariants) of Z^ngens modulo the rows of `matrix`."""
    snf = smith_normal_form(matrix, cols=ngens)
    torsion = tuple(d for d in snf.diag if d > 1)
    return snf.free_rank, torsion


# ---------------------------------------------------------------------------
# Support-minimal vectors of a subspace
# ---------------------------------------------------------------------------


def support_minimal_vectors(
    spanning: list[Vector],
    ambient: int,
    max_ambient: int = 64,
    max_subsets: int = 500_000,
) -> tuple[list[tuple[tuple[int, ...], Vector]], set[int]]:
    """All inclusion-minimal supports (size >= 2) of nonzero vectors in
    span(spanning), plus the set of coordinates i with e_i in the span.

    Each returned support comes with its vector, which is unique up to a
    scalar; it is normalized so its first nonzero coordinate is 1.

    Two exact strategies, chosen by dimension k of the span:
    * small k: every minimal-support vector is cut out (up to scalar) by
      some k-1 vanishing-coordinate constraints of full rank, so the
      C(ambient, k-1) constraint subsets enumerate a candidate vector set
      whose inclusion-minimal supports are exactly the answer;
    * large k: breadth-first search over supports by size, pruning
      supersets of found supports; minimal supports never exceed
      ambient - k + 1 coordinates, which caps this search.
    """
    if ambient > max_ambient:
        raise BoundExceededError(
            f"ambient dimension {ambient} exceeds bound {max_ambient}"
        )
    pivots = _eliminate(spanning)
    basis = [row for _, row in pivots]
    dim = len(basis)
    if dim == 0:
        return [], set()

    # coordinates whose unit vector lies in the span
    unit_coords: set[int] = set()
    for i in range(ambient):
        residual: Vector = {i: CycScalar.one()}
        for col, row in pivots:
            coeff = residual.get(col)
            if coeff is None:
                continue
            del residual[col]
            for c, v in row.items():
                if c == col:
                    continue
                acc = residual.get(c)
                val = -coeff * v if acc is None else acc - coeff * v
                if val.is_zero:
                    residual.pop(c, None)
                else:
                    residual[c] = val
        if not residual:
            unit_coords.add(i)

    bfs_cost = _subset_count(ambient, ambient - dim + 1)
    cut_cost = _choose(ambient, dim - 1)
    if min(bfs_cost, cut_cost) > max_subsets:
        raise BoundExceededError(
            f"support search needs {min(bfs_cost, cut_cost)} subsets, "
            f"bound is {max_subsets}"
        )
    if cut_cost <= bfs_cost:
        found = _minimal_by_constraint_cuts(basis, ambient, unit_coords)
    else:
        found = _minimal_by_size_search(basis, ambient, unit_coords, dim)
    found.sort(key=lambda t: (len(t[0]), t[0]))
    return found, unit_coords


def _choose(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def _subset_count(n: int, max_size: int) -> int:
    return sum(_choose(n, s) for s in range(2, max_size + 1))


def _minimal_by_size_search(basis, ambient, unit_coords, dim):
    candidates = [i for i in range(ambient) if i not in unit_coords]
    found: list[tuple[tuple[int, ...], Vector]] = []
    max_size = min(len(candidates), ambient - dim + 1)
    for size in range(2, max_size + 1):
        for subset in combinations(candidates, size):
            sset = set(subset)
            if any(set(sup) <= sset for sup, _ in found):
                continue
            vec = _vector_supported_on(basis, sset)
            if vec is None:
                continue
            if set(vec) != sset:
                raise InternalCheckError(
                    "support search produced a smaller support than tested"
                )
            found.append((subset, vec))
    return found


def _minimal_by_constraint_cuts(basis, ambient, unit_coords):
    """Candidate vectors from all (dim-1)-subsets of vanishing constraints
    whose cut is one-dimensional; inclusion-minimal candidate supports are
    exactly the minimal supports."""
    dim = len(basis)
    candidates: dict[frozenset, Vector] = {}
    for constraint in combinations(range(ambient), dim - 1):
        entries = {}
        for j, vec in enumerate(basis):
            for r, coord in enumerate(constraint):
                value = vec.get(coord)
                if value is not None:
                    entries[(r, j)] = value
        matrix = ExactMatrix(dim - 1, dim, entries)
        rank, kernel = rank_kernel(matrix)
        if len(kernel) != 1:
            continue
        coeffs = kernel[0]
        out: Vector = {}
        for j, weight in coeffs.items():
            for coord, value in basis[j].items():
                acc = out.get(coord)
                val = weight * value if acc is None else acc + weight * value
                if val.is_zero:
                    out.pop(coord, None)
                else:
                    out[coord] = val
        if not out:
            continue
        support = frozenset(out)
        if len(support) < 2 or support & unit_coords:
            continue
        if support not in candidates:
            lead = out[min(out)]
            inv = lead.inverse()
            candidates[support] = {c: v * inv for c, v in sorted(out.items())}
    supports = list(candidates)
    minimal = [
        s for s in supports if not any(t < s for t in supports if t != s)
    ]
    return [(tuple(sorted(s)), candidates[s]) for s in minimal]


def _vector_supported_on(basis: list[Vector], support: set[int]) -> Vector | None:
    """A nonzero vector of span(basis) supported inside `support`, or None.

    When one exists and the support is inclusion-minimal, the solution
    space is one-dimensional.
    """
    entries = {}
    outside_rows: dict[int, int] = {}
    for j, vec in enumerate(basis):
        for coord, value in vec.items():
            if coord in support:
                continue
            r = outside_rows.setdefault(coord, len(outside_rows))
            entries[(r, j)] = value
    constraint = ExactMatrix(len(outside_rows), len(basis), entries)
    _, kernel = rank_kernel(constraint)
    if not kernel:
        return None
    coeffs = kernel[0]
    out: Vector = {}
    for j, weight in coeffs.items():
        for coord, value in basis[j].items():
            acc = out.get(coord)
            val = weight * value if acc is None else acc + weight * value
            if val.is_zero:
                out.pop(coord, None)
            else:
                out[coord] = val
    if not out:
        return None
    lead = out[min(out)]
    inv = lead.inverse()
    return {c: v * inv for c, v in sorted(out.items())}
