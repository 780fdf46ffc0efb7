"""Graded components of the Nichols algebra of a braided rack space.

The degree-n component is the image of the quantum symmetrizer: the sum,
over all permutations of n letters, of the braid-group lifts obtained by
replacing each letter s_i of a reduced word with the braiding acting on
tensor slots (i-1, i).  Lifts are well defined because the braiding
satisfies the braid equation (checked at construction of BraidedSpace)
and reduced words of the same permutation give equal operators.

Everything acts monomially on words (tuples of rack elements), so
operators are stored as index permutations plus root-of-unity exponents;
exact field arithmetic only enters when columns are assembled and
eliminated.

Higher machinery built on the graded pieces:

* support-minimal elements of each graded component, computed per
  "block" (words connected by single braid-generator moves), since a
  minimal element cannot straddle blocks;
* group relators read off minimal supports, giving a presentation of the
  degree-limited covering group on the rack's generators;
* a soundness check that every minimal element is homogeneous for the two
  computable invariants of the enveloping group (inner permutation image
  and abelianization image).  The word problem in the enveloping group is
  not solved; this check is sound but deliberately incomplete.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .braiding import BraidedSpace, quadratic_analysis
from .cyclotomic import CycScalar
from .errors import BoundExceededError, InternalCheckError
from .groups import identity_perm, perm_compose
from .linalg import ExactMatrix, IncrementalSpan, rank_kernel, support_minimal_vectors
from .presentations import Presentation, Word, free_reduce

RackWord = tuple[int, ...]


# ---------------------------------------------------------------------------
# Permutations and reduced words
# ---------------------------------------------------------------------------


def inversion_count(perm) -> int:
    return sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )


def matsumoto_lift(perm) -> tuple[int, ...]:
    """The canonical reduced word of a permutation: letters are 1-based
    (letter i is the adjacent swap of slots i-1 and i), chosen greedily by
    the smallest left descent, which yields the lexicographically smallest
    reduced word.  Its length is the inversion count."""
    perm = tuple(perm)
    n = len(perm)
    positions = [0] * n
    for pos, val in enumerate(perm):
        positions[val] = pos
    current = list(perm)
    pos = positions
    word = []
    while True:
        descent = next(
            (i for i in range(n - 1) if pos[i] > pos[i + 1]), None
        )
        if descent is None:
            break
        word.append(descent + 1)
        # multiply by the swap of values descent, descent + 1 on the left
        pa, pb = pos[descent], pos[descent + 1]
        current[pa], current[pb] = current[pb], current[pa]
        pos[descent], pos[descent + 1] = pb, pa
    return tuple(word)


def compose_word(word, n) -> tuple[int, ...]:
    """The permutation s_{i1} ... s_{ik} for a 1-based letter word."""
    acc = identity_perm(n)
    for letter in word:
        i = letter - 1
        swap = list(range(n))
        swap[i], swap[i + 1] = i + 1, i
        acc = perm_compose(acc, tuple(swap))
    return acc


def shuffle_perms(m: int, n: int) -> list[tuple[int, ...]]:
    """Minimal-length representatives of the cosets sigma * (S_m x S_n):
    permutations increasing on the first m and the last n positions."""
    total = m + n
    out = []
    for first_values in combinations(range(total), m):
        rest = [v for v in range(total) if v not in first_values]
        out.append(tuple(list(first_values) + rest))
    return out


# ---------------------------------------------------------------------------
# Monomial operators on tensor words
# ---------------------------------------------------------------------------


class TensorWords:
    """Word/index bookkeeping plus braid-generator tables for one degree."""

    def __init__(self, space: BraidedSpace, degree: int):
        self.space = space
        self.degree = degree
        self.d = space.dim
        self.size = self.d**degree if degree > 0 else 1
        self._tables: list[tuple[list[int], list[int]]] | None = None

    def index(self, word: RackWord) -> int:
        idx = 0
        for x in word:
            idx = idx * self.d + x
        return idx

    def word(self, index: int) -> RackWord:
        out = []
        for _ in range(self.degree):
            index, x = divmod(index, self.d)
            out.append(x)
        return tuple(reversed(out))

    def generator_tables(self) -> list[tuple[list[int], list[int]]]:
        """For each letter i = 1..degree-1, the index permutation and the
        exponent increment of the braiding on slots (i-1, i)."""
        if self._tables is not None:
            return self._tables
        space, d, n = self.space, self.d, self.degree
        op = space.rack.op
        exp = space.cocycle.exponents
        tables = []
        for i in range(1, n):
            perm = [0] * self.size
            delta = [0] * self.size
            for idx in range(self.size):
                w = self.word(idx)
                x, y = w[i - 1], w[i]
                new = w[: i - 1] + (op(x, y), x) + w[i + 1 :]
                perm[idx] = self.index(new)
                delta[idx] = exp[x][y]
            tables.append((perm, delta))
        self._tables = tables
        return tables

    def apply_word(self, letters, idx: int) -> tuple[int, int]:
        """Walk e_idx through the braid word (rightmost letter first);
        returns (image index, scalar exponent)."""
        tables = self.generator_tables()
        e = 0
        for letter in reversed(letters):
            perm, delta = tables[letter - 1]
            e += delta[idx]
            idx = perm[idx]
        return idx, e

    def apply_word_to_vector(self, letters, vector: dict) -> dict:
        """Apply a braid-word lift to a sparse vector over word indices."""
        N = self.space.cocycle.order
        out: dict[int, CycScalar] = {}
        for idx, coeff in vector.items():
            tgt, e = self.apply_word(letters, idx)
            term = coeff * CycScalar.root_of_unity(N, e)
            acc = out.get(tgt)
            val = term if acc is None else acc + term
            if val.is_zero:
                out.pop(tgt, None)
            else:
                out[tgt] = val
        return out


def symmetrizer_matrix(
    space: BraidedSpace, degree: int, max_cols: int = 10**4
) -> ExactMatrix:
    """The quantum symmetrizer on the degree-n tensor power, assembled as a
    sparse exact matrix.  Entries are sums of roots of unity, accumulated
    as exponent counts and converted once at the end."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if degree == 0:
        return ExactMatrix(1, 1, {(0, 0): CycScalar.one()})
    words = TensorWords(space, degree)
    if words.size > max_cols:
        raise BoundExceededError(
            f"degree {degree} needs {words.size} columns, bound is {max_cols}"
        )
    if degree == 1:
        return ExactMatrix(
            words.size,
            words.size,
            {(i, i): CycScalar.one() for i in range(words.size)},
        )
    N = space.cocycle.order
    counts: dict[tuple[int, int], list[int]] = {}
    for sigma in permutations(range(degree)):
        letters = matsumoto_lift(sigma)
        for idx in range(words.size):
            tgt, e = words.apply_word(letters, idx)
            key = (tgt, idx)
            slot = counts.get(key)
            if slot is None:
                slot = [0] * N
                counts[key] = slot
            slot[e % N] += 1
    entries = {
        key: CycScalar.from_root_counts(N, slot) for key, slot in counts.items()
    }
    return ExactMatrix(words.size, words.size, entries)


def symmetrizer_rank(
    space: BraidedSpace, degree: int, max_cols: int = 10**4
) -> int:
    """dim of the degree-n graded component: exact rank of the symmetrizer."""
    if degree == 0:
        return 1
    if degree == 1:
        return space.dim
    rank, _ = rank_kernel(symmetrizer_matrix(space, degree, max_cols))
    return rank


@dataclass(frozen=True)
class GradedReport:
    """Graded dimensions up to a cutoff.

    computed[n] is False when the dimension was inferred from an earlier
    zero (the graded algebra is generated in degree one, so a zero
    component forces all higher ones to vanish) rather than eliminated
    directly.
    """

    dims: tuple[int, ...]
    kernel_dims: tuple[int, ...]
    cutoff: int
    terminated_at: int | None
    computed: tuple[bool, ...]

    @property
    def total(self) -> int:
        return sum(self.dims)

    def to_json(self) -> dict:
        return {
            "cutoff": self.cutoff,
            "dims": list(self.dims),
            "kernel_dims": list(self.kernel_dims),
            "terminated_at": self.terminated_at,
            "computed": list(self.computed),
            "total_up_to_cutoff": self.total,
        }


def hilbert_series(
    space: BraidedSpace, cutoff: int, max_cols: int = 10**4
) -> GradedReport:
    """Graded dimensions for degrees 0..cutoff.

    Once a degree comes out zero, the remaining degrees are reported as
    zero without elimination.  If a degree exceeds the column bound,
    BoundExceededError carries the partial report."""
    dims: list[int] = []
    kernel_dims: list[int] = []
    computed: list[bool] = []
    terminated_at = None
    for n in range(cutoff + 1):
        if terminated_at is not None:
            dims.append(0)
            kernel_dims.append(space.dim**n)
            computed.append(False)
            continue
        try:
            rank = symmetrizer_rank(space, n, max_cols)
        except BoundExceededError as err:
            partial = GradedReport(
                tuple(dims), tuple(kernel_dims), n - 1, terminated_at, tuple(computed)
            )
            raise BoundExceededError(str(err), partial=partial) from None
        size = space.dim**n if n > 0 else 1
        dims.append(rank)
        kernel_dims.append(size - rank)
        computed.append(True)
        if rank == 0:
            terminated_at = n
    report = GradedReport(
        tuple(dims), tuple(kernel_dims), cutoff, terminated_at, tuple(computed)
    )
    _check_graded_report(space, report)
    return report


def _check_graded_report(space: BraidedSpace, report: GradedReport):
    if report.cutoff >= 0 and report.dims[0] != 1:
        raise InternalCheckError("degree-0 dimension must be 1")
    if report.cutoff >= 1 and report.dims[1] != space.dim:
        raise InternalCheckError("degree-1 dimension must be dim V")
    if report.cutoff >= 2:
        expected = quadratic_analysis(space).dim2
        if report.dims[2] != expected:
            raise InternalCheckError(
                f"degree-2 dimension {report.dims[2]} != d^2 - #QR = {expected}"
            )


# ---------------------------------------------------------------------------
# Graded image bases
# ---------------------------------------------------------------------------


class GradedBasis:
    """The lexicographically-first maximal independent subset of symmetrized
    word images in one degree; provides exact coordinates in that basis."""

    def __init__(self, space: BraidedSpace, degree: int, max_cols: int = 10**4):
        self.space = space
        self.degree = degree
        self.words = TensorWords(space, degree)
        self.span = IncrementalSpan()
        self.vectors: list[dict[int, CycScalar]] = []
        self.tags: list[int] = []
        if degree == 0:
            self.span.add({0: CycScalar.one()}, tag=0)
            self.vectors.append({0: CycScalar.one()})
            self.tags.append(0)
            return
        matrix = symmetrizer_matrix(space, degree, max_cols)
        columns: dict[int, dict[int, CycScalar]] = {}
        for (r, c), v in matrix.entries.items():
            columns.setdefault(c, {})[r] = v
        for c in range(matrix.cols):
            col = columns.get(c)
            if not col:
                continue
            if self.span.add(dict(col), tag=c):
                self.vectors.append(dict(col))
                self.tags.append(c)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def coordinates(self, vector: dict[int, CycScalar]) -> list[CycScalar] | None:
        coords = self.span.coordinates(vector)
        if coords is None:
            return None
        out = [CycScalar.zero() for _ in self.tags]
        position = {tag: i for i, tag in enumerate(self.tags)}
        for tag, value in coords.items():
            out[position[tag]] = value
        return out


# ---------------------------------------------------------------------------
# Minimal elements, relators, grading consistency
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinimalElement:
    """A support-minimal element of one graded component: its words and the
    representative vector (unique up to scalar, leading coefficient 1)."""

    degree: int
    words: tuple[RackWord, ...]
    vector: tuple[tuple[RackWord, CycScalar], ...]

    def coefficients(self) -> dict[RackWord, CycScalar]:
        return dict(self.vector)


def word_blocks(space: BraidedSpace, degree: int) -> list[list[int]]:
    """Partition of word indices under single braid-generator moves."""
    words = TensorWords(space, degree)
    parent = list(range(words.size))

    def find(i):
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    for perm, _ in words.generator_tables():
        for idx, tgt in enumerate(perm):
            a, b = find(idx), find(tgt)
            if a != b:
                parent[max(a, b)] = min(a, b)
    blocks: dict[int, list[int]] = {}
    for idx in range(words.size):
        blocks.setdefault(find(idx), []).append(idx)
    return [blocks[key] for key in sorted(blocks)]


def minimal_elements(
    space: BraidedSpace,
    degree: int,
    max_cols: int = 10**4,
    max_support_ambient: int = 64,
) -> list[MinimalElement]:
    """Support-minimal elements of the degree-n component, blockwise."""
    if degree < 1:
        return []
    words = TensorWords(space, degree)
    matrix = symmetrizer_matrix(space, degree, max_cols)
    columns: dict[int, dict[int, CycScalar]] = {}
    for (r, c), v in matrix.entries.items():
        columns.setdefault(c, {})[r] = v
    out: list[MinimalElement] = []
    for block in word_blocks(space, degree):
        local = {idx: pos for pos, idx in enumerate(block)}
        spanning = []
        for idx in block:
            col = columns.get(idx)
            if col:
                spanning.append({local[r]: v for r, v in col.items()})
        if not spanning:
            continue
        found, _units = support_minimal_vectors(
            spanning, len(block), max_ambient=max_support_ambient
        )
        for support, rep in found:
            support_words = tuple(words.word(block[i]) for i in support)
            vector = tuple(
                (words.word(block[i]), rep[i]) for i in sorted(rep)
            )
            out.append(MinimalElement(degree, support_words, vector))
    out.sort(key=lambda m: m.words)
    return out


@dataclass(frozen=True)
class RelatorSet:
    """Word pairs p ~ q read off the minimal supports of one degree, plus
    the derived free-group relators p q^-1."""

    degree: int
    pairs: tuple[tuple[RackWord, RackWord], ...]
    relators: tuple[Word, ...]

    def to_json(self, labels=None) -> dict:
        from .presentations import default_labels, format_word

        labels = labels or default_labels(
            max((max(map(abs, r)) for r in self.relators), default=1)
        )
        return {
            "degree": self.degree,
            "pairs": [[list(p), list(q)] for p, q in self.pairs],
            "relators": [format_word(r, labels) for r in self.relators],
        }


@dataclass(frozen=True)
class CoveringRelators:
    per_degree: tuple[RelatorSet, ...]
    presentation: Presentation
    max_degree: int

    def to_json(self) -> dict:
        labels = self.presentation.label_list()
        return {
            "max_degree": self.max_degree,
            "per_degree": [r.to_json(labels) for r in self.per_degree],
            "presentation": self.presentation.to_json(),
        }


def _pair_to_relator(p: RackWord, q: RackWord) -> Word:
    forward = tuple(x + 1 for x in p)
    backward = tuple(-(x + 1) for x in reversed(q))
    return free_reduce(forward + backward)


def covering_relators(
    space: BraidedSpace,
    max_degree: int,
    max_cols: int = 10**4,
    max_support_ambient: int = 64,
) -> CoveringRelators:
    """Extract group relators from minimal elements up to max_degree and
    assemble the presentation: the free group on the rack's elements
    modulo one relator p q^-1 per related word pair.

    Word pairs are the first support word against each other one; at
    degree two a pair is oriented along the braiding orbit (p, c(p))
    whenever the second word is the braiding image of the first."""
    per_degree = []
    all_relators: list[Word] = []
    for degree in range(2, max_degree + 1):
        pairs: list[tuple[RackWord, RackWord]] = []
        for element in minimal_elements(
            space, degree, max_cols, max_support_ambient
        ):
            base = element.words[0]
            for other in element.words[1:]:
                p, q = base, other
                if degree == 2:
                    if space.c_index(*q) == p:
                        p, q = q, p
                pairs.append((p, q))
        relators = tuple(_pair_to_relator(p, q) for p, q in pairs)
        per_degree.append(
            RelatorSet(degree=degree, pairs=tuple(pairs), relators=relators)
        )
        all_relators.extend(relators)
    presentation = Presentation.make(space.dim, all_relators)
    return CoveringRelators(
        per_degree=tuple(per_degree),
        presentation=presentation,
        max_degree=max_degree,
    )


# --- grading consistency ----------------------------------------------------


def word_inner_image(space: BraidedSpace, word: RackWord):
    """Image of g_{x1} ... g_{xn} in the inner permutation group."""
    acc = identity_perm(space.rack.n)
    for x in word:
        acc = perm_compose(acc, space.rack.translation(x))
    return acc


def word_orbit_vector(space: BraidedSpace, word: RackWord) -> tuple[int, ...]:
    """Image in the abelianization Z^(rack orbits): letter counts by orbit."""
    orbits = space.rack.orbits()
    position = {}
    for i, block in enumerate(orbits):
        for x in block:
            position[x] = i
    counts = [0] * len(orbits)
    for x in word:
        counts[position[x]] += 1
    return tuple(counts)


def words_consistent(space: BraidedSpace, words) -> tuple[bool, tuple | None]:
    """Do all words share both computable enveloping-group invariants?"""
    words = list(words)
    if not words:
        return True, None
    base = words[0]
    inner0 = word_inner_image(space, base)
    orbit0 = word_orbit_vector(space, base)
    for other in words[1:]:
        if word_inner_image(space, other) != inner0:
            return False, (base, other, "inner")
        if word_orbit_vector(space, other) != orbit0:
            return False, (base, other, "abelianization")
    return True, None


@dataclass(frozen=True)
class GradingReport:
    ok: bool
    witnesses: tuple


def grading_consistency(
    space: BraidedSpace,
    max_degree: int,
    max_cols: int = 10**4,
    max_support_ambient: int = 64,
) -> GradingReport:
    """Check that each minimal element is homogeneous for the two
    computable invariants.  Sound but incomplete: agreement of the
    invariants does not prove equality in the enveloping group."""
    witnesses = []
    for degree in range(2, max_degree + 1):
        for element in minimal_elements(
            space, degree, max_cols, max_support_ambient
        ):
            ok, witness = words_consistent(space, element.words)
            if not ok:
                witnesses.append((degree,) + witness)
    return GradingReport(ok=not witnesses, witnesses=tuple(witnesses))
