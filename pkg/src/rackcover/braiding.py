"""Rack 2-cocycles, the braiding c(v_x (x) v_y) = q(x,y) v_{x|>y} (x) v_x,
its orbit decomposition on X x X, and the quadratic-relation analysis.

Every orbit O of the index map c(x,y) = (x|>y, x) spans a line-permuted
block V_O of V (x) V with basis theta_i = c^i(v_x (x) v_y); c acts on the
block by a cyclic monomial matrix whose loop scalar is
lambda = product of the q-values along the orbit.  The block matrix of
1 + c has determinant 1 + (-1)^(m-1) * lambda, so the block contributes a
(one-dimensional) kernel line exactly when lambda = (-1)^m.

Note on conventions: the braiding used throughout is
c(v_x (x) v_y) = q(x,y) v_{x|>y} (x) v_x (the rack form, with the first
tensor factor acting); kernel lines are detected by the sign criterion
lambda = (-1)^m, which is the vanishing locus of the determinant above.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .cyclotomic import CycScalar
from .errors import InternalCheckError, ValidationError
from .linalg import ExactMatrix, determinant, rank_kernel
from .racks import Rack, transposition_elements, transpositions_rack


@dataclass(frozen=True)
class Cocycle:
    """q: X x X -> roots of unity, stored as exponents over one order N."""

    rack: Rack
    order: int
    exponents: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.rack.n
        if len(self.exponents) != n or any(len(r) != n for r in self.exponents):
            raise ValidationError("cocycle exponent table has wrong shape")

    def exponent(self, x: int, y: int) -> int:
        return self.exponents[x][y] % self.order

    def value(self, x: int, y: int) -> CycScalar:
        return CycScalar.root_of_unity(self.order, self.exponents[x][y])

    @classmethod
    def constant(cls, rack: Rack, order: int, k: int = 1) -> "Cocycle":
        """The constant cocycle q == zeta_order^k (always a valid cocycle)."""
        n = rack.n
        exp = tuple(tuple(k % order for _ in range(n)) for _ in range(n))
        return cls(rack, order, exp)

    @classmethod
    def constant_minus_one(cls, rack: Rack) -> "Cocycle":
        return cls.constant(rack, 2, 1)

    @classmethod
    def from_json(cls, rack: Rack, data: dict) -> "Cocycle":
        order = data["N"]
        exp = tuple(tuple(v % order for v in row) for row in data["exp"])
        cocycle = cls(rack, order, exp)
        ok, witness = braid_check(rack, cocycle)
        if not ok:
            raise ValidationError(f"cocycle fails the braid equation at {witness}")
        return cocycle

    def to_json(self) -> dict:
        return {"N": self.order, "exp": [list(r) for r in self.exponents]}


def chi_cocycle(n: int) -> Cocycle:
    """The sign cocycle on the transpositions of S_n: for y the pair (k, l)
    with k < l, chi(x, y) = +1 if x(k) < x(l) and -1 otherwise."""
    rack = transpositions_rack(n)
    elems = transposition_elements(n)
    # the rack builder lists the pair (k, l) in lexicographic order
    pairs = [(k, l) for k in range(n) for l in range(k + 1, n)]
    exp = []
    for x in elems:
        row = []
        for (k, l) in pairs:
            row.append(0 if x[k] < x[l] else 1)
        exp.append(tuple(row))
    return Cocycle(rack, 2, tuple(exp))


@dataclass(frozen=True)
class BraidedSpace:
    """V = (kX, c^q): the braided vector space attached to a rack and cocycle.

    Construction validates the braid equation on all basis triples.
    """

    rack: Rack
    cocycle: Cocycle

    def __post_init__(self):
        if self.cocycle.rack.table != self.rack.table:
            raise ValidationError("cocycle belongs to a different rack")
        ok, witness = braid_check(self.rack, self.cocycle)
        if not ok:
            raise ValidationError(
                f"braiding fails the braid equation at triple {witness}"
            )

    @property
    def dim(self) -> int:
        return self.rack.n

    def braiding_exponent(self, x: int, y: int) -> int:
        return self.cocycle.exponent(x, y)

    def c_index(self, x: int, y: int) -> tuple[int, int]:
        return (self.rack.op(x, y), x)


def braid_check(rack: Rack, cocycle: Cocycle) -> tuple[bool, tuple | None]:
    """Verify (c(x)1)(1(x)c)(c(x)1) = (1(x)c)(c(x)1)(1(x)c) on basis triples.

    Returns (True, None) or (False, witness_triple).  Scalars are compared
    as exponents mod the cocycle order; words as index triples.
    """
    n = rack.n
    N = cocycle.order
    op = rack.op
    exp = cocycle.exponents

    def c12(word, e):
        x, y, z = word
        return (op(x, y), x, z), e + exp[x][y]

    def c23(word, e):
        x, y, z = word
        return (x, op(y, z), y), e + exp[y][z]

    for x in range(n):
        for y in range(n):
            for z in range(n):
                w = (x, y, z)
                lhs, el = c12(*c23(*c12(w, 0)))
                rhs, er = c23(*c12(*c23(w, 0)))
                if lhs != rhs or (el - er) % N != 0:
                    return False, w
    return True, None


@dataclass(frozen=True)
class OrbitData:
    """One orbit of c on X x X with its tensor-line data.

    pairs: the orbit in cyclic order starting at its minimal pair.
    theta_exponents[i]: exponent e_i with theta_i = zeta^e_i * basis word i.
    lam: the scalar with c^m acting by it on the orbit line.
    kernel_dim: 1 when lambda = (-1)^m (then sum (-1)^i theta_i spans the
    kernel of 1 + c on the block), else 0.
    """

    pairs: tuple[tuple[int, int], ...]
    theta_exponents: tuple[int, ...]
    cocycle_order: int
    lam: CycScalar
    kernel_dim: int
    is_diagonal: bool

    @property
    def size(self) -> int:
        return len(self.pairs)

    @property
    def theta_scalars(self) -> list[CycScalar]:
        return [
            CycScalar.root_of_unity(self.cocycle_order, e)
            for e in self.theta_exponents
        ]

    def one_plus_c_matrix(self) -> ExactMatrix:
        """1 + c on the block, in the theta basis: ones on the diagonal and
        subdiagonal, lambda in the upper-right corner."""
        m = self.size
        entries: dict[tuple[int, int], CycScalar] = {}
        one = CycScalar.one()
        for i in range(m):
            entries[(i, i)] = one
        for i in range(m - 1):
            entries[(i + 1, i)] = one
        corner = entries.get((0, m - 1), CycScalar.zero())
        entries[(0, m - 1)] = corner + self.lam
        return ExactMatrix(m, m, entries)

    def kernel_vector(self) -> dict[int, CycScalar] | None:
        """sum (-1)^i theta_i in theta coordinates, when the kernel is there."""
        if not self.kernel_dim:
            return None
        return {
            i: CycScalar.rational((-1) ** i) for i in range(self.size)
        }


def c_orbits(space: BraidedSpace) -> list[OrbitData]:
    """All orbits of c on X x X, sorted by their minimal pair."""
    n = space.rack.n
    N = space.cocycle.order
    seen = set()
    orbits = []
    for x in range(n):
        for y in range(n):
            start = (x, y)
            if start in seen:
                continue
            pairs = []
            exps = []
            acc = 0
            cur = start
            while True:
                pairs.append(cur)
                exps.append(acc % N)
                seen.add(cur)
                acc += space.braiding_exponent(*cur)
                cur = space.c_index(*cur)
                if cur == start:
                    break
            m = len(pairs)
            lam = CycScalar.root_of_unity(N, acc)
            # independent recomputation of lambda as the q-product
            product = CycScalar.one()
            for (a, b) in pairs:
                product = product * space.cocycle.value(a, b)
            if product != lam:
                raise InternalCheckError("orbit scalar mismatch")
            sign = CycScalar.rational((-1) ** m)
            kernel_dim = 1 if lam == sign else 0
            orbit = OrbitData(
                pairs=tuple(pairs),
                theta_exponents=tuple(exps),
                cocycle_order=N,
                lam=lam,
                kernel_dim=kernel_dim,
                is_diagonal=(m == 1 and x == y),
            )
            orbits.append(orbit)
    return orbits


@dataclass(frozen=True)
class CensusReport:
    orbits: tuple[OrbitData, ...]
    histogram: tuple[tuple[int, int], ...]  # (size, count), sorted
    total: int

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "histogram": {str(size): count for size, count in self.histogram},
            "orbit_sizes": [o.size for o in self.orbits],
        }


def c_orbit_census(space: BraidedSpace) -> CensusReport:
    orbits = c_orbits(space)
    sizes: dict[int, int] = {}
    covered = 0
    for o in orbits:
        sizes[o.size] = sizes.get(o.size, 0) + 1
        covered += o.size
    if covered != space.dim**2:
        raise InternalCheckError("orbits do not partition X x X")
    return CensusReport(
        orbits=tuple(orbits),
        histogram=tuple(sorted(sizes.items())),
        total=len(orbits),
    )


@dataclass(frozen=True)
class FkCensusRow:
    """Closed-form orbit counts for the transposition rack of S_n."""

    n: int
    size1: int
    size2: int
    size3: int
    total: int
    excess: int


def fk_census_formula(n: int) -> FkCensusRow:
    """Orbit counts on transpositions of S_n: sizes 1, 2, 3 in closed form,
    the total f(n) = n(3n^3 - 10n^2 + 21n - 14)/24, and the excess of the
    total over C(d, 2) with d = C(n, 2)."""
    if n < 3:
        raise ValidationError("census formula needs n >= 3")
    d = comb(n, 2)
    size1 = d
    size2 = comb(n, 2) * comb(n - 2, 2) // 2
    size3 = 2 * comb(n, 3)
    poly = n * (3 * n**3 - 10 * n**2 + 21 * n - 14)
    if poly % 24:
        raise InternalCheckError("census polynomial not divisible by 24")
    total = poly // 24
    if total != size1 + size2 + size3:
        raise InternalCheckError("census breakdown does not sum to f(n)")
    return FkCensusRow(n, size1, size2, size3, total, total - comb(d, 2))


@dataclass(frozen=True)
class OrbitAnalysis:
    orbit: OrbitData
    determinant: CycScalar
    nullity: int


@dataclass(frozen=True)
class QuadraticReport:
    """Kernel of 1 + c orbit by orbit.

    total_qr = dim ker(1 + c) on V (x) V; dim2 = d^2 - total_qr is the
    dimension of the quadratic graded component.
    """

    space: BraidedSpace
    analyses: tuple[OrbitAnalysis, ...]
    total_qr: int
    dim2: int

    @property
    def orbit_count(self) -> int:
        return len(self.analyses)

    def to_json(self) -> dict:
        return {
            "orbits": self.orbit_count,
            "qr": self.total_qr,
            "dim2": self.dim2,
            "kernel_dims": [a.orbit.kernel_dim for a in self.analyses],
        }


def quadratic_analysis(space: BraidedSpace) -> QuadraticReport:
    """Per-orbit kernel dimensions by the sign criterion, each cross-checked
    against the exact rank of 1 + c on the block, and against the explicit
    kernel vector when present."""
    analyses = []
    total = 0
    for orbit in c_orbits(space):
        matrix = orbit.one_plus_c_matrix()
        m = orbit.size
        det = determinant(matrix)
        expected = CycScalar.one() + orbit.lam * ((-1) ** (m - 1))
        if det != expected:
            raise InternalCheckError(
                f"block determinant {det} != 1 + (-1)^(m-1) lambda at {orbit.pairs[0]}"
            )
        rank, kernel = rank_kernel(matrix)
        nullity = m - rank
        if nullity != orbit.kernel_dim:
            raise InternalCheckError(
                f"sign criterion disagrees with exact rank at {orbit.pairs[0]}"
            )
        vec = orbit.kernel_vector()
        if vec is not None and matrix.apply(vec):
            raise InternalCheckError(
                f"alternating theta sum not annihilated at {orbit.pairs[0]}"
            )
        total += nullity
        analyses.append(OrbitAnalysis(orbit, det, nullity))
    d = space.dim
    return QuadraticReport(
        space=space,
        analyses=tuple(analyses),
        total_qr=total,
        dim2=d * d - total,
    )


def full_quadratic_predicate(space: BraidedSpace) -> bool:
    """True when every non-diagonal orbit contributes a kernel line."""
    return all(
        o.kernel_dim == 1 for o in c_orbits(space) if not o.is_diagonal
    )


def many_quadratic_predicate(space: BraidedSpace) -> bool:
    """True when dim ker(1 + c) >= d(d-1)/2."""
    report = quadratic_analysis(space)
    d = space.dim
    return report.total_qr >= d * (d - 1) // 2
