import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from rackcover.cyclotomic import CycScalar, root_of_unity
from rackcover.errors import BoundExceededError, NonSquareError
from rackcover.linalg import (
    ExactMatrix,
    IncrementalSpan,
    abelian_invariants,
    determinant,
    rank_kernel,
    smith_normal_form,
    support_minimal_vectors,
)


def orbit_matrix(m, lam):
    """Matrix of 1 + c on a braiding orbit of size m with loop scalar lam:
    ones on the diagonal and subdiagonal, lam in the upper-right corner."""
    entries = {}
    if m == 1:
        entries[(0, 0)] = CycScalar.one() + lam
    else:
        for i in range(m):
            entries[(i, i)] = CycScalar.one()
        for i in range(m - 1):
            entries[(i + 1, i)] = CycScalar.one()
        entries[(0, m - 1)] = lam
    return ExactMatrix(m, m, entries)


def cofactor_det(rows):
    """Independent determinant oracle: Laplace expansion on the first row."""
    n = len(rows)
    if n == 0:
        return CycScalar.one()
    if n == 1:
        return rows[0][0]
    total = CycScalar.zero()
    for j in range(n):
        if rows[0][j].is_zero:
            continue
        minor = [
            [row[k] for k in range(n) if k != j] for row in rows[1:]
        ]
        term = rows[0][j] * cofactor_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def dense(matrix):
    zero = CycScalar.zero(matrix.order)
    out = [[zero for _ in range(matrix.cols)] for _ in range(matrix.rows)]
    for (r, c), v in matrix.entries.items():
        out[r][c] = v
    return out


# --- rank / kernel ---------------------------------------------------------


def test_rank_identity():
    eye = ExactMatrix(3, 3, {(i, i): CycScalar.one() for i in range(3)})
    r, kernel = rank_kernel(eye)
    assert r == 3 and kernel == []


def test_rank_zero_matrix():
    z = ExactMatrix(2, 5, {})
    r, kernel = rank_kernel(z)
    assert r == 0 and len(kernel) == 5


def test_orbit_matrix_m4_lambda1():
    m = orbit_matrix(4, CycScalar.one())
    r, kernel = rank_kernel(m)
    assert r == 3
    assert len(kernel) == 1
    assert determinant(m) == 0


def test_rank_kernel_randomized_identities():
    rng = random.Random(11)
    orders = [1, 2, 3, 4, 6]
    for trial in range(200):
        n = orders[trial % len(orders)]
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 5)
        entries = {}
        for r in range(rows):
            for c in range(cols):
                if rng.random() < 0.5:
                    k = rng.randint(0, n - 1)
                    num = rng.randint(-2, 2)
                    if num:
                        entries[(r, c)] = root_of_unity(n, k) * num
        a = ExactMatrix(rows, cols, entries)
        ra, kernel = rank_kernel(a)
        rt, _ = rank_kernel(a.transpose())
        assert ra == rt
        assert ra + len(kernel) == cols
        for vec in kernel:
            assert a.apply(vec) == {}


# --- determinant -----------------------------------------------------------


def test_determinant_orbit_examples():
    minus_one = CycScalar.rational(-1)
    assert determinant(orbit_matrix(2, minus_one)) == 2
    assert determinant(orbit_matrix(3, minus_one)) == 0
    assert determinant(orbit_matrix(1, minus_one)) == 0


def test_determinant_formula_vs_cofactor():
    lams = [
        CycScalar.one(),
        CycScalar.rational(-1),
        root_of_unity(3),
        -root_of_unity(3),
        root_of_unity(4),
        -root_of_unity(4),
    ]
    for m in range(1, 9):
        for lam in lams:
            mat = orbit_matrix(m, lam)
            formula = CycScalar.one() + lam * ((-1) ** (m - 1))
            assert determinant(mat) == formula
            assert cofactor_det(dense(mat)) == formula


def test_determinant_nonsquare():
    with pytest.raises(NonSquareError):
        determinant(ExactMatrix(2, 3, {}))


def test_determinant_random_vs_cofactor():
    rng = random.Random(5)
    for _ in range(25):
        n = rng.randint(1, 4)
        order = rng.choice([1, 2, 3, 4])
        entries = {}
        for r in range(n):
            for c in range(n):
                if rng.random() < 0.7:
                    entries[(r, c)] = root_of_unity(order, rng.randint(0, order - 1)) * rng.randint(-2, 2)
        mat = ExactMatrix(n, n, entries)
        assert determinant(mat) == cofactor_det(dense(mat))


# --- Smith normal form -----------------------------------------------------


def test_snf_empty_relations():
    fr, torsion = abelian_invariants([], 3)
    assert fr == 3 and torsion == ()


def test_snf_2x2_example():
    res = smith_normal_form([[2, 0], [0, 3]])
    assert res.diag == (1, 6)
    assert res.free_rank == 0


def test_snf_s3_transposition_relations():
    # pairs (x, y) among the transpositions a=(12), b=(13), c=(23) abelianize
    # to e_y - e_{x|>y}
    rows = [
        [0, 1, -1],
        [0, -1, 1],
        [1, 0, -1],
        [-1, 0, 1],
        [1, -1, 0],
        [-1, 1, 0],
    ]
    fr, torsion = abelian_invariants(rows, 3)
    assert fr == 1 and torsion == ()


def test_snf_randomized_vs_sympy():
    rng = random.Random(3)
    for _ in range(40):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        mat = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        res = smith_normal_form(mat)
        d = sympy_snf(sympy.Matrix(mat))
        expected = [abs(int(d[i, i])) for i in range(min(rows, cols)) if d[i, i] != 0]
        # sympy emits a divisibility-normalized chain as well
        assert list(res.diag) == expected
        for i in range(1, len(res.diag)):
            assert res.diag[i] % res.diag[i - 1] == 0


# --- support-minimal vectors ------------------------------------------------


def as_vec(values):
    return {
        i: CycScalar.rational(v)
        for i, v in enumerate(values)
        if v
    }


def brute_force_minimal(vectors, ambient):
    """Oracle: test every support subset for solvability via sympy nullspace."""
    basis = sympy.Matrix([[Fraction(v.get(i, 0) and v[i].as_rational()) if v.get(i) else Fraction(0) for i in range(ambient)] for v in vectors])
    basis = [basis.row(i) for i in range(basis.rows)]
    k = sympy.Matrix.vstack(*basis).rank() if basis else 0

    def solvable(support):
        outside = [i for i in range(ambient) if i not in support]
        if not vectors:
            return False
        m = sympy.Matrix(
            [[vectors[j].get(i).as_rational() if vectors[j].get(i) else 0 for j in range(len(vectors))] for i in outside]
        )
        full = sympy.Matrix(
            [[vectors[j].get(i).as_rational() if vectors[j].get(i) else 0 for j in range(len(vectors))] for i in range(ambient)]
        )
        # nonzero combination vanishing outside the support and not everywhere
        null = m.nullspace() if outside else [sympy.Matrix([int(i == j) for i in range(len(vectors))]) for j in range(len(vectors))]
        for vec in null:
            if any(full * vec):
                return True
        return False

    solvable_sets = [
        frozenset(s)
        for size in range(1, ambient + 1)
        for s in combinations(range(ambient), size)
        if solvable(frozenset(s))
    ]
    minimal = [
        s
        for s in solvable_sets
        if not any(t < s for t in solvable_sets)
    ]
    units = {next(iter(s)) for s in minimal if len(s) == 1}
    supports = sorted(
        (tuple(sorted(s)) for s in minimal if len(s) >= 2),
        key=lambda t: (len(t), t),
    )
    return supports, units


def test_support_minimal_spec_example():
    vectors = [as_vec([1, 1, 0]), as_vec([0, 1, 1])]
    found, units = support_minimal_vectors(vectors, 3)
    assert units == set()
    supports = [sup for sup, _ in found]
    assert supports == [(0, 1), (0, 2), (1, 2)]
    reps = {sup: rep for sup, rep in found}
    assert reps[(0, 1)] == as_vec([1, 1, 0])
    assert reps[(1, 2)] == {1: CycScalar.one(), 2: CycScalar.one()}
    assert reps[(0, 2)] == {0: CycScalar.one(), 2: CycScalar.rational(-1)}


def test_support_minimal_full_space():
    vectors = [as_vec([1, 0, 0]), as_vec([0, 1, 0]), as_vec([0, 0, 1])]
    found, units = support_minimal_vectors(vectors, 3)
    assert found == []
    assert units == {0, 1, 2}


def test_support_minimal_zero_space():
    found, units = support_minimal_vectors([], 4)
    assert found == [] and units == set()


def test_support_minimal_ambient_bound():
    with pytest.raises(BoundExceededError):
        support_minimal_vectors([as_vec([1])], 65)


def test_support_minimal_vs_brute_force():
    rng = random.Random(17)
    for _ in range(60):
        ambient = rng.randint(2, 6)
        dim = rng.randint(0, 3)
        vectors = []
        for _ in range(dim):
            vec = [rng.randint(-2, 2) if rng.random() < 0.6 else 0 for _ in range(ambient)]
            vectors.append(as_vec(vec))
        vectors = [v for v in vectors if v]
        found, units = support_minimal_vectors(vectors, ambient)
        expected_supports, expected_units = brute_force_minimal(vectors, ambient)
        assert [sup for sup, _ in found] == expected_supports
        assert units == expected_units
        # representatives live in the span and have the right support
        for sup, rep in found:
            assert tuple(sorted(rep)) == sup


# --- incremental span -------------------------------------------------------


def test_incremental_span_coordinates():
    span = IncrementalSpan()
    v1 = as_vec([1, 2, 0])
    v2 = as_vec([0, 1, 1])
    v3 = as_vec([1, 3, 1])  # v1 + v2, dependent
    assert span.add(v1, tag=10)
    assert span.add(v2, tag=20)
    assert not span.add(v3, tag=30)
    assert span.kept == [10, 20]
    coords = span.coordinates(v3)
    assert coords == {10: CycScalar.one(), 20: CycScalar.one()}
    assert span.coordinates(as_vec([0, 0, 0, 1])) is None
    assert span.contains(v1)
