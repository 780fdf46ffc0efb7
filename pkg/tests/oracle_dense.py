"""Independent dense oracle for graded dimensions of the braided algebra.

Deliberately shares no code with rackcover.nichols: permutations are
enumerated with itertools, reduced words come from bubble sort, lifts act
on explicit word tuples, and ranks come from naive dense Gaussian
elimination over exact scalars.
"""

from itertools import permutations, product

from rackcover.cyclotomic import CycScalar


def bubble_reduced_word(perm):
    """Reduced word (1-based letters) by bubble-sorting the one-line form."""
    p = list(perm)
    n = len(p)
    swaps = []
    changed = True
    while changed:
        changed = False
        for j in range(n - 1):
            if p[j] > p[j + 1]:
                p[j], p[j + 1] = p[j + 1], p[j]
                swaps.append(j + 1)
                changed = True
    # sorting multiplied perm on the right by each swap, so the word of the
    # permutation itself is the swaps reversed
    return tuple(reversed(swaps))


def oracle_check_word(perm, word):
    """Recompose a letter word and compare with the permutation."""
    n = len(perm)
    acc = list(range(n))
    for letter in word:
        i = letter - 1
        swap = list(range(n))
        swap[i], swap[i + 1] = i + 1, i
        acc = [acc[swap[k]] for k in range(n)]
    return tuple(acc) == tuple(perm)


def lift_column(space, word_letters, start_word):
    """Apply a braid-word lift to a basis word, by direct tuple rewriting.
    Returns (image word, scalar)."""
    op = space.rack.op
    cocycle = space.cocycle
    word = tuple(start_word)
    scalar = CycScalar.one()
    for letter in reversed(word_letters):
        i = letter - 1
        x, y = word[i], word[i + 1]
        scalar = scalar * cocycle.value(x, y)
        word = word[:i] + (op(x, y), x) + word[i + 2 :]
    return word, scalar


def dense_symmetrizer_columns(space, degree):
    """Columns of the symmetrizer as dicts word -> scalar."""
    d = space.dim
    columns = {}
    for start in product(range(d), repeat=degree):
        acc = {}
        for sigma in permutations(range(degree)):
            letters = bubble_reduced_word(sigma)
            assert oracle_check_word(sigma, letters)
            image, scalar = lift_column(space, letters, start)
            if image in acc:
                acc[image] = acc[image] + scalar
            else:
                acc[image] = scalar
        columns[start] = {w: s for w, s in acc.items() if not s.is_zero}
    return columns


def dense_rank(columns):
    """Rank of a family of sparse vectors by naive elimination."""
    rows = [dict(col) for col in columns if col]
    rank = 0
    while rows:
        pivot_row = rows.pop(0)
        if not pivot_row:
            continue
        rank += 1
        pivot_key = sorted(pivot_row)[0]
        inv = pivot_row[pivot_key].inverse()
        pivot_row = {k: v * inv for k, v in pivot_row.items()}
        reduced = []
        for row in rows:
            if pivot_key in row:
                factor = row[pivot_key]
                new_row = {}
                for k in set(row) | set(pivot_row):
                    val = row.get(k, CycScalar.zero()) - factor * pivot_row.get(
                        k, CycScalar.zero()
                    )
                    if not val.is_zero:
                        new_row[k] = val
                if new_row:
                    reduced.append(new_row)
            elif row:
                reduced.append(row)
        rows = reduced
    return rank


def oracle_graded_dims(space, cutoff):
    """Graded dimensions 0..cutoff, every degree eliminated directly."""
    dims = [1]
    for degree in range(1, cutoff + 1):
        if degree == 1:
            dims.append(space.dim)
            continue
        columns = dense_symmetrizer_columns(space, degree)
        dims.append(dense_rank(columns.values()))
    return dims


def gaussian_factorial(q: CycScalar, n: int) -> CycScalar:
    """[n]_q! = prod_{k=1..n} (1 + q + ... + q^(k-1))."""
    total = CycScalar.one()
    for k in range(1, n + 1):
        bracket = CycScalar.zero()
        power = CycScalar.one()
        for _ in range(k):
            bracket = bracket + power
            power = power * q
        total = total * bracket
    return total
