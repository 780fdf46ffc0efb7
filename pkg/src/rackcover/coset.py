"""Todd-Coxeter coset enumeration, HLT strategy.

Deterministic: coset 0 is the subgroup, new cosets are introduced in scan
order (relators in presentation order), and coincidences are folded
immediately through a union-find table.  Returns the subgroup index, or
raises CosetLimitError when more cosets get defined than the budget allows.

Generators and their inverses are separate edge symbols; the relators
g g^-1 and g^-1 g are scanned alongside the presentation's relators, which
keeps the two edge directions consistent without separate bookkeeping.
"""

from __future__ import annotations

from .errors import CosetLimitError
from .presentations import Presentation, Word, free_reduce

_UNDEF = -1


def _symbols(word: Word) -> tuple[int, ...]:
    # generator i -> symbol 2i, its inverse -> 2i + 1
    return tuple(
        2 * (abs(letter) - 1) + (0 if letter > 0 else 1) for letter in word
    )


class CosetTable:
    """Union-find backed coset table over 2 * ngens edge symbols."""

    def __init__(self, ngens: int, max_cosets: int):
        self.nsyms = 2 * ngens
        self.max_cosets = max_cosets
        self.neighbors: list[list[int]] = []
        self.labels: list[int] = []

    def add_coset(self) -> int:
        if len(self.labels) >= self.max_cosets:
            raise CosetLimitError(self.max_cosets, len(self.labels))
        c = len(self.labels)
        self.labels.append(c)
        self.neighbors.append([_UNDEF] * self.nsyms)
        return c

    def find(self, c: int) -> int:
        root = c
        while self.labels[root] != root:
            root = self.labels[root]
        while self.labels[c] != root:
            self.labels[c], c = root, self.labels[c]
        return root

    def unify(self, c1: int, c2: int):
        queue = [(c1, c2)]
        while queue:
            a, b = queue.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            a, b = min(a, b), max(a, b)
            self.labels[b] = a
            row_a, row_b = self.neighbors[a], self.neighbors[b]
            for sym in range(self.nsyms):
                nb = row_b[sym]
                if nb == _UNDEF:
                    continue
                if row_a[sym] == _UNDEF:
                    row_a[sym] = nb
                else:
                    queue.append((row_a[sym], nb))

    def follow(self, c: int, sym: int) -> int:
        c = self.find(c)
        row = self.neighbors[c]
        if row[sym] == _UNDEF:
            row[sym] = self.add_coset()
        return self.find(row[sym])

    def follow_word(self, c: int, symbols) -> int:
        for sym in symbols:
            c = self.follow(c, sym)
        return c

    def live_count(self) -> int:
        return sum(1 for i in range(len(self.labels)) if self.find(i) == i)


def todd_coxeter(
    presentation: Presentation,
    extra_relators: tuple[Word, ...] = (),
    subgroup_generators: tuple[Word, ...] = (),
    max_cosets: int = 100_000,
) -> int:
    """Index of the subgroup generated by `subgroup_generators` in the group
    presented by `presentation` plus `extra_relators`.

    With no subgroup generators this is the order of the presented group;
    the enumeration must close within `max_cosets` defined cosets.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    ngens = presentation.ngens
    relators = []
    for i in range(ngens):
        relators.append((2 * i, 2 * i + 1))
        relators.append((2 * i + 1, 2 * i))
    for rel in tuple(presentation.relators) + tuple(extra_relators):
        relators.append(_symbols(free_reduce(tuple(rel))))
    table = CosetTable(ngens, max_cosets)
    start = table.add_coset()
    for word in subgroup_generators:
        table.unify(table.follow_word(start, _symbols(free_reduce(tuple(word)))), start)
    # scan every live coset against every relator; repeat whole passes until
    # a pass changes nothing, which certifies the table is closed
    while True:
        defined_before = len(table.labels)
        live_before = table.live_count()
        scan = 0
        while scan < len(table.labels):
            if table.find(scan) == scan:
                for rel in relators:
                    c = table.find(scan)
                    table.unify(table.follow_word(c, rel), c)
            scan += 1
        if len(table.labels) == defined_before and table.live_count() == live_before:
            break
    return table.live_count()
