"""Exact linear algebra over the integers.

Three layers, each feeding the next:

* :func:`smith_normal_form` — U·M·V = D with U, V unimodular and D diagonal
  with a divisibility chain d_1 | d_2 | ...; all arithmetic in arbitrary
  precision.
* :func:`quotient_invariants` — free rank and elementary divisors of a lattice
  quotient ℤ^d / ⟨generators⟩, read off the Smith form.
* :class:`FPAbelianGroup` — a finitely presented abelian group given by
  relator rows over its generators (multiplicative notation outside, exponent
  vectors inside), with a decidable word problem (:func:`is_identity`) and
  d-th-power test (:func:`is_dth_power`), both via Smith-form membership.

Matrices are tuples of tuples of ints; rows of a generator/relation matrix
are the generating vectors/relators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

IntMatrix = tuple[tuple[int, ...], ...]
IntVector = tuple[int, ...]


def _freeze(rows: Iterable[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if not a:
        return ()
    inner = len(a[0])
    assert inner == len(b), "dimension mismatch"
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols))
        for i in range(len(a))
    )


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


def vec_mat(v: Sequence[int], a: Sequence[Sequence[int]]) -> IntVector:
    if not a:
        return ()
    cols = len(a[0])
    return tuple(sum(v[k] * a[k][j] for k in range(len(v))) for j in range(cols))


def det(m: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """U·M·V = D with U, V unimodular and D in Smith normal form."""

    matrix: IntMatrix
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    divisors: tuple[int, ...]  # nonzero diagonal entries, divisibility-sorted


def smith_normal_form(matrix: Iterable[Sequence[int]]) -> SmithDecomposition:
    M = _freeze(matrix)
    rows = len(M)
    cols = len(M[0]) if rows else 0
    a = [list(r) for r in M]
    u = _identity(rows)
    v = _identity(cols)

    def row_op(i, j, c):  # row_i -= c * row_j  (applied to a and u)
        a[i] = [x - c * y for x, y in zip(a[i], a[j])]
        u[i] = [x - c * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, c):  # col_i -= c * col_j  (applied to a and v)
        for r in a:
            r[i] -= c * r[j]
        for r in v:
            r[i] -= c * r[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def diagonalize():
        t = 0
        while t < min(rows, cols):
            # find pivot: smallest |entry| in the remaining block
            pivot = None
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                        best = abs(a[i][j])
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            # clear row and column t by Euclidean steps
            while True:
                progressed = False
                for i in range(t + 1, rows):
                    if a[i][t] != 0:
                        c = a[i][t] // a[t][t]
                        row_op(i, t, c)
                        if a[i][t] != 0:  # remainder smaller than pivot: swap up
                            swap_rows(t, i)
                            progressed = True
                for j in range(t + 1, cols):
                    if a[t][j] != 0:
                        c = a[t][j] // a[t][t]
                        col_op(j, t, c)
                        if a[t][j] != 0:
                            swap_cols(t, j)
                            progressed = True
                if not progressed:
                    break
            t += 1
        for i in range(min(rows, cols)):
            if a[i][i] < 0:
                a[i] = [-x for x in a[i]]
                u[i] = [-x for x in u[i]]

    # diagonalize, then repair divisibility-chain violations by folding the
    # offending column in and rediagonalizing; the violating entry strictly
    # shrinks to a proper divisor each pass, so this terminates
    diagonalize()
    while True:
        r = sum(1 for i in range(min(rows, cols)) if a[i][i] != 0)
        bad = next(
            (i for i in range(r - 1) if a[i + 1][i + 1] % a[i][i] != 0), None
        )
        if bad is None:
            break
        col_op(bad, bad + 1, -1)  # col_bad += col_{bad+1}
        diagonalize()
    D = _freeze(a)
    divisors = tuple(a[i][i] for i in range(min(rows, cols)) if a[i][i] != 0)
    return SmithDecomposition(matrix=M, U=_freeze(u), D=D, V=_freeze(v), divisors=divisors)


@dataclass(frozen=True)
class QuotientInvariants:
    """Invariant factors of a lattice quotient ℤ^d / ⟨generators⟩."""

    free_rank: int
    torsion: tuple[int, ...]  # elementary divisors > 1, divisibility-sorted

    @property
    def torsion_order(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out

    @property
    def torsion_exponent(self) -> int:
        return self.torsion[-1] if self.torsion else 1

    def describe(self) -> str:
        """Group-theory display, e.g. 'Z^2', 'Z/2', 'Z x Z/2', '(Z/2)^2', '1'."""
        parts: list[str] = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        i = 0
        while i < len(self.torsion):
            d = self.torsion[i]
            j = i
            while j < len(self.torsion) and self.torsion[j] == d:
                j += 1
            mult = j - i
            parts.append(f"Z/{d}" if mult == 1 else f"(Z/{d})^{mult}")
            i = j
        return " x ".join(parts) if parts else "1"


def quotient_invariants(ambient_rank: int, generators: Iterable[Sequence[int]]) -> QuotientInvariants:
    gens = _freeze(generators)
    for g in gens:
        if len(g) != ambient_rank:
            raise ValueError(f"generator length {len(g)} != ambient rank {ambient_rank}")
    if not gens:
        return QuotientInvariants(free_rank=ambient_rank, torsion=())
    snf = smith_normal_form(gens)
    rank = len(snf.divisors)
    torsion = tuple(d for d in snf.divisors if d > 1)
    return QuotientInvariants(free_rank=ambient_rank - rank, torsion=torsion)


@dataclass(frozen=True)
class FPAbelianGroup:
    """Finitely presented abelian group ⟨x_1..x_t | relator rows⟩.

    Elements are exponent vectors of length ``generator_count``; the word
    problem reduces to membership in the relation row space over ℤ.
    """

    generator_count: int
    relations: IntMatrix = ()
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        for r in self.relations:
            if len(r) != self.generator_count:
                raise ValueError("relation length does not match generator count")

    def _check(self, word: Sequence[int]) -> IntVector:
        w = tuple(int(x) for x in word)
        if len(w) != self.generator_count:
            raise ValueError(f"word length {len(w)} != generator count {self.generator_count}")
        return w

    def quotient(self) -> QuotientInvariants:
        """Invariants of the group itself (ℤ^t modulo the relations)."""
        return quotient_invariants(self.generator_count, self.relations)

    def word(self, **exponents: int) -> IntVector:
        """Exponent vector from named generators, e.g. a=1, b=-1."""
        out = [0] * self.generator_count
        for name, e in exponents.items():
            out[self.names.index(name)] += e
        return tuple(out)


def _membership_data(relations: IntMatrix, width: int):
    """Smith data for testing membership in the row space of `relations`."""
    if not relations:
        snf = None
    else:
        snf = smith_normal_form(relations)
    return snf


@lru_cache(maxsize=None)
def _row_space_snf(relations: IntMatrix, width: int) -> SmithDecomposition | None:
    return _membership_data(relations, width)


def _in_row_space(relations: IntMatrix, width: int, word: IntVector) -> bool:
    snf = _row_space_snf(relations, width)
    if snf is None:
        return all(x == 0 for x in word)
    b = vec_mat(word, snf.V)
    k = len(snf.divisors)
    for j, bj in enumerate(b):
        if j < k:
            if bj % snf.divisors[j] != 0:
                return False
        elif bj != 0:
            return False
    return True


def is_identity(group: FPAbelianGroup, word: Sequence[int]) -> bool:
    w = group._check(word)
    return _in_row_space(group.relations, group.generator_count, w)


def is_dth_power(group: FPAbelianGroup, word: Sequence[int], d: int) -> bool:
    """True iff the word is a d-th power in the group (exactly the declared one).

    Solves d·y ≡ word (mod relations): membership of the word in the row
    space of [d·I; relations].
    """
    if d <= 0:
        raise ValueError("d must be positive")
    w = group._check(word)
    if d == 1:
        return True
    t = group.generator_count
    stacked = tuple(
        tuple(d if i == j else 0 for j in range(t)) for i in range(t)
    ) + group.relations
    return _in_row_space(stacked, t, w)


def canonical_word(group: FPAbelianGroup, word: Sequence[int]) -> IntVector:
    """Canonical coset representative: equal words get equal tuples."""
    w = group._check(word)
    snf = _row_space_snf(group.relations, group.generator_count)
    if snf is None:
        return w
    b = list(vec_mat(w, snf.V))
    for j, dj in enumerate(snf.divisors):
        b[j] %= dj
    return tuple(b)
