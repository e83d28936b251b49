"""Root data for split reductive groups, with exact integer coordinates.

A root datum is stored as a character lattice X = Z^d together with paired
tuples of roots (vectors in X) and coroots (vectors in the cocharacter
lattice X^vee = Z^d, paired with X by the dot product).  Index i of
``roots`` corresponds to index i of ``coroots``; a ``positive`` index set
fixes a choice of positive roots.  Everything is integral and hashable, so
root data can key caches.

Construction goes through ``build_root_datum``, which accepts either a
descriptor string — ``"GL(3)"``, ``"SO(5)"``, ``"Sp(4)"``, ``"SL(2)"``,
``"PGL(2)"``, ``"T(2)"``, Dynkin types like ``"B2"``/``"G2(ad)"`` (bare
types are simply connected), and products joined with ``x`` — or an
explicit ``{"d": ..., "roots": ..., "coroots": ...}`` dictionary.  All
paths run the full root-datum axiom check and report the first axiom that
fails by name.

Conventions: the Cartan matrix entry C[i][j] equals <alpha_j, alpha_i^vee>
(row index = coroot).  Simply connected data use the fundamental-weight
basis of X (simple roots are Cartan columns); adjoint data use the
simple-root basis (simple coroots are Cartan rows).  Classical groups
GL/SO/Sp use the standard diagonal-torus coordinates.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .abelian import quotient_invariants, smith_normal_form
from .errors import InvalidInputError, HypothesisError, ResourceLimitError
from .qpoly import Poly, RationalPoly, q_minus

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]

WEYL_ENUMERATION_BOUND = 1_000_000


def _dot(u: Vector, v: Vector) -> int:
    return sum(a * b for a, b in zip(u, v))


def _neg(v: Vector) -> Vector:
    return tuple(-a for a in v)


def _add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def _identity(d: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def _mat_vec(m: Matrix, v: Vector) -> Vector:
    return tuple(_dot(row, v) for row in m)


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = tuple(zip(*b))
    return tuple(tuple(_dot(row, col) for col in cols) for row in a)


@dataclass(frozen=True)
class RootDatum:
    """A root datum (X, roots, X^vee, coroots) with a positivity choice.

    ``rank`` is the rank d of X; ``roots[i]`` pairs with ``coroots[i]``;
    ``positive`` lists the indices of the positive roots.  The label is
    cosmetic and excluded from equality/hashing.
    """

    rank: int
    roots: tuple[Vector, ...]
    coroots: tuple[Vector, ...]
    positive: tuple[int, ...]
    label: str = field(default="", compare=False)

    # -- basic index structure -------------------------------------------

    @property
    def num_roots(self) -> int:
        return len(self.roots)

    @property
    def num_positive(self) -> int:
        return len(self.positive)

    @property
    def dimension(self) -> int:
        """dim G = |Phi| + rank of the torus."""
        return len(self.roots) + self.rank

    def root_index(self, v: Vector) -> int:
        return self._root_lookup()[v]

    def coroot_index(self, v: Vector) -> int:
        return self._coroot_lookup()[v]

    def _root_lookup(self) -> dict[Vector, int]:
        cache = self.__dict__.get("_root_lookup_cache")
        if cache is None:
            cache = {v: i for i, v in enumerate(self.roots)}
            self.__dict__["_root_lookup_cache"] = cache
        return cache

    def _coroot_lookup(self) -> dict[Vector, int]:
        cache = self.__dict__.get("_coroot_lookup_cache")
        if cache is None:
            cache = {v: i for i, v in enumerate(self.coroots)}
            self.__dict__["_coroot_lookup_cache"] = cache
        return cache

    def is_positive(self, index: int) -> bool:
        return index in self._positive_set()

    def _positive_set(self) -> frozenset[int]:
        cache = self.__dict__.get("_positive_set_cache")
        if cache is None:
            cache = frozenset(self.positive)
            self.__dict__["_positive_set_cache"] = cache
        return cache

    def negative_of(self, index: int) -> int:
        return self.root_index(_neg(self.roots[index]))

    # -- reflections ------------------------------------------------------

    def reflection_matrix(self, index: int) -> Matrix:
        """Matrix of s_alpha acting on X^vee: v -> v - <alpha, v> alpha^vee."""
        root, coroot = self.roots[index], self.coroots[index]
        return tuple(
            tuple((1 if r == c else 0) - coroot[r] * root[c] for c in range(self.rank))
            for r in range(self.rank)
        )

    def root_reflection_matrix(self, index: int) -> Matrix:
        """Matrix of s_alpha acting on X: x -> x - <x, alpha^vee> alpha."""
        root, coroot = self.roots[index], self.coroots[index]
        return tuple(
            tuple((1 if r == c else 0) - root[r] * coroot[c] for c in range(self.rank))
            for r in range(self.rank)
        )

    # -- derived structure --------------------------------------------------

    def simple_root_indices(self) -> tuple[int, ...]:
        """Indices of the indecomposable positive roots."""
        cache = self.__dict__.get("_simple_cache")
        if cache is None:
            pos_vectors = {self.roots[i] for i in self.positive}
            simple = []
            for i in self.positive:
                target = self.roots[i]
                decomposable = any(
                    tuple(t - b for t, b in zip(target, beta)) in pos_vectors
                    for beta in pos_vectors
                    if beta != target
                )
                if not decomposable:
                    simple.append(i)
            cache = tuple(sorted(simple))
            self.__dict__["_simple_cache"] = cache
        return cache

    @property
    def semisimple_rank(self) -> int:
        """Rank of the span of the roots."""
        if not self.roots:
            return 0
        return len(smith_normal_form([list(v) for v in self.roots]).divisors)

    def root_form(self, x: Vector, y: Vector) -> int:
        """Canonical Weyl-invariant form on X: sum over coroots v of <x,v><y,v>."""
        return sum(_dot(x, v) * _dot(y, v) for v in self.coroots)

    def coroot_form(self, x: Vector, y: Vector) -> int:
        """Canonical Weyl-invariant form on X^vee: sum over roots a of <a,x><a,y>."""
        return sum(_dot(a, x) * _dot(a, y) for a in self.roots)

    def dual(self) -> "RootDatum":
        """Swap roots with coroots (X with X^vee); an involution."""
        return RootDatum(
            rank=self.rank,
            roots=self.coroots,
            coroots=self.roots,
            positive=self.positive,
            label=f"dual({self.label})" if self.label else "dual",
        )


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_root_datum(rd: RootDatum) -> None:
    """Check the root-datum axioms; raise InvalidInputError naming the axiom.

    Checks: coordinate shapes, <alpha, alpha^vee> = 2, distinctness,
    reducedness (no root is a multiple of another), the +/- partition
    defined by ``positive``, and stability of roots and coroots under every
    reflection, with the SAME index bijection on both sides.
    """
    d = rd.rank
    if d < 0:
        raise InvalidInputError("root-datum-axiom", "lattice rank must be nonnegative")
    if len(rd.roots) != len(rd.coroots):
        raise InvalidInputError(
            "root-datum-axiom", "roots and coroots must come in equal numbers"
        )
    for v in itertools.chain(rd.roots, rd.coroots):
        if len(v) != d:
            raise InvalidInputError(
                "root-datum-axiom",
                f"vector {v} does not have {d} coordinates",
            )
        if not any(v):
            raise InvalidInputError("root-datum-axiom", "roots must be nonzero")

    for i, (a, av) in enumerate(zip(rd.roots, rd.coroots)):
        if _dot(a, av) != 2:
            raise InvalidInputError(
                "root-datum-axiom",
                f"pairing <root, coroot> must be 2 at index {i}, got {_dot(a, av)}",
            )

    if len(set(rd.roots)) != len(rd.roots):
        raise InvalidInputError("root-datum-axiom", "roots must be distinct")
    if len(set(rd.coroots)) != len(rd.coroots):
        raise InvalidInputError("root-datum-axiom", "coroots must be distinct")

    # reducedness: no root is a rational multiple c > 1 of another root
    for v, w in itertools.permutations(rd.roots, 2):
        ratio = None
        proportional = True
        for a, b in zip(v, w):
            if a == 0 and b == 0:
                continue
            if a == 0 or b == 0:
                proportional = False
                break
            r = Fraction(b, a)
            if ratio is None:
                ratio = r
            elif r != ratio:
                proportional = False
                break
        if proportional and ratio is not None and ratio > 1:
            raise InvalidInputError(
                "root-datum-axiom",
                f"root system is not reduced: {w} is {ratio} times {v}",
            )

    pos = set(rd.positive)
    if not pos <= set(range(len(rd.roots))):
        raise InvalidInputError("root-datum-axiom", "positive indices out of range")
    if 2 * len(pos) != len(rd.roots):
        raise InvalidInputError(
            "root-datum-axiom", "positive roots must be exactly half of all roots"
        )
    lookup = rd._root_lookup()
    for i in pos:
        j = lookup.get(_neg(rd.roots[i]))
        if j is None:
            raise InvalidInputError(
                "root-datum-axiom", f"negative of root {rd.roots[i]} is missing"
            )
        if j in pos:
            raise InvalidInputError(
                "root-datum-axiom",
                f"roots {rd.roots[i]} and {rd.roots[j]} are both marked positive",
            )

    croot_lookup = rd._coroot_lookup()
    for i in range(len(rd.roots)):
        s_on_x = rd.root_reflection_matrix(i)
        s_on_xv = rd.reflection_matrix(i)
        for j in range(len(rd.roots)):
            image = _mat_vec(s_on_x, rd.roots[j])
            k = lookup.get(image)
            if k is None:
                raise InvalidInputError(
                    "root-datum-axiom",
                    f"reflection in root {rd.roots[i]} maps root {rd.roots[j]} "
                    f"outside the root set",
                )
            coimage = _mat_vec(s_on_xv, rd.coroots[j])
            if croot_lookup.get(coimage) != k:
                raise InvalidInputError(
                    "root-datum-axiom",
                    f"reflection in root {rd.roots[i]} does not act compatibly "
                    f"on root/coroot pair {j}",
                )


# ---------------------------------------------------------------------------
# Construction helpers
# ---------------------------------------------------------------------------


def _positive_indices_by_height(roots: tuple[Vector, ...]) -> tuple[int, ...]:
    """Split +/- deterministically with a linear functional positive on half.

    Uses f(v) = sum v_i B^i with B large enough that f vanishes only at 0,
    so the sign of f is well defined on every root.
    """
    if not roots:
        return ()
    m = max(abs(c) for v in roots for c in v)
    base = m + 2
    weights = [base**i for i in range(len(roots[0]))]

    def f(v: Vector) -> int:
        return sum(c * w for c, w in zip(v, weights))

    return tuple(i for i, v in enumerate(roots) if f(v) > 0)


def _solve_rational(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve rows . x = rhs over Q (any one solution; None if inconsistent)."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(n_cols):
        sel = next((r for r in range(row, n_rows) if aug[r][col] != 0), None)
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        pivot = aug[row][col]
        aug[row] = [entry / pivot for entry in aug[row]]
        for r in range(n_rows):
            if r != row and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[row])]
        pivots.append((row, col))
        row += 1
        if row == n_rows:
            break
    for r in range(row, n_rows):
        if aug[r][n_cols] != 0:
            return None
    x = [Fraction(0)] * n_cols
    for r, c in pivots:
        x[c] = aug[r][n_cols]
    return x


def _datum_from_simples(
    d: int,
    simple_roots: list[Vector],
    simple_coroots: list[Vector],
    label: str,
) -> RootDatum:
    """Generate the full system from simple (root, coroot) pairs by reflection."""
    pairs: set[tuple[Vector, Vector]] = set(zip(simple_roots, simple_coroots))
    frontier = list(pairs)
    while frontier:
        new: list[tuple[Vector, Vector]] = []
        for root, coroot in frontier:
            for s_root, s_coroot in zip(simple_roots, simple_coroots):
                pairing = _dot(root, s_coroot)
                copairing = _dot(s_root, coroot)
                image = (
                    tuple(a - pairing * b for a, b in zip(root, s_root)),
                    tuple(a - copairing * b for a, b in zip(coroot, s_coroot)),
                )
                if image not in pairs:
                    pairs.add(image)
                    new.append(image)
        frontier = new

    # positivity: a functional w on X^vee with <alpha_i, w> = 1 for simples,
    # so <root, w> is the (signed) sum of its simple-root coefficients.
    rows = [[Fraction(c) for c in root] for root in simple_roots]
    rhs = [Fraction(1)] * len(simple_roots)
    w = _solve_rational(rows, rhs)
    if w is None:  # pragma: no cover - simple roots are independent
        raise InvalidInputError("root-datum-axiom", "simple roots are dependent")

    roots = tuple(sorted(p[0] for p in pairs))
    order = {v: i for i, v in enumerate(roots)}
    coroots_list: list[Vector] = [()] * len(pairs)
    for root, coroot in pairs:
        coroots_list[order[root]] = coroot
    positive = tuple(
        i for i, v in enumerate(roots) if sum(Fraction(c) * wi for c, wi in zip(v, w)) > 0
    )
    return RootDatum(
        rank=d,
        roots=roots,
        coroots=tuple(coroots_list),
        positive=positive,
        label=label,
    )


# -- Cartan matrices, convention C[i][j] = <alpha_j, alpha_i^vee> -----------


def cartan_matrix(letter: str, r: int) -> list[list[int]]:
    """Cartan matrix of an irreducible type; entry [i][j] = <alpha_j, alpha_i^vee>."""
    if r < 1:
        raise InvalidInputError("descriptor", f"rank must be positive, got {r}")

    def chain(edges: list[tuple[int, int]]) -> list[list[int]]:
        c = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
        for i, j in edges:
            c[i][j] = -1
            c[j][i] = -1
        return c

    if letter == "A":
        return chain([(i, i + 1) for i in range(r - 1)])
    if letter == "B":  # last simple root short
        if r == 1:
            return [[2]]
        c = chain([(i, i + 1) for i in range(r - 1)])
        c[r - 1][r - 2] = -2
        return c
    if letter == "C":  # last simple root long
        if r == 1:
            return [[2]]
        c = chain([(i, i + 1) for i in range(r - 1)])
        c[r - 2][r - 1] = -2
        return c
    if letter == "D":
        if r < 2:
            raise InvalidInputError("descriptor", "type D needs rank >= 2")
        edges = [(i, i + 1) for i in range(r - 2)]
        if r >= 3:
            edges[-1] = (r - 3, r - 2)
            edges.append((r - 3, r - 1))
        return chain(edges)
    if letter == "E":
        if r not in (6, 7, 8):
            raise InvalidInputError("descriptor", "type E needs rank 6, 7, or 8")
        edges = [(i, i + 1) for i in range(r - 2)] + [(2, r - 1)]
        return chain(edges)
    if letter == "F":
        if r != 4:
            raise InvalidInputError("descriptor", "type F needs rank 4")
        c = chain([(0, 1), (1, 2), (2, 3)])
        c[2][1] = -2  # <alpha_2 (long), alpha_3^vee (short)> = -2
        return c
    if letter == "G":
        if r != 2:
            raise InvalidInputError("descriptor", "type G needs rank 2")
        return [[2, -3], [-1, 2]]  # alpha_1 short, alpha_2 long
    raise InvalidInputError("descriptor", f"unknown type letter {letter!r}")


def semisimple_datum(letter: str, r: int, isogeny: str = "sc") -> RootDatum:
    """Simply connected ('sc') or adjoint ('ad') datum of an irreducible type."""
    c = cartan_matrix(letter, r)
    if isogeny == "sc":
        # X in the fundamental-weight basis: simple root j = column j of C
        simple_roots = [tuple(c[i][j] for i in range(r)) for j in range(r)]
        simple_coroots = [tuple(1 if i == j else 0 for i in range(r)) for j in range(r)]
    elif isogeny == "ad":
        # X in the simple-root basis: simple coroot i = row i of C
        simple_roots = [tuple(1 if i == j else 0 for i in range(r)) for j in range(r)]
        simple_coroots = [tuple(c[j][i] for i in range(r)) for j in range(r)]
    else:
        raise InvalidInputError("descriptor", f"unknown isogeny {isogeny!r}")
    suffix = "" if isogeny == "sc" else "(ad)"
    return _datum_from_simples(r, simple_roots, simple_coroots, f"{letter}{r}{suffix}")


def _unit(d: int, i: int, scale: int = 1) -> Vector:
    return tuple(scale if j == i else 0 for j in range(d))


def _signed_pairs(d: int, scale: int = 1) -> list[Vector]:
    """All vectors +/- e_i +/- e_j (i<j), scaled."""
    out = []
    for i, j in itertools.combinations(range(d), 2):
        for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            out.append(tuple(scale * (si if k == i else sj if k == j else 0) for k in range(d)))
    return out


def gl_datum(n: int) -> RootDatum:
    """GL(n): X = X^vee = Z^n, roots = coroots = e_i - e_j."""
    if n < 1:
        raise InvalidInputError("descriptor", "GL(n) needs n >= 1")
    roots = tuple(
        tuple((1 if k == i else 0) - (1 if k == j else 0) for k in range(n))
        for i in range(n)
        for j in range(n)
        if i != j
    )
    positive = tuple(
        idx
        for idx, v in enumerate(roots)
        if next(c for c in v if c != 0) > 0
    )
    return RootDatum(rank=n, roots=roots, coroots=roots, positive=positive, label=f"GL({n})")


def so_odd_datum(r: int) -> RootDatum:
    """SO(2r+1): roots +/-e_i, +/-e_i+/-e_j; coroots +/-2e_i, +/-e_i+/-e_j."""
    roots: list[Vector] = []
    coroots: list[Vector] = []
    for i in range(r):
        for s in (1, -1):
            roots.append(_unit(r, i, s))
            coroots.append(_unit(r, i, 2 * s))
    for v in _signed_pairs(r):
        roots.append(v)
        coroots.append(v)
    return RootDatum(
        rank=r,
        roots=tuple(roots),
        coroots=tuple(coroots),
        positive=_positive_indices_by_height(tuple(roots)),
        label=f"SO({2 * r + 1})",
    )


def sp_datum(r: int) -> RootDatum:
    """Sp(2r): roots +/-2e_i, +/-e_i+/-e_j; coroots +/-e_i, +/-e_i+/-e_j."""
    roots: list[Vector] = []
    coroots: list[Vector] = []
    for i in range(r):
        for s in (1, -1):
            roots.append(_unit(r, i, 2 * s))
            coroots.append(_unit(r, i, s))
    for v in _signed_pairs(r):
        roots.append(v)
        coroots.append(v)
    return RootDatum(
        rank=r,
        roots=tuple(roots),
        coroots=tuple(coroots),
        positive=_positive_indices_by_height(tuple(roots)),
        label=f"Sp({2 * r})",
    )


def so_even_datum(r: int) -> RootDatum:
    """SO(2r): roots = coroots = +/-e_i +/- e_j (i < j)."""
    if r < 2:
        raise InvalidInputError("descriptor", "SO(2r) needs r >= 2")
    roots = tuple(_signed_pairs(r))
    return RootDatum(
        rank=r,
        roots=roots,
        coroots=roots,
        positive=_positive_indices_by_height(roots),
        label=f"SO({2 * r})",
    )


def torus_datum(d: int) -> RootDatum:
    if d < 1:
        raise InvalidInputError("descriptor", "T(d) needs d >= 1")
    return RootDatum(rank=d, roots=(), coroots=(), positive=(), label=f"T({d})")


def product_datum(a: RootDatum, b: RootDatum) -> RootDatum:
    """Direct product: lattices, roots, and coroots in block-diagonal form."""

    def pad_left(v: Vector) -> Vector:
        return v + (0,) * b.rank

    def pad_right(v: Vector) -> Vector:
        return (0,) * a.rank + v

    roots = tuple(pad_left(v) for v in a.roots) + tuple(pad_right(v) for v in b.roots)
    coroots = tuple(pad_left(v) for v in a.coroots) + tuple(pad_right(v) for v in b.coroots)
    positive = a.positive + tuple(i + len(a.roots) for i in b.positive)
    return RootDatum(
        rank=a.rank + b.rank,
        roots=roots,
        coroots=coroots,
        positive=positive,
        label=f"{a.label} x {b.label}",
    )


_FACTOR_RE = re.compile(
    r"^(?:"
    r"(?P<gl>GL)\((?P<gln>\d+)\)|"
    r"(?P<sl>SL)\((?P<sln>\d+)\)|"
    r"(?P<pgl>PGL)\((?P<pgln>\d+)\)|"
    r"(?P<so>SO)\((?P<son>\d+)\)|"
    r"(?P<sp>Sp)\((?P<spn>\d+)\)|"
    r"(?P<t>T)\((?P<td>\d+)\)|"
    r"(?P<letter>[ABCDEFG])(?P<rank>\d+)(?:\((?P<iso>sc|ad)\))?"
    r")$"
)


def _build_factor(text: str) -> RootDatum:
    m = _FACTOR_RE.match(text)
    if m is None:
        raise InvalidInputError(
            "descriptor",
            f"cannot parse group descriptor {text!r}; expected GL(n), SL(n), "
            f"PGL(n), SO(n), Sp(2n), T(d), or a Dynkin type like B2, G2(ad)",
        )
    if m.group("gl"):
        return gl_datum(int(m.group("gln")))
    if m.group("sl"):
        n = int(m.group("sln"))
        if n < 2:
            raise InvalidInputError("descriptor", "SL(n) needs n >= 2")
        rd = semisimple_datum("A", n - 1, "sc")
        return RootDatum(rd.rank, rd.roots, rd.coroots, rd.positive, label=f"SL({n})")
    if m.group("pgl"):
        n = int(m.group("pgln"))
        if n < 2:
            raise InvalidInputError("descriptor", "PGL(n) needs n >= 2")
        rd = semisimple_datum("A", n - 1, "ad")
        return RootDatum(rd.rank, rd.roots, rd.coroots, rd.positive, label=f"PGL({n})")
    if m.group("so"):
        n = int(m.group("son"))
        if n < 3:
            raise InvalidInputError("descriptor", "SO(n) needs n >= 3")
        return so_odd_datum((n - 1) // 2) if n % 2 else so_even_datum(n // 2)
    if m.group("sp"):
        n = int(m.group("spn"))
        if n < 2 or n % 2:
            raise InvalidInputError("descriptor", "Sp(2n) needs an even argument >= 2")
        return sp_datum(n // 2)
    if m.group("t"):
        return torus_datum(int(m.group("td")))
    return semisimple_datum(m.group("letter"), int(m.group("rank")), m.group("iso") or "sc")


def _build_explicit(data: dict) -> RootDatum:
    try:
        d = int(data["d"])
        roots = tuple(tuple(int(c) for c in v) for v in data["roots"])
        coroots = tuple(tuple(int(c) for c in v) for v in data["coroots"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(
            "descriptor",
            "explicit root datum needs integer 'd' and integer vector lists "
            "'roots' and 'coroots'",
        ) from exc
    if "positive" in data:
        positive = tuple(int(i) for i in data["positive"])
    else:
        positive = _positive_indices_by_height(roots)
    return RootDatum(
        rank=d,
        roots=roots,
        coroots=coroots,
        positive=positive,
        label=str(data.get("label", "explicit")),
    )


def build_root_datum(descriptor: str | dict) -> RootDatum:
    """Build and validate a root datum from a descriptor string or dict."""
    if isinstance(descriptor, dict):
        rd = _build_explicit(descriptor)
    elif isinstance(descriptor, str):
        factors = [part.strip() for part in descriptor.split("x")]
        if not factors or any(not part for part in factors):
            raise InvalidInputError("descriptor", f"empty factor in {descriptor!r}")
        data = [_build_factor(part) for part in factors]
        rd = data[0]
        for extra in data[1:]:
            rd = product_datum(rd, extra)
    else:
        raise InvalidInputError(
            "descriptor", f"descriptor must be a string or dict, got {type(descriptor)}"
        )
    validate_root_datum(rd)
    return rd


# ---------------------------------------------------------------------------
# Weyl group
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeylGroup:
    """The Weyl group as integer matrices acting on X^vee (column vectors)."""

    elements: tuple[Matrix, ...]
    generators: tuple[Matrix, ...]

    @property
    def order(self) -> int:
        return len(self.elements)


def _generate_matrix_group(
    d: int, generators: tuple[Matrix, ...], bound: int
) -> tuple[Matrix, ...]:
    identity = _identity(d)
    seen: set[Matrix] = {identity}
    ordered: list[Matrix] = [identity]
    frontier = [identity]
    while frontier:
        new: list[Matrix] = []
        for m in frontier:
            for g in generators:
                prod = _mat_mul(g, m)
                if prod not in seen:
                    seen.add(prod)
                    ordered.append(prod)
                    new.append(prod)
                    if len(seen) > bound:
                        raise ResourceLimitError(
                            "weyl-bound",
                            f"group enumeration exceeded {bound} elements",
                        )
        frontier = new
    return tuple(ordered)


@lru_cache(maxsize=None)
def enumerate_weyl(rd: RootDatum, bound: int = WEYL_ENUMERATION_BOUND) -> WeylGroup:
    """Enumerate the full Weyl group from simple reflections (BFS)."""
    generators = tuple(rd.reflection_matrix(i) for i in rd.simple_root_indices())
    elements = _generate_matrix_group(rd.rank, generators, bound)
    return WeylGroup(elements=elements, generators=generators)


# ---------------------------------------------------------------------------
# Poincare polynomials
# ---------------------------------------------------------------------------


def _check_subsystem(rd: RootDatum, indices: frozenset[int]) -> None:
    vectors = {rd.coroots[i] for i in indices}
    for i in indices:
        if _neg(rd.coroots[i]) not in vectors:
            raise InvalidInputError(
                "subsystem",
                f"subsystem is not symmetric: missing negative of {rd.coroots[i]}",
            )
    lookup = rd._coroot_lookup()
    for i in indices:
        for j in indices:
            s = _add(rd.coroots[i], rd.coroots[j])
            k = lookup.get(s)
            if k is not None and k not in indices:
                raise InvalidInputError(
                    "subsystem",
                    f"subsystem is not closed: {rd.coroots[i]} + {rd.coroots[j]} "
                    f"is a coroot outside it",
                )


def subsystem_simple_indices(rd: RootDatum, indices: frozenset[int]) -> tuple[int, ...]:
    """Indecomposable positive elements of a closed symmetric coroot subsystem."""
    pos = [i for i in indices if rd.is_positive(i)]
    pos_vectors = {rd.coroots[i] for i in pos}
    simple = []
    for i in pos:
        target = rd.coroots[i]
        if not any(
            tuple(t - b for t, b in zip(target, beta)) in pos_vectors
            for beta in pos_vectors
            if beta != target
        ):
            simple.append(i)
    return tuple(sorted(simple))


def subsystem_weyl_elements(
    rd: RootDatum, indices: frozenset[int], bound: int = WEYL_ENUMERATION_BOUND
) -> tuple[Matrix, ...]:
    """Elements of the reflection subgroup W(Psi) of a closed coroot subsystem."""
    simple = subsystem_simple_indices(rd, indices)
    generators = tuple(rd.reflection_matrix(i) for i in simple)
    return _generate_matrix_group(rd.rank, generators, bound)


def poincare_polynomial(
    rd: RootDatum, subsystem: "frozenset[int] | tuple[int, ...] | None" = None
) -> Poly:
    """Length generating polynomial of W(Psi) for a closed coroot subsystem.

    ``subsystem`` is a set of root/coroot indices (None means the whole
    system).  Lengths count elements of Psi+ sent to negatives, with
    positivity inherited from the ambient datum.  P(1) = |W(Psi)| and the
    degree is |Psi+|.
    """
    if subsystem is None:
        indices = frozenset(range(len(rd.roots)))
    else:
        indices = frozenset(subsystem)
    _check_subsystem(rd, indices)
    elements = subsystem_weyl_elements(rd, indices)
    positive_in = [i for i in indices if rd.is_positive(i)]
    lookup = rd._coroot_lookup()
    counts = [0] * (len(positive_in) + 1)
    for w in elements:
        length = 0
        for i in positive_in:
            image = _mat_vec(w, rd.coroots[i])
            if not rd.is_positive(lookup[image]):
                length += 1
        counts[length] += 1
    return Poly(counts)


# ---------------------------------------------------------------------------
# Center, order polynomials
# ---------------------------------------------------------------------------


def center_invariants(rd: RootDatum):
    """Invariants of X / (root lattice): free rank = central torus rank."""
    return quotient_invariants(rd.rank, [list(v) for v in rd.roots])


def connected_center_check(rd: RootDatum) -> bool:
    """True when X / (root lattice) is torsion-free (the center is a torus)."""
    return not center_invariants(rd).torsion


def cocenter_invariants(rd: RootDatum):
    """Invariants of X^vee / (coroot lattice); torsion = fundamental group."""
    return quotient_invariants(rd.rank, [list(v) for v in rd.coroots])


def order_polynomials(rd: RootDatum) -> dict[str, RationalPoly]:
    """Orders of G, B, T, Z over F_q as polynomials in q.

    |T| = (q-1)^d, |B| = q^{#Phi+} (q-1)^d, |G| = |B| P(q) with P the
    Poincare polynomial of W, and |Z| = (q-1)^z with z the central torus
    rank.  Requires a connected center, since otherwise |Z(F_q)| is not a
    polynomial in q of this shape.
    """
    if not connected_center_check(rd):
        inv = center_invariants(rd)
        raise HypothesisError(
            "connected-center",
            "the center of this group is not connected (component group "
            f"{inv.describe() if inv.free_rank == 0 else 'with torsion'}); "
            "order polynomials and the counting engine need a connected center",
        )
    d = rd.rank
    z = center_invariants(rd).free_rank
    qm1 = q_minus(1)
    t = qm1**d
    b = RationalPoly.q() ** rd.num_positive * t
    g = b * RationalPoly(poincare_polynomial(rd))
    zpoly = qm1**z
    return {"G": g, "B": b, "T": t, "Z": zpoly}


# ---------------------------------------------------------------------------
# Components, classification, admissible primes, modulus
# ---------------------------------------------------------------------------


def classify_vectors(vectors: list[Vector], form) -> str:
    """Type label of a finite root system given by vectors and an invariant form.

    Splits into irreducible components by form-orthogonality and matches
    each against (rank, count, length-ratio) fingerprints.  Components that
    match nothing are labeled 'unknown'.  Isogeny-ambiguous coincidences
    resolve to 'A1' (rank 1), 'C2' (rank 2, two lengths), 'A3' (=D3).
    Multiple components are sorted and joined with 'x'; empty -> 'empty'.
    """
    if not vectors:
        return "empty"
    remaining = set(range(len(vectors)))
    labels = []
    while remaining:
        seed = min(remaining)
        comp = {seed}
        frontier = [seed]
        while frontier:
            nxt = []
            for i in frontier:
                for j in list(remaining - comp):
                    if form(vectors[i], vectors[j]) != 0:
                        comp.add(j)
                        nxt.append(j)
            frontier = nxt
        remaining -= comp
        labels.append(_classify_component([vectors[i] for i in sorted(comp)], form))
    return "x".join(sorted(labels))


def _classify_component(vectors: list[Vector], form) -> str:
    count = len(vectors)
    r = len(smith_normal_form([list(v) for v in vectors]).divisors)
    lengths = sorted({form(v, v) for v in vectors})
    if len(lengths) == 1:
        if count == r * (r + 1):
            return f"A{r}"
        if count == 2 * r * (r - 1) and r >= 4:
            return f"D{r}"
        if (r, count) in {(6, 72), (7, 126), (8, 240)}:
            return f"E{r}"
        return "unknown"
    if len(lengths) == 2 and lengths[1] == 2 * lengths[0]:
        if (r, count) == (4, 48):
            return "F4"
        if r == 2 and count == 8:
            return "C2"
        n_short = sum(1 for v in vectors if form(v, v) == lengths[0])
        n_long = count - n_short
        if n_short == 2 * r and n_long == 2 * r * (r - 1):
            return f"B{r}"
        if n_long == 2 * r and n_short == 2 * r * (r - 1):
            return f"C{r}"
        return "unknown"
    if len(lengths) == 2 and lengths[1] == 3 * lengths[0] and r == 2 and count == 12:
        return "G2"
    return "unknown"


def root_system_type(rd: RootDatum) -> str:
    """Type label of the root system Phi inside X."""
    return classify_vectors(list(rd.roots), rd.root_form)


def coroot_system_type(rd: RootDatum) -> str:
    """Type label of the coroot system Phi^vee inside X^vee."""
    return classify_vectors(list(rd.coroots), rd.coroot_form)


@dataclass(frozen=True)
class IrreducibleComponent:
    """One irreducible component of Phi: simple indices, all root indices, label."""

    simple_indices: tuple[int, ...]
    root_indices: tuple[int, ...]
    type_label: str


def irreducible_components(rd: RootDatum) -> tuple[IrreducibleComponent, ...]:
    """Decompose Phi into irreducible components via the Dynkin graph."""
    simples = rd.simple_root_indices()
    if not simples:
        return ()
    adj = {
        i: {
            j
            for j in simples
            if j != i and _dot(rd.roots[i], rd.coroots[j]) != 0
        }
        for i in simples
    }
    unassigned = set(simples)
    groups: list[tuple[int, ...]] = []
    while unassigned:
        seed = min(unassigned)
        comp = {seed}
        frontier = [seed]
        while frontier:
            frontier = [j for i in frontier for j in adj[i] if j not in comp]
            comp.update(frontier)
        unassigned -= comp
        groups.append(tuple(sorted(comp)))

    components = []
    for group in groups:
        root_idxs = []
        for i in range(len(rd.roots)):
            coeffs = _expansion_coefficients(rd, rd.roots[i])
            support = {j for j, c in coeffs.items() if c != 0}
            if support and support <= set(group):
                root_idxs.append(i)
        vectors = [rd.roots[i] for i in root_idxs]
        label = classify_vectors(vectors, rd.root_form)
        components.append(
            IrreducibleComponent(
                simple_indices=group,
                root_indices=tuple(root_idxs),
                type_label=label,
            )
        )
    return tuple(components)


def _expansion_coefficients(rd: RootDatum, vector: Vector) -> dict[int, Fraction]:
    """Coefficients of a root in the simple-root basis (exact, unique)."""
    simples = rd.simple_root_indices()
    columns = [rd.roots[i] for i in simples]
    rows = [[Fraction(columns[j][k]) for j in range(len(simples))] for k in range(rd.rank)]
    rhs = [Fraction(c) for c in vector]
    sol = _solve_rational(rows, rhs)
    if sol is None:  # pragma: no cover - roots lie in the simple span
        raise InvalidInputError("root-datum-axiom", "root outside the simple-root span")
    return {simples[j]: sol[j] for j in range(len(simples))}


def highest_root_coefficients(rd: RootDatum, component: IrreducibleComponent) -> tuple[int, ...]:
    """Coefficients of the highest root of a component in its simple-root basis.

    The highest root is the unique positive root in the component to which
    no simple root can be added inside Phi; equivalently its coefficient
    vector dominates all others.
    """
    best: tuple[int, ...] | None = None
    best_height = -1
    for i in component.root_indices:
        if not rd.is_positive(i):
            continue
        coeffs = _expansion_coefficients(rd, rd.roots[i])
        values = []
        for j in component.simple_indices:
            c = coeffs.get(j, Fraction(0))
            if c.denominator != 1:  # pragma: no cover - integral for genuine roots
                raise InvalidInputError("root-datum-axiom", "non-integral root coefficient")
            values.append(int(c))
        height = sum(values)
        if height > best_height:
            best_height = height
            best = tuple(values)
    assert best is not None
    return best


def _prime_factors(n: int) -> set[int]:
    n = abs(n)
    out = set()
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


@dataclass(frozen=True)
class AdmissiblePrimes:
    """Primes that must be avoided by the field characteristic."""

    excluded: tuple[int, ...]

    def is_admissible(self, p: int) -> bool:
        return p not in self.excluded


def admissible_primes(rd: RootDatum) -> AdmissiblePrimes:
    """Characteristics where regular unipotent classes behave uniformly.

    Always excludes 2; per irreducible component of type A_r or C_r the
    primes dividing r+1, type B_r the primes dividing 2r-1, type D_r the
    primes dividing r-1, and 3 for the exceptional types (plus 5 for E8).
    """
    excluded = {2}
    for comp in irreducible_components(rd):
        label = comp.type_label
        letter, rank_str = label[0], label[1:]
        r = int(rank_str) if rank_str.isdigit() else 0
        if letter in ("A", "C"):
            excluded |= _prime_factors(r + 1)
        elif letter == "B":
            excluded |= _prime_factors(2 * r - 1)
        elif letter == "D":
            excluded |= _prime_factors(r - 1)
        elif letter in ("E", "F", "G"):
            excluded.add(3)
            if label == "E8":
                excluded.add(5)
        else:
            raise InvalidInputError(
                "descriptor", f"cannot classify component of type {label!r}"
            )
    return AdmissiblePrimes(excluded=tuple(sorted(excluded)))


def modulus(rd: RootDatum) -> int:
    """Order of eigenvalue data needed for the counting formula to apply.

    Computed as the lcm of all highest-root coefficients (per irreducible
    component, in that component's simple-root basis) together with the
    order of the torsion of X / (root lattice).
    """
    values = [center_invariants(rd).torsion_order]
    for comp in irreducible_components(rd):
        values.extend(highest_root_coefficients(rd, comp))
    return math.lcm(*values) if values else 1
