"""Symbolic torus elements and the local factors of the counting formula.

Eigenvalue coordinates of semisimple classes live in a finitely presented
abelian group A = <symbols | relations>, thought of as a subgroup of the
multiplicative group of the field in a "pure" way: a word equals 1, or is a
d-th power, exactly when the relations force it.  A torus element S in
T(k) = X^vee (x) k^x is stored as one A-word per X^vee coordinate.

On top of that this module provides:

* ``evaluate_character`` — pair a character (vector in X) with S;
* ``translate`` / ``product_translate`` — the Weyl action on torus
  elements, and the product of several translated elements;
* ``strongly_regular`` — no root trivial on S and trivial Weyl stabilizer;
* ``in_commutator`` — whether S dies in (X^vee / <Psi>) (x) A, decided by
  Smith normal form: in SNF coordinates the torsion conditions become
  "this word is a d_i-th power" and the free conditions "this word is 1";
* ``delta`` / ``alpha`` — the per-subsystem factor
  |Tor(X^vee/<Psi>)| (q-1)^rank [S in commutator] and its Mobius
  alternation over the subsystem poset.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .abelian import (
    FPAbelianGroup,
    canonical_word,
    is_dth_power,
    is_identity,
    quotient_invariants,
    smith_normal_form,
)
from .errors import InvalidInputError
from .qpoly import RationalPoly, q_minus
from .rootdata import Matrix, RootDatum, Vector, enumerate_weyl
from .subsystems import SubsystemPoset

Word = tuple[int, ...]

_TERM_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class EigenvalueDatum:
    """Named generators and relations for the eigenvalue group A.

    ``relations`` are strings like ``"a*b = t^2"`` or bare words like
    ``"a*b*c"`` (meaning the word equals 1).  Words multiply generators with
    ``*`` and exponentiate with ``^`` (negative exponents allowed); ``1``
    denotes the empty word.
    """

    symbols: tuple[str, ...]
    relations: tuple[str, ...] = ()

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise InvalidInputError("eigenvalue-data", "repeated eigenvalue symbols")
        for s in self.symbols:
            if not _TERM_RE.match(s) or "^" in s:
                raise InvalidInputError(
                    "eigenvalue-data", f"invalid eigenvalue symbol {s!r}"
                )

    @property
    def group(self) -> FPAbelianGroup:
        cached = self.__dict__.get("_group")
        if cached is None:
            rows = tuple(self.parse_relation(r) for r in self.relations)
            cached = FPAbelianGroup(
                generator_count=len(self.symbols),
                relations=rows,
                names=self.symbols,
            )
            self.__dict__["_group"] = cached
        return cached

    def parse_word(self, text: str) -> Word:
        """Parse ``"a*b^-2"`` into an exponent vector over the symbols."""
        text = text.strip()
        out = [0] * len(self.symbols)
        if text in ("1", ""):
            return tuple(out)
        index = {s: i for i, s in enumerate(self.symbols)}
        for raw in text.split("*"):
            m = _TERM_RE.match(raw.strip())
            if m is None:
                raise InvalidInputError(
                    "eigenvalue-word", f"cannot parse term {raw.strip()!r} in {text!r}"
                )
            name, exp = m.group(1), int(m.group(2) or 1)
            if name not in index:
                raise InvalidInputError(
                    "eigenvalue-word", f"unknown eigenvalue symbol {name!r} in {text!r}"
                )
            out[index[name]] += exp
        return tuple(out)

    def parse_relation(self, text: str) -> Word:
        """Parse ``"lhs = rhs"`` (or a bare word meaning "= 1") to a relator."""
        parts = text.split("=")
        if len(parts) == 1:
            return self.parse_word(parts[0])
        if len(parts) != 2:
            raise InvalidInputError(
                "eigenvalue-data", f"relation {text!r} needs exactly one '='"
            )
        lhs = self.parse_word(parts[0])
        rhs = self.parse_word(parts[1])
        return tuple(a - b for a, b in zip(lhs, rhs))

    def word_str(self, word: Word) -> str:
        terms = [
            s if e == 1 else f"{s}^{e}"
            for s, e in zip(self.symbols, word)
            if e != 0
        ]
        return "*".join(terms) if terms else "1"


@dataclass(frozen=True)
class SymbolicTorusElement:
    """S in T(k): one eigenvalue word per coordinate of X^vee = Z^d."""

    datum: EigenvalueDatum
    coords: tuple[Word, ...]

    @staticmethod
    def from_words(datum: EigenvalueDatum, words) -> "SymbolicTorusElement":
        return SymbolicTorusElement(
            datum=datum, coords=tuple(datum.parse_word(w) for w in words)
        )

    def canonical_key(self) -> tuple[Word, ...]:
        """Coordinatewise canonical form in A; equal keys = equal elements."""
        g = self.datum.group
        return tuple(canonical_word(g, w) for w in self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(self.datum.word_str(w) for w in self.coords) + ")"


def evaluate_character(character: Vector, element: SymbolicTorusElement) -> Word:
    """The word chi(S) for a character chi in X (dot pairing with X^vee)."""
    n = len(element.datum.symbols)
    out = [0] * n
    for coeff, word in zip(character, element.coords):
        if coeff:
            for i in range(n):
                out[i] += coeff * word[i]
    return tuple(out)


def translate(w: Matrix, element: SymbolicTorusElement) -> SymbolicTorusElement:
    """Weyl action: coordinates transform by the matrix of w on X^vee."""
    coords = element.coords
    n = len(element.datum.symbols)
    new = []
    for row in w:
        acc = [0] * n
        for c, coeff in enumerate(row):
            if coeff:
                for i in range(n):
                    acc[i] += coeff * coords[c][i]
        new.append(tuple(acc))
    return SymbolicTorusElement(datum=element.datum, coords=tuple(new))


def product_translate(ws, elements) -> SymbolicTorusElement:
    """The product (sum in X^vee (x) A) of w_k . S_k over k."""
    elements = list(elements)
    ws = list(ws)
    if len(ws) != len(elements) or not elements:
        raise InvalidInputError(
            "weyl-translate", "need equally many Weyl elements and torus elements"
        )
    translated = [translate(w, s) for w, s in zip(ws, elements)]
    datum = translated[0].datum
    n = len(datum.symbols)
    d = len(translated[0].coords)
    coords = []
    for r in range(d):
        acc = [0] * n
        for s in translated:
            for i in range(n):
                acc[i] += s.coords[r][i]
        coords.append(tuple(acc))
    return SymbolicTorusElement(datum=datum, coords=tuple(coords))


def identity_element(datum: EigenvalueDatum, rank: int) -> SymbolicTorusElement:
    zero = (0,) * len(datum.symbols)
    return SymbolicTorusElement(datum=datum, coords=(zero,) * rank)


def strongly_regular(rd: RootDatum, element: SymbolicTorusElement) -> bool:
    """No root evaluates to 1 on S, and only the identity of W fixes S.

    Both clauses are decided inside A: a root kills S when the relations
    force alpha(S) = 1, and w fixes S when every coordinate of w.S / S is
    forced trivial.
    """
    if len(element.coords) != rd.rank:
        raise InvalidInputError(
            "torus-element", "torus element has wrong number of coordinates"
        )
    group = element.datum.group
    for i in rd.positive:
        if is_identity(group, evaluate_character(rd.roots[i], element)):
            return False
    identity = tuple(
        tuple(1 if r == c else 0 for c in range(rd.rank)) for r in range(rd.rank)
    )
    for w in enumerate_weyl(rd).elements:
        if w == identity:
            continue
        moved = translate(w, element)
        if all(
            is_identity(group, tuple(a - b for a, b in zip(mc, ec)))
            for mc, ec in zip(moved.coords, element.coords)
        ):
            return False
    return True


@lru_cache(maxsize=None)
def _psi_membership(rd: RootDatum, psi: tuple[int, ...]):
    """Smith data of the lattice <Psi> inside X^vee: (V, divisors)."""
    rows = [list(rd.coroots[i]) for i in psi]
    snf = smith_normal_form(rows)
    return snf.V, snf.divisors


def in_commutator(rd: RootDatum, psi, element: SymbolicTorusElement) -> bool:
    """Does S become trivial in (X^vee / <Psi>) (x) A?

    In Smith coordinates of <Psi> <= X^vee the condition splits: along a
    torsion direction with divisor d_i the transformed word must be a d_i-th
    power in A; along a free direction it must be the identity.
    """
    return _in_commutator_cached(rd, tuple(sorted(psi)), element)


@lru_cache(maxsize=None)
def _in_commutator_cached(
    rd: RootDatum, psi: tuple[int, ...], element: SymbolicTorusElement
) -> bool:
    group = element.datum.group
    if not psi:
        return all(is_identity(group, w) for w in element.coords)
    v_mat, divisors = _psi_membership(rd, psi)
    d = rd.rank
    n = len(element.datum.symbols)
    # b = V^T . a where a is the coordinate column of S (entries are words)
    for j in range(d):
        b_j = [0] * n
        for i in range(d):
            coeff = v_mat[i][j]
            if coeff:
                for t in range(n):
                    b_j[t] += coeff * element.coords[i][t]
        word = tuple(b_j)
        if j < len(divisors):
            if not is_dth_power(group, word, divisors[j]):
                return False
        else:
            if not is_identity(group, word):
                return False
    return True


def delta(rd: RootDatum, psi, element: SymbolicTorusElement) -> RationalPoly:
    """|Tor(X^vee/<Psi>)| (q-1)^rank(X^vee/<Psi>) if S dies there, else 0."""
    return _delta_cached(rd, tuple(sorted(psi)), element)


@lru_cache(maxsize=None)
def _delta_cached(
    rd: RootDatum, psi: tuple[int, ...], element: SymbolicTorusElement
) -> RationalPoly:
    inv = quotient_invariants(rd.rank, [list(rd.coroots[i]) for i in psi])
    if not in_commutator(rd, psi, element):
        return RationalPoly.from_int(0)
    return q_minus(1) ** inv.free_rank * RationalPoly.from_int(inv.torsion_order)


def alpha(poset: SubsystemPoset, node: int, element: SymbolicTorusElement) -> RationalPoly:
    """Mobius alternation of delta over the nodes above ``node``."""
    total = RationalPoly.from_int(0)
    for j in poset.upper_set(node):
        mu = poset.mobius(node, j)
        if mu:
            total = total + delta(poset.rd, poset.nodes[j], element) * RationalPoly.from_int(mu)
    return total
