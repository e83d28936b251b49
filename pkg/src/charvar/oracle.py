"""Brute-force point counts of character varieties over small prime fields.

This module is the independent cross-check for the polynomial counting
formula: it counts honest matrix tuples instead of evaluating polynomials.
A ``FiniteGroupModel`` materializes GL(2), GL(3) or PGL(2) over a prime
field F_q together with its conjugacy-class structure (classes are keyed
by characteristic polynomial and minimal-polynomial degree; for PGL(2) by
the scaling-invariant tr^2/det plus, for trace zero, the square class of
the determinant).  Solution tuples

    [A_1,B_1] ... [A_g,B_g] X_1 ... X_n = 1,    X_i in C_i,

are counted by enumerating X_1 .. X_{n-1} and solving for X_n (a single
class-membership test), while the genus part is folded through conjugacy
classes: the number of ways to express an element as a product of g
commutators is a class function, computed for one representative per
class and convolved g-1 times.  The tuple total is divided exactly by
|(G/Z)(F_q)|; a failed division is reported as an internal error rather
than rounded.

``verify_witness`` checks explicit solution families given as symbolic
matrices: the eigenvalue symbols are specialized at concrete values in
F_q^x (either supplied or sampled with a seeded generator, rejecting
values that violate the declared relations or nonvanishing constraints),
and the product relation plus every class membership are tested on the
resulting integer matrices.
"""

from __future__ import annotations

import itertools
import multiprocessing
import random
from collections import Counter
from dataclasses import dataclass

from .charsum import EigenvalueDatum
from .errors import (
    InternalConsistencyError,
    InvalidInputError,
    ResourceLimitError,
)

Matrix = tuple[tuple[int, ...], ...]

DEFAULT_ORACLE_BUDGET = 10**9
DEFAULT_FIELD_CAP = 11
# Guard on raw enumeration size q**(size*size); keeps GL(3) at q <= 5.
MAX_ENUMERATION = 8_000_000

_SUPPORTED = {("GL", 2), ("GL", 3), ("PGL", 2)}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in range(2, int(n**0.5) + 1):
        if n % p == 0:
            return False
    return True


def _identity(size: int) -> Matrix:
    return tuple(
        tuple(1 if i == j else 0 for j in range(size)) for i in range(size)
    )


def _mat_mul(a: Matrix, b: Matrix, q: int) -> Matrix:
    size = len(a)
    cols = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % q for col in cols)
        for row in a
    )


def _det(m: Matrix, q: int) -> int:
    if len(m) == 2:
        return (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % q
    (a, b, c), (d, e, f), (g, h, i) = m
    return (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % q


def _mat_inv(m: Matrix, q: int) -> Matrix:
    det = _det(m, q)
    det_inv = pow(det, q - 2, q)
    if len(m) == 2:
        return (
            ((m[1][1] * det_inv) % q, (-m[0][1] * det_inv) % q),
            ((-m[1][0] * det_inv) % q, (m[0][0] * det_inv) % q),
        )
    # 3x3 adjugate
    (a, b, c), (d, e, f), (g, h, i) = m
    cof = (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - d * i, a * i - c * g, c * d - a * f),
        (d * h - e * g, b * g - a * h, a * e - b * d),
    )
    return tuple(tuple((x * det_inv) % q for x in row) for row in cof)


def _char_poly(m: Matrix, q: int) -> tuple[int, ...]:
    """Non-leading coefficients (c_0, .., c_{n-1}) of det(xI - m) mod q."""
    if len(m) == 2:
        tr = m[0][0] + m[1][1]
        return (_det(m, q), (-tr) % q)
    tr = m[0][0] + m[1][1] + m[2][2]
    minors = (
        m[1][1] * m[2][2] - m[1][2] * m[2][1],
        m[0][0] * m[2][2] - m[0][2] * m[2][0],
        m[0][0] * m[1][1] - m[0][1] * m[1][0],
    )
    return ((-_det(m, q)) % q, sum(minors) % q, (-tr) % q)


def _is_scalar(m: Matrix) -> bool:
    size = len(m)
    return all(
        m[i][j] == (m[0][0] if i == j else 0)
        for i in range(size)
        for j in range(size)
    )


def _min_poly_degree(m: Matrix, q: int) -> int:
    """Degree of the minimal polynomial of m over F_q (size <= 3)."""
    if _is_scalar(m):
        return 1
    size = len(m)
    if size == 2:
        return 2
    # size 3, non-scalar: degree 2 iff m^2 = x*m + y*I for some x, y.
    m2 = _mat_mul(m, m, q)
    x = None
    for i in range(3):
        for j in range(3):
            if i != j and m[i][j] % q:
                x = (m2[i][j] * pow(m[i][j], q - 2, q)) % q
                break
        if x is not None:
            break
    if x is None:
        # m is diagonal and non-scalar: use two distinct diagonal entries.
        for i in range(1, 3):
            diff = (m[i][i] - m[0][0]) % q
            if diff:
                x = ((m2[i][i] - m2[0][0]) * pow(diff, q - 2, q)) % q
                break
    y = (m2[0][0] - x * m[0][0]) % q
    for i in range(3):
        for j in range(3):
            expect = (x * m[i][j] + (y if i == j else 0)) % q
            if m2[i][j] != expect:
                return 3
    return 2


def _legendre(x: int, q: int) -> int:
    """1 for nonzero squares, q-1 for nonsquares (q an odd prime)."""
    return pow(x % q, (q - 1) // 2, q)


@dataclass(frozen=True)
class FiniteGroupModel:
    """One of GL(2), GL(3), PGL(2) over a prime field, fully enumerated.

    ``elements`` holds every group element as a tuple-of-tuples matrix
    (canonical projective representatives for PGL: the first nonzero
    entry in row-major order is scaled to 1).  Conjugacy data is derived
    lazily and cached on the instance.
    """

    family: str
    size: int
    q: int
    elements: tuple[Matrix, ...]
    label: str

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def center_order(self) -> int:
        return (self.q - 1) if self.family == "GL" else 1

    @property
    def quotient_order(self) -> int:
        """Order of (G/Z)(F_q), the group the count is divided by."""
        return self.order // self.center_order

    def canonical(self, m: Matrix) -> Matrix:
        if self.family == "GL":
            return m
        flat = [x for row in m for x in row]
        lead = next(x for x in flat if x)
        scale = pow(lead, self.q - 2, self.q)
        return tuple(tuple((x * scale) % self.q for x in row) for row in m)

    def mul(self, a: Matrix, b: Matrix) -> Matrix:
        return self.canonical(_mat_mul(a, b, self.q))

    def inv(self, a: Matrix) -> Matrix:
        return self.canonical(_mat_inv(a, self.q))

    def class_key(self, m: Matrix) -> tuple:
        q = self.q
        if self.family == "GL":
            return ("gl", _char_poly(m, q), _min_poly_degree(m, q))
        m = self.canonical(m)
        if _is_scalar(m):
            return ("pgl-central",)
        tr = (m[0][0] + m[1][1]) % q
        t = (tr * tr * pow(_det(m, q), q - 2, q)) % q
        if t == 4 % q:
            return ("pgl-unipotent",)
        if t == 0:
            return ("pgl-order2", _legendre(_det(m, q), q))
        return ("pgl-ss", t)

    def class_table(self) -> dict:
        """Map class key -> (representative, class size)."""
        cached = self.__dict__.get("_class_table")
        if cached is None:
            table: dict = {}
            keys: dict = {}
            for m in self.elements:
                key = self.class_key(m)
                keys[m] = key
                if key in table:
                    rep, size = table[key]
                    table[key] = (rep, size + 1)
                else:
                    table[key] = (m, 1)
            self.__dict__["_class_table"] = table
            self.__dict__["_element_keys"] = keys
            cached = table
        return cached

    def element_key(self, m: Matrix) -> tuple:
        """Class key of a group element, via the cached lookup table."""
        self.class_table()
        return self.__dict__["_element_keys"][m]

    def members(self, key: tuple) -> tuple[Matrix, ...]:
        cached = self.__dict__.setdefault("_members", {})
        if key not in cached:
            self.class_table()
            keys = self.__dict__["_element_keys"]
            cached[key] = tuple(m for m in self.elements if keys[m] == key)
        return cached[key]

    def inverse_table(self) -> dict:
        cached = self.__dict__.get("_inverse_table")
        if cached is None:
            cached = {m: self.inv(m) for m in self.elements}
            self.__dict__["_inverse_table"] = cached
        return cached


def build_model(
    family: str, size: int, q: int, *, cap: int = DEFAULT_FIELD_CAP
) -> FiniteGroupModel:
    """Enumerate GL(2), GL(3) or PGL(2) over F_q (q prime, q <= cap)."""
    if (family, size) not in _SUPPORTED:
        raise InvalidInputError(
            "oracle-group",
            f"brute-force models support GL(2), GL(3), PGL(2); "
            f"got {family}({size})",
        )
    if not _is_prime(q):
        raise InvalidInputError(
            "oracle-field",
            f"q = {q} is not prime; models are implemented over prime "
            f"fields only",
        )
    if family == "PGL" and q == 2:
        raise InvalidInputError(
            "oracle-field",
            "PGL(2) models require an odd prime field",
        )
    if q > cap:
        raise ResourceLimitError(
            "oracle-cap", f"q = {q} exceeds the field cap {cap}"
        )
    if q**(size * size) > MAX_ENUMERATION:
        raise ResourceLimitError(
            "oracle-cap",
            f"enumerating {family}({size}) over F_{q} needs "
            f"{q**(size*size)} candidates (limit {MAX_ENUMERATION})",
        )
    elements = []
    seen = set()
    for entries in itertools.product(range(q), repeat=size * size):
        m = tuple(entries[i * size : (i + 1) * size] for i in range(size))
        if _det(m, q) == 0:
            continue
        if family == "PGL":
            flat = next(x for x in entries if x)
            scale = pow(flat, q - 2, q)
            m = tuple(tuple((x * scale) % q for x in row) for row in m)
            if m in seen:
                continue
            seen.add(m)
        elements.append(m)
    return FiniteGroupModel(
        family=family,
        size=size,
        q=q,
        elements=tuple(elements),
        label=f"{family}({size}, F_{q})",
    )


@dataclass(frozen=True)
class ConcreteClassData:
    """A conjugacy class of the model: key, representative, size."""

    label: str
    kind: str  # "semisimple" | "regular_unipotent"
    key: tuple
    rep: Matrix
    size: int


def semisimple_class(
    model: FiniteGroupModel, values: tuple[int, ...]
) -> ConcreteClassData:
    """Strongly regular semisimple class with the given eigenvalues.

    For GL(n) the values are the n diagonal entries (pairwise distinct,
    nonzero mod q); for PGL(2) a single value, the eigenvalue ratio
    (distinct from 0 and +-1).
    """
    q = model.q
    values = tuple(v % q for v in values)
    if model.family == "GL":
        if len(values) != model.size:
            raise InvalidInputError(
                "oracle-class",
                f"{model.label} needs {model.size} eigenvalues, "
                f"got {len(values)}",
            )
        if 0 in values or len(set(values)) != len(values):
            raise InvalidInputError(
                "oracle-class",
                f"eigenvalues {values} are not distinct units mod {q}",
            )
        rep = tuple(
            tuple(values[i] if i == j else 0 for j in range(model.size))
            for i in range(model.size)
        )
        torus_order = (q - 1) ** model.size
        label = f"semisimple{values}"
    else:
        if len(values) != 1:
            raise InvalidInputError(
                "oracle-class",
                f"{model.label} classes take one eigenvalue-ratio value",
            )
        ratio = values[0]
        if ratio in (0, 1, q - 1):
            raise InvalidInputError(
                "oracle-class",
                f"eigenvalue ratio {ratio} is not strongly regular mod {q}",
            )
        rep = model.canonical(((ratio, 0), (0, 1)))
        torus_order = q - 1
        label = f"semisimple(ratio={values[0]})"
    key = model.class_key(rep)
    _, size = model.class_table()[key]
    expected = model.order // torus_order
    if size != expected:
        raise InternalConsistencyError(
            "class-size",
            f"{label} in {model.label} has size {size}, expected {expected}",
        )
    return ConcreteClassData(label, "semisimple", key, rep, size)


def regular_unipotent_class(model: FiniteGroupModel) -> ConcreteClassData:
    """The regular unipotent class (single Jordan block, eigenvalue 1)."""
    size = model.size
    rep = tuple(
        tuple(1 if j == i or j == i + 1 else 0 for j in range(size))
        for i in range(size)
    )
    rep = model.canonical(rep)
    key = model.class_key(rep)
    _, cls_size = model.class_table()[key]
    ss_rank = size - 1 if model.family == "GL" else 1
    expected = model.order // model.center_order // model.q**ss_rank
    if cls_size != expected:
        raise InternalConsistencyError(
            "class-size",
            f"regular unipotent class in {model.label} has size "
            f"{cls_size}, expected {expected}",
        )
    return ConcreteClassData("regular_unipotent", "regular_unipotent", key, rep, cls_size)


def _split_chunks(items: list, parts: int) -> list[list]:
    chunks = [items[i::parts] for i in range(parts)]
    return [c for c in chunks if c]


def _leaf_count(model, prefix, member_lists, target_key) -> int:
    if not member_lists:
        return 1 if model.class_key(prefix) == target_key else 0
    head = member_lists[0]
    tail = member_lists[1:]
    mul = model.mul
    if not tail:
        # Innermost loop: products stay inside the group, so the cached
        # element->key table applies.
        key_of = model.element_key
        return sum(
            1 for x in head if key_of(mul(prefix, x)) == target_key
        )
    return sum(_leaf_count(model, mul(prefix, x), tail, target_key) for x in head)


def _leaf_chunk(args) -> int:
    model, prefix, chunk, tail, target_key = args
    total = 0
    for x in chunk:
        total += _leaf_count(model, model.mul(prefix, x), tail, target_key)
    return total


def _dist_chunk(args) -> dict:
    model, chunk = args
    inverses = model.inverse_table()
    mul = model.mul
    key_of = model.element_key
    hist: Counter = Counter()
    for rep_a, size_a in chunk:
        a_inv = inverses[rep_a]
        for b in model.elements:
            comm = mul(mul(rep_a, b), mul(a_inv, inverses[b]))
            hist[key_of(comm)] += size_a
    return dict(hist)


def _commutator_distribution(model: FiniteGroupModel, threads: int) -> dict:
    """Per-element count of commutator representations, by class key.

    Returns v with v[key] = #{(A, B) : [A, B] = M} for any single M in
    the class ``key`` (the count is a class function, so summing
    |class| * v[key] recovers |G|^2).
    """
    table = model.class_table()
    items = [(rep, size) for rep, size in table.values()]
    if threads > 1 and len(items) > 1:
        chunks = _split_chunks(items, threads)
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(len(chunks)) as pool:
            parts = pool.map(
                _dist_chunk, [(model, chunk) for chunk in chunks]
            )
        hist: Counter = Counter()
        for part in parts:
            hist.update(part)
    else:
        hist = Counter(_dist_chunk((model, items)))
    order = model.order
    if sum(hist.values()) != order * order:
        raise InternalConsistencyError(
            "oracle-distribution",
            "commutator histogram does not account for |G|^2 pairs",
        )
    dist = {}
    for key, (rep, size) in table.items():
        total = hist.get(key, 0)
        if total % size:
            raise InternalConsistencyError(
                "oracle-distribution",
                f"commutator count onto class {key} is not a class function",
            )
        dist[key] = total // size
    return dist


def _convolve(model: FiniteGroupModel, v: dict, v1: dict) -> dict:
    """One more genus handle: v'(M) = sum_P v(P) v1(P^-1 M)."""
    table = model.class_table()
    inverses = model.inverse_table()
    key_of = model.element_key
    mul = model.mul
    out = {}
    for key, (rep, _size) in table.items():
        out[key] = sum(
            v[key_of(p)] * v1[key_of(mul(inverses[p], rep))]
            for p in model.elements
        )
    return out


def brute_force_count(
    model: FiniteGroupModel,
    genus: int,
    classes: tuple[ConcreteClassData, ...],
    *,
    budget: int = DEFAULT_ORACLE_BUDGET,
    threads: int = 1,
) -> int:
    """Number of F_q-points of the character variety, by enumeration.

    Counts tuples (A_1, B_1, .., A_g, B_g, X_1, .., X_n) satisfying the
    product relation with X_i in classes[i] (X_n solved for and
    membership-tested), then divides exactly by |(G/Z)(F_q)|.
    """
    if genus < 0:
        raise InvalidInputError("oracle-input", "genus must be >= 0")
    if not classes:
        raise InvalidInputError("oracle-input", "need at least one class")
    if threads < 1:
        raise InvalidInputError("oracle-input", "threads must be >= 1")
    table = model.class_table()
    num_classes = len(table)
    free = classes[:-1]
    leaf_cost = 1
    for cls in free:
        leaf_cost *= cls.size
    if genus == 0:
        estimate = leaf_cost
    else:
        estimate = genus * num_classes * model.order + num_classes * leaf_cost
    if estimate > budget:
        raise ResourceLimitError(
            "oracle-budget",
            f"enumeration needs about {estimate} steps "
            f"(budget {budget})",
        )
    target_key = model.class_key(model.inv(classes[-1].rep))
    member_lists = [list(model.members(cls.key)) for cls in free]

    def fold(prefix: Matrix) -> int:
        if threads > 1 and member_lists and len(member_lists[0]) >= threads:
            chunks = _split_chunks(member_lists[0], threads)
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(len(chunks)) as pool:
                parts = pool.map(
                    _leaf_chunk,
                    [
                        (model, prefix, chunk, member_lists[1:], target_key)
                        for chunk in chunks
                    ],
                )
            return sum(parts)
        return _leaf_count(model, prefix, member_lists, target_key)

    if genus == 0:
        total = fold(_identity(model.size))
    else:
        v1 = _commutator_distribution(model, threads)
        v = v1
        for _ in range(genus - 1):
            v = _convolve(model, v, v1)
        check = sum(size * v[key] for key, (_rep, size) in table.items())
        if check != model.order ** (2 * genus):
            raise InternalConsistencyError(
                "oracle-distribution",
                f"genus-{genus} handle distribution does not sum to |G|^2g",
            )
        memo: dict = {}
        total = 0
        for key, (rep, size) in table.items():
            weight = v[key]
            if not weight:
                continue
            if key not in memo:
                memo[key] = _leaf_count(model, rep, member_lists, target_key)
            total += size * weight * memo[key]
    if total % model.quotient_order:
        raise InternalConsistencyError(
            "oracle-division",
            f"solution count {total} is not divisible by "
            f"|G/Z| = {model.quotient_order}",
        )
    return total // model.quotient_order


class _Fp:
    """Field element for evaluating witness entries written as formulas."""

    __slots__ = ("value", "q")

    def __init__(self, value: int, q: int):
        self.value = value % q
        self.q = q

    def _coerce(self, other) -> "_Fp":
        if isinstance(other, _Fp):
            return other
        if isinstance(other, int):
            return _Fp(other, self.q)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _Fp(self.value + other.value, self.q)

    __radd__ = __add__

    def __neg__(self):
        return _Fp(-self.value, self.q)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _Fp(self.value - other.value, self.q)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _Fp(other.value - self.value, self.q)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _Fp(self.value * other.value, self.q)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.value == 0:
            raise ZeroDivisionError("witness entry divides by zero")
        return _Fp(self.value * pow(other.value, self.q - 2, self.q), self.q)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__truediv__(self)

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return (_Fp(1, self.q) / self) ** (-exponent)
        return _Fp(pow(self.value, exponent, self.q), self.q)


def _eval_expr(expr: str, values: dict[str, int], q: int) -> int:
    namespace = {name: _Fp(v, q) for name, v in values.items()}
    result = eval(expr, {"__builtins__": {}}, namespace)
    if isinstance(result, _Fp):
        return result.value
    return result % q


@dataclass(frozen=True)
class WitnessSpec:
    """An explicit family of solution tuples with symbolic entries.

    ``matrices`` entries and class eigenvalues are arithmetic formulas in
    the symbols; ``relations`` use the multiplicative word syntax of
    eigenvalue data ("a*b = t^2"); ``constraints`` are formulas that must
    evaluate to a nonzero field element for a specialization to count as
    admissible.  Each entry of ``classes`` is either a tuple of
    eigenvalue formulas (semisimple; for PGL(2) the single eigenvalue
    ratio) or the string "regular_unipotent".
    """

    family: str
    size: int
    symbols: tuple[str, ...]
    relations: tuple[str, ...]
    constraints: tuple[str, ...]
    matrices: tuple[tuple[tuple[str, ...], ...], ...]
    classes: tuple
    label: str = ""


def _admissible_values(
    witness: WitnessSpec, q: int, values: dict[str, int]
) -> bool:
    datum = EigenvalueDatum(witness.symbols, witness.relations)
    for relation in witness.relations:
        relator = datum.parse_relation(relation)
        prod = 1
        for sym, exp in zip(witness.symbols, relator):
            prod = prod * pow(values[sym], exp % (q - 1), q) % q
        if prod != 1:
            return False
    for constraint in witness.constraints:
        if _eval_expr(constraint, values, q) == 0:
            return False
    for cls in witness.classes:
        if cls == "regular_unipotent":
            continue
        eigen = [_eval_expr(e, values, q) for e in cls]
        if 0 in eigen or len(set(eigen)) != len(eigen):
            return False
        if witness.family == "PGL" and eigen[0] in (1, q - 1):
            return False
    return True


def witness_matrices(
    witness: WitnessSpec, q: int, values: dict[str, int]
) -> tuple[Matrix, ...]:
    """Specialize the symbolic matrices to integer matrices mod q."""
    out = []
    for rows in witness.matrices:
        out.append(
            tuple(
                tuple(_eval_expr(entry, values, q) for entry in row)
                for row in rows
            )
        )
    return tuple(out)


def _in_class(
    family: str, q: int, matrix: Matrix, cls, values: dict[str, int]
) -> bool:
    size = len(matrix)
    if _det(matrix, q) == 0:
        return False
    if family == "GL":
        if cls == "regular_unipotent":
            # char poly of a regular unipotent is (x-1)^size
            expected = _poly_from_roots([1] * size, q)
            return (
                _char_poly(matrix, q) == expected
                and _min_poly_degree(matrix, q) == size
            )
        eigen = [_eval_expr(e, values, q) for e in cls]
        return _char_poly(matrix, q) == _poly_from_roots(eigen, q)
    # PGL(2): compare scaling-invariant class data against diag(r, 1).
    if _is_scalar(matrix):
        return False
    tr = (matrix[0][0] + matrix[1][1]) % q
    det = _det(matrix, q)
    t = (tr * tr * pow(det, q - 2, q)) % q
    if cls == "regular_unipotent":
        return t == 4 % q
    ratio = _eval_expr(cls[0], values, q)
    expected_t = ((ratio + 1) ** 2 * pow(ratio, q - 2, q)) % q
    if t != expected_t:
        return False
    if t == 0:
        return _legendre(det, q) == _legendre(ratio, q)
    return True


def _poly_from_roots(roots: list[int], q: int) -> tuple[int, ...]:
    coeffs = [1]
    for r in roots:
        coeffs = [0] + coeffs
        coeffs = [
            (c - r * coeffs[i + 1]) % q if i + 1 < len(coeffs) else c % q
            for i, c in enumerate(coeffs)
        ]
    return tuple(coeffs[:-1])


def verify_witness(
    witness: WitnessSpec,
    q: int,
    *,
    values: dict[str, int] | None = None,
    seed: int = 0,
    attempts: int = 20,
) -> bool:
    """Check a witness over F_q: product relation plus class memberships.

    With explicit ``values`` the specialization is validated and tested
    directly.  Otherwise symbols are sampled uniformly from F_q^x with a
    seeded generator until the relations and constraints hold; running
    out of attempts raises (inconclusive), it does not return False.
    """
    if not _is_prime(q):
        raise InvalidInputError("oracle-field", f"q = {q} is not prime")
    if witness.family == "PGL" and q == 2:
        raise InvalidInputError(
            "oracle-field", "PGL(2) witnesses need an odd prime field"
        )
    if values is not None:
        values = {s: v % q for s, v in values.items()}
        if set(values) != set(witness.symbols):
            raise InvalidInputError(
                "witness-values",
                f"need values for exactly the symbols {witness.symbols}",
            )
        if not _admissible_values(witness, q, values):
            raise InvalidInputError(
                "witness-values",
                "supplied values violate the relations or constraints",
            )
    else:
        rng = random.Random(seed)
        for _ in range(attempts):
            candidate = {
                s: rng.randrange(1, q) for s in witness.symbols
            }
            if _admissible_values(witness, q, candidate):
                values = candidate
                break
        if values is None:
            raise ResourceLimitError(
                "witness-specialization",
                f"no admissible specialization of {witness.symbols} over "
                f"F_{q} found in {attempts} attempts (inconclusive)",
            )
    matrices = witness_matrices(witness, q, values)
    product = _identity(witness.size)
    for m in matrices:
        product = _mat_mul(product, m, q)
    if witness.family == "GL":
        if product != _identity(witness.size):
            return False
    else:
        if not _is_scalar(product) or _det(product, q) == 0:
            return False
    for matrix, cls in zip(matrices, witness.classes):
        if not _in_class(witness.family, q, matrix, cls, values):
            return False
    return True


def tuples_conjugate(
    model: FiniteGroupModel,
    first: tuple[Matrix, ...],
    second: tuple[Matrix, ...],
) -> bool:
    """Whether one tuple is a simultaneous conjugate of the other."""
    first = tuple(model.canonical(m) for m in first)
    second = tuple(model.canonical(m) for m in second)
    inverses = model.inverse_table()
    for g in model.elements:
        g_inv = inverses[g]
        if all(
            model.mul(model.mul(g, x), g_inv) == y
            for x, y in zip(first, second)
        ):
            return True
    return False


# Explicit solution families for the small rank-one and rank-two cases.
# Products and memberships hold identically under the declared relations;
# they are re-checked numerically by verify_witness.

GL2_GENERIC_TRIPLE = WitnessSpec(
    family="GL",
    size=2,
    symbols=("a", "b", "c", "d"),
    relations=("a*b*c*d",),
    constraints=("a - b", "c - d"),
    matrices=(
        (("a", "0"), ("a*b*(c + d) - a - b", "b")),
        (("1/a", "-1/a"), ("-c - d + 1/a + 1/b", "c + d - 1/a")),
        (("1", "1"), ("0", "1")),
    ),
    classes=(("a", "b"), ("c", "d"), "regular_unipotent"),
    label="generic semisimple pair with a unipotent",
)

GL2_COINCIDENT_TRIPLES = (
    WitnessSpec(
        family="GL",
        size=2,
        symbols=("a", "b"),
        relations=(),
        constraints=("a - b",),
        matrices=(
            (("a", "-a + b"), ("0", "b")),
            (("1/a", "1/b - 2/a"), ("0", "1/b")),
            (("1", "1"), ("0", "1")),
        ),
        classes=(("a", "b"), ("1/a", "1/b"), "regular_unipotent"),
        label="inverse-pair solution, first point",
    ),
    WitnessSpec(
        family="GL",
        size=2,
        symbols=("a", "b"),
        relations=(),
        constraints=("a - b",),
        matrices=(
            (("b", "a - b"), ("0", "a")),
            (("1/b", "1/a - 2/b"), ("0", "1/a")),
            (("1", "1"), ("0", "1")),
        ),
        classes=(("a", "b"), ("1/a", "1/b"), "regular_unipotent"),
        label="inverse-pair solution, second point",
    ),
)

GL2_TWO_UNIPOTENT_TRIPLE = WitnessSpec(
    family="GL",
    size=2,
    symbols=("a",),
    relations=(),
    constraints=("a - 1", "a + 1"),
    matrices=(
        (
            ("a + 1/a", "a/(a**2 - 2*a + 1)"),
            ("-a + 2 - 1/a", "0"),
        ),
        (
            ("0", "-a/(a**2 - 2*a + 1)"),
            ("a - 2 + 1/a", "2"),
        ),
        (("1", "1"), ("0", "1")),
    ),
    classes=(("a", "1/a"), "regular_unipotent", "regular_unipotent"),
    label="one semisimple class with two unipotents",
)

PGL2_RIGID_TRIPLES = (
    WitnessSpec(
        family="PGL",
        size=2,
        symbols=("a", "b", "t"),
        relations=("a*b = t^2",),
        constraints=("a - 1", "a + 1", "b - 1", "b + 1"),
        matrices=(
            (("a*t", "0"), ("(t - a)*(t - 1)", "t")),
            (("-t", "t"), ("(t - a)*(t - 1)", "-t**2 + t - a")),
            (("1", "1"), ("0", "1")),
        ),
        classes=(("a",), ("b",), "regular_unipotent"),
        label="rigid projective solution, first point",
    ),
    WitnessSpec(
        family="PGL",
        size=2,
        symbols=("a", "b", "t"),
        relations=("a*b = t^2",),
        constraints=("a - 1", "a + 1", "b - 1", "b + 1"),
        matrices=(
            (("a*t", "0"), ("-(t + a)*(t + 1)", "t")),
            (("-t", "t"), ("-(t + a)*(t + 1)", "t**2 + t + a")),
            (("1", "1"), ("0", "1")),
        ),
        classes=(("a",), ("b",), "regular_unipotent"),
        label="rigid projective solution, second point",
    ),
)
