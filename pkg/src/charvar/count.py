"""The counting engine: point counts of character varieties as polynomials.

Input: a genus g surface with n punctures, a split reductive group given by
its root datum, m strongly regular semisimple conjugacy classes (1 <= m < n,
presented as symbolic torus elements) and n - m regular unipotent classes.
Output: the number of k-points of the associated character variety, as a
polynomial in q = |k|, valid for q in the admissible congruence class.

The engine evaluates the closed master formula

    |X(k)| = (z_factor |B|^chi / |W|) * sum over closed coroot subsystems
             Psi of |W(Psi)|^(1-m) P_Psi(q)^chi *
             sum over Psi' >= Psi of mu(Psi, Psi') D(Psi')

with chi = 2g + n - 2, where D(Psi') adds up the local factor Delta over
all W^m-translates of the semisimple classes.  Translates are deduplicated
by their canonical form in the eigenvalue group, so D costs one membership
test per genuinely distinct product rather than |W|^m.

Indicator overrides: purity decides "is this word a d-th power" questions
from the relations alone.  When the user knows the arithmetic truth for
their concrete eigenvalues, per-subsystem-type overrides replace the
computed indicator; the engine still computes the symbolic answer and
warns when the two disagree.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .charsum import (
    EigenvalueDatum,
    SymbolicTorusElement,
    in_commutator,
    product_translate,
    strongly_regular,
    translate,
)
from .errors import (
    HypothesisError,
    InternalConsistencyError,
    InvalidInputError,
    ResourceLimitError,
)
from .qpoly import Poly, RationalPoly, q_minus
from .rootdata import (
    RootDatum,
    admissible_primes,
    center_invariants,
    cocenter_invariants,
    connected_center_check,
    enumerate_weyl,
    modulus,
)
from .subsystems import SubsystemPoset, build_poset

DEFAULT_TRANSLATE_BUDGET = 1_000_000


@dataclass(frozen=True)
class ProblemSpec:
    """A puncture-counting problem: group, surface, and classes.

    ``semisimple_classes`` holds the m strongly regular semisimple classes;
    the remaining n - m punctures carry regular unipotent classes.
    ``overrides`` maps subsystem type labels (bare like ``"A1"`` or
    display-disambiguated like ``"A1-long"``) to the arithmetic truth of
    the membership indicator for that subsystem type; display labels take
    precedence over bare type labels when both are given.
    """

    rd: RootDatum
    genus: int
    punctures: int
    eigenvalues: EigenvalueDatum
    semisimple_classes: tuple[SymbolicTorusElement, ...]
    overrides: tuple[tuple[str, bool], ...] = ()

    @property
    def m(self) -> int:
        return len(self.semisimple_classes)

    @property
    def chi_exponent(self) -> int:
        return 2 * self.genus + self.punctures - 2

    def overrides_dict(self) -> dict[str, bool]:
        return dict(self.overrides)


@dataclass(frozen=True)
class TableRow:
    """One orbit of closed subsystems in the diagnostic table."""

    label: str
    orbit_size: int
    weyl_order: int
    poincare: str
    quotient: str
    torsion_order: int
    free_rank: int
    delta: str
    alpha: str
    overridden: bool


@dataclass(frozen=True)
class CountReport:
    """Everything the engine knows about one counting problem."""

    group_label: str
    genus: int
    punctures: int
    m: int
    polynomial: RationalPoly
    is_empty: bool
    empty_reason: str | None
    euler_characteristic: int
    expected_dimension: int
    degree: int
    leading_coefficient: int | None
    num_components: int | None
    validity_modulus: int
    diagnostic_exponent_lcm: int
    excluded_primes: tuple[int, ...]
    warnings: tuple[str, ...]
    table: tuple[TableRow, ...]
    factored: str


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_problem(spec: ProblemSpec) -> None:
    """Check every hypothesis of the counting theorem, naming failures."""
    rd = spec.rd
    if spec.genus < 0:
        raise InvalidInputError("surface", "genus must be nonnegative")
    if not connected_center_check(rd):
        raise HypothesisError(
            "connected-center",
            "the center of the group is not connected; the counting theorem "
            "requires a connected center (e.g. GL(n) or PGL(n) rather than SL(n))",
        )
    m, n = spec.m, spec.punctures
    if m < 1:
        raise HypothesisError(
            "class-counts",
            "need at least one strongly regular semisimple class (m >= 1)",
        )
    if n <= m:
        raise HypothesisError(
            "class-counts",
            f"need at least one regular unipotent puncture: n = {n} punctures "
            f"must exceed the m = {m} semisimple classes",
        )
    for idx, s in enumerate(spec.semisimple_classes, start=1):
        if len(s.coords) != rd.rank:
            raise InvalidInputError(
                "torus-element",
                f"semisimple class {idx} has {len(s.coords)} coordinates, "
                f"expected the rank {rd.rank}",
            )
        if s.datum != spec.eigenvalues:
            raise InvalidInputError(
                "torus-element",
                f"semisimple class {idx} uses a different eigenvalue datum",
            )
        if not strongly_regular(rd, s):
            raise HypothesisError(
                "strongly-regular",
                f"semisimple class {idx} is not strongly regular: some root "
                "evaluates to 1 on it, or a nontrivial Weyl element fixes it",
            )


def _resolve_overrides(
    poset: SubsystemPoset, overrides: dict[str, bool]
) -> dict[int, bool]:
    """Map override labels to node indices; display labels beat bare labels."""
    generic: dict[int, bool] = {}
    specific: dict[int, bool] = {}
    for label, value in overrides.items():
        display_hits = [
            i for i in range(poset.num_nodes) if poset.display_label(i) == label
        ]
        type_hits = [
            i for i in range(poset.num_nodes) if poset.type_label(i) == label
        ]
        if not display_hits and not type_hits:
            available = sorted(
                {poset.display_label(i) for i in range(poset.num_nodes)}
            )
            raise InvalidInputError(
                "override-label",
                f"override label {label!r} matches no subsystem; available "
                f"labels: {', '.join(available)}",
            )
        for i in type_hits:
            generic[i] = value
        for i in display_hits:
            specific[i] = value
    generic.update(specific)
    return generic


# ---------------------------------------------------------------------------
# Engine
# ---------------------------------------------------------------------------


def _identity_matrix(rank: int) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)
    )


def _translate_classes(
    rd: RootDatum, element: SymbolicTorusElement
) -> list[tuple[SymbolicTorusElement, int]]:
    """Distinct Weyl translates of S with multiplicities (canonical dedup)."""
    weyl = enumerate_weyl(rd)
    seen: dict[tuple, list] = {}
    for w in weyl.elements:
        t = translate(w, element)
        key = t.canonical_key()
        if key in seen:
            seen[key][1] += 1
        else:
            seen[key] = [t, 1]
    return [(rep, count) for rep, count in seen.values()]


def _product_classes(
    spec: ProblemSpec, budget: int
) -> list[tuple[SymbolicTorusElement, int]]:
    """Distinct products of one translate per class, with multiplicities."""
    rep_lists = [_translate_classes(spec.rd, s) for s in spec.semisimple_classes]
    total = math.prod(len(reps) for reps in rep_lists)
    if total > budget:
        raise ResourceLimitError(
            "translate-budget",
            f"{total} distinct translate combinations exceed the budget "
            f"{budget}; raise the budget to proceed",
        )
    identity = _identity_matrix(spec.rd.rank)
    products: dict[tuple, list] = {}
    for combo in itertools.product(*rep_lists):
        mult = math.prod(c for _, c in combo)
        prod = product_translate([identity] * len(combo), [s for s, _ in combo])
        key = prod.canonical_key()
        if key in products:
            products[key][1] += mult
        else:
            products[key] = [prod, mult]
    return [(rep, mult) for rep, mult in products.values()]


def _z_prefactor(rd: RootDatum, m: int, n: int, chi: int) -> RationalPoly:
    """z_factor * |B|^chi: the global constant of the master formula."""
    d = rd.rank
    z = center_invariants(rd).free_rank
    r = rd.semisimple_rank
    qm1 = q_minus(1)
    q = RationalPoly.q()
    z_factor = qm1 ** (z - m * d + z * (m - n)) * q ** (r * (m - n))
    b_chi = q ** (rd.num_positive * chi) * qm1 ** (d * chi)
    return z_factor * b_chi


def expected_dimension(spec: ProblemSpec) -> int:
    """(2g-2) dim G + 2 dim Z + n |Phi| (every class here has dimension |Phi|)."""
    rd = spec.rd
    z = center_invariants(rd).free_rank
    return (2 * spec.genus - 2) * rd.dimension + 2 * z + spec.punctures * rd.num_roots


def _ord_at_one(poly: Poly) -> int:
    """Multiplicity of the root q = 1."""
    order = 0
    qm1 = Poly([-1, 1])
    current = poly
    while not current.is_zero():
        quotient, remainder = current.divmod(qm1)
        if not remainder.is_zero():
            break
        order += 1
        current = quotient
    return order


def count_polynomial(
    spec: ProblemSpec, budget: int = DEFAULT_TRANSLATE_BUDGET
) -> CountReport:
    """Run the master formula and assemble the full report."""
    validate_problem(spec)
    rd = spec.rd
    m, n, chi = spec.m, spec.punctures, spec.chi_exponent
    warnings: list[str] = []

    if spec.genus == 0 and n == 2:
        return _finish_report(
            spec,
            polynomial=RationalPoly.from_int(0),
            is_empty=True,
            empty_reason=(
                "nonhyperbolic surface: genus 0 with 2 punctures is outside "
                "the counting theorem"
            ),
            warnings=warnings,
            table=(),
        )

    poset = build_poset(rd)
    node_override = _resolve_overrides(poset, spec.overrides_dict())

    # emptiness: the product of the semisimple classes must die in
    # X^vee / <full coroot system>, i.e. lie in the commutator subgroup
    identity = _identity_matrix(rd.rank)
    plain_product = product_translate(
        [identity] * m, list(spec.semisimple_classes)
    )
    full_node = poset.index_of[frozenset(range(rd.num_roots))]
    computed_nonempty = in_commutator(rd, poset.nodes[full_node], plain_product)
    effective_nonempty = node_override.get(full_node, computed_nonempty)
    if full_node in node_override and computed_nonempty != effective_nonempty:
        warnings.append(
            f"override for {poset.display_label(full_node)} asserts the "
            f"monodromy product {'is' if effective_nonempty else 'is not'} in "
            "the commutator subgroup, contrary to the relation-forced answer"
        )
    if not effective_nonempty:
        return _finish_report(
            spec,
            polynomial=RationalPoly.from_int(0),
            is_empty=True,
            empty_reason=(
                "empty variety: the product of the semisimple classes is not "
                "in the commutator subgroup of the group of points"
            ),
            warnings=warnings,
            table=_diagnostic_table(spec, poset, node_override, plain_product),
        )

    products = _product_classes(spec, budget)

    # D(node) = |Tor| (q-1)^rank * (weighted number of products passing)
    mismatch: dict[str, list[int]] = {}
    d_values: list[RationalPoly] = []
    for j in range(poset.num_nodes):
        inv = poset.quotient(j)
        base = q_minus(1) ** inv.free_rank * RationalPoly.from_int(inv.torsion_order)
        passing = 0
        for prod, mult in products:
            computed = in_commutator(rd, poset.nodes[j], prod)
            if j in node_override:
                effective = node_override[j]
                counts = mismatch.setdefault(poset.display_label(j), [0, 0])
                counts[1] += mult
                if computed != effective:
                    counts[0] += mult
            else:
                effective = computed
            if effective:
                passing += mult
        d_values.append(base * RationalPoly.from_int(passing))

    for label, (bad, total_mult) in sorted(mismatch.items()):
        if bad:
            warnings.append(
                f"override for {label}: relation-forced indicator disagrees "
                f"for {bad} of {total_mult} translate products (override wins)"
            )

    # master sum over the poset
    total = RationalPoly.from_int(0)
    for i in range(poset.num_nodes):
        inner = RationalPoly.from_int(0)
        for j in poset.upper_set(i):
            mu = poset.mobius(i, j)
            if mu:
                inner = inner + d_values[j] * RationalPoly.from_int(mu)
        if inner.is_zero():
            continue
        w_order = poset.weyl_order(i)
        weight = RationalPoly.from_int(Fraction(1, w_order ** (m - 1)))
        p_chi = RationalPoly(poset.poincare(i)) ** chi
        total = total + weight * p_chi * inner

    weyl_order = enumerate_weyl(rd).order
    prefactor = _z_prefactor(rd, m, n, chi) * RationalPoly.from_int(
        Fraction(1, weyl_order)
    )
    result = prefactor * total

    if not result.is_polynomial():
        raise InternalConsistencyError(
            "non-polynomial",
            f"the master formula produced a non-polynomial count {result}; "
            "this indicates inconsistent overrides or an engine bug",
        )
    if any(c.denominator != 1 for c in result.polynomial_coeffs()):
        raise InternalConsistencyError(
            "non-integral",
            f"the master formula produced non-integer coefficients in {result}",
        )

    is_empty = result.is_zero()
    return _finish_report(
        spec,
        polynomial=result,
        is_empty=is_empty,
        empty_reason="master formula summed to zero" if is_empty else None,
        warnings=warnings,
        table=_diagnostic_table(spec, poset, node_override, plain_product),
    )


def _diagnostic_table(
    spec: ProblemSpec,
    poset: SubsystemPoset,
    node_override: dict[int, bool],
    plain_product: SymbolicTorusElement,
) -> tuple[TableRow, ...]:
    """Per-orbit rows: Weyl data, Poincare, quotient, Delta and alpha at S."""
    rd = spec.rd

    def effective_delta(j: int) -> RationalPoly:
        computed = in_commutator(rd, poset.nodes[j], plain_product)
        if not node_override.get(j, computed):
            return RationalPoly.from_int(0)
        inv = poset.quotient(j)
        return q_minus(1) ** inv.free_rank * RationalPoly.from_int(inv.torsion_order)

    rows = []
    for orbit in poset.orbits():
        rep = orbit[0]
        alpha_val = RationalPoly.from_int(0)
        for j in poset.upper_set(rep):
            mu = poset.mobius(rep, j)
            if mu:
                alpha_val = alpha_val + effective_delta(j) * RationalPoly.from_int(mu)
        inv = poset.quotient(rep)
        rows.append(
            TableRow(
                label=poset.display_label(rep),
                orbit_size=len(orbit),
                weyl_order=poset.weyl_order(rep),
                poincare=str(poset.poincare(rep)),
                quotient=inv.describe(),
                torsion_order=inv.torsion_order,
                free_rank=inv.free_rank,
                delta=str(effective_delta(rep)),
                alpha=str(alpha_val),
                overridden=rep in node_override,
            )
        )
    rows.sort(key=lambda row: (-row.weyl_order, row.label))
    return tuple(rows)


def _finish_report(
    spec: ProblemSpec,
    polynomial: RationalPoly,
    is_empty: bool,
    empty_reason: str | None,
    warnings: list[str],
    table: tuple[TableRow, ...],
) -> CountReport:
    rd = spec.rd
    g, n, m = spec.genus, spec.punctures, spec.m
    euler = polynomial.evaluate(1)
    if euler.denominator != 1:  # pragma: no cover - guarded by integrality check
        raise InternalConsistencyError("non-integral", "non-integer Euler number")
    euler = int(euler)

    degree = polynomial.degree()
    leading = None
    if not polynomial.is_zero():
        lead = polynomial.leading_coefficient()
        leading = int(lead) if lead.denominator == 1 else None

    # topology cross-checks (warnings, not errors: overrides can break them)
    num_components: int | None = None
    if not is_empty:
        expected_dim = expected_dimension(spec)
        if degree != expected_dim:
            warnings.append(
                f"count has degree {degree} but the expected dimension is "
                f"{expected_dim}"
            )
        if g > 0 or n > 3:
            num_components = cocenter_invariants(rd).torsion_order
            if leading != num_components:
                warnings.append(
                    f"leading coefficient {leading} differs from the component "
                    f"count {num_components} predicted by the fundamental group"
                )
        if (g > 0 or n > m + 2) and euler != 0:
            warnings.append(
                f"Euler characteristic {euler} should vanish for g > 0 or "
                f"n > m + 2"
            )
        if rd.num_roots > 0 and (g > 0 or n - m > 2):
            d, z = rd.rank, center_invariants(rd).free_rank
            bound = (2 * g + n - m - 2) * d - (n - m - 2) * z
            ord_one = _ord_at_one(Poly(polynomial.polynomial_coeffs()))
            if ord_one < bound:
                warnings.append(
                    f"vanishing order {ord_one} at q = 1 is below the "
                    f"structural bound {bound}"
                )

    return CountReport(
        group_label=rd.label,
        genus=g,
        punctures=n,
        m=m,
        polynomial=polynomial,
        is_empty=is_empty,
        empty_reason=empty_reason,
        euler_characteristic=euler,
        expected_dimension=expected_dimension(spec),
        degree=degree,
        leading_coefficient=leading,
        num_components=num_components,
        validity_modulus=modulus(rd.dual()),
        diagnostic_exponent_lcm=_poset_exponent_lcm(rd),
        excluded_primes=admissible_primes(rd).excluded,
        warnings=tuple(warnings),
        table=table,
        factored=polynomial.factored_str(),
    )


@lru_cache(maxsize=None)
def _poset_exponent_lcm(rd: RootDatum) -> int:
    poset = build_poset(rd)
    values = [poset.quotient(i).torsion_exponent for i in range(poset.num_nodes)]
    return math.lcm(*values) if values else 1
