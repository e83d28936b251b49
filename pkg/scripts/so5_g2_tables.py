#!/usr/bin/env python3
"""Print diagnostic tables and counts for SO(5) and G2 display cases.

For each group this script runs the counting formula at three surface
shapes -- (genus, punctures, semisimple classes) = (1, 2, 1), (0, 4, 2),
(0, 4, 3) -- with every subsystem membership indicator fixed by an
override, so the resulting polynomial is uniform in the eigenvalue
choices.  The override pattern marks the full system, the A2 subsystems
(for G2), and the A1xA1 subsystems as containing the class product, and
the rank-one and empty subsystems as not containing it.
"""

from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from charvar.charsum import EigenvalueDatum, SymbolicTorusElement
from charvar.cli import report_text
from charvar.count import ProblemSpec, count_polynomial
from charvar.rootdata import build_root_datum

OVERRIDES = {
    "SO(5)": (("C2", True), ("A1xA1", True), ("A1", False), ("empty", False)),
    "G2": (
        ("G2", True),
        ("A2", True),
        ("A1xA1", True),
        ("A1", False),
        ("empty", False),
    ),
}

SHAPES = [(1, 2, 1), (0, 4, 2), (0, 4, 3)]


def build_spec(group: str, genus: int, punctures: int, m: int) -> ProblemSpec:
    rd = build_root_datum(group)
    symbols = tuple(f"{chr(ord('a') + i)}{j}" for i in range(m) for j in (1, 2))
    datum = EigenvalueDatum(symbols=symbols, relations=())
    classes = tuple(
        SymbolicTorusElement.from_words(
            datum, [f"{chr(ord('a') + i)}1", f"{chr(ord('a') + i)}2"]
        )
        for i in range(m)
    )
    return ProblemSpec(
        rd=rd,
        genus=genus,
        punctures=punctures,
        eigenvalues=datum,
        semisimple_classes=classes,
        overrides=OVERRIDES[group],
    )


def main() -> int:
    for group in ("SO(5)", "G2"):
        for genus, punctures, m in SHAPES:
            spec = build_spec(group, genus, punctures, m)
            report = count_polynomial(spec)
            title = f"{group}  (g, n, m) = ({genus}, {punctures}, {m})"
            print("=" * len(title))
            print(title)
            print("=" * len(title))
            print(report_text(report, show_table=True))
            print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
