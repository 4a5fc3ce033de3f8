#!/usr/bin/env python3
"""Print the classification table of non-abelian cases up to dimension 8.

For every catalog label the script rebuilds the model algebra, re-verifies
all axioms, recomputes the invariant fingerprint, and classifies the result;
the printed rows are computed, not copied.
"""

from __future__ import annotations

from phq import build, check_phq, classify, fingerprint

ROWS = (
    "L(2,4)",
    "L(4,2)",
    "L(2,4)+R(0,2)",
    "L(2,4)+R(2,0)",
    "Tstar0K",
    "L(4,2)+R(0,2)",
    "L(4,2)+R(2,0)",
    "TstarTheta3K",
)


def main() -> None:
    header = "dim | dim[g,g] | sig(phi) | sig(phi|[g,g]) | nilpotency | label"
    print(header)
    print("-" * len(header))
    for name in ROWS:
        algebra = build(name)
        assert check_phq(algebra).ok, f"{name} fails its own axioms"
        fp = fingerprint(algebra)
        got = classify(algebra).label
        assert str(got) == name, f"{name} classified as {got}"
        print(f"{fp.table_row()} | {got}")


if __name__ == "__main__":
    main()
