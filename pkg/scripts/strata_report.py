#!/usr/bin/env python3
"""Print stratification tables for a few reference objects.

For an object with circles, intervals, and a boundary permutation, the
connected classes of cobordisms down to a single circle form a grid
indexed by genus and per-brane window counts; every row shares the same
fixed-boundary count (the c-number).  This script tabulates that grid for
a handful of objects of increasing size.

Usage: python scripts/strata_report.py [-G MAX_GENUS] [-W MAX_WINDOWS]
"""

from __future__ import annotations

import argparse

from occob.classify import strata_table
from occob.objects import Circle, GeneralObject, Interval, Permutation


def sample_objects() -> dict[str, GeneralObject]:
    star = frozenset({"*"})
    ab = frozenset({"a", "b"})
    return {
        "one circle": GeneralObject(star, (Circle(),)),
        "transposed pair": GeneralObject(
            star,
            (Interval("*", "*"), Interval("*", "*")),
            Permutation.from_cycles([[1, 2]], {1, 2}),
        ),
        "circle and three intervals": GeneralObject(
            star,
            (Circle(), Interval("*", "*"), Interval("*", "*"), Interval("*", "*")),
            Permutation.from_cycles([[2, 3], [4]], {2, 3, 4}),
        ),
        "two branes": GeneralObject(
            ab,
            (Interval("a", "b"), Interval("b", "a")),
            Permutation.from_cycles([[1, 2]], {1, 2}),
        ),
    }


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-G", type=int, default=2, help="largest genus")
    ap.add_argument("-W", type=int, default=1, help="largest window count per brane")
    args = ap.parse_args()

    for title, obj in sample_objects().items():
        branes = sorted(obj.branes)
        print(f"== {title}  (c-number {obj.c_number}, "
              f"sigma {obj.sigma.cycle_string()})")
        header = ["g"] + [f"w_{b}" for b in branes] + ["c", "b"]
        widths = [max(3, len(h)) for h in header]
        print("  " + "  ".join(h.ljust(w) for h, w in zip(header, widths)))
        for row in strata_table(obj, args.G, args.W):
            wmap = dict(row.windows)
            cells = [str(row.genus)]
            cells += [str(wmap[b]) for b in branes]
            cells += [str(row.c_number), "yes" if row.in_b else "no"]
            print("  " + "  ".join(c.ljust(w) for c, w in zip(cells, widths)))
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
