"""Count braid-group actions on small sheet numbers and scan extension degrees.

For each (strands, sheets) pair in range this prints how many homomorphisms
B_strands -> S_sheets exist (exhaustive search, so growth is steep), then
reports the least sheet count extending the standard strand action across
one extra strand.
"""

from __future__ import annotations

import argparse
import time

from coverext.braids import hom_search, minimal_extension_degree, standard_rep
from coverext.errors import CapExceeded
from coverext.perms import format_cycles


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-strands", type=int, default=4)
    ap.add_argument("--max-sheets", type=int, default=4)
    ap.add_argument("--cap", type=int, default=5_000_000,
                    help="abort a cell when the raw search space exceeds this")
    args = ap.parse_args()

    print("hom counts |Hom(B_m, S_d)| (exhaustive):")
    print("m\\d " + "".join(f"{d:>10}" for d in range(2, args.max_sheets + 1)))
    for m in range(2, args.max_strands + 1):
        row = [f"{m:>3} "]
        for d in range(2, args.max_sheets + 1):
            t0 = time.perf_counter()
            try:
                n = len(hom_search(m, d, cap=args.cap))
                cell = f"{n}({time.perf_counter() - t0:.2f}s)"
            except CapExceeded:
                cell = "cap"
            row.append(f"{cell:>10}")
        print("".join(row))

    print("\nminimal extension degrees for the standard strand action:")
    for m in range(2, args.max_strands):
        rho0 = standard_rep(m)
        res = minimal_extension_degree(rho0, m + 1)
        gens = ", ".join(f"{n}={format_cycles(p)}" for n, p in sorted(res.images.items()))
        print(f"  B_{m} on {rho0.degree} sheets -> B_{m + 1}: degree {res.degree}  [{gens}]")


if __name__ == "__main__":
    main()
