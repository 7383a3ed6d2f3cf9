"""Run every bundled scenario, tally the claim verdicts, and prove determinism.

Useful as a one-shot health check: the tally should show the deliberate
CONTRADICTS entries (documented sheet counts the computation refutes) and a
second pass must produce byte-identical reports.
"""

from __future__ import annotations

import argparse

from coverext.scenarios import bundled_scenario_names, run_bundled


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--filter", default="", help="only scenarios containing this substring")
    args = ap.parse_args()

    names = [n for n in bundled_scenario_names() if args.filter in n]
    tally: dict[str, int] = {}
    blobs: dict[str, str] = {}
    for name in names:
        rep = run_bundled(name)
        blobs[name] = rep.to_json()
        print(f"{name}: status={rep.status} ({rep.timings['total_s']:.3f}s)")
        for claim in rep.claims:
            tally[claim["verdict"]] = tally.get(claim["verdict"], 0) + 1
            marker = {"MATCHES": " ", "CONTRADICTS": "!", "NOT-CLAIMED": "-"}[claim["verdict"]]
            print(f"  {marker} {claim['id']}: {claim['verdict']}")

    print("\nverdict tally:", dict(sorted(tally.items())))

    drift = [n for n in names if run_bundled(n).to_json() != blobs[n]]
    if drift:
        raise SystemExit(f"NON-DETERMINISTIC REPORTS: {drift}")
    print(f"second pass: all {len(names)} reports byte-identical")


if __name__ == "__main__":
    main()
