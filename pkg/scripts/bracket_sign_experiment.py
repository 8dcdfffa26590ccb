"""Run the structural identities and the Cartan comparison under both
anchor-bracket sign conventions and report which one survives."""
import argparse
import json

from psalgebroid.fixtures import load_algebra
from psalgebroid.verify import SuiteOptions, bracket_sign_suite

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--liealg", default="sl2")
ap.add_argument("--simplex", default="0,1,2", help="comma-separated vertices")
ap.add_argument("--cases", type=int, default=200)
ap.add_argument("--seed", type=int, default=0)
args = ap.parse_args()

rep = bracket_sign_suite(load_algebra(args.liealg), tuple(int(v) for v in args.simplex.split(",")),
                         SuiteOptions(seed=args.seed, cases=args.cases))
for conv, r in rep["conventions"].items():
    print(f"{conv:<9} {'PASS' if r['ok'] else 'FAIL'}")
    for p in r["properties"]:
        line = f"    {'ok  ' if p['ok'] else 'FAIL'} {p['name']} ({p['cases']} cases)"
        if not p["ok"] and "counterexample" in p:
            line += "  e.g. " + json.dumps(p["counterexample"])[:120]
        print(line)
print(f"named convention: {rep['named']}")
