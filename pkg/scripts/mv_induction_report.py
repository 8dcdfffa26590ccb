"""Vertex-by-vertex Mayer-Vietoris skeleton over a fixture complex: for each
step, short exactness, the long exact sequence and the cohomology dims."""
import argparse

from psalgebroid.fixtures import COMPLEXES, load_algebra, load_complex
from psalgebroid.mv import induction_steps

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--complex", default="sphere", choices=COMPLEXES)
ap.add_argument("--liealg", default="abelian1")
args = ap.parse_args()

K = load_complex(args.complex)
for s in induction_steps(K, load_algebra(args.liealg)):
    if s.get("intersection_empty"):
        print(f"v={s['vertex']}: disjoint stars")
        continue
    se = s["short_exact"]
    flags = " ".join(f"{k}={all(se[k])}" for k in ("delta_injective", "exact_middle", "pi_surjective"))
    dims = f" whole={s['dims_whole']} U={s['dims_U']} V={s['dims_V']} UV={s['dims_UV']}" if s["long_exact"] else ""
    print(f"v={s['vertex']}: {flags} long_exact={s['long_exact']}{dims}")
