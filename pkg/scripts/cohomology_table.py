"""Predicted (Betti convolved with H(g)) against computed algebroid
cohomology for every fixture pair, with timings."""
import time

from psalgebroid.fixtures import ALGEBRAS, COMPLEXES, load_algebra, load_complex
from psalgebroid.verify import algebroid_report

print(f"{'complex':<14}{'algebra':<11}{'predicted':<22}{'computed':<22}{'ok':<5}secs")
for c in COMPLEXES:
    K = load_complex(c)
    for a in ALGEBRAS:
        t = time.perf_counter()
        r = algebroid_report(K, load_algebra(a))
        print(f"{c:<14}{a:<11}{str(r['predicted']):<22}{str(r['computed']):<22}{str(r['ok']):<5}"
              f"{time.perf_counter() - t:.2f}")
