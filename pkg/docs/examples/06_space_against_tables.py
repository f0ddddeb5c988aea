# The space trade-off, measured.
#
# The table DP keeps 3^|bag| entries per node; the zeta solver keeps a few
# vectors per tree level. Both give the same answers, and the bench harness
# refuses to continue if they ever disagree.

import io

import numpy as np

from polydom.bench import BenchSpec, bench_suite

buf = io.StringIO()
bench_suite(BenchSpec("cycle", (10, 20, 40, 80)), buf)
print(buf.getvalue())

buf = io.StringIO()
bench_suite(BenchSpec("pktree", (30,), k=5, seeds=(1, 2, 3)), buf)
print(buf.getvalue())

# Peak slots along paths against n * depth
buf = io.StringIO()
bench_suite(BenchSpec("path", (10, 20, 40, 60, 80), modes=("zeta",)), buf)
rows = [line.split(",") for line in buf.getvalue().splitlines()[1:]]
nd = np.array([int(r[1]) * int(r[4]) for r in rows])
peak = np.array([int(r[7]) for r in rows])
slope, intercept = np.polyfit(nd, peak, 1)
print(f"peak ~ {slope:.3f} * n*d + {intercept:.1f}")
