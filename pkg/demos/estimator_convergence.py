import numpy as np

from zmlab import (Bernoulli, EstimatorKind, RngSpec, alphabet, build_index,
                   cross_entropy_rate, estimate, sample)

# Reference stream from P, target stream from Q.  The estimators read both
# and should settle near the cross entropy rate of Q relative to P.
alph = alphabet("01")
P = Bernoulli(alph, np.array([0.3, 0.7]))
Q = Bernoulli(alph, np.array([0.6, 0.4]))
h = cross_entropy_rate(Q, P)
print(f"closed form h_c = {h:.6f} nats")

trials = 10
grid = [2 ** k for k in range(10, 18)]
rng = RngSpec(1)

values = {kind: {n: [] for n in grid} for kind in EstimatorKind}
for t in range(trials):
    x = sample(P, grid[-1], rng.stream(t, "x"))
    y = sample(Q, grid[-1], rng.stream(t, "y"))
    index = build_index(x)  # one index serves every horizon below
    for n in grid:
        for kind in EstimatorKind:
            values[kind][n].append(estimate(kind, y, x, n, index).value)

header = "      N " + "".join(f"{k.value:>17s}" for k in EstimatorKind)
print(header)
for n in grid:
    row = f"{n:>7d} "
    for kind in EstimatorKind:
        row += f"{np.median(values[kind][n]):>17.4f}"
    print(row)

print("\nmedian absolute error of the corrected estimator:")
for n in grid:
    err = np.median(np.abs(np.array(values[EstimatorKind.MZM][n]) - h))
    print(f"  N={n:>6d}: {err:.4f}")
