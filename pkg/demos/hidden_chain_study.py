import numpy as np

from zmlab import (EstimatorKind, RngSpec, build_index, countable_hmm_build,
                   estimate, sample, se_diagnostic, seq_to_text, smb_series)

# Two increment-or-reset chains on a countable hidden state space.  The
# state climbs with probability exp(gamma(s) - gamma(s+1)) and otherwise
# resets; label "a" marks the resets.  A fast-growing gamma makes long
# "b" runs extremely expensive.
P = countable_hmm_build("n_squared", s_max=16, delta=1e-12, labels="ab")
Q = countable_hmm_build("n_plus_log", s_max=40, delta=1e-12, labels="ab")
print(f"P truncation tail bound: {P.tail_bound:.2e}")
print(f"Q truncation tail bound: {Q.tail_bound:.2e}")

rng = RngSpec(5)
print("\ntypical stretches:")
print("  P:", seq_to_text(sample(P, 60, rng.stream(0, "aux"))))
print("  Q:", seq_to_text(sample(Q, 60, rng.stream(1, "aux"))))

# No closed form here, so score Q paths under P directly.  The mean of
# -ln P / n at a long horizon stands in for the cross entropy rate.
series = smb_series(P, Q, [100, 1000, 10000], trials=30, rng=RngSpec(17))
for n, m in zip(series.n_grid, series.mean()):
    print(f"  -ln P / n at n={n:>5d}: mean {m:.4f}")
ref = float(series.mean()[-1])

trials = 5
grid = [2 ** k for k in range(12, 18)]
vals = {n: [] for n in grid}
for t in range(trials):
    x = sample(P, grid[-1], rng.stream(t, "x"))
    y = sample(Q, grid[-1], rng.stream(t, "y"))
    index = build_index(x)
    for n in grid:
        vals[n].append(estimate(EstimatorKind.MZM, y, x, n, index).value)
print(f"\nmZM medians over {trials} trials (target about {ref:.4f}):")
for n in grid:
    print(f"  N={n:>6d}: {np.median(vals[n]):.4f}")

# The worst-case decay of P is faster than exponential, which the decay
# diagnostic flags with a fitted exponent above 1.
se = se_diagnostic(P, [2, 4, 6, 8, 10, 12])
print(f"\ndecay exponent for P: beta={se.beta:.2f} (above 1 means the "
      f"usual convergence guarantees do not apply)")
