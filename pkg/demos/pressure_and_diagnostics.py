import numpy as np

from zmlab import (Bernoulli, alphabet, cross_entropy_rate,
                   markov_from_transition, nd_diagnostic, pressure_curve,
                   se_diagnostic, sided_derivatives_at_zero)

alph = alphabet("01")
P = Bernoulli(alph, np.array([0.3, 0.7]))
Q = Bernoulli(alph, np.array([0.6, 0.4]))

# The pressure curve of the pair, per symbol, across alpha.
alphas = np.linspace(-1.5, 1.5, 13)
curve = pressure_curve(P, Q, n=12, alphas=alphas)
print(f"depth {curve.n}, joint support {curve.support_size} words")
for a, v in zip(curve.alphas, curve.values):
    bar = "#" * int(40 * max(0.0, v + 1.0))
    print(f"  alpha={a:+.2f}  q/n={v:+.4f}  {bar}")
print(f"monotone: {curve.is_nondecreasing()}  convex: {curve.is_convex()}")

# Slopes through the origin bracket the quantity the estimators target.
step = 1e-5
tiny = pressure_curve(P, Q, n=12, alphas=[-step, 0.0, step])
d_minus, d_plus = sided_derivatives_at_zero(tiny, step)
print(f"\nslopes at zero: {d_minus:.6f} / {d_plus:.6f}")
print(f"closed form h_c: {cross_entropy_rate(Q, P):.6f}")

# Negativity check at alpha = -1: healthy pairs sit clearly below zero,
# the deterministic cycle drifts up toward it.
grid = [2, 4, 6, 8, 10, 12]
report = nd_diagnostic(P, Q, grid)
print(f"\nBernoulli pair: {report.verdict.value}, "
      f"q_n(-1)/n = {np.round(report.values, 4)}")
cycle = markov_from_transition(alph, np.array([[0.0, 1.0], [1.0, 0.0]]))
report = nd_diagnostic(cycle, cycle, grid)
print(f"cycle pair:     {report.verdict.value}, "
      f"q_n(-1)/n = {np.round(report.values, 4)}")

# Decay check: the smallest word probability should not fall faster than
# exponentially in n.  For an iid source the fit is exact.
se = se_diagnostic(P, grid)
print(f"\ndecay fit: beta={se.beta:.3f}, gamma_minus={se.gamma_minus:.4f}, "
      f"worst residual={se.worst_residual:.2e}")
