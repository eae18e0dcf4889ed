"""
Conditional moment ratio and its envelope
=========================================

c_gamma(t) = E[(X / t)^gamma | X > t] tends to 1 for light tails and to
alpha / (alpha - gamma) for Pareto(alpha).  For an L-Lipschitz pushforward of
G_k^d it is trapped between explicit bounds once t is large enough.
"""

import numpy as np

from liptail import PriorSpec, conditional_moment_ratio, envelope, sample_prior, zoo
from liptail.evt import default_thresholds, envelope_onset
from liptail.lipschitz import evaluate

fmap = zoo(2)["euclidean_norm"]
values = evaluate(fmap, sample_prior(PriorSpec.radial_gaussian(2, 0), 2_000_000, seed=1))
gamma = 0.5
print("envelope valid from t >", envelope_onset(fmap.lip_bound, 0.0, 0, 2, gamma))

ts = np.array([1.5, 2.0, 2.5, 3.0, 3.5, 4.0])
curve = conditional_moment_ratio(values, gamma, ts, lip_bound=fmap.lip_bound, k=0, d=2)
for t, c, count, lo, hi, ok in curve.rows():
    band = f"[{lo:.4f}, {hi:.4f}]" if ok else "(envelope not valid)"
    print(f"t = {t:3.1f}  c_hat = {c:.4f}  n = {count:7d}  {band}")

# At the far quantiles the ratio creeps toward 1
tq = default_thresholds(values, (0.99, 0.999, 0.9999))
print("far tail:", np.round(conditional_moment_ratio(values, gamma, tq).c_hat, 4))

# Pareto(2) stays at alpha / (alpha - gamma) whatever the threshold
x = sample_prior(PriorSpec.pareto(2.0), 2_000_000, seed=2).data[:, 0]
print("Pareto(2), gamma = 1:", np.round(conditional_moment_ratio(x, 1.0, default_thresholds(x, (0.9, 0.99))).c_hat, 3))

# Envelope bounds themselves are closed form
b = envelope(L=1.0, f0=0.0, k=0, d=2, gamma=gamma, t=3.0)
print(f"m_minus = {b.m_minus:.6f} = 18/19, m_plus = {b.m_plus:.6f} = 18/17")
