"""
Concentration and isoperimetry
==============================

For L-Lipschitz f and X ~ N(0, I), P(|f(X) - median| >= eps) <= 2 Psi_bar(eps / L).
The exponent-2 form 2 exp(-2 eps^2 / L^2) is reported alongside; the identity
map already exceeds it at eps = L.
"""

from liptail import BorelSetSpec, PriorSpec, concentration_check, isoperimetry_check, zoo
from liptail.lipschitz import build_map

identity = build_map("Linear", {"w": [1.0]})
rep = concentration_check(identity, PriorSpec.gaussian(1), 1_000_000, seed=1, epsilons=[0.5, 1.0, 2.0])
print(" eps    p_hat   2 Psi_bar   2exp(-2e^2)")
for eps, p, se, bm, bp, vm, vp in rep.rows():
    print(f"{eps:4.1f}  {p:.5f}    {bm:.5f}     {bp:.5f}{'   <- exceeded' if vp else ''}")

for name, fmap in zoo(16).items():
    r = concentration_check(fmap, PriorSpec.gaussian(16), 200_000, seed=2,
                            epsilons=[fmap.lip_bound * u for u in (0.5, 1.0, 2.0)])
    print(f"{name:15s} median-bound violations: {r.summary()['median_bound_violations']}")

# Half-spaces are the extremal sets: their margin is zero, balls do strictly better
for s in (BorelSetSpec("HalfSpace", 2, a=0.3), BorelSetSpec("Ball", 2, radius=1.0)):
    r = isoperimetry_check(s, 0.5, 1_000_000, seed=3)
    print(f"{s.kind:9s} gamma(A) = {r['measure_A']:.4f}  margin = {r['margin']:+.5f} (se {r['se']:.1e})")
