"""Monte Carlo check of the modulated-coherence tail bound.

After a random unit-modulus modulation, the coherence of a basis pair
concentrates near the modulus-coherence beta; the probability that it
exceeds beta * sqrt(2 log(2 N^2 / eps)) is at most eps. The empirical
violation rate is typically far below eps because the union bound is
generous.
"""

import math

from spreadcs import make_transform, modulus_coherence, tail_bound_violation_rate

n = 64
sensing = make_transform("fourier", n)
sparsity = make_transform("haar", n)
beta = modulus_coherence(sensing, sparsity)
print(f"fourier/haar, N = {n}, beta = {beta:.5f}")

for kind in ("rademacher", "steinhaus"):
    for eps in (0.05, 0.2, 0.5):
        bound = beta * math.sqrt(2.0 * math.log(2.0 * n * n / eps))
        rate = tail_bound_violation_rate(sensing, sparsity, kind, eps, trials=400, seed=11)
        print(f"{kind:10s} eps = {eps:4.2f}  bound = {bound:.4f}  empirical violation rate = {rate:.4f}")
