"""Coherence diagnostics: why modulation helps, and when it does not.

Prints the mutual and modulus coherences of the classic basis pairs,
then the chirp-chain coherence products whose trend with the chirp rate
predicts the recovery curves: growing for an already incoherent pair
(Dirac sparsity), collapsing for the fully coherent one (Fourier).
"""

from spreadcs import analog_coherence, make_transform, modulus_coherence, mutual_coherence

N = 1024

print("== plain coherence of basis pairs (N = 64) ==")
for sensing in ("fourier", "hadamard"):
    for sparsity in ("dirac", "haar", "fourier"):
        mu = mutual_coherence(make_transform(sensing, 64), make_transform(sparsity, 64))
        beta = modulus_coherence(make_transform(sensing, 64), make_transform(sparsity, 64))
        print(f"{sensing:9s}/{sparsity:8s}  mu = {mu:8.5f}   beta = {beta:8.5f}   (N^-1/2 = {64**-0.5:.5f})")

print()
print(f"== chirp chain coherence products (N = {N}) ==")
print(f"{'sparsity':10s} {'rate':>5s} {'N_w':>6s} {'mu_w':>10s} {'N_w * mu_w^2':>14s}")
for sparsity in ("dirac", "fourier"):
    for w_bar in (0.0, 0.1, 0.25, 0.5):
        rep = analog_coherence(sparsity, N, w_bar)
        print(f"{sparsity:10s} {w_bar:5.2f} {rep.n_upsampled:6d} {rep.mu:10.6f} {rep.product_nw_mu2:14.4f}")
print()
print("Dirac: the product grows slowly with the rate, so chirping costs a little.")
print("Fourier: the product collapses by orders of magnitude, so chirping is decisive.")
