"""
The kappa-mu shadowed channel
=============================

Density, its moments, and the Gamma-Poisson sampler checked against the
density with a Kolmogorov-Smirnov test.
"""
import numpy as np
from scipy import stats

from kmsec.channel import ChannelParams, cdf_interpolant, mean_snr_check, normalization, pdf, sample

p = ChannelParams(kappa=1.0, mu=2.0, m=1.0, avg_snr=10.0)

g = np.array([0.1, 1.0, 5.0, 10.0, 30.0, 100.0])
print("snr      pdf")
for gi, fi in zip(g, pdf(p, g)):
    print(f"{gi:6.1f}  {fi:.6e}")

print(f"\n∫ pdf      = {normalization(p):.15f}")
print(f"∫ snr pdf  = {mean_snr_check(p):.12f}   (avg_snr = {p.avg_snr})")

# m = mu collapses to a Gamma law whatever kappa is
q = p.replace(m=2.0)
print(f"m = mu = 2: pdf(10) = {pdf(q, 10.0):.12e}  Gamma(2, 5) = {stats.gamma(2, scale=5).pdf(10):.12e}")

batch = sample(p, 200_000, seed=1)
print(f"\nsample mean {batch.values.mean():.4f} from {batch.values.size} draws ({batch.rng}, seed {batch.seed})")
ks = stats.kstest(batch.values, cdf_interpolant(p))
print(f"KS statistic {ks.statistic:.5f}, p-value {ks.pvalue:.3f}")
