"""
More clusters, diminishing returns (figure 2 setting)
=====================================================

m = 1, A = 1. Capacity for mu in {1, 2, 4} and kappa in {1, 5}: the step
from mu = 2 to 4 is smaller than from 1 to 2 at every SNR. Larger kappa
lowers capacity here; the direction of kappa is not universal.
"""
from kmsec import ChannelParams, QosParams, capacity

q = QosParams(1.0)
for kappa in (1.0, 5.0):
    print(f"\nkappa = {kappa}")
    print("  dB    mu=1     mu=2     mu=4    gap12   gap24")
    for db in range(0, 41, 5):
        r = [capacity(ChannelParams.from_db(kappa, mu, 1.0, db), q).bits_per_s_per_hz for mu in (1.0, 2.0, 4.0)]
        print(f"{db:4d}  {r[0]:7.4f}  {r[1]:7.4f}  {r[2]:7.4f}  {r[1] - r[0]:7.4f} {r[2] - r[1]:7.4f}")
