"""
Delay constraint: from ergodic capacity to zero
===============================================

As A -> 0 the effective capacity meets the ergodic capacity E log2(1+snr);
as A grows the delay guarantee tightens and R decays towards zero.
"""
import numpy as np

from kmsec import ChannelParams, QosParams, capacity, ergodic_capacity

p = ChannelParams.from_db(1.0, 2.0, 1.0, 10.0)
print(f"ergodic capacity  {ergodic_capacity(p):.6f}")
for a in np.geomspace(1e-5, 1e3, 9):
    res = capacity(p, QosParams(float(a)))
    print(f"A = {a:9.2e}   R = {res.bits_per_s_per_hz:.6f}   ({res.method.value})")
