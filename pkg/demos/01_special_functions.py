"""
Special functions behind the closed forms
=========================================

The exact capacity needs log-Gamma far up vertical lines in the complex
plane, the Kummer function in the density, the Gauss function in the
high-SNR form and Tricomi U in the m = mu form.
"""
import math

import numpy as np

from kmsec.specfun import gauss_2f1, kummer_1f1, log_gamma, tricomi_u

# log-Gamma on the line Re z = -0.25: |Gamma| decays like exp(-pi |Im z| / 2)
t = np.array([0.0, 10.0, 50.0, 200.0])
lg = log_gamma(-0.25 + 1j * t)
for ti, v in zip(t, lg):
    print(f"Im z = {ti:6.1f}   log|Gamma| = {v.real:12.6f}   pi|t|/2 = {math.pi * ti / 2:10.3f}")

# Kummer's transformation ties positive and negative arguments together
a, b, z = 1.5, 2.5, -12.0
lhs = kummer_1f1(a, b, z)[0]
rhs = math.exp(z) * kummer_1f1(b - a, b, -z)[0]
print(f"\n1F1({a}, {b}; {z}) = {lhs:.15g}   via transform {rhs:.15g}")

# Gauss 2F1(1, 1; 2; z) = -log(1 - z) / z
print(f"2F1(1, 1; 2; -1) = {gauss_2f1(1, 1, 2, -1)[0]:.15f}   log 2 = {math.log(2):.15f}")

# U(a, a+1, z) = z^-a, including tiny a
for a in (1e-5, 0.3, 4.0):
    print(f"U({a}, {a + 1}, 2.5) * 2.5^{a} = {tricomi_u(a, a + 1, 2.5) * 2.5**a:.15f}")
