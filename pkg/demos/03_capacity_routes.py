"""
One capacity, several routes
============================

R = -(1/A) log2 E[(1+snr)^-A] computed by direct quadrature, the bivariate
Meijer-G closed form, the 1F1 series and Monte Carlo. The router picks the
closed form that applies and records its route.
"""
from kmsec import ChannelParams, EvalOptions, Method, QosParams, capacity

p = ChannelParams(kappa=1.0, mu=2.0, m=1.0, avg_snr=10.0)
q = QosParams(a_cap=1.0)

for method in (Method.QUADRATURE, Method.EGBMGF, Method.SERIES, Method.MONTE_CARLO, Method.HIGH_SNR):
    res = capacity(p, q, EvalOptions(method=method))
    print(f"{method.value:12s} R = {res.bits_per_s_per_hz:.12f}  ± {res.error_estimate:.1e}")

# special cases are routed, and the route is kept
cases = [
    ("m = mu", p.replace(m=2.0)),
    ("mu = 1 (Rician shadowed)", p.replace(mu=1.0, m=0.5)),
    ("mu = 1, integer m", p.replace(mu=1.0, m=3.0)),
    ("m > mu", p.replace(m=3.3)),
]
print()
for label, pp in cases:
    res = capacity(pp, q, EvalOptions(paranoid=True))
    d = res.diagnostics
    print(f"{label:26s} {res.method.value:16s} route {'>'.join(d['route']):32s} "
          f"vs quadrature {d['paranoid_discrepancy']:+.1e}")

# the QoS exponent triple converts to A = theta T B / ln 2
print(f"\ntheta=1e-2, T=1 ms, B=100 kHz -> A = {QosParams.from_theta(1e-2, 1e-3, 1e5).a_cap:.6f}")
