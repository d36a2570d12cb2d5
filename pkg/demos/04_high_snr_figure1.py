"""
High-SNR approximation (figure 1 setting)
=========================================

kappa = 1, mu = 2. The exact capacity and its large-SNR asymptote over
0..40 dB for several (m, A). The asymptote needs A < mu, so only the A = 1
curves have one. The same table comes from ``kmsec sweep --preset fig1``.
"""
from kmsec import cli
from kmsec.effcap import Method

tasks = [
    t for t in cli.sweep_tasks(cli.fig1_specs(), skip_inapplicable=True)
    if t.method in (Method.EGBMGF, Method.HIGH_SNR)
]
rows = cli.run_tasks(tasks, cli.RunConfig())

table = {}
for r in rows:
    table.setdefault((r["m"], r["A"]), {}).setdefault(round(r["avg_snr_db"]), {})[r["requested_method"]] = r["R"]

for (m, a), by_db in sorted(table.items()):
    print(f"\nm = {m}, A = {a}")
    print("  dB     exact    high-SNR      gap")
    for db, v in sorted(by_db.items()):
        hi = v.get("high_snr")
        gap = "" if hi is None else f"{v['egbmgf'] - hi:9.4f}"
        hi_s = "" if hi is None else f"{hi:9.4f}"
        print(f"{db:4d}  {v['egbmgf']:8.4f}  {hi_s:>9s}  {gap}")
