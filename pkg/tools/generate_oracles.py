"""Offline extended-precision reference values used as frozen fixtures in tests/.

Run with ``python tools/generate_oracles.py``. Needs mpmath; the library itself
does not import it. Every value printed here is independent of the package
code paths (mpmath quadrature / series at 40 digits).
"""
import json

import mpmath as mp

mp.mp.dps = 40


def pdf(g, kappa, mu, m, avg):
    kappa, mu, m, avg = map(mp.mpf, (kappa, mu, m, avg))
    pre = mu**mu * m**m * (1 + kappa) ** mu / (mp.gamma(mu) * avg * (mu * kappa + m) ** m)
    arg = mu**2 * kappa * (1 + kappa) * g / ((mu * kappa + m) * avg)
    return pre * (g / avg) ** (mu - 1) * mp.exp(-mu * (1 + kappa) * g / avg) * mp.hyp1f1(m, mu, arg)


def _split(avg):
    avg = mp.mpf(avg)
    return [0, avg / 100, avg / 10, avg, 5 * avg, 20 * avg, 80 * avg, mp.inf]


def capacity(kappa, mu, m, a_cap, avg):
    a_cap = mp.mpf(a_cap)
    e = mp.quad(lambda g: (1 + g) ** (-a_cap) * pdf(g, kappa, mu, m, avg), _split(avg))
    return -mp.log(e, 2) / a_cap


def ergodic(kappa, mu, m, avg):
    return mp.quad(lambda g: mp.log(1 + g, 2) * pdf(g, kappa, mu, m, avg), _split(avg))


def main():
    out = {}
    out["loggamma_3p4i"] = [float(mp.re(mp.loggamma(3 + 4j))), float(mp.im(mp.loggamma(3 + 4j)))]
    out["hyp1f1_2_3_1.5"] = float(mp.hyp1f1(2, 3, 1.5))
    out["hyp2f1_1.5_2_2.5_-0.8"] = float(mp.hyp2f1(1.5, 2, 2.5, -0.8))
    out["hyperu_1_1_1"] = float(mp.hyperu(1, 1, 1))
    out["hyperu_2_1.5_0.25"] = float(mp.hyperu(2, 1.5, 0.25))
    out["int_(1+x)^-2_x^0.5_e^-x"] = float(
        mp.quad(lambda x: (1 + x) ** -2 * mp.sqrt(x) * mp.exp(-x), [0, 1, 10, mp.inf])
    )
    s = t = mp.mpf("-0.25")
    mu, m, a_cap = 2, 1, 1
    out["kernel_-0.25"] = float(
        mp.gamma(mu + s + t) * mp.gamma(-s) * mp.gamma(a_cap + s) * mp.gamma(-t) * mp.gamma(mu - m + t) / mp.gamma(mu + t)
    )
    out["logpdf_k1_mu2_m1_avg10_at5"] = float(mp.log(pdf(5, 1, 2, 1, 10)))

    caps = {}
    points = [
        (1, 2, 1, 1, 10),
        (0.5, 1, 0.5, 2, 100),
        (0.5, 1.5, 0.8, 2.5, 50),
        (2, 1, 0.5, 1, 10),
        (2, 1, 2.5, 1, 10),
        (2, 1, 3, 1, 10),
        (1, 2, 2, 1, 10),
        (5, 2.5, 3.5, 0.5, 1000),
        (1, 2, 1, 1, 1000),
        (1, 2, 1, 1000, 10),
        (3, 2, 1, 1, 10),
    ]
    for p in points:
        caps[json.dumps(p)] = float(capacity(*p))
    out["capacity"] = caps
    erg = {}
    for p in [(1, 2, 1, 10), (0.5, 1, 0.5, 100)]:
        erg[json.dumps(p)] = float(ergodic(*p))
    out["ergodic"] = erg
    print(json.dumps(out, indent=1))


if __name__ == "__main__":
    main()
