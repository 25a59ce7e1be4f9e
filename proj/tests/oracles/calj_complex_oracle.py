# Copyright The stablespec Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0
"""calJ and its z-derivatives on the ray arg z = pi/2 - pi/alpha, by 80-digit power series."""
from mpmath import exp, gamma, log, mp, mpc, mpf, pi, rgamma

mp.dps = 80


def calJ(z, a, k):
    s = mpc(0)
    for n in range(0, 4000):
        ar = a * n + 1 - k
        if ar <= 0 and ar == int(ar):
            continue
        t = (-1) ** n * exp((a * n - k) * log(z)) * rgamma(ar)
        s += t
        if n > 10 and abs(t) < mpf(10) ** -40 and a * n > abs(z) + 5:
            break
    return s / gamma(1 + 1 / a)


if __name__ == "__main__":
    for a in [mpf("1.5"), mpf("1.1"), mpf("1.9")]:
        th = pi / 2 - pi / a
        for r in [1, 5, 20, 50]:
            z = r * exp(mpc(0, 1) * th)
            for k in [0, 1, 2]:
                v = calJ(z, a, k)
                print(float(a), r, k, mp.nstr(v.real, 18), mp.nstr(v.imag, 18))
