# Copyright The stablespec Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0
"""Reference density values by high-precision inversion along Re s = 1/2."""
import mpmath as mp

mp.mp.dps = 30


def M_Lambda(s, a):
    return mp.gamma((s - 1) / a + 1) * mp.gamma(s / a) / (mp.gamma(1 / a) * mp.gamma(s))


def M_X(s, a):
    return mp.gamma(s) / mp.gamma(s / a + 1 - 1 / a)


def invert(M, y, a, c=mp.mpf("0.5")):
    f = lambda b: mp.re(M(c + 1j * b, a) * mp.power(y, -(c + 1j * b)))
    return mp.quad(f, mp.linspace(-400, 400, 161)) / (2 * mp.pi)


if __name__ == "__main__":
    for a in ("1.5", "1.1"):
        A = mp.mpf(a)
        for y in ("0.05", "0.3", "1", "2"):
            print(f"lambda_alpha a={a} y={y} {mp.nstr(invert(M_Lambda, mp.mpf(y), A), 18)}")
            print(f"lambda_X a={a} y={y} {mp.nstr(invert(M_X, mp.mpf(y), A), 18)}")
