# Copyright The stablespec Authors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0
"""Reference values for the special functions, by direct high-precision summation."""
import mpmath as mp

mp.mp.dps = 90


def calJ(x, a, k=0):
    x, a = mp.mpf(x), mp.mpf(a)
    s = mp.mpf(0)
    n = 0
    while True:
        arg = a * n + 1 - k
        t = (-1) ** n * x ** (a * n - k) * mp.rgamma(arg) if arg > 0 or arg != int(arg) else 0
        s += t
        if n > 5 and a * n > x + 10 and abs(t) < mp.mpf(10) ** (-60):
            break
        n += 1
    return s / mp.gamma(1 + 1 / a)


def besselJ(x, a):
    x, a = mp.mpf(x), mp.mpf(a)
    return a * mp.nsum(lambda n: (-1) ** n * x ** (a * n) / (mp.factorial(n) * mp.gamma(n + 1 / a)), [0, mp.inf])


def g(x, a):
    x, a = mp.mpf(x), mp.mpf(a)
    return mp.nsum(lambda n: mp.gamma(1 / a) * mp.gamma(a * n + 1) / (mp.gamma(n + 1 / a) * mp.factorial(n) ** 2)
                   * (-x ** a) ** n, [0, mp.inf])


def polyP(n, x, a):
    a = mp.mpf(a)
    x = mp.mpf(x)
    return sum((-1) ** k * mp.binomial(n, k) * mp.factorial(k) / mp.gamma(a * k + 1) * x ** k
               for k in range(n + 1)) / mp.gamma(1 + 1 / a)


def hatJ(x, a):
    pa = mp.pi / a
    return mp.gamma(1 / a) / mp.pi * mp.sin(pa - x * mp.sin(pa)) * mp.exp(-x * mp.cos(pa))


def funcV(n, y, a):
    a = mp.mpf(a)
    f = lambda q: q ** (a * n) * mp.exp(-q ** a) * hatJ(q * y, a)
    return mp.quad(f, [0, 1, 2, 4, 8, 16, 40]) / mp.factorial(n)


if __name__ == "__main__":
    for a in ("1.1", "1.5", "1.9"):
        for x in ("0.5", "1", "2.9", "3.1", "8", "15", "36", "44"):
            for k in (0, 1, 2):
                print(f"calJ a={a} x={x} k={k} {mp.nstr(calJ(x, a, k), 20)}")
    for a in ("1.5", "1.1", "1.9"):
        for x in ("0.5", "2", "10"):
            print(f"J a={a} x={x} {mp.nstr(besselJ(x, a), 20)}")
        for x in ("0.5", "1", "2", "4"):
            print(f"g a={a} x={x} {mp.nstr(g(x, a), 20)}")
    for n, x in ((5, 1.7), (40, 2.3), (200, 1.0)):
        print(f"P a=1.5 n={n} x={x} {mp.nstr(polyP(n, x, '1.5'), 20)}")
    for n, y in ((0, 0), (3, 0.5), (10, 1.0)):
        print(f"V a=1.5 n={n} y={y} {mp.nstr(funcV(n, y, '1.5'), 20)}")
