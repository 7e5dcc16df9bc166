"""Scalar reference evaluations of the UF1-UF7 test functions.

Everything here is written with explicit 1-based loops and no numpy so the
vectorized package code can be checked against an independent reading of the
same formulas.
"""

import math


def _split(n):
    j1 = [j for j in range(2, n + 1) if j % 2 == 1]
    j2 = [j for j in range(2, n + 1) if j % 2 == 0]
    return j1, j2


def uf1(x):
    n = len(x)
    j1, j2 = _split(n)
    s1 = sum((x[j - 1] - math.sin(6 * math.pi * x[0] + j * math.pi / n)) ** 2
             for j in j1)
    s2 = sum((x[j - 1] - math.sin(6 * math.pi * x[0] + j * math.pi / n)) ** 2
             for j in j2)
    f1 = x[0] + 2.0 / len(j1) * s1
    f2 = 1 - math.sqrt(x[0]) + 2.0 / len(j2) * s2
    return f1, f2


def uf2(x):
    n = len(x)
    j1, j2 = _split(n)

    def y(j):
        a = 0.3 * x[0] ** 2 * math.cos(24 * math.pi * x[0] + 4 * j * math.pi / n)
        a = a + 0.6 * x[0]
        b = 6 * math.pi * x[0] + j * math.pi / n
        if j % 2 == 1:
            return x[j - 1] - a * math.cos(b)
        return x[j - 1] - a * math.sin(b)

    f1 = x[0] + 2.0 / len(j1) * sum(y(j) ** 2 for j in j1)
    f2 = 1 - math.sqrt(x[0]) + 2.0 / len(j2) * sum(y(j) ** 2 for j in j2)
    return f1, f2


def uf3(x):
    n = len(x)
    j1, j2 = _split(n)

    def y(j):
        e = 0.5 * (1.0 + 3.0 * (j - 2.0) / (n - 2.0))
        return x[j - 1] - x[0] ** e

    def term(js):
        sq = sum(y(j) ** 2 for j in js)
        pr = 1.0
        for j in js:
            pr *= math.cos(20.0 * y(j) * math.pi / math.sqrt(j))
        return 2.0 / len(js) * (4.0 * sq - 2.0 * pr + 2.0)

    return x[0] + term(j1), 1 - math.sqrt(x[0]) + term(j2)


def uf4(x):
    n = len(x)
    j1, j2 = _split(n)

    def h(j):
        y = x[j - 1] - math.sin(6 * math.pi * x[0] + j * math.pi / n)
        return abs(y) / (1.0 + math.exp(2.0 * abs(y)))

    f1 = x[0] + 2.0 / len(j1) * sum(h(j) for j in j1)
    f2 = 1 - x[0] ** 2 + 2.0 / len(j2) * sum(h(j) for j in j2)
    return f1, f2


def uf5(x):
    n = len(x)
    j1, j2 = _split(n)
    big_n, eps = 10.0, 0.1

    def h(j):
        y = x[j - 1] - math.sin(6 * math.pi * x[0] + j * math.pi / n)
        return 2.0 * y ** 2 - math.cos(4.0 * math.pi * y) + 1.0

    bump = (1.0 / (2.0 * big_n) + eps) * abs(math.sin(2.0 * big_n * math.pi * x[0]))
    f1 = x[0] + bump + 2.0 / len(j1) * sum(h(j) for j in j1)
    f2 = 1 - x[0] + bump + 2.0 / len(j2) * sum(h(j) for j in j2)
    return f1, f2


def uf6(x):
    n = len(x)
    j1, j2 = _split(n)
    big_n, eps = 2.0, 0.1

    def y(j):
        return x[j - 1] - math.sin(6 * math.pi * x[0] + j * math.pi / n)

    def term(js):
        sq = sum(y(j) ** 2 for j in js)
        pr = 1.0
        for j in js:
            pr *= math.cos(20.0 * y(j) * math.pi / math.sqrt(j))
        return 2.0 / len(js) * (4.0 * sq - 2.0 * pr + 2.0)

    bump = max(0.0, 2.0 * (1.0 / (2.0 * big_n) + eps)
               * math.sin(2.0 * big_n * math.pi * x[0]))
    return x[0] + bump + term(j1), 1 - x[0] + bump + term(j2)


def uf7(x):
    n = len(x)
    j1, j2 = _split(n)

    def y(j):
        return x[j - 1] - math.sin(6 * math.pi * x[0] + j * math.pi / n)

    root = x[0] ** 0.2
    f1 = root + 2.0 / len(j1) * sum(y(j) ** 2 for j in j1)
    f2 = 1 - root + 2.0 / len(j2) * sum(y(j) ** 2 for j in j2)
    return f1, f2


BY_NAME = {"uf1": uf1, "uf2": uf2, "uf3": uf3, "uf4": uf4,
           "uf5": uf5, "uf6": uf6, "uf7": uf7}
