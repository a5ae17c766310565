"""Independent generator for the V(m) golden files (m <= 2).

Builds the weight-basis matrices directly from the module formulas with
integer Laurent polynomials in v (q = v^2) and writes the canonical scalar
strings. Run from this directory: python3 make_golden.py
"""
import json
from collections import defaultdict


def qnum(n):
    p = defaultdict(int)
    sign = 1 if n >= 0 else -1
    for j in range(abs(n)):
        p[2 * (abs(n) - 1 - 2 * j)] += sign
    return {e: c for e, c in p.items() if c}


def mul(a, b):
    r = defaultdict(int)
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            r[e1 + e2] += c1 * c2
    return {e: c for e, c in r.items() if c}


def text(p):
    if not p:
        return "(0)/(1)"
    out = ""
    for i, e in enumerate(sorted(p, reverse=True)):
        c = p[e]
        s = "-" if c < 0 else ("+" if i else "")
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            body = ("" if a == 1 else str(a)) + "v" + ("" if e == 1 else "^" + str(e))
        out += s + body
    return "(" + out + ")/(1)"


def half(t):
    return str(t // 2) if t % 2 == 0 else f"{t}/2"


def module(twice_m):
    d = twice_m + 1
    mus = [twice_m - 2 * i for i in range(d)]  # twice the weights
    E = [[{} for _ in range(d)] for _ in range(d)]
    F = [[{} for _ in range(d)] for _ in range(d)]
    K = [[{} for _ in range(d)] for _ in range(d)]
    for i, tm in enumerate(mus):
        K[i][i] = {2 * tm: 1}
        if i + 1 < d:
            F[i + 1][i] = {0: 1}
        if i > 0:
            a = (twice_m - tm) // 2
            b = (twice_m + tm) // 2 + 1
            E[i - 1][i] = mul(qnum(a), qnum(b))
    return {
        "weights": [half(t) for t in mus],
        "E": [[text(x) for x in row] for row in E],
        "F": [[text(x) for x in row] for row in F],
        "K": [[text(x) for x in row] for row in K],
    }


for t in range(5):
    with open(f"irreducible_{t}.json", "w") as fh:
        json.dump(module(t), fh, indent=1)
        fh.write("\n")
