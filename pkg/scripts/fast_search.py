"""Faster plat search: canonical words up to far commutation, numeric filters.

Usage: python scripts/fast_search.py N MAXLEN TB DET ALEX_AT_3
Prints words passing tb (rot 0), |Delta(-1)| and |Delta(3)| up to a power of 3.
"""
from __future__ import annotations

import sys

import numpy as np


def closes(n, perm):
    right = {}
    for j in range(1, n, 2):
        a, b = perm[j], perm[j + 1]
        right[a], right[b] = b, a
    s, cnt, going_right = right[1], 1, False
    order = [1]
    while s != 1:
        order.append(s)
        s = (s + 1 if s % 2 else s - 1) if not going_right else right[s]
        going_right = not going_right
        cnt += 1
    return order if cnt == n else None


def data(n, word):
    at = list(range(n + 1))
    ats = []
    for i in word:
        ats.append(at[:])
        at[i], at[i + 1] = at[i + 1], at[i]
    order = closes(n, at)
    if order is None:
        return None
    d = {s: (1 if k % 2 == 0 else -1) for k, s in enumerate(order)}
    signs = [1 if d[a[i]] == d[a[i + 1]] else -1 for a, i in zip(ats, word)]
    down = up = 0
    for j in range(1, n, 2):
        if d[j] == -1:
            down += 1
        else:
            up += 1
        if d[at[j]] == 1:
            down += 1
        else:
            up += 1
    return order, d, ats, signs, (down - up) // 2


def alex_at(n, word, order, d, ats, signs, tval):
    pos_of = []
    for a in ats:
        p = [0] * (n + 1)
        for q in range(1, n + 1):
            p[a[q]] = q
        pos_of.append(p)
    trav = []
    m = len(word)
    for s in order:
        ks = range(m) if d[s] == 1 else range(m - 1, -1, -1)
        for k in ks:
            p, i = pos_of[k][s], word[k]
            if p == i:
                trav.append((k, True))
            elif p == i + 1:
                trav.append((k, False))
    arc = 0
    oa, ui, uo = {}, {}, {}
    for k, over in trav:
        if over:
            oa[k] = arc
        else:
            ui[k] = arc
            arc += 1
            uo[k] = arc
    na = arc
    M = np.zeros((m, na))
    t = tval
    for k in range(m):
        o, a, b = oa[k] % na, ui[k] % na, uo[k] % na
        if signs[k] == 1:
            M[k, o] += 1 - t; M[k, a] += t; M[k, b] -= 1
        else:
            M[k, o] += t - 1; M[k, a] += 1; M[k, b] -= t
    return abs(round(np.linalg.det(M[1:, 1:])))


def main(argv):
    n, maxlen, tb, det, at2 = map(int, argv)
    hits = 0

    def rec(word):
        nonlocal hits
        if word:
            r = data(n, word)
            if r is not None:
                order, d, ats, signs, rot = r
                if rot == 0 and sum(signs) - n // 2 == tb:
                    if alex_at(n, word, order, d, ats, signs, -1) == det:
                        v = alex_at(n, word, order, d, ats, signs, 3)
                        while v and v % 3 == 0 and v != at2:
                            v //= 3
                        if v == at2:
                            hits += 1
                            print(word, flush=True)
        if len(word) == maxlen:
            return
        for i in range(1, n):
            if word and word[-1] >= i + 2:
                continue  # canonical order for commuting crossings
            rec(word + [i])

    rec([])
    print("hits", hits)


if __name__ == "__main__":
    main(sys.argv[1:])
