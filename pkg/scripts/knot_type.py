"""Alexander polynomial of a plat front's underlying knot, via Fox calculus.

Used only to confirm the smooth knot type of shipped fixtures.
"""
from __future__ import annotations

import sympy as sp

from lchkit.diagram import FrontWord, crossing_signs, directions, positions


def _traversal(f: FrontWord):
    """(event, over?) pairs met while walking the knot in its orientation."""
    from lchkit.diagram import _cycle

    pos = positions(f)
    d = directions(f)
    out = []
    for s in _cycle(f):
        ks = range(len(f.events)) if d[s] == 1 else range(len(f.events) - 1, -1, -1)
        for k in ks:
            p, i = pos[k][s], f.events[k]
            if p == i:
                out.append((k, True))
            elif p == i + 1:
                out.append((k, False))
    return out


def alexander(f: FrontWord) -> sp.Poly:
    t = sp.symbols("t")
    trav = _traversal(f)
    n = len(f.events)
    if n == 0:
        return sp.Poly(1, t)
    arc = 0
    over_arc, under_in, under_out = {}, {}, {}
    for k, over in trav:
        if over:
            over_arc[k] = arc
        else:
            under_in[k] = arc
            arc += 1
            under_out[k] = arc
    narcs = arc
    for k in under_out:
        under_out[k] %= narcs
    for k in over_arc:
        over_arc[k] %= narcs
    sign = crossing_signs(f)
    m = sp.zeros(n, narcs)
    for k in range(n):
        o, a, b = over_arc[k], under_in[k], under_out[k]
        if sign[k] == 1:
            m[k, o] += 1 - t
            m[k, a] += t
            m[k, b] += -1
        else:
            m[k, o] += t - 1
            m[k, a] += 1
            m[k, b] += -t
    minor = m[1:, 1:]
    det = sp.expand(minor.det())
    if det == 0:
        return sp.Poly(0, t)
    p = sp.Poly(det, t)
    low = min(e[0] for e in p.monoms())
    p = sp.Poly(sp.expand(det / t**low), t)
    if p.LC() < 0:
        p = -p
    return p


def jones(f: FrontWord) -> sp.Expr:
    """Jones polynomial in t (mirror convention fixed by over = NW-SE strand)."""
    from lchkit.diagram import _cycle

    a = sp.symbols("A")
    t = sp.symbols("t")
    n_ev = len(f.events)
    pos = positions(f)
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    base_links = []
    for s in range(1, f.n_strands + 1):
        prev = ("L", s)
        for k in range(n_ev):
            p, i = pos[k][s], f.events[k]
            if p == i:
                base_links.append((prev, (k, "NW")))
                prev = (k, "SE")
            elif p == i + 1:
                base_links.append((prev, (k, "SW")))
                prev = (k, "NE")
        base_links.append((prev, ("R", s)))
    at_end = {pos[-1][s]: s for s in range(1, f.n_strands + 1)}
    for j in range(1, f.n_strands, 2):
        base_links.append((("L", j), ("L", j + 1)))
        base_links.append((("R", at_end[j]), ("R", at_end[j + 1])))
    total = 0
    for state in range(2 ** n_ev):
        parent.clear()
        for x, y in base_links:
            union(x, y)
        na = 0
        for k in range(n_ev):
            if (state >> k) & 1:
                na += 1
                union((k, "NW"), (k, "NE"))
                union((k, "SW"), (k, "SE"))
            else:
                union((k, "NW"), (k, "SW"))
                union((k, "NE"), (k, "SE"))
        loops = len({find(x) for x in list(parent)})
        total += a ** (na - (n_ev - na)) * (-a**2 - a**-2) ** (loops - 1)
    w = sum(crossing_signs(f))
    fa = sp.expand((-a**3) ** (-w) * total)
    return sp.expand(fa.subs(a, t ** sp.Rational(-1, 4)))
