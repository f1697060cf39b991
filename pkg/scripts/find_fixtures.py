"""Search small plat fronts for given classical data and Alexander polynomial.

Usage: python scripts/find_fixtures.py TB ROT 'ALEXANDER' STRANDS MAXLEN
e.g.   python scripts/find_fixtures.py 1 0 '2*t**2-3*t+2' 4 10
Prints each hit with its LCH class set.
"""
from __future__ import annotations

import itertools
import sys

import sympy as sp

from lchkit.diagram import classical_invariants, parse_front
from lchkit.discs import differential
from lchkit.errors import TopologyError
from lchkit.linhom import lch_class_set

from knot_type import alexander


def main(argv):
    tb, rot, alex, n, maxlen = int(argv[0]), int(argv[1]), argv[2], int(argv[3]), int(argv[4])
    t = sp.symbols("t")
    want = sp.Poly(sp.sympify(alex), t)
    wdet = abs(want.eval(-1))
    seen = 0
    for length in range(maxlen + 1):
        for w in itertools.product(range(1, n), repeat=length):
            # skip words with an immediate repeat of three, they only add stabilised twists
            try:
                f = parse_front(f"strands={n}; [{','.join(map(str, w))}]")
            except TopologyError:
                continue
            ci = classical_invariants(f)
            if ci.tb != tb or abs(ci.rot) != abs(rot):
                continue
            p = alexander(f)
            if abs(p.eval(-1)) != wdet or p != want:
                continue
            seen += 1
            d = differential(f)
            print(f, [str(c) for c in lch_class_set(d)], flush=True)
    print("hits", seen)


if __name__ == "__main__":
    main(sys.argv[1:])
