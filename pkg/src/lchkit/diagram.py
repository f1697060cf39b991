"""Plat-position fronts: parsing, classical invariants, Maslov potential, chords.

Conventions. Positions are numbered 1..n from top to bottom. Left cusps pair
positions (1,2), (3,4), ... at the far left, right cusps pair the same
positions at the far right. ``Crossing(i)`` swaps the strands at positions i
and i+1. A strand (arc) is named by its position at the left cusps, so strand
``s`` runs from the left cusp block to the right cusp block.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .errors import FrontSyntaxError, InternalError, RangeError, TopologyError

_GRAMMAR = re.compile(
    r"^strands\s*=\s*(?P<n>[+-]?\d+)\s*;\s*\[(?P<word>[^\]]*)\]\s*(?:;\s*orient\s*=\s*(?P<orient>[+-]?\d+)\s*)?;?$"
)


@dataclass(frozen=True)
class FrontWord:
    n_strands: int
    events: Tuple[int, ...]
    orientation_seed: int = 1

    def __str__(self):
        s = f"strands={self.n_strands}; [{','.join(map(str, self.events))}]"
        if self.orientation_seed != 1:
            s += f"; orient={self.orientation_seed}"
        return s

    def to_json(self) -> dict:
        out = {"strands": self.n_strands, "word": list(self.events)}
        if self.orientation_seed != 1:
            out["orient"] = self.orientation_seed
        return out


@dataclass(frozen=True)
class ReebChord:
    id: str
    degree: int
    kind: str  # "front_crossing" | "right_cusp"
    position: int  # event index, or cusp index (1-based, top pair = 1)


@dataclass(frozen=True)
class ClassicalInvariants:
    tb: int
    rot: int


def _validate(n: int, events, seed: int) -> FrontWord:
    if n < 2 or n % 2:
        raise RangeError(f"strand count must be even and >= 2, got {n}")
    for i in events:
        if not 1 <= i <= n - 1:
            raise RangeError(f"crossing index {i} out of range 1..{n - 1}")
    if not 1 <= seed <= n:
        raise RangeError(f"orientation seed {seed} out of range 1..{n}")
    f = FrontWord(n, tuple(events), seed)
    if len(_cycle(f)) != n:
        raise TopologyError("plat closure has more than one component")
    return f


def parse_front(text: str) -> FrontWord:
    """Parse ``strands=<n>; [i1,...]`` (optional ``; orient=<s>``) or its JSON mirror."""
    t = text.strip()
    if t.startswith("{"):
        try:
            obj = json.loads(t)
            n = int(obj["strands"])
            word = [int(i) for i in obj["word"]]
            seed = int(obj.get("orient", 1))
        except (ValueError, KeyError, TypeError) as exc:
            raise FrontSyntaxError(f"bad JSON front: {exc}") from None
        return _validate(n, word, seed)
    m = _GRAMMAR.match(t)
    if not m:
        raise FrontSyntaxError(f"cannot parse front {text!r}")
    body = m.group("word").strip()
    events = []
    if body:
        for tok in body.split(","):
            tok = tok.strip()
            if not re.fullmatch(r"[+-]?\d+", tok):
                raise FrontSyntaxError(f"bad crossing token {tok!r}")
            events.append(int(tok))
    seed = int(m.group("orient")) if m.group("orient") else 1
    return _validate(int(m.group("n")), events, seed)


def positions(f: FrontWord) -> List[List[int]]:
    """``positions(f)[k][s]`` is the position of strand s before event k.

    Index 0 holds strand 0 unused; entry k = len(events) is the right end.
    """
    pos = list(range(f.n_strands + 1))
    at = [s for s in range(f.n_strands + 1)]  # at[p] = strand at position p
    out = [pos[:]]
    for i in f.events:
        a, b = at[i], at[i + 1]
        at[i], at[i + 1] = b, a
        pos[a], pos[b] = i + 1, i
        out.append(pos[:])
    return out


def strand_at(f: FrontWord) -> List[List[int]]:
    """``strand_at(f)[k][p]``: strand at position p before event k."""
    res = []
    for pos in positions(f):
        at = [0] * (f.n_strands + 1)
        for s in range(1, f.n_strands + 1):
            at[pos[s]] = s
        res.append(at)
    return res


def _right_partner(f: FrontWord) -> Dict[int, int]:
    at = strand_at(f)[-1]
    part = {}
    for j in range(1, f.n_strands, 2):
        part[at[j]] = at[j + 1]
        part[at[j + 1]] = at[j]
    return part


def _left_partner(s: int) -> int:
    return s + 1 if s % 2 else s - 1


def _cycle(f: FrontWord) -> List[int]:
    """Strands in traversal order starting from the seed, seed run rightwards."""
    right = _right_partner(f)
    order = [f.orientation_seed]
    s = right[f.orientation_seed]
    going_right = False
    while s != f.orientation_seed:
        order.append(s)
        s = _left_partner(s) if not going_right else right[s]
        going_right = not going_right
    return order


def directions(f: FrontWord) -> Dict[int, int]:
    """+1 if the strand runs left to right under the orientation, else -1."""
    return {s: (1 if k % 2 == 0 else -1) for k, s in enumerate(_cycle(f))}


def crossing_signs(f: FrontWord) -> List[int]:
    """Writhe contribution of each front crossing.

    Positive exactly when both strands run in the same x-direction.
    """
    d = directions(f)
    at = strand_at(f)
    return [1 if d[at[k][i]] == d[at[k][i + 1]] else -1 for k, i in enumerate(f.events)]


def _cusp_counts(f: FrontWord) -> Tuple[int, int]:
    """(down, up) cusp counts under the orientation."""
    d = directions(f)
    at = strand_at(f)[-1]
    down = up = 0
    for j in range(1, f.n_strands, 2):
        # left cusp: upper strand j, lower j+1. Traversal goes down iff the
        # upper strand runs leftwards into the cusp.
        if d[j] == -1:
            down += 1
        else:
            up += 1
        # right cusp: traversal goes down iff the upper strand runs rightwards.
        if d[at[j]] == 1:
            down += 1
        else:
            up += 1
    return down, up


def classical_invariants(f: FrontWord) -> ClassicalInvariants:
    writhe = sum(crossing_signs(f))
    down, up = _cusp_counts(f)
    return ClassicalInvariants(tb=writhe - f.n_strands // 2, rot=(down - up) // 2)


def maslov_modulus(f: FrontWord) -> int:
    """2|rot|; 0 means degrees are integers."""
    return 2 * abs(classical_invariants(f).rot)


def maslov_potential(f: FrontWord) -> Dict[int, int]:
    """Potential per strand, normalised to 0 on the lower strand of the top left cusp.

    At each cusp the upper strand sits one above the lower strand. Values are
    reduced into 0..m-1 when the modulus m = 2|rot| is nonzero.
    """
    m = maslov_modulus(f)
    right = _right_partner(f)
    at_end = strand_at(f)[-1]
    right_upper = {at_end[j] for j in range(1, f.n_strands, 2)}
    mu = {2: 0}
    # walk the knot from strand 2, alternating left and right cusps
    s, via_left = 2, True
    for _ in range(f.n_strands):
        t = _left_partner(s) if via_left else right[s]
        upper = (t % 2 == 1) if via_left else (t in right_upper)
        step = 1 if upper else -1
        val = mu[s] + step
        if t in mu:
            diff = val - mu[t]
            if (m == 0 and diff != 0) or (m and diff % m):
                raise InternalError(f"inconsistent Maslov potential at strand {t}")
        else:
            mu[t] = val
        s, via_left = t, not via_left
    if len(mu) != f.n_strands:
        raise InternalError("potential did not reach every strand")
    if m:
        mu = {s: v % m for s, v in mu.items()}
    return dict(sorted(mu.items()))


def reduce_degree(d: int, modulus: int) -> int:
    return d % modulus if modulus else d


def reeb_chords(f: FrontWord) -> List[ReebChord]:
    """Crossing chords left to right, then right-cusp chords bottom to top."""
    mu = maslov_potential(f)
    m = maslov_modulus(f)
    at = strand_at(f)
    out = []
    for k, i in enumerate(f.events):
        deg = mu[at[k][i]] - mu[at[k][i + 1]]
        out.append(ReebChord(f"a{k + 1}", reduce_degree(deg, m), "front_crossing", k))
    ncross = len(f.events)
    cusps = list(range(f.n_strands // 2, 0, -1))
    for j, c in enumerate(cusps):
        out.append(ReebChord(f"a{ncross + j + 1}", reduce_degree(1, m), "right_cusp", c))
    return out


def chord_parity_from_orientation(f: FrontWord) -> List[int]:
    """Degree mod 2 of every chord, from orientation data alone.

    The potential and the x-direction both flip at every cusp, so a crossing
    chord is even iff its strands run the same way (a positive crossing).
    Right-cusp chords are odd.
    """
    return [0 if s == 1 else 1 for s in crossing_signs(f)] + [1] * (f.n_strands // 2)
