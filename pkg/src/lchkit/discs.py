"""Admissible disks of the resolved front, and the Chekanov-Eliashberg differential.

A disk in the resolution of a plat front is swept from left to right as a
pair of boundary positions ``(u, l)`` with ``u < l``: the disk fills the
positions strictly between its upper boundary ``u`` and lower boundary ``l``.
It starts at a left cusp ``(2j-1, 2j)`` and ends either at a crossing of its
two boundary strands (disk in the left quadrant) or at a right cusp pair.
Negative corners are convex corners in the top or bottom quadrant of a
crossing:

* the upper boundary at ``u`` meets crossing ``(u-1, u)``: it either follows
  its strand up to ``u-1`` or turns there, staying at ``u`` (bottom quadrant);
* the lower boundary at ``l`` meets crossing ``(l, l+1)``: it either follows
  its strand down to ``l+1`` or turns there, staying at ``l`` (top quadrant).

Every other crossing touching a boundary position moves that boundary along
its strand. Each right-cusp chord also bounds the small disk inside the
resolution loop, which has no negative corners.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .diagram import FrontWord, ReebChord, reeb_chords
from .dga import FreeDGA, check_d_squared
from .errors import DegreeError

LOOP = "loop"


@dataclass(frozen=True)
class DiskWord:
    positive_chord: str
    negative_chords: Tuple[str, ...]
    witness: Tuple  # ((event, u, l), ...) or ("loop",)

    def to_json(self) -> dict:
        return {
            "positive": self.positive_chord,
            "negatives": list(self.negative_chords),
            "witness": [list(w) if isinstance(w, tuple) else w for w in self.witness],
        }


def _chord_maps(f: FrontWord):
    chords = reeb_chords(f)
    by_event = {c.position: c for c in chords if c.kind == "front_crossing"}
    by_cusp = {c.position: c for c in chords if c.kind == "right_cusp"}
    return chords, by_event, by_cusp


def _word(upper, lower) -> Tuple[str, ...]:
    # counterclockwise from the positive corner: upper corners right to left,
    # then lower corners left to right
    return tuple(c for _, c in sorted(upper, key=lambda t: -t[0])) + tuple(
        c for _, c in sorted(lower, key=lambda t: t[0])
    )


def sweep_disks(f: FrontWord) -> List[DiskWord]:
    """All admissible disks, found by a left-to-right sweep."""
    _, by_event, by_cusp = _chord_maps(f)
    n_ev = len(f.events)
    found: List[DiskWord] = []

    def go(k, u, l, upper, lower, trace):
        if k == n_ev:
            if u % 2 == 1 and l == u + 1:
                c = by_cusp[(u + 1) // 2]
                found.append(DiskWord(c.id, _word(upper, lower), tuple(trace)))
            return
        i = f.events[k]
        name = by_event[k].id
        if i == u and i + 1 == l:
            found.append(DiskWord(name, _word(upper, lower), tuple(trace)))
            return
        nu, nl = u, l
        branch = []
        if i == u:
            nu = u + 1
        elif i + 1 == u:
            nu = u - 1
            branch.append(("u", k, name))
        if i == l:
            nl = l + 1
            branch.append(("l", k, name))
        elif i + 1 == l:
            nl = l - 1
        go(k + 1, nu, nl, upper, lower, trace + [(k + 1, nu, nl)])
        for side, kk, nm in branch:
            if side == "u":
                go(k + 1, u, nl, upper + [(kk, nm)], lower, trace + [(k + 1, u, nl)])
            else:
                go(k + 1, nu, l, upper, lower + [(kk, nm)], trace + [(k + 1, nu, l)])

    for j in range(1, f.n_strands, 2):
        go(0, j, j + 1, [], [], [(0, j, j + 1)])
    for cusp in sorted(by_cusp):
        found.append(DiskWord(by_cusp[cusp].id, (), (LOOP,)))
    return found


def reverse_sweep_disks(f: FrontWord) -> List[DiskWord]:
    """Same disks found right to left, starting from each positive corner.

    Written independently of :func:`sweep_disks` and used as its oracle.
    """
    _, by_event, by_cusp = _chord_maps(f)
    found: List[DiskWord] = []

    def back(k, u, l, upper, lower):
        # state (u, l) holds just after event k-1; walk leftwards
        if k == 0:
            if u % 2 == 1 and l == u + 1:
                yield upper, lower
            return
        i = f.events[k - 1]
        name = by_event[k - 1].id
        # possible positions of each boundary before event k-1
        if i + 1 == u:
            us = [(u - 1, None), (u, name)]  # pushed down, or bottom-quadrant corner
        elif i == u:
            us = [(u + 1, None)]
        else:
            us = [(u, None)]
        if i == l:
            ls = [(l + 1, None), (l, name)]  # pushed up, or top-quadrant corner
        elif i + 1 == l:
            ls = [(l - 1, None)]
        else:
            ls = [(l, None)]
        for pu, cu in us:
            for pl, cl in ls:
                if pu >= pl or (i == pu and i + 1 == pl):
                    continue
                nu = upper + ([(k - 1, cu)] if cu else [])
                nl = lower + ([(k - 1, cl)] if cl else [])
                yield from back(k - 1, pu, pl, nu, nl)

    n_ev = len(f.events)
    for k, i in enumerate(f.events):
        for upper, lower in back(k, i, i + 1, [], []):
            found.append(DiskWord(by_event[k].id, _word(upper, lower), ()))
    for cusp in sorted(by_cusp):
        j = 2 * cusp - 1
        for upper, lower in back(n_ev, j, j + 1, [], []):
            found.append(DiskWord(by_cusp[cusp].id, _word(upper, lower), ()))
        found.append(DiskWord(by_cusp[cusp].id, (), ()))
    return found


def chord_heights(f: FrontWord) -> Dict[str, int]:
    """Heights of a stretched realisation: chord at sweep event e gets C**e.

    C exceeds any possible corner count, so a disk's negative corners, which
    all lie strictly left of its positive corner, have smaller total height.
    """
    chords = reeb_chords(f)
    base = len(chords) + 2
    n_ev = len(f.events)
    out = {}
    for c in chords:
        e = c.position if c.kind == "front_crossing" else n_ev + (f.n_strands // 2 - c.position)
        out[c.id] = base ** (e + 1)
    return out


def enumerate_disks(f: FrontWord, a) -> List[DiskWord]:
    """Disks with positive corner at chord ``a`` (a ReebChord or its id)."""
    cid = a.id if isinstance(a, ReebChord) else a
    disks = [d for d in sweep_disks(f) if d.positive_chord == cid]
    return sorted(disks, key=lambda d: repr(d.witness))


def differential(f: FrontWord, check: bool = True) -> FreeDGA:
    """The Chekanov-Eliashberg DGA over F2 of the front."""
    chords = reeb_chords(f)
    deg = {c.id: c.degree for c in chords}
    from .diagram import maslov_modulus

    m = maslov_modulus(f)
    bd: Dict[str, set] = {c.id: set() for c in chords}
    for d in sweep_disks(f):
        total = sum(deg[b] for b in d.negative_chords)
        want = deg[d.positive_chord] - 1
        if (total - want) % m if m else total != want:
            raise DegreeError(
                f"disk at {d.positive_chord} with word {d.negative_chords} has degree {total}, expected {want}"
            )
        bd[d.positive_chord] ^= {d.negative_chords}
    gens = [(c.id, c.degree) for c in chords]
    return FreeDGA(gens, {g: frozenset(w) for g, w in bd.items()}, modulus=m, check=check)


def audit_differential(f: FrontWord, d: FreeDGA) -> Optional[str]:
    """First generator whose stored boundary fails an independent check.

    A stored differential is compared with a fresh count of the
    right-to-left sweep and then checked for d^2 = 0. The d^2 test alone misses many single-word
    edits: a word made of cycles can vanish without breaking d^2 = 0.
    """
    oracle: Dict[str, set] = {g: set() for g in d.ids}
    for disk in reverse_sweep_disks(f):
        if disk.positive_chord not in oracle:
            return disk.positive_chord
        oracle[disk.positive_chord] ^= {disk.negative_chords}
    for g in d.ids:
        if frozenset(oracle[g]) != d.boundary[g]:
            return g
    # the oracle pins down the edited generator; d^2 names the one it breaks
    return check_d_squared(d)
