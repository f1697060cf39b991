"""Decision procedures built on the computed invariants.

Every test here is sound and incomplete: an "obstructed" verdict rules the
cobordism out, anything else only means this test is silent.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .augment import enumerate_augmentations
from .dga import FreeDGA
from .linhom import PoincarePolynomial, lch_class_set

VERSION = 1
OBSTRUCTED = "obstructed"
SILENT = "not_obstructed_by_this_test"
MODES = ("pair", "duality", "mayer_vietoris")


class BettiVector(PoincarePolynomial):
    """Degree -> dimension of a homology group over F2."""

    @classmethod
    def of(cls, data) -> "BettiVector":
        if isinstance(data, PoincarePolynomial):
            return cls(data.as_dict())
        if isinstance(data, str):
            return cls(PoincarePolynomial.parse(data).as_dict())
        if isinstance(data, Mapping):
            return cls({int(k): int(v) for k, v in data.items()})
        return cls(dict(enumerate(int(v) for v in data)))

    def is_sphere(self) -> bool:
        """Betti numbers of S^m for some m >= 1."""
        items = self.as_dict()
        top = max(items, default=0)
        return top >= 1 and items == {0: 1, top: 1}


CIRCLE = BettiVector({0: 1, 1: 1})


# -- concordance ------------------------------------------------------------------

@dataclass
class ObstructionVerdict:
    direction: Tuple[str, str]
    status: str
    witness: Optional[PoincarePolynomial] = None
    missing: List[PoincarePolynomial] = field(default_factory=list)

    @property
    def obstructed(self) -> bool:
        return self.status == OBSTRUCTED

    def to_json(self) -> dict:
        out = {"from": self.direction[0], "to": self.direction[1], "status": self.status}
        if self.witness is not None:
            out["witness"] = str(self.witness)
            out["witness_degrees"] = self.witness.support()
            out["missing"] = [str(p) for p in self.missing]
        return out


def inclusion_verdict(
    source: Sequence[PoincarePolynomial], target: Sequence[PoincarePolynomial], names=("A", "B")
) -> ObstructionVerdict:
    """A concordance from ``source`` (negative end) to ``target`` needs source classes inside target classes."""
    missing = sorted(set(source) - set(target))
    if missing:
        return ObstructionVerdict(tuple(names), OBSTRUCTED, missing[0], missing)
    return ObstructionVerdict(tuple(names), SILENT)


def concordance_obstruction(
    dA: FreeDGA, dB: FreeDGA, graded: bool = True, names=("A", "B")
) -> Tuple[ObstructionVerdict, ObstructionVerdict]:
    """Verdicts for a concordance A -> B and for B -> A.

    The witness is the first class, in sorted order, of the negative end's
    class set that the positive end lacks.
    """
    sa, sb = lch_class_set(dA, graded), lch_class_set(dB, graded)
    a, b = names
    return inclusion_verdict(sa, sb, (a, b)), inclusion_verdict(sb, sa, (b, a))


# -- endocobordisms -----------------------------------------------------------------

def endocobordism_constraints(d: FreeDGA, lambda_betti=CIRCLE, graded: bool = True) -> dict:
    """Facts forced on every exact cobordism from the Legendrian to itself."""
    betti = BettiVector.of(lambda_betti)
    n_aug = len(enumerate_augmentations(d, graded))
    out = {"version": VERSION, "augmentations": n_aug, "lambda_betti": betti.to_sparse()}
    if n_aug == 0:
        out.update({"hypothesis": False, "message": "hypothesis fails; no constraint", "facts": []})
        return out
    out["hypothesis"] = True
    out["forced_total_dim"] = betti.total()
    out["forced_betti"] = betti.to_sparse()
    out["facts"] = [
        f"dim H_*(S; F2) = {betti.total()}, with Betti numbers {betti.to_sparse()}",
        "(i-, i+): H_*(L) -> H_*(S) + H_*(S) is injective",
        "i+ + i-: H_*(L u L) -> H_*(S) is surjective",
        "S is orientable whenever L is",
    ]
    cyl = betti.is_sphere()
    out["homology_cylinder"] = cyl
    if cyl:
        out["facts"].append("H_*(S, L) = 0: S is a homology cylinder")
        out["note"] = "cylinder conclusion assumes the augmentation lifts to integer coefficients"
    return out


# -- long exact sequence feasibility --------------------------------------------------

@dataclass
class Feasibility:
    feasible: bool
    nodes: List[Tuple[str, int]]
    ranks: List[int]  # rank of the map leaving each node
    cut: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "version": VERSION,
            "feasible": self.feasible,
            "nodes": [{"label": l, "dim": a} for l, a in self.nodes],
            "ranks": self.ranks,
            "cut": self.cut,
        }


def _layout(mode, minus, plus, cand, boundary, n):
    """Nodes of the exact sequence in order, over a window covering all supports."""
    degs = set(minus.support()) | set(plus.support())
    degs |= {n + 1 - j for j in cand.support()} | {n - j for j in cand.support()}
    degs |= {n - j for j in boundary.support()} | {n - 1 - j for j in cand.support()}
    if mode == "duality":
        degs |= {n - 1 - j for j in minus.support()}
    lo, hi = min(degs, default=0) - 1, max(degs, default=0) + 1
    nodes = []
    for k in range(lo, hi + 1):
        if mode == "pair":
            nodes += [
                (f"H_{n + 1 - k}(S,dS-)", cand[n + 1 - k]),
                (f"LCH^{k}(-)", minus[k]),
                (f"LCH^{k}(+)", plus[k]),
            ]
        elif mode == "duality":
            j = n - k - 1
            nodes += [(f"LCH^{k}(+)", plus[k]), (f"LCH_{j}(-)", minus[j]), (f"H_{j}(S)", cand[j])]
        else:
            j = n - k
            nodes += [
                (f"H_{j}(dS-)", boundary[j]),
                (f"LCH^{k}(-)+H_{j}(S)", minus[k] + cand[j]),
                (f"LCH^{k}(+)", plus[k]),
            ]
    return nodes


def les_feasibility(
    lch_minus,
    lch_plus,
    candidate,
    mode: str = "pair",
    n: int = 1,
    boundary_betti=CIRCLE,
) -> Feasibility:
    """Can an exact sequence with these dimensions exist?

    Nodes outside the window vanish, so the ranks are forced: the map out
    of node i has rank a_i - r_{i-1}. The system is feasible iff every such
    rank is nonnegative and the last one is zero.

    ``candidate`` is H_*(S, dS-) in pair mode and H_*(S) otherwise;
    ``boundary_betti`` is H_*(dS-) for Mayer-Vietoris.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    minus = PoincarePolynomial(BettiVector.of(lch_minus).as_dict())
    plus = PoincarePolynomial(BettiVector.of(lch_plus).as_dict())
    cand = BettiVector.of(candidate)
    boundary = BettiVector.of(boundary_betti)
    nodes = _layout(mode, minus, plus, cand, boundary, n)
    ranks, prev = [], 0
    for label, a in nodes:
        r = a - prev
        if r < 0:
            return Feasibility(False, nodes, ranks, f"{label}: dim {a} < incoming rank {prev}")
        ranks.append(r)
        prev = r
    if prev != 0:
        return Feasibility(False, nodes, ranks, f"{nodes[-1][0]}: leftover rank {prev}")
    return Feasibility(True, nodes, ranks)


def brute_force_feasible(dims: Sequence[int]) -> bool:
    """Search all rank vectors for a finite exact sequence 0 -> A_1 -> ... -> A_m -> 0."""
    if not dims:
        return True
    for ranks in itertools.product(*(range(a + 1) for a in dims)):
        incoming = (0,) + ranks[:-1]
        if ranks[-1] == 0 and all(a == i + r for a, i, r in zip(dims, incoming, ranks)):
            return True
    return False


def les_feasibility_table(
    minus_classes: Sequence, plus_classes: Sequence, candidate, mode: str = "pair", n: int = 1, boundary_betti=CIRCLE
) -> dict:
    """Every negative-end class must fit with some positive-end class."""
    rows = []
    for m in minus_classes:
        fits = [str(p) for p in plus_classes if les_feasibility(m, p, candidate, mode, n, boundary_betti).feasible]
        rows.append({"minus": str(m), "feasible_with": fits})
    return {"version": VERSION, "mode": mode, "feasible": all(r["feasible_with"] for r in rows), "rows": rows}
