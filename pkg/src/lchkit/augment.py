"""Augmentations into F2 and representations into M_k(F2)."""
from __future__ import annotations

import itertools
import os
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from . import f2
from .dga import DGAMorphism, FreeDGA, Word
from .errors import BudgetExceeded, InvalidAugmentation

DEFAULT_BUDGET = 200_000


@dataclass(frozen=True)
class Augmentation:
    values: Tuple[Tuple[str, int], ...]  # in generator order

    @classmethod
    def from_dict(cls, d: FreeDGA, values: Mapping[str, int]) -> "Augmentation":
        return cls(tuple((g, int(values.get(g, 0)) & 1) for g in d.ids))

    def __getitem__(self, g: str) -> int:
        return dict(self.values)[g]

    def as_dict(self) -> Dict[str, int]:
        return dict(self.values)

    def evaluate(self, x: Iterable[Word]) -> int:
        v = dict(self.values)
        return sum(all(v[g] for g in w) for w in x) & 1

    def to_json(self) -> list:
        return [{"generator": g, "value": v} for g, v in self.values]


@dataclass(frozen=True)
class MatrixRep:
    k: int
    values: Tuple[Tuple[str, Tuple[Tuple[int, ...], ...]], ...]

    def matrices(self) -> Dict[str, np.ndarray]:
        return {g: f2.asmat(m) for g, m in self.values}

    def to_json(self) -> dict:
        return {"k": self.k, "values": {g: [list(r) for r in m] for g, m in self.values}}


def is_augmentation(d: FreeDGA, eps: Augmentation, graded: bool = True) -> bool:
    v = eps.as_dict()
    if set(v) != set(d.ids):
        return False
    if graded and any(v[g] and d.degree[g] != 0 for g in v):
        return False
    return all(eps.evaluate(d.boundary[g]) == 0 for g in d.ids)


def check_augmentation(d: FreeDGA, eps: Augmentation, graded: bool = True) -> None:
    if not is_augmentation(d, eps, graded):
        raise InvalidAugmentation("assignment does not kill the differential")


def _free_generators(d: FreeDGA, graded: bool) -> List[str]:
    return [g for g, deg in d.generators if not graded or deg == 0]


def enumerate_augmentations(d: FreeDGA, graded: bool = True) -> List[Augmentation]:
    """Brute force over 0/1 values on the (degree 0, if graded) generators."""
    free = _free_generators(d, graded)
    out = []
    for bits in itertools.product((0, 1), repeat=len(free)):
        eps = Augmentation.from_dict(d, dict(zip(free, bits)))
        if all(eps.evaluate(d.boundary[g]) == 0 for g in d.ids):
            out.append(eps)
    return out


def _mat_eval(word: Word, rho: Dict[str, np.ndarray], k: int) -> np.ndarray:
    m = f2.eye(k)
    for g in word:
        m = f2.mul(m, rho[g])
    return m


def _rep_defect(d: FreeDGA, g: str, rho: Dict[str, np.ndarray], k: int) -> np.ndarray:
    acc = f2.zeros(k, k)
    for w in d.boundary[g]:
        acc ^= _mat_eval(w, rho, k)
    return acc


def is_matrix_rep(d: FreeDGA, rho: Dict[str, np.ndarray], k: int) -> bool:
    return all(not _rep_defect(d, g, rho, k).any() for g in d.ids)


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("LCH_BUDGET")
    return int(raw) if raw else default


def enumerate_matrix_reps(
    d: FreeDGA, k: int, budget: Optional[int] = None, graded: bool = True, strict: bool = False
) -> Tuple[List[MatrixRep], bool]:
    """Backtracking search for reps into M_k(F2).

    Returns ``(reps, complete)``. ``complete`` is False when the node budget
    ran out; with ``strict`` that raises BudgetExceeded carrying the partial list.
    Generators appearing in more relations are assigned first so relations
    close early and prune.
    """
    if k < 1:
        raise ValueError("k must be positive")
    budget = budget_from_env() if budget is None else budget
    free = _free_generators(d, graded)
    uses = Counter(h for g in d.ids for w in d.boundary[g] for h in set(w))
    order = sorted(free, key=lambda g: (-uses[g], d.ids.index(g)))
    # a relation can be tested once all its free letters are assigned
    rank_of = {g: i for i, g in enumerate(order)}
    ready: Dict[int, List[str]] = {i: [] for i in range(-1, len(order))}
    for g in d.ids:
        letters = {h for w in d.boundary[g] for h in w if h in rank_of}
        ready[max((rank_of[h] for h in letters), default=-1)].append(g)
    zero = f2.zeros(k, k)
    rho: Dict[str, np.ndarray] = {g: zero for g in d.ids}
    candidates = [f2.asmat(np.array(bits).reshape(k, k)) for bits in itertools.product((0, 1), repeat=k * k)]
    found: List[MatrixRep] = []
    nodes = 0
    exhausted = False

    if any(_rep_defect(d, g, rho, k).any() for g in ready[-1]):
        return [], True

    def go(i):
        nonlocal nodes, exhausted
        if exhausted:
            return
        if i == len(order):
            found.append(MatrixRep(k, tuple((g, tuple(map(tuple, rho[g].tolist()))) for g in d.ids)))
            return
        g = order[i]
        for m in candidates:
            nodes += 1
            if nodes > budget:
                exhausted = True
                return
            rho[g] = m
            if all(not _rep_defect(d, h, rho, k).any() for h in ready[i]):
                go(i + 1)
            if exhausted:
                break
        rho[g] = zero

    go(0)
    found.sort(key=lambda r: tuple(tuple(sum(m, ())) for _, m in r.values))
    if exhausted and strict:
        raise BudgetExceeded(f"matrix search exceeded {budget} nodes", partial=found)
    return found, not exhausted


def scalar_inflation(eps: Augmentation, k: int) -> MatrixRep:
    return MatrixRep(k, tuple((g, tuple(map(tuple, (v * f2.eye(k)).tolist()))) for g, v in eps.values))


def pull_back(m: DGAMorphism, eps: Augmentation) -> Augmentation:
    """``eps`` composed with ``m``: an augmentation of the source."""
    return Augmentation(tuple((g, eps.evaluate(m.assignment[g])) for g in m.source.ids))
