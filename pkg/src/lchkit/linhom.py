"""Bilinearised complexes, graded homology over F2 and Poincare polynomials."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np

from . import f2
from .augment import Augmentation, check_augmentation, enumerate_augmentations
from .dga import DGAMorphism, FreeDGA
from .errors import ChainMapViolation, DegreeError, NotAComplex

HOMOLOGICAL = -1
COHOMOLOGICAL = 1


class PoincarePolynomial:
    """Finitely supported map degree -> dimension; hashable, ordered."""

    __slots__ = ("_items",)

    def __init__(self, dims: Mapping[int, int] = ()):
        items = dict(dims)
        self._items = tuple(sorted((int(k), int(v)) for k, v in items.items() if v))

    @classmethod
    def parse(cls, text: str) -> "PoincarePolynomial":
        """Inverse of ``str``: e.g. ``'t^-1 + 2t'`` or ``'2 + t'``."""
        import re

        out: Dict[int, int] = {}
        t = text.replace(" ", "")
        if t in ("", "0"):
            return cls()
        for term in t.split("+"):
            m = re.fullmatch(r"(\d*)(t(\^(-?\d+))?)?", term)
            if not m or (not m.group(1) and not m.group(2)):
                raise ValueError(f"bad term {term!r}")
            coef = int(m.group(1)) if m.group(1) else 1
            deg = 0 if not m.group(2) else (int(m.group(4)) if m.group(4) else 1)
            out[deg] = out.get(deg, 0) + coef
        return cls(out)

    def items(self):
        return self._items

    def __getitem__(self, k: int) -> int:
        return dict(self._items).get(k, 0)

    def total(self) -> int:
        return sum(v for _, v in self._items)

    def support(self) -> List[int]:
        return [k for k, _ in self._items]

    def as_dict(self) -> Dict[int, int]:
        return dict(self._items)

    def __eq__(self, other):
        return isinstance(other, PoincarePolynomial) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __lt__(self, other):
        return self._items < other._items

    def __str__(self):
        if not self._items:
            return "0"
        parts = []
        for k, v in self._items:
            c = "" if v == 1 and k != 0 else str(v)
            if k == 0:
                parts.append(str(v))
            elif k == 1:
                parts.append(f"{c}t")
            else:
                parts.append(f"{c}t^{k}")
        return " + ".join(parts)

    def __repr__(self):
        return f"PoincarePolynomial({str(self)!r})"

    def to_sparse(self) -> str:
        return ";".join(f"{k}:{v}" for k, v in self._items)


@dataclass
class GradedComplex:
    """Graded F2 vector space with a degree -1 (homological) or +1 differential."""

    basis: Tuple[Tuple[str, int], ...]
    matrix: np.ndarray
    direction: int = HOMOLOGICAL
    modulus: int = 0

    def __post_init__(self):
        self.basis = tuple(self.basis)
        self.matrix = f2.asmat(self.matrix).reshape(len(self.basis), len(self.basis))
        for i, (_, di) in enumerate(self.basis):
            for j, (_, dj) in enumerate(self.basis):
                if self.matrix[i, j] and self.reduce(dj + self.direction) != self.reduce(di):
                    raise DegreeError(f"entry {self.basis[i][0]} <- {self.basis[j][0]} breaks degree {self.direction:+d}")

    def reduce(self, d: int) -> int:
        return d % self.modulus if self.modulus else d

    def degrees(self) -> List[int]:
        return sorted({self.reduce(d) for _, d in self.basis})

    def indices(self, deg: int) -> List[int]:
        return [i for i, (_, d) in enumerate(self.basis) if self.reduce(d) == self.reduce(deg)]

    def is_complex(self) -> bool:
        return f2.is_zero(f2.mul(self.matrix, self.matrix))


def homology(c: GradedComplex) -> PoincarePolynomial:
    """dim H_k = dim ker d_k - rank d_{k+1}, degree by degree."""
    if not c.is_complex():
        raise NotAComplex("d^2 != 0")
    dims = {}
    for k in c.degrees():
        idx = c.indices(k)
        out = c.indices(k + c.direction)
        inn = c.indices(k - c.direction)
        d_out = c.matrix[np.ix_(out, idx)]
        d_in = c.matrix[np.ix_(idx, inn)]
        dims[k] = len(idx) - f2.rank(d_out) - f2.rank(d_in)
    return PoincarePolynomial(dims)


def dualize(c: GradedComplex) -> GradedComplex:
    return GradedComplex(c.basis, c.matrix.T.copy(), -c.direction, c.modulus)


def bilinearise(d: FreeDGA, eps0: Augmentation, eps1: Augmentation, graded: bool = True) -> GradedComplex:
    """Homological complex on the generators: prefix by eps0, suffix by eps1."""
    check_augmentation(d, eps0, graded)
    check_augmentation(d, eps1, graded)
    e0, e1 = eps0.as_dict(), eps1.as_dict()
    ids = d.ids
    where = {g: i for i, g in enumerate(ids)}
    mat = f2.zeros(len(ids), len(ids))
    for g in ids:
        for w in d.boundary[g]:
            for i, h in enumerate(w):
                if all(e0[x] for x in w[:i]) and all(e1[x] for x in w[i + 1:]):
                    mat[where[h], where[g]] ^= 1
    c = GradedComplex(d.generators, mat, HOMOLOGICAL, d.modulus)
    if not c.is_complex():
        raise NotAComplex("bilinearised differential does not square to zero")
    return c


def linearise(d: FreeDGA, eps: Augmentation, graded: bool = True) -> GradedComplex:
    """Chekanov's linearisation via the conjugated differential.

    Substitute g -> g + eps(g) in every word and keep the length-one part.
    Independent of :func:`bilinearise`, which it must match when eps0 = eps1.
    """
    check_augmentation(d, eps, graded)
    e = eps.as_dict()
    ids = d.ids
    where = {g: i for i, g in enumerate(ids)}
    mat = f2.zeros(len(ids), len(ids))
    for g in ids:
        for w in d.boundary[g]:
            # expand prod (x_i + e_i); a linear term picks one letter, constants elsewhere
            for i, h in enumerate(w):
                coef = 1
                for j, x in enumerate(w):
                    if j != i:
                        coef &= e[x]
                if coef:
                    mat[where[h], where[g]] ^= 1
    return GradedComplex(d.generators, mat, HOMOLOGICAL, d.modulus)


@dataclass
class LCHTable:
    augmentations: List[Augmentation]
    rows: List[Tuple[int, int, PoincarePolynomial]]

    @property
    def classes(self) -> List[PoincarePolynomial]:
        return sorted({p for _, _, p in self.rows})

    def to_json(self) -> dict:
        return {
            "augmentations": len(self.augmentations),
            "rows": [{"eps0": i, "eps1": j, "poincare": p.to_sparse()} for i, j, p in self.rows],
            "classes": [str(p) for p in self.classes],
        }

    def to_csv(self) -> str:
        lines = ["eps0,eps1,poincare"]
        lines += [f"{i},{j},{p.to_sparse()}" for i, j, p in self.rows]
        return "\n".join(lines) + "\n"


def lch_table(d: FreeDGA, graded: bool = True) -> LCHTable:
    augs = enumerate_augmentations(d, graded)
    rows = []
    for i, a in enumerate(augs):
        for j, b in enumerate(augs):
            rows.append((i, j, homology(bilinearise(d, a, b, graded))))
    return LCHTable(augs, rows)


def lch_class_set(d: FreeDGA, graded: bool = True) -> List[PoincarePolynomial]:
    """Sorted, deduplicated Poincare polynomials over all ordered pairs."""
    return lch_table(d, graded).classes


def duality_report(d: FreeDGA, graded: bool = True) -> List[dict]:
    """Sabloff duality and fundamental-class checks for every (eps, eps)."""
    out = []
    for i, e in enumerate(enumerate_augmentations(d, graded)):
        p = homology(bilinearise(d, e, e, graded))
        ks = set(abs(k) for k in p.support()) | {1}
        law = p[1] == p[-1] + 1 and all(p[k] == p[-k] for k in ks if k >= 2)
        out.append({"eps": i, "poincare": str(p), "duality": law, "fundamental_class": p[1] >= 1})
    return out


def induced_map(m: DGAMorphism, eps0: Augmentation, eps1: Augmentation, graded: bool = True):
    """Bilinearised chain map of a DGA morphism ``m: A(+) -> A(-)``.

    ``eps0, eps1`` are augmentations of the target. Returns
    ``(matrix, source_complex, target_complex)`` where the source complex uses
    the pulled-back augmentations and ``matrix`` maps the target cochains to
    the source cochains (the cohomological direction).
    """
    from .augment import pull_back

    check_augmentation(m.target, eps0, graded)
    check_augmentation(m.target, eps1, graded)
    p0, p1 = pull_back(m, eps0), pull_back(m, eps1)
    src = bilinearise(m.source, p0, p1, graded)
    tgt = bilinearise(m.target, eps0, eps1, graded)
    e0, e1 = eps0.as_dict(), eps1.as_dict()
    s_ids, t_ids = m.source.ids, m.target.ids
    tw = {g: i for i, g in enumerate(t_ids)}
    lin = f2.zeros(len(t_ids), len(s_ids))  # homological: source chains -> target chains
    for j, g in enumerate(s_ids):
        for w in m.assignment[g]:
            for i, h in enumerate(w):
                if all(e0[x] for x in w[:i]) and all(e1[x] for x in w[i + 1:]):
                    lin[tw[h], j] ^= 1
    if not np.array_equal(f2.mul(lin, src.matrix), f2.mul(tgt.matrix, lin)):
        raise ChainMapViolation("bilinearised map does not commute with the differentials")
    return lin.T.copy(), dualize(src), dualize(tgt)
