"""Free unital noncommutative DGAs over F2.

Words are tuples of generator ids, the empty tuple is the unit. A formal sum
is a frozenset of words: F2 coefficients make symmetric difference the sum.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import ChainMapViolation, DegreeError, MismatchedDGAs, NotAComplex, SchemaError, UnknownGenerator

Word = Tuple[str, ...]
FormalSum = FrozenSet[Word]

UNIT: Word = ()
ZERO: FormalSum = frozenset()
ONE: FormalSum = frozenset({UNIT})


def fsum(*terms: Iterable[Word]) -> FormalSum:
    """Sum mod 2 of any iterables of words."""
    acc = set()
    for t in terms:
        for w in t:
            acc ^= {w}
    return frozenset(acc)


def fprod(x: FormalSum, y: FormalSum) -> FormalSum:
    acc = set()
    for a in x:
        for b in y:
            acc ^= {a + b}
    return frozenset(acc)


def gen(g: str) -> FormalSum:
    return frozenset({(g,)})


def sort_words(x: Iterable[Word]) -> List[Word]:
    return sorted(x, key=lambda w: (len(w), w))


def format_sum(x: FormalSum) -> str:
    if not x:
        return "0"
    return " + ".join("1" if not w else "".join(w) if all(len(g) == 1 for g in w) else "*".join(w) for w in sort_words(x))


class FreeDGA:
    """Generators with degrees (mod ``modulus`` when nonzero) and a boundary map."""

    def __init__(
        self,
        generators: Sequence[Tuple[str, int]],
        boundary: Mapping[str, Iterable[Word]],
        modulus: int = 0,
        check: bool = True,
    ):
        self.modulus = modulus
        self.generators: Tuple[Tuple[str, int], ...] = tuple((g, self.reduce(d)) for g, d in generators)
        self.degree: Dict[str, int] = dict(self.generators)
        if len(self.degree) != len(self.generators):
            raise SchemaError("duplicate generator id")
        self.boundary: Dict[str, FormalSum] = {}
        for g, _ in self.generators:
            self.boundary[g] = fsum(tuple(w) for w in boundary.get(g, ()))
        for g in boundary:
            if g not in self.degree:
                raise UnknownGenerator(g)
        for g, x in self.boundary.items():
            for w in x:
                for h in w:
                    if h not in self.degree:
                        raise UnknownGenerator(h)
                if not self.same_degree(self.word_degree(w), self.degree[g] - 1):
                    raise DegreeError(f"word {w} in d{g} has degree {self.word_degree(w)}, expected {self.degree[g] - 1}")
        if check:
            bad = check_d_squared(self)
            if bad is not None:
                raise NotAComplex(f"d^2 != 0 on generator {bad}")

    def reduce(self, d: int) -> int:
        return d % self.modulus if self.modulus else d

    def same_degree(self, a: int, b: int) -> bool:
        return self.reduce(a) == self.reduce(b)

    @property
    def ids(self) -> List[str]:
        return [g for g, _ in self.generators]

    def word_degree(self, w: Word) -> int:
        return self.reduce(sum(self.degree[g] for g in w))

    def __eq__(self, other):
        return (
            isinstance(other, FreeDGA)
            and self.generators == other.generators
            and self.boundary == other.boundary
            and self.modulus == other.modulus
        )

    def __repr__(self):
        return f"FreeDGA({len(self.generators)} generators, modulus {self.modulus})"

    def with_boundary(self, g: str, x: FormalSum, check: bool = False) -> "FreeDGA":
        bd = dict(self.boundary)
        bd[g] = x
        return FreeDGA(self.generators, bd, self.modulus, check=check)

    def to_json(self) -> dict:
        return {
            "generators": [{"id": g, "deg": d} for g, d in self.generators],
            "boundary": {g: [list(w) for w in sort_words(self.boundary[g])] for g, _ in self.generators},
            "modulus": self.modulus,
        }

    @classmethod
    def from_json(cls, obj, check: bool = True) -> "FreeDGA":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            gens = [(str(x["id"]), int(x["deg"])) for x in obj["generators"]]
            bd = {str(g): [tuple(str(h) for h in w) for w in ws] for g, ws in obj.get("boundary", {}).items()}
            mod = int(obj.get("modulus", 0))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad DGA JSON: {exc}") from None
        return cls(gens, bd, mod, check=check)


def apply_boundary(d: FreeDGA, x: Iterable[Word]) -> FormalSum:
    """Leibniz extension of the generator boundary to a formal sum."""
    acc = set()
    for w in x:
        for i, g in enumerate(w):
            if g not in d.boundary:
                raise UnknownGenerator(g)
            pre, post = w[:i], w[i + 1:]
            for v in d.boundary[g]:
                acc ^= {pre + v + post}
    return frozenset(acc)


def check_d_squared(d: FreeDGA) -> Optional[str]:
    """None when d^2 = 0 on every generator, else the first failing generator."""
    for g, _ in d.generators:
        if apply_boundary(d, d.boundary[g]):
            return g
    return None


class DGAMorphism:
    """Unital algebra map given on generators; checked to commute with the differentials."""

    def __init__(self, source: FreeDGA, target: FreeDGA, assignment: Mapping[str, Iterable[Word]], check: bool = True):
        self.source = source
        self.target = target
        self.assignment: Dict[str, FormalSum] = {}
        for g in assignment:
            if g not in source.degree:
                raise UnknownGenerator(g)
        for g, dg in source.generators:
            x = fsum(tuple(w) for w in assignment.get(g, ()))
            for w in x:
                for h in w:
                    if h not in target.degree:
                        raise UnknownGenerator(h)
                if not target.same_degree(target.word_degree(w), dg):
                    raise DegreeError(f"image of {g} contains {w} of wrong degree")
            self.assignment[g] = x
        if check:
            bad = self.chain_map_defect()
            if bad is not None:
                raise ChainMapViolation(f"morphism fails to commute with d on {bad}")

    def apply(self, x: Iterable[Word]) -> FormalSum:
        acc = set()
        for w in x:
            prod = ONE
            for g in w:
                if g not in self.assignment:
                    raise UnknownGenerator(g)
                prod = fprod(prod, self.assignment[g])
            acc ^= prod
        return frozenset(acc)

    def chain_map_defect(self) -> Optional[str]:
        for g, _ in self.source.generators:
            lhs = self.apply(self.source.boundary[g])
            rhs = apply_boundary(self.target, self.assignment[g])
            if lhs != rhs:
                return g
        return None

    def __eq__(self, other):
        return (
            isinstance(other, DGAMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.assignment == other.assignment
        )

    @classmethod
    def identity(cls, d: FreeDGA) -> "DGAMorphism":
        return cls(d, d, {g: [(g,)] for g, _ in d.generators}, check=False)


def compose(m1: DGAMorphism, m2: DGAMorphism) -> DGAMorphism:
    """``m2 after m1``: first m1 (source -> middle), then m2 (middle -> target)."""
    if m1.target != m2.source:
        raise MismatchedDGAs("target of the first morphism is not the source of the second")
    return DGAMorphism(
        m1.source,
        m2.target,
        {g: m2.apply(m1.assignment[g]) for g, _ in m1.source.generators},
        check=False,
    )
