import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lchkit.dga import (
    ONE,
    UNIT,
    ZERO,
    DGAMorphism,
    FreeDGA,
    apply_boundary,
    check_d_squared,
    compose,
    fsum,
    gen,
)
from lchkit.errors import (
    ChainMapViolation,
    DegreeError,
    MismatchedDGAs,
    NotAComplex,
    SchemaError,
    UnknownGenerator,
)


@pytest.fixture
def ab():
    # d a = 1, d b = 0
    return FreeDGA([("a", 1), ("b", 0)], {"a": [()]})


def test_boundary_of_unit(ab):
    assert apply_boundary(ab, ONE) == ZERO


def test_leibniz(ab):
    assert apply_boundary(ab, {("a", "b")}) == gen("b")


def test_unknown_generator(ab):
    with pytest.raises(UnknownGenerator):
        apply_boundary(ab, {("z",)})
    with pytest.raises(UnknownGenerator):
        FreeDGA([("a", 1)], {"a": [("q",)]})


def test_degree_checked_on_construction():
    with pytest.raises(DegreeError):
        FreeDGA([("a", 1), ("b", 1)], {"a": [("b",)]})


def test_d_squared_rejected_on_construction():
    with pytest.raises(NotAComplex):
        FreeDGA([("a", 2), ("b", 1)], {"a": [("b",)], "b": [()]})
    d = FreeDGA([("a", 2), ("b", 1)], {"a": [("b",)], "b": [()]}, check=False)
    assert check_d_squared(d) == "a"


def test_unknot_and_trefoil_pass(dgas):
    assert apply_boundary(dgas["unknot"], gen("a1")) == ZERO
    assert check_d_squared(dgas["unknot"]) is None
    assert check_d_squared(dgas["trefoil"]) is None


def test_mutation_names_generator(dgas):
    d = dgas["chekanov_1"]
    caught = 0
    for g in d.ids:
        for w in d.boundary[g]:
            bad = check_d_squared(d.with_boundary(g, d.boundary[g] - {w}))
            if bad is not None:
                caught += 1
                assert bad in d.ids
    assert caught > 0


def test_mutated_toy_names_generator():
    d = FreeDGA([("a", 2), ("b", 1), ("c", 0)], {"a": [("b",)], "b": [("c",)]}, check=False)
    assert check_d_squared(d) == "a"


def test_json_round_trip(dgas):
    for d in dgas.values():
        assert FreeDGA.from_json(d.to_json()) == d


def test_json_unit_word():
    d = FreeDGA.from_json('{"generators":[{"id":"a","deg":1},{"id":"b","deg":1}],"boundary":{"a":[[]],"b":[[]]}}')
    assert d.boundary["a"] == ONE


def test_bad_json():
    with pytest.raises(SchemaError):
        FreeDGA.from_json({"boundary": {}})


words = st.lists(st.sampled_from(["a", "b", "c"]), max_size=4).map(tuple)
sums = st.sets(words, max_size=6).map(frozenset)


@pytest.fixture(scope="module")
def toy():
    # d c = a b + 1 with a, b of degree 0 and c of degree 1
    return FreeDGA([("a", 0), ("b", 0), ("c", 1)], {"c": [("a", "b"), ()]})


@settings(max_examples=200)
@given(sums, sums)
def test_boundary_is_additive(x, y):
    d = FreeDGA([("a", 0), ("b", 0), ("c", 1)], {"c": [("a", "b"), ()]})
    assert apply_boundary(d, fsum(x, y)) == fsum(apply_boundary(d, x), apply_boundary(d, y))


def _all_assignments(target, source_gens):
    """Every degree-respecting assignment by sums of words of length <= 2."""
    by_deg = {}
    letters = target.ids
    cands = [UNIT] + [(g,) for g in letters] + list(itertools.product(letters, repeat=2))
    for w in cands:
        by_deg.setdefault(target.word_degree(w), []).append(w)
    per_gen = []
    for g, dg in source_gens:
        pool = by_deg.get(dg, [])
        per_gen.append([frozenset(s) for r in range(3) for s in itertools.combinations(pool, r)])
    for choice in itertools.product(*per_gen):
        yield {g: list(x) for (g, _), x in zip(source_gens, choice)}


def test_morphism_acceptance_iff_chain_identity(toy):
    src = FreeDGA([("x", 0), ("y", 1)], {"y": [("x",), ()]})
    accepted = rejected = 0
    for assign in _all_assignments(toy, src.generators):
        m = DGAMorphism(src, toy, assign, check=False)
        ok = all(m.apply(src.boundary[g]) == apply_boundary(toy, m.assignment[g]) for g in src.ids)
        if ok:
            DGAMorphism(src, toy, assign)
            accepted += 1
        else:
            with pytest.raises(ChainMapViolation):
                DGAMorphism(src, toy, assign)
            rejected += 1
    assert accepted and rejected


def test_identity_laws(toy):
    phi = DGAMorphism(toy, toy, {"a": [("b",)], "b": [("a",)], "c": [("c",)]}, check=False)
    i = DGAMorphism.identity(toy)
    assert compose(i, phi) == phi
    assert compose(phi, i) == phi


def test_composites_of_chain_maps_are_chain_maps(toy):
    src = FreeDGA([("x", 0), ("y", 1)], {"y": [("x",), ()]})
    maps = []
    for assign in _all_assignments(toy, src.generators):
        try:
            maps.append(DGAMorphism(src, toy, assign))
        except ChainMapViolation:
            pass
    ends = []
    for assign in _all_assignments(toy, toy.generators):
        try:
            ends.append(DGAMorphism(toy, toy, assign))
        except ChainMapViolation:
            pass
        if len(ends) == 20:
            break
    assert maps and len(ends) > 1
    for m in maps[:20]:
        for e in ends[:20]:
            assert compose(m, e).chain_map_defect() is None


def test_compose_mismatch(toy, ab):
    with pytest.raises(MismatchedDGAs):
        compose(DGAMorphism.identity(ab), DGAMorphism.identity(toy))


def test_morphism_degree_check(toy):
    src = FreeDGA([("x", 0)], {})
    with pytest.raises(DegreeError):
        DGAMorphism(src, toy, {"x": [("c",)]})
