import json

import pytest
from hypothesis import given, settings

from lchkit.diagram import (
    chord_parity_from_orientation,
    classical_invariants,
    crossing_signs,
    maslov_modulus,
    maslov_potential,
    parse_front,
    reeb_chords,
    strand_at,
)
from lchkit.errors import FrontSyntaxError, RangeError, TopologyError

from .conftest import knot_plats


def test_parse_unknot():
    f = parse_front("strands=2; []")
    assert f.n_strands == 2 and f.events == ()


def test_parse_normalises_whitespace():
    assert parse_front("strands = 4 ;[ 2, 2 ,2 ]") == parse_front("strands=4; [2,2,2]")


def test_json_mirror():
    assert parse_front('{"strands": 4, "word": [2, 2, 2]}') == parse_front("strands=4; [2,2,2]")


@pytest.mark.parametrize(
    "text, err",
    [
        ("strands=2; [1,2,1]", RangeError),
        ("strands=3; [1]", RangeError),
        ("strands=2; [1,x]", FrontSyntaxError),
        ("braid 1 2", FrontSyntaxError),
        ("strands=4; []", TopologyError),
        ("strands=4; [2,2]", TopologyError),
        ('{"strands": 2}', FrontSyntaxError),
    ],
)
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_front(text)


def test_orientation_seed_option():
    f = parse_front("strands=4; [2,2,2]; orient=2")
    assert f.orientation_seed == 2
    assert parse_front(str(f)) == f


@pytest.mark.parametrize(
    "name, tb, rot",
    [("unknot", -1, 0), ("trefoil", 1, 0), ("chekanov_1", 1, 0), ("chekanov_2", 1, 0), ("m946", -1, 0)],
)
def test_classical_invariants_of_fixtures(fronts, name, tb, rot):
    ci = classical_invariants(fronts[name])
    assert (ci.tb, ci.rot) == (tb, rot)


def test_two_strand_triple_crossing_is_stabilised():
    # three crossings on two strands close to a stabilised unknot, not a trefoil
    ci = classical_invariants(parse_front("strands=2; [1,1,1]"))
    assert ci.tb == -4 and abs(ci.rot) == 1
    assert maslov_modulus(parse_front("strands=2; [1,1,1]")) == 2


def test_unknot_potential():
    assert sorted(maslov_potential(parse_front("strands=2; []")).values()) == [0, 1]


def test_trefoil_crossings_have_zero_potential_difference(fronts):
    f = fronts["trefoil"]
    mu = maslov_potential(f)
    at = strand_at(f)
    for k, i in enumerate(f.events):
        assert mu[at[k][i]] - mu[at[k][i + 1]] == 0


def test_chord_lists(fronts):
    assert [(c.degree, c.kind) for c in reeb_chords(fronts["unknot"])] == [(1, "right_cusp")]
    assert [c.degree for c in reeb_chords(fronts["trefoil"])] == [0, 0, 0, 1, 1]
    f = fronts["m946"]
    assert len(reeb_chords(f)) == len(f.events) + f.n_strands // 2


def test_chords_deterministic(fronts):
    f = fronts["m946"]
    assert reeb_chords(f) == reeb_chords(parse_front(str(f)))


@settings(max_examples=150, deadline=None)
@given(knot_plats(max_strands=6, max_len=10))
def test_round_trip(f):
    assert parse_front(str(f)) == f
    assert parse_front(json.dumps(f.to_json())) == f


@settings(max_examples=150, deadline=None)
@given(knot_plats(max_strands=6, max_len=10))
def test_right_cusp_chords_have_degree_one(f):
    m = maslov_modulus(f)
    for c in reeb_chords(f):
        if c.kind == "right_cusp":
            assert c.degree == (1 % m if m else 1)


@settings(max_examples=150, deadline=None)
@given(knot_plats(max_strands=6, max_len=10))
def test_degree_parity_matches_orientations(f):
    assert [c.degree % 2 for c in reeb_chords(f)] == chord_parity_from_orientation(f)


@settings(max_examples=150, deadline=None)
@given(knot_plats(max_strands=6, max_len=10))
def test_tb_counts_even_minus_odd_chords(f):
    if classical_invariants(f).rot != 0:
        return
    degs = [c.degree for c in reeb_chords(f)]
    odd = sum(d % 2 for d in degs)
    assert classical_invariants(f).tb == len(degs) - 2 * odd


@settings(max_examples=100, deadline=None)
@given(knot_plats(max_strands=6, max_len=10))
def test_writhe_sign_count(f):
    assert len(crossing_signs(f)) == len(f.events)
    assert all(s in (1, -1) for s in crossing_signs(f))
