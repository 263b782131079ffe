import random

import pytest

from borderhom.simplicial import SimplicialComplex, homology
from borderhom.abelian import Z
from borderhom.spaces import (
    EXAMPLES,
    FilteredSpace,
    ProperModelMap,
    SpacePair,
    canonical_cover,
    closed_subpair,
    example_sectors,
    excise,
    generate_example,
    make_space,
    random_closed_subpair,
)


@pytest.mark.parametrize("name", EXAMPLES)
def test_examples_are_deterministic(name):
    assert generate_example(name, 4) == generate_example(name, 4)


def test_example_shapes():
    line = generate_example("line", 3)
    assert len(line.space.vertices) == 7 and line.space.stage["-3"] == 3
    plane = generate_example("plane", 2)
    assert len(plane.space.vertices) == 25 and plane.complex.dimension == 2
    cyl = generate_example("cylinder", 2)
    assert homology(cyl.simplicial_pair(), 1, Z) == Z
    wedge = generate_example("two_rays_wedge", 3)
    assert wedge.space.neighbours["0"] == {"a1", "b1"}


def test_compact_examples_and_horizon():
    tri = generate_example("compact_triangle", 5)
    assert tri.space.depth == 0 and tri.space.is_compact
    line = generate_example("line", 5)
    assert not line.space.is_compact and line.space.stage_count(3) == 5
    assert tri.space.stage_count(3) == 7


def test_unknown_example_and_bad_depth():
    with pytest.raises(ValueError):
        generate_example("sphere", 3)
    with pytest.raises(ValueError):
        generate_example("line", 0)


def test_filtered_space_validation():
    cx = SimplicialComplex.from_simplices([("a", "b")])
    with pytest.raises(ValueError):
        FilteredSpace(cx, {"a": 0})
    with pytest.raises(ValueError):
        FilteredSpace(cx, {"a": 0, "b": -1})
    with pytest.raises(ValueError):
        FilteredSpace(cx, {"a": 0, "b": 3}, depth=2)
    with pytest.raises(ValueError):
        SpacePair(FilteredSpace(cx, {"a": 0, "b": 1}), frozenset({"c"}))


def test_subspace_of_bounded_stage_is_compact():
    line = generate_example("line", 6)
    sub, inc = closed_subpair(line, [str(v) for v in range(-2, 3)])
    assert sub.space.depth == 6 and sub.space.is_compact
    assert inc.source == sub and inc.target == line


def test_proper_map_rejects_collapsing_the_horizon():
    ray = generate_example("ray", 4)
    point = generate_example("point", 1)
    with pytest.raises(ValueError):
        ProperModelMap(ray, point, {v: "0" for v in ray.space.vertices})


def test_proper_map_rejects_non_simplicial_or_a_escaping():
    line = generate_example("line", 3)
    ray = generate_example("ray", 3)
    with pytest.raises(ValueError):
        ProperModelMap(line, ray, {v: str(abs(int(v)) % 2 * 3) for v in line.space.vertices})
    left = line.with_a([v for v in line.space.vertices if int(v) < 0])
    with pytest.raises(ValueError):
        ProperModelMap(left, ray.with_a(["3"]), {v: str(abs(int(v))) for v in line.space.vertices})


def test_stage_bound_of_fold():
    line = generate_example("line", 4)
    ray = generate_example("ray", 4)
    fold = ProperModelMap(line, ray, {v: str(abs(int(v))) for v in line.space.vertices})
    assert [fold.stage_bound(k) for k in range(5)] == [0, 1, 2, 3, 4]
    assert fold.then(ProperModelMap.identity(ray)).vertex_map == fold.vertex_map


def test_canonical_cover_members():
    line = generate_example("line", 4).with_a(["3", "4"])
    cover = canonical_cover(line, 2)
    assert set(cover.members) == {"-3", "-4", "3", "4"}
    assert cover.sub_index == {"3", "4"}
    with pytest.raises(ValueError):
        canonical_cover(line, 4)


def test_excise_requires_neighbours_in_a():
    line = generate_example("line", 4).with_a([str(v) for v in range(-4, 1)])
    small, inc = excise(line, ["-4", "-3"])
    assert "-3" not in small.space.vertices and "-2" in small.a_vertices
    with pytest.raises(ValueError):
        excise(line, ["0"])
    with pytest.raises(ValueError):
        excise(line, ["1"])


@pytest.mark.parametrize("name", EXAMPLES)
def test_random_subpairs_are_closed_and_seeded(name):
    pair = generate_example(name, 4)
    sectors = example_sectors(name, 4)
    a = [random_closed_subpair(pair, random.Random(5), sectors) for _ in range(3)]
    b = [random_closed_subpair(pair, random.Random(5), sectors) for _ in range(3)]
    assert a == b
    sub = a[0]
    assert sub.complex == pair.complex.full_subcomplex(sub.space.vertices)
    assert sub.a_vertices <= set(sub.space.vertices)


def test_make_space_keeps_isolated_vertices():
    pair = make_space([("a", "b")], {"a": 0, "b": 1, "c": 2})
    assert pair.space.vertices == ("a", "b", "c")
