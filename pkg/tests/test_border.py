import pytest

from borderhom.abelian import TRIVIAL, FgAbGroup, GroupHom, Q, RationalSpace, Z, Zmod
from borderhom.audit import fixture_maps, fixture_pair_maps, naturality_holds
from borderhom.border import (
    BorderGroupRequest,
    StageSystem,
    border_cohomology,
    border_homology,
    boundary_infty,
    coboundary_infty,
    cohdim_large,
    cohdim_small,
    cyclicity,
    induced_infty,
    pair_sequence,
    stage_complex,
    triple_sequence,
)
from borderhom.simplicial import SimplicialPair, cohomology, homology
from borderhom.spaces import ProperModelMap, closed_subpair, excise, generate_example

DEPTH = 9

# Known ends of the fixtures: number of ends in degree 0, and the circle factor of the cylinder ends.
FIXTURE_GROUPS = {
    ("line", "homology", 0): FgAbGroup(2),
    ("line", "homology", 1): TRIVIAL,
    ("line", "homology", 2): TRIVIAL,
    ("ray", "homology", 0): Z,
    ("ray", "homology", 1): TRIVIAL,
    ("plane", "homology", 0): Z,
    ("plane", "cohomology", 1): Z,
    ("cylinder", "homology", 0): FgAbGroup(2),
    ("cylinder", "homology", 1): FgAbGroup(2),
    ("two_rays_wedge", "homology", 0): FgAbGroup(2),
}


def _pair(name, a=None):
    pair = generate_example(name, DEPTH)
    return pair if a is None else pair.with_a(v for v in pair.space.vertices if a(v))


@pytest.mark.parametrize("key", sorted(FIXTURE_GROUPS))
def test_fixture_groups(key):
    name, variant, n = key
    fn = border_homology if variant == "homology" else border_cohomology
    res = fn(_pair(name), n)
    assert res.stabilized and res.stable_stage <= 5
    assert res.group == FIXTURE_GROUPS[key]


@pytest.mark.parametrize("key", sorted(FIXTURE_GROUPS))
def test_stagewise_oracle(key):
    """Every stage complex (full subcomplex above the stage) already has the limit group."""
    name, variant, n = key
    pair = _pair(name)
    fn = homology if variant == "homology" else cohomology
    for i in range(DEPTH):
        above = pair.complex.full_subcomplex(pair.space.vertices_above(i))
        assert stage_complex(pair.space, None, i) == above
        assert fn(SimplicialPair(above), n, Z) == FIXTURE_GROUPS[key]


def test_coefficients():
    line = _pair("line")
    assert border_homology(line, 0, Q).group == RationalSpace(2)
    assert border_cohomology(line, 0, Zmod(3)).group == FgAbGroup(0, (3, 3))
    cyl = _pair("cylinder")
    assert border_homology(cyl, 1, Zmod(2) + Z).group == FgAbGroup(2, (2, 2))
    assert border_homology(cyl, -1).group == TRIVIAL


def test_request_object():
    req = BorderGroupRequest(_pair("ray"), 0, Z)
    assert border_homology(req).group == Z
    with pytest.raises(ValueError):
        BorderGroupRequest(_pair("ray"), 0, Z, window=0)


@pytest.mark.parametrize("name", ["point", "compact_triangle"])
@pytest.mark.parametrize("G", [Z, Zmod(2), Zmod(3), Zmod(2) + Z])
def test_compact_degeneration(name, G):
    pair = generate_example(name, 1)
    for fn in (border_homology, border_cohomology):
        assert fn(pair, 0, G).group == G
        for n in range(1, 4):
            assert fn(pair, n, G).group.is_trivial()


def test_short_horizon_is_inconclusive():
    res = border_homology(generate_example("ray", 4), 0)
    assert not res.stabilized
    assert not border_homology(_pair("line"), 0, Z, 3, 5).stabilized


def test_relative_group_with_far_subspace():
    far = _pair("line", lambda v: abs(int(v)) >= 3)
    assert border_homology(far, 0).group == TRIVIAL
    assert border_homology(far, 1).group == TRIVIAL
    d = boundary_infty(far, 1)
    assert d.hom.is_zero() and d.hom.target_orders == (0, 0)


def test_half_line_subspace():
    left = _pair("line", lambda v: int(v) <= 0)
    assert border_homology(left, 0).group == Z
    d = coboundary_infty(left, 0)  # H^0(A) -> H^1(X, A)
    assert d.hom.is_zero()


# --- maps ----------------------------------------------------------------------


def test_ray_into_line_and_fold():
    maps = fixture_maps(DEPTH)
    inc = induced_infty(maps["ray_into_line"], 0)
    assert inc.is_injective() and not inc.is_surjective()
    assert inc == GroupHom.from_columns((0,), (0, 0), [[0, 1]])
    fold = induced_infty(maps["line_fold_to_ray"], 0)
    assert fold == GroupHom.from_columns((0, 0), (0,), [[1], [1]])
    assert fold.compose(inc).is_iso()


def test_half_turn_swaps_plane_end_orientation():
    h = induced_infty(fixture_maps(DEPTH)["plane_half_turn"], 1, Z, "cohomology")
    assert h.is_iso()
    hh = h.compose(h)
    assert hh == GroupHom.identity(hh.source_orders)


def test_identity_and_composition_on_fixture_maps():
    maps = fixture_maps(DEPTH)
    f, g = maps["cylinder_to_line"], maps["line_fold_to_ray"]
    for variant in ("homology", "cohomology"):
        for n in range(2):
            hf = induced_infty(f, n, Z, variant)
            hg = induced_infty(g, n, Z, variant)
            hgf = induced_infty(f.then(g), n, Z, variant)
            assert hgf == (hg.compose(hf) if variant == "homology" else hf.compose(hg))
            ident = induced_infty(ProperModelMap.identity(f.source), n, Z, variant)
            assert ident == GroupHom.identity(ident.source_orders)


@pytest.mark.parametrize("name", sorted(fixture_pair_maps(DEPTH)))
def test_connecting_squares(name):
    f = fixture_pair_maps(DEPTH)[name]
    for variant in ("homology", "cohomology"):
        for n in (1, 2):
            assert naturality_holds(f, n, Z, variant)


def test_excision_isomorphism():
    pair = _pair("plane", lambda v: int(v.split(",")[0]) <= 0)
    core = [v for v in pair.space.vertices if int(v.split(",")[0]) <= -2]
    small, inc = excise(pair, core)
    for variant in ("homology", "cohomology"):
        for n in range(3):
            assert induced_infty(inc, n, Z, variant).is_iso()


# --- sequences -----------------------------------------------------------------


@pytest.mark.parametrize("name, a", [
    ("line", lambda v: int(v) >= 0),
    ("line", lambda v: abs(int(v)) >= 3),
    ("plane", lambda v: int(v.split(",")[1]) >= 0),
    ("cylinder", lambda v: int(v.split(",")[1]) >= 2),
    ("two_rays_wedge", lambda v: v.startswith("a")),
])
def test_pair_sequences(name, a):
    pair = _pair(name, a)
    co = pair_sequence(pair, Z, (0, 2), "cohomology")
    assert co.all_exact and co.all_composites_zero and len(co.audited()) == len(co.labels) - 2
    ho = pair_sequence(pair, Z, (0, 2), "homology")
    assert ho.all_composites_zero


def test_sequence_report_lines_are_flat():
    rep = pair_sequence(_pair("line", lambda v: int(v) >= 0), Z, (0, 1), "cohomology")
    lines = rep.lines("seq.")
    assert lines and all(" = " in line for line in lines)


@pytest.mark.parametrize("B", ["far", "same", "empty"])
def test_triple_sequences(B):
    line = _pair("line")
    A = frozenset(v for v in line.space.vertices if int(v) <= 0)
    Bset = {"far": frozenset(v for v in A if int(v) <= -3), "same": A, "empty": frozenset()}[B]
    co = triple_sequence(line.space, A, Bset, Z, (0, 2), "cohomology")
    assert co.all_exact and co.all_composites_zero
    assert triple_sequence(line.space, A, Bset, Z, (0, 2), "homology").all_composites_zero


def test_subspace_system_matches_restriction():
    line = _pair("line")
    A = frozenset(v for v in line.space.vertices if int(v) >= 2)
    sub, _ = closed_subpair(line, A)
    for i in range(DEPTH):
        assert StageSystem(line.space, A).pair(i).total == StageSystem.of_pair(sub).pair(i).total


# --- invariants ----------------------------------------------------------------


def test_cyclicity_of_cylinder():
    rep = cyclicity(_pair("cylinder"), Z, "cohomology")
    assert rep.value == 1 and rep.exact


def test_compact_dimensions_vanish():
    tri = generate_example("compact_triangle", 1)
    assert cohdim_small(tri.space).upper_bound == 0
    assert cohdim_large(tri.space).upper_bound == 0
    assert cyclicity(tri).value == 0


def test_dimension_bounds_on_plane():
    plane = _pair("plane")
    ray = frozenset(f"{k},0" for k in range(0, DEPTH + 1))
    small = cohdim_small(plane.space, Z, [ray])
    large = cohdim_large(plane.space, Z, [ray])
    assert (small.lower_bound, small.upper_bound) == (0, 2)
    assert (large.lower_bound, large.upper_bound) == (1, 2)
    assert small.lower_bound <= large.upper_bound
