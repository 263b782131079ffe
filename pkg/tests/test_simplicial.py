import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from borderhom.abelian import (
    TRIVIAL,
    FgAbGroup,
    GroupHom,
    Q,
    RationalSpace,
    Z,
    Zmod,
    group_from_orders,
    smith_normal_form,
)
from borderhom.simplicial import (
    ChainGroup,
    SimplicialComplex,
    SimplicialMap,
    SimplicialPair,
    boundary_matrices,
    cohomology,
    contiguous,
    group_orders,
    homology,
    homology_mod2_dimension,
    induced_hom,
    pair_connecting,
    reduced_complex,
    triple_connecting,
)

from conftest import absolute, random_pair
from helpers import rank_mod2


def raw_integral_homology(pair, n):
    """H_n from unreduced boundary matrices (an independent route to the same group)."""
    mats = boundary_matrices(pair, n + 1)
    cells = len(pair.relative_cells(n))

    def diag(M):
        if M.rows == 0 or M.cols == 0:
            return []
        _, D, _ = smith_normal_form(M)
        return [D.data[i][i] for i in range(min(D.rows, D.cols)) if D.data[i][i]]

    d_in, d_out = diag(mats[n]), diag(mats[n + 1])
    free = cells - len(d_in) - len(d_out)
    return FgAbGroup(free, tuple(d for d in d_out if d > 1))


def raw_mod2_dimension(pair, n):
    mats = boundary_matrices(pair, n + 1)

    def r(M):
        return rank_mod2(M.tolist()) if M.rows and M.cols else 0

    return len(pair.relative_cells(n)) - r(mats[n]) - r(mats[n + 1])


# --- complexes ---------------------------------------------------------------


def test_face_closure_and_validation():
    cx = SimplicialComplex.from_simplices([("c", "a", "b")])
    assert cx.vertices == ("a", "b", "c")
    assert len(cx.simplices) == 7 and cx.dimension == 2
    with pytest.raises(ValueError):
        SimplicialComplex(("a", "b"), frozenset({("a",), ("b",), ("a", "b", "c")}))
    with pytest.raises(ValueError):
        SimplicialComplex(("a", "b", "c"), frozenset({("a",), ("b",), ("c",), ("a", "b", "c")}))


def test_maximal_simplices_and_full_subcomplex():
    cx = SimplicialComplex.from_simplices([("a", "b", "c"), ("c", "d")])
    assert cx.maximal_simplices() == [("a", "b", "c"), ("c", "d")]
    sub = cx.full_subcomplex(["a", "c", "d"])
    assert ("a", "c") in sub and ("c", "d") in sub and ("a", "b") not in sub


def test_pair_requires_subcomplex():
    cx = SimplicialComplex.from_simplices([("a", "b")])
    other = SimplicialComplex.from_simplices([("a", "z")])
    with pytest.raises(ValueError):
        SimplicialPair(cx, other)


# --- groups of standard complexes ---------------------------------------------


def test_circle(circle):
    assert homology(circle, 0, Z) == Z
    assert homology(circle, 1, Z) == Z
    assert homology(circle, 2, Z) == TRIVIAL
    assert cohomology(circle, 1, Zmod(3)) == Zmod(3)


def test_projective_plane(projective_plane):
    assert homology(projective_plane, 1, Z) == Zmod(2)
    assert homology(projective_plane, 2, Z) == TRIVIAL
    assert homology(projective_plane, 2, Zmod(2)) == Zmod(2)
    assert cohomology(projective_plane, 2, Z) == Zmod(2)
    assert cohomology(projective_plane, 1, Z) == TRIVIAL
    assert homology(projective_plane, 1, Q) == RationalSpace(0)
    for n in range(3):
        assert homology_mod2_dimension(projective_plane, n) == 1


def test_torus(torus):
    assert homology(torus, 1, Z) == FgAbGroup(2)
    assert homology(torus, 2, Z) == Z
    assert cohomology(torus, 2, Zmod(2) + Z) == FgAbGroup(1, (2,))


def test_disk_relative_to_boundary():
    disk = SimplicialComplex.from_simplices([("a", "b", "c")])
    rim = SimplicialComplex.from_simplices([("a", "b"), ("b", "c"), ("a", "c")])
    pair = SimplicialPair(disk, rim)
    assert homology(pair, 2, Z) == Z
    assert homology(pair, 0, Z) == TRIVIAL
    d = pair_connecting(pair, 2, Z, "homology")
    assert d.is_iso()
    delta = pair_connecting(pair, 2, Z, "cohomology")  # H^1(rim) -> H^2(disk, rim)
    assert delta.is_iso()


@pytest.mark.parametrize("variant", ["homology", "cohomology"])
@pytest.mark.parametrize("G", [Z, Zmod(2), Zmod(4), Zmod(2) + Z])
def test_chain_level_groups_agree_with_universal_coefficients(projective_plane, torus, variant, G):
    for pair in (projective_plane, torus):
        for n in range(3):
            direct = group_from_orders(group_orders(pair, n, G, variant))
            expect = homology(pair, n, G) if variant == "homology" else cohomology(pair, n, G)
            assert direct == expect


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_reduced_and_raw_routes_agree(seed):
    pair = random_pair(random.Random(seed), max_vertices=8)
    for n in range(pair.total.dimension + 1):
        assert homology(pair, n, Z) == raw_integral_homology(pair, n)
        assert homology(pair, n, Zmod(2)).ngens == raw_mod2_dimension(pair, n)
        assert homology_mod2_dimension(pair, n) == raw_mod2_dimension(pair, n)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_reduction_preserves_euler_characteristic(seed):
    pair = random_pair(random.Random(seed), max_vertices=8)
    rc = reduced_complex(pair)
    top = pair.total.dimension
    raw = sum((-1) ** d * len(pair.relative_cells(d)) for d in range(top + 1))
    assert sum((-1) ** d * rc.size(d) for d in range(top + 1)) == raw


def test_chain_group_coordinates_of_generator(circle):
    cg = ChainGroup(circle, 1, 0, "homology")
    cycle = cg.lift(0)
    assert cg.coords(cycle) in ([1], [-1])
    doubled = {s: 2 * c for s, c in cycle.items()}
    assert cg.coords(doubled) in ([2], [-2])


# --- maps -----------------------------------------------------------------------


def _hexagon():
    return absolute([(str(i), str((i + 1) % 6)) for i in range(6)])


def test_degree_two_cover_of_circle(circle):
    hexagon = _hexagon()
    f = SimplicialMap(hexagon, circle, {str(i): "abc"[i % 3] for i in range(6)})
    h = induced_hom(f, 1, Z)
    assert abs(h.matrix.data[0][0]) == 2
    h2 = induced_hom(f, 1, Zmod(2))
    assert h2.is_zero()
    c = induced_hom(f, 1, Z, "cohomology")
    assert abs(c.matrix.data[0][0]) == 2


def test_reflection_reverses_orientation(circle):
    f = SimplicialMap(circle, circle, {"a": "a", "b": "c", "c": "b"})
    h = induced_hom(f, 1, Z)
    assert h == GroupHom.from_columns((0,), (0,), [[-1]])
    assert induced_hom(f, 0, Z).is_iso()


def test_identity_and_composition(torus):
    ident = SimplicialMap(torus, torus, {v: v for v in torus.total.vertices})
    shift = SimplicialMap(torus, torus, {v: str((int(v) + 1) % 7) for v in torus.total.vertices})
    for n in range(3):
        for variant in ("homology", "cohomology"):
            assert induced_hom(ident, n, Z, variant) == GroupHom.identity(group_orders(torus, n, Z, variant))
            a = induced_hom(shift, n, Z, variant)
            b = induced_hom(shift.then(shift), n, Z, variant)
            assert b == a.compose(a)


def test_contiguous_maps_induce_equal_maps():
    tri = absolute([("a", "b", "c")])
    const = SimplicialMap(tri, tri, {"a": "a", "b": "a", "c": "a"})
    ident = SimplicialMap(tri, tri, {"a": "a", "b": "b", "c": "c"})
    assert contiguous(const, ident)
    assert induced_hom(const, 0, Z) == induced_hom(ident, 0, Z)


def test_map_validation(circle):
    with pytest.raises(ValueError):
        SimplicialMap(circle, circle, {"a": "a"})
    seg = absolute([("x", "y")])
    with pytest.raises(ValueError):
        SimplicialMap(_hexagon(), seg, {str(i): "xy"[i % 2] if i < 5 else "z" for i in range(6)})


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([Z, Zmod(2), Zmod(3)]))
def test_long_exact_sequence_composites_vanish(seed, G):
    pair = random_pair(random.Random(seed), max_vertices=7)
    X, A = pair.total, pair.sub
    empty = SimplicialComplex.empty()
    i = SimplicialMap(SimplicialPair(A, empty), SimplicialPair(X, empty), {v: v for v in A.vertices})
    j = SimplicialMap(SimplicialPair(X, empty), pair, {v: v for v in X.vertices})
    for n in range(1, X.dimension + 1):
        d = triple_connecting(X, A, empty, n, G, "homology")  # H_n(X,A) -> H_{n-1}(A)
        assert induced_hom(j, n, G).compose(induced_hom(i, n, G)).is_zero()
        assert d.compose(induced_hom(j, n, G)).is_zero()
        assert induced_hom(i, n - 1, G).compose(d).is_zero()
