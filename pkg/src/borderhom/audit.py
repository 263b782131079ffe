"""Invariant audits over fixture models, fixture maps and seeded random pairs."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .abelian import Z, Q, Zmod, FgAbGroup, RationalSpace, iso_check
from .border import (
    border_cohomology,
    border_homology,
    boundary_infty,
    coboundary_infty,
    induced_infty,
    pair_sequence,
    restricted_infty,
    triple_sequence,
)
from .limits import DEFAULT_WINDOW, Inconclusive
from .spaces import (
    EXAMPLES,
    ProperModelMap,
    SpacePair,
    closed_subpair,
    example_sectors,
    excise,
    generate_example,
    random_closed_subpair,
)

SUITES = ("compact", "exactness", "triple", "excision", "functoriality", "naturality")
FIXTURE_DEPTH = 9
COMPACT_COEFFICIENTS = (Z, Zmod(2), Zmod(3), Zmod(2) + Z, Q)


@dataclass
class AuditResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tail = f" ; {self.detail}" if self.detail else ""
        return f"audit.{self.name} = {'pass' if self.ok else 'fail'}{tail}"


def _verts(pair: SpacePair, pred) -> frozenset:
    return frozenset(v for v in pair.space.vertices if pred(v))


# ---------------------------------------------------------------------------
# Fixture maps


def _num(v: str) -> int:
    return int(v)


def fixture_maps(depth: int = FIXTURE_DEPTH) -> dict[str, ProperModelMap]:
    """Named proper maps between fixture models."""
    line = generate_example("line", depth)
    ray = generate_example("ray", depth)
    wedge = generate_example("two_rays_wedge", depth)
    cyl = generate_example("cylinder", depth)
    plane = generate_example("plane", depth)
    right = closed_subpair(line, [str(v) for v in range(0, depth + 1)])[1]
    ray_into_line = ProperModelMap(ray, line, {v: v for v in ray.space.vertices})
    maps = {
        "id_line": ProperModelMap.identity(line),
        "id_plane": ProperModelMap.identity(plane),
        "right_half_into_line": right,
        "ray_into_line": ray_into_line,
        "line_fold_to_ray": ProperModelMap(line, ray, {v: str(abs(_num(v))) for v in line.space.vertices}),
        "wedge_fold_to_ray": ProperModelMap(wedge, ray, {v: (v if v == "0" else v[1:]) for v in wedge.space.vertices}),
        "cylinder_to_line": ProperModelMap(cyl, line, {v: v.split(",")[1] for v in cyl.space.vertices}),
        "plane_half_turn": ProperModelMap(
            plane, plane, {v: ",".join(str(-int(t)) for t in v.split(",")) for v in plane.space.vertices}),
    }
    return maps


COMPOSABLE = (
    ("ray_into_line", "line_fold_to_ray"),
    ("cylinder_to_line", "line_fold_to_ray"),
    ("wedge_fold_to_ray", "ray_into_line"),
    ("plane_half_turn", "plane_half_turn"),
    ("right_half_into_line", "id_line"),
)


def fixture_pair_maps(depth: int = FIXTURE_DEPTH) -> dict[str, ProperModelMap]:
    """Maps of pairs ``(X, A) -> (Y, B)`` used for the connecting-map squares."""
    line = generate_example("line", depth)
    ray = generate_example("ray", depth)
    cyl = generate_example("cylinder", depth)
    left = line.with_a(_verts(line, lambda v: _num(v) <= 0))
    far = line.with_a(_verts(line, lambda v: abs(_num(v)) >= 3))
    ray_tail = ray.with_a(_verts(ray, lambda v: _num(v) >= 3))
    cyl_top = cyl.with_a(_verts(cyl, lambda v: int(v.split(",")[1]) >= 2))
    line_top = line.with_a(_verts(line, lambda v: _num(v) >= 2))
    return {
        "id_line_left": ProperModelMap.identity(left),
        "ray_tail_into_line_far": ProperModelMap(ray_tail, far, {v: v for v in ray.space.vertices}),
        "line_far_fold_to_ray_tail": ProperModelMap(far, ray_tail, {v: str(abs(_num(v))) for v in line.space.vertices}),
        "cylinder_top_to_line_top": ProperModelMap(cyl_top, line_top, {v: v.split(",")[1] for v in cyl.space.vertices}),
        "id_cylinder_top": ProperModelMap.identity(cyl_top),
    }


# ---------------------------------------------------------------------------
# Suites


def audit_compact(window: int = DEFAULT_WINDOW, coefficients=COMPACT_COEFFICIENTS) -> list[AuditResult]:
    out = []
    for name in ("point", "compact_triangle"):
        pair = generate_example(name, 1)
        for G in coefficients:
            for variant, fn in (("homology", border_homology), ("cohomology", border_cohomology)):
                for n in range(4):
                    res = fn(pair, n, G, window)
                    expect = G if n == 0 else (RationalSpace(0) if G is Q else FgAbGroup())
                    if G is Q and n == 0:
                        expect = RationalSpace(1)
                    ok = res.stabilized and iso_check(res.group, expect)
                    out.append(AuditResult(f"compact.{name}.{G}.{variant}.{n}", ok,
                                           f"got {res.group if res.stabilized else 'inconclusive'}"))
    return out


def random_pairs(name: str, seed: int, count: int, depth: int = FIXTURE_DEPTH) -> list[SpacePair]:
    pair = generate_example(name, depth)
    rng = random.Random(f"{seed}:{name}")
    sectors = example_sectors(name, depth)
    return [random_closed_subpair(pair, rng, sectors) for _ in range(count)]


def _guarded(tag: str, check) -> AuditResult:
    """Run ``check`` (returning an AuditResult or a bool); inconclusive verdicts count as failures."""
    try:
        res = check()
    except Inconclusive as exc:
        return AuditResult(tag, False, f"inconclusive: {exc}")
    return res if isinstance(res, AuditResult) else AuditResult(tag, bool(res))


def _sequence_result(tag: str, report, variant: str) -> AuditResult:
    audited = report.audited()
    if variant == "cohomology":
        ok = report.all_exact and report.all_composites_zero
    else:
        ok = report.all_composites_zero
    exact = sum(1 for k in audited if report.exact[k])
    skipped = len(report.labels) - 2 - len(audited)
    return AuditResult(tag, ok, f"audited={len(audited)} exact={exact} unaudited={skipped}")


def audit_exactness(examples=EXAMPLES, seed: int = 0, random_count: int = 10, G=Z,
                    degrees=(0, 2), window: int = DEFAULT_WINDOW) -> list[AuditResult]:
    """Pair sequences: cohomology exact, homology composites zero."""
    out = []
    for name in examples:
        base = generate_example(name, FIXTURE_DEPTH)
        fixed = [("fixture", base)]
        sectors = example_sectors(name, FIXTURE_DEPTH)
        if sectors:
            fixed.append(("fixture_sectorA", base.with_a(sectors[0])))
        cases = fixed + [(f"seed{seed}.r{k}", p) for k, p in enumerate(random_pairs(name, seed, random_count))]
        for tag, pair in cases:
            for variant in ("cohomology", "homology"):
                key = f"exactness.{name}.{tag}.{variant}"
                out.append(_guarded(key, lambda: _sequence_result(
                    key, pair_sequence(pair, G, degrees, variant, window), variant)))
    return out


def fixture_triples(depth: int = FIXTURE_DEPTH):
    line = generate_example("line", depth)
    plane = generate_example("plane", depth)
    cyl = generate_example("cylinder", depth)
    left = _verts(line, lambda v: _num(v) <= 0)
    far_left = _verts(line, lambda v: _num(v) <= -3)

    def xy(v):
        return tuple(int(t) for t in v.split(","))

    half = _verts(plane, lambda v: xy(v)[0] >= 0)
    quad = _verts(plane, lambda v: xy(v)[0] >= 0 and xy(v)[1] >= 0)
    ends = _verts(cyl, lambda v: abs(xy(v)[1]) >= 2)
    top = _verts(cyl, lambda v: xy(v)[1] >= 2)
    return {
        "line_left_farleft": (line.space, left, far_left),
        "line_left_left": (line.space, left, left),
        "line_left_empty": (line.space, left, frozenset()),
        "plane_half_quadrant": (plane.space, half, quad),
        "cylinder_ends_top": (cyl.space, ends, top),
    }


def audit_triple(G=Z, degrees=(0, 2), window: int = DEFAULT_WINDOW) -> list[AuditResult]:
    out = []
    for name, (space, A, B) in fixture_triples().items():
        for variant in ("cohomology", "homology"):
            key = f"triple.{name}.{variant}"
            out.append(_guarded(key, lambda: _sequence_result(
                key, triple_sequence(space, A, B, G, degrees, variant, window), variant)))
    return out


def excision_cases(depth: int = FIXTURE_DEPTH):
    """``(name, pair, U-core)`` with every core vertex and its neighbours in ``A``."""
    cases = []
    line = generate_example("line", depth)
    cases.append(("line", line.with_a(_verts(line, lambda v: _num(v) <= 0)),
                  _verts(line, lambda v: _num(v) <= -2)))
    ray = generate_example("ray", depth)
    cases.append(("ray", ray.with_a(_verts(ray, lambda v: _num(v) <= 1)), frozenset({"0"})))
    plane = generate_example("plane", depth)
    cases.append(("plane", plane.with_a(_verts(plane, lambda v: int(v.split(",")[0]) <= 0)),
                  _verts(plane, lambda v: int(v.split(",")[0]) <= -2)))
    cyl = generate_example("cylinder", depth)
    cases.append(("cylinder", cyl.with_a(_verts(cyl, lambda v: int(v.split(",")[1]) <= 0)),
                  _verts(cyl, lambda v: int(v.split(",")[1]) <= -2)))
    wedge = generate_example("two_rays_wedge", depth)
    cases.append(("two_rays_wedge", wedge.with_a(_verts(wedge, lambda v: v == "0" or v.startswith("a"))),
                  _verts(wedge, lambda v: v.startswith("a") and v != "a1")))
    tri = generate_example("compact_triangle", 1)
    cases.append(("compact_triangle", tri.with_a(tri.space.vertices), frozenset({"0"})))
    point = generate_example("point", 1)
    cases.append(("point", point.with_a(point.space.vertices), frozenset()))
    return cases


def audit_excision(examples=EXAMPLES, G=Z, degrees=(0, 2), window: int = DEFAULT_WINDOW) -> list[AuditResult]:
    out = []
    for name, pair, core in excision_cases():
        if name not in examples:
            continue
        small, inc = excise(pair, core)
        for variant in ("homology", "cohomology"):
            for n in range(degrees[0], degrees[1] + 1):
                tag = f"excision.{name}.{variant}.{n}"
                try:
                    h = induced_infty(inc, n, G, variant, window)
                    ok = h.is_iso()
                    res = (border_homology if variant == "homology" else border_cohomology)(pair, n, G, window)
                    out.append(AuditResult(tag, ok, f"group {res.group}"))
                except Inconclusive as exc:
                    out.append(AuditResult(tag, False, f"inconclusive: {exc}"))
    return out


def audit_functoriality(G=Z, degrees=(0, 2), window: int = DEFAULT_WINDOW) -> list[AuditResult]:
    maps = fixture_maps()
    out = []
    for name, f in maps.items():
        src = ProperModelMap.identity(f.source)
        for variant in ("homology", "cohomology"):
            for n in range(degrees[0], degrees[1] + 1):
                def identity_law():
                    h = induced_infty(src, n, G, variant, window)
                    return h.is_iso() and h.matrix == h.matrix.identity(h.matrix.rows)

                out.append(_guarded(f"functoriality.identity.{name}.{variant}.{n}", identity_law))
    for first, second in COMPOSABLE:
        f, g = maps[first], maps[second]
        gf = f.then(g)
        for variant in ("homology", "cohomology"):
            for n in range(degrees[0], degrees[1] + 1):
                def composition_law():
                    hf = induced_infty(f, n, G, variant, window)
                    hg = induced_infty(g, n, G, variant, window)
                    hgf = induced_infty(gf, n, G, variant, window)
                    return hgf == (hg.compose(hf) if variant == "homology" else hf.compose(hg))

                out.append(_guarded(f"functoriality.compose.{first}.{second}.{variant}.{n}", composition_law))
    return out


def naturality_holds(f: ProperModelMap, n: int, G=Z, variant: str = "homology",
                     window: int = DEFAULT_WINDOW) -> bool:
    """The connecting-map square for ``f`` in degree ``n``."""
    if variant == "homology":
        top = induced_infty(f, n, G, variant, window)  # H_n(X,A) -> H_n(Y,B)
        low = restricted_infty(f, n - 1, G, variant, window)  # H_{n-1}(A) -> H_{n-1}(B)
        dx = boundary_infty(f.source, n, G, window).hom
        dy = boundary_infty(f.target, n, G, window).hom
        return low.compose(dx) == dy.compose(top)
    top = induced_infty(f, n, G, variant, window)  # H^n(Y,B) -> H^n(X,A)
    low = restricted_infty(f, n - 1, G, variant, window)  # H^{n-1}(B) -> H^{n-1}(A)
    dx = coboundary_infty(f.source, n - 1, G, window).hom  # H^{n-1}(A) -> H^n(X,A)
    dy = coboundary_infty(f.target, n - 1, G, window).hom
    return top.compose(dy) == dx.compose(low)


def audit_naturality(G=Z, degrees=(1, 2), window: int = DEFAULT_WINDOW) -> list[AuditResult]:
    out = []
    for name, f in fixture_pair_maps().items():
        for variant in ("homology", "cohomology"):
            for n in range(max(1, degrees[0]), degrees[1] + 1):
                out.append(_guarded(f"naturality.{name}.{variant}.{n}",
                                    lambda: naturality_holds(f, n, G, variant, window)))
    return out


def run_suite(suite: str, examples=EXAMPLES, seed: int = 0, random_count: int = 10, G=Z,
              window: int = DEFAULT_WINDOW, degrees: tuple[int, int] | None = None) -> list[AuditResult]:
    """Run one suite; ``degrees`` overrides the suite's default range."""
    if suite == "compact":
        return audit_compact(window)
    if suite == "exactness":
        return audit_exactness(examples, seed, random_count, G, degrees or (0, 2), window)
    if suite == "triple":
        return audit_triple(G, degrees or (0, 2), window)
    if suite == "excision":
        return audit_excision(examples, G, degrees or (0, 2), window)
    if suite == "functoriality":
        return audit_functoriality(G, degrees or (0, 2), window)
    if suite == "naturality":
        return audit_naturality(G, degrees or (1, 2), window)
    raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


__all__ = ["AuditResult", "SUITES", "run_suite", "fixture_maps", "fixture_pair_maps", "fixture_triples",
           "excision_cases", "random_pairs", "naturality_holds"]
