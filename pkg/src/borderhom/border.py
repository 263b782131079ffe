"""Border (co)homology of filtered pairs: limits over the canonical cover chain.

Stage ``i`` of a space uses the canonical cover (open stars of the vertices
above stage ``i``); its nerve is the full subcomplex on those vertices.  For a
vertex set ``S`` (``A``, ``B``, ...) the stage complex of ``S`` is the part
of that nerve the cover assigns to ``S``, so pair, triple and subspace
systems are restrictions of one stagewise nerve and the comparison maps
between them are identities.

Homology groups are inverse limits, cohomology groups direct limits
(see :mod:`borderhom.limits`).  Every verdict is relative to the truncation
horizon of the model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .abelian import Z, FgAbGroup, GroupHom, Lattice, RationalSpace, Rationals, _relation_columns
from .covers import FAKE_VERTEX, nerve
from .limits import DEFAULT_WINDOW, Inconclusive, LimitResult, direct_limit, inverse_limit, limit_map, GroupSystem
from .simplicial import (
    SimplicialComplex,
    SimplicialMap,
    SimplicialPair,
    coefficient_moduli,
    group_orders,
    induced_hom,
    triple_connecting,
)
from .spaces import FilteredSpace, ProperModelMap, SpacePair, canonical_cover, closed_subpair

VARIANTS = ("homology", "cohomology")


# ---------------------------------------------------------------------------
# Stagewise nerves


@lru_cache(maxsize=4096)
def _stage_nerve(space: FilteredSpace, part: frozenset, i: int) -> SimplicialPair:
    return nerve(canonical_cover(SpacePair(space, part), i))


def stage_complex(space: FilteredSpace, part: frozenset | None, i: int) -> SimplicialComplex:
    """Stage-``i`` nerve of ``space`` (``part=None``) or the piece assigned to ``part``."""
    if part is None:
        return _stage_nerve(space, frozenset(), i).total
    return _stage_nerve(space, frozenset(part), i).sub


@dataclass(frozen=True)
class StageSystem:
    """The stagewise pairs ``(N_i[top], N_i[bottom])`` of one space (``top=None`` means everything)."""

    space: FilteredSpace
    top: frozenset | None = None
    bottom: frozenset = frozenset()

    def pair(self, i: int) -> SimplicialPair:
        if self.space.is_compact:
            # the exhausted one-vertex nerve is terminal; reading it at every stage keeps
            # all systems on a compact model constant and mutually compatible
            i = max(i, self.space.max_stage)
        return SimplicialPair(stage_complex(self.space, self.top, i), stage_complex(self.space, self.bottom, i))

    def count(self, window: int, horizon: int | None = None) -> int:
        n = self.space.stage_count(window)
        return n if horizon is None else min(n, horizon)

    @classmethod
    def of_pair(cls, pair: SpacePair) -> "StageSystem":
        return cls(pair.space, None, pair.a_vertices)


def stage_map(src: SimplicialPair, tgt: SimplicialPair, vertex_map) -> SimplicialMap:
    """Simplicial map between stage pairs induced by a vertex map.

    The one-vertex nerve of an exhausted stage is handled explicitly: everything
    goes to it, and it goes to the smallest admissible target vertex.
    """
    tv = tgt.total.vertices
    vm = {}
    for v in src.total.vertices:
        if tv == (FAKE_VERTEX,):
            vm[v] = FAKE_VERTEX
        elif v == FAKE_VERTEX and v not in vertex_map:
            pool = tgt.sub.vertices if (v,) in src.sub.simplices else tv
            if not pool:
                raise Inconclusive("an exhausted stage has no admissible image")
            vm[v] = pool[0]
        else:
            vm[v] = vertex_map[v]
    return SimplicialMap(src, tgt, vm)


class _Identity(dict):
    def __missing__(self, key):
        if key == FAKE_VERTEX:
            raise KeyError(key)
        return key

    def __contains__(self, key):
        return key != FAKE_VERTEX


_ID = _Identity()


# ---------------------------------------------------------------------------
# Group systems and limits


def _is_rational(G) -> bool:
    return isinstance(G, Rationals)


@lru_cache(maxsize=4096)
def group_system(system: StageSystem, n: int, G, variant: str, window: int, horizon: int | None) -> GroupSystem:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    count = system.count(window, horizon)
    pairs = [system.pair(i) for i in range(count)]
    stages = [group_orders(p, n, G, variant) for p in pairs]
    maps = []
    for i in range(count - 1):
        f = stage_map(pairs[i + 1], pairs[i], _ID)
        maps.append(induced_hom(f, n, G, variant))
    kind = "inverse" if variant == "homology" else "direct"
    return GroupSystem(kind, stages, maps, rational=_is_rational(G))


@lru_cache(maxsize=4096)
def _limit(system: StageSystem, n: int, G, variant: str, window: int, horizon: int | None) -> LimitResult:
    if n < 0:
        empty = GroupSystem("inverse" if variant == "homology" else "direct", [()], [], _is_rational(G))
        return (inverse_limit if variant == "homology" else direct_limit)(_pad(empty, window), window)
    sys = group_system(system, n, G, variant, window, horizon)
    return inverse_limit(sys, window) if variant == "homology" else direct_limit(sys, window)


def _pad(sys: GroupSystem, window: int) -> GroupSystem:
    count = 2 * window + 1
    maps = [GroupHom.identity(sys.stages[0])] * (count - 1)
    return GroupSystem(sys.kind, sys.stages * count, maps, sys.rational)


def system_limit(system: StageSystem, n: int, G=Z, variant: str = "homology",
                 window: int = DEFAULT_WINDOW, horizon: int | None = None) -> LimitResult:
    return _limit(system, n, G, variant, window, horizon)


@dataclass(frozen=True)
class BorderGroupRequest:
    pair: SpacePair
    n: int
    G: object = Z
    horizon: int | None = None
    window: int = DEFAULT_WINDOW

    def __post_init__(self):
        if self.horizon is not None and self.horizon > self.pair.space.stage_count(self.window):
            raise ValueError("horizon exceeds the available stages")
        if self.window < 1:
            raise ValueError("window must be at least 1")


def border_homology(pair: SpacePair | BorderGroupRequest, n: int | None = None, G=Z,
                    window: int = DEFAULT_WINDOW, horizon: int | None = None) -> LimitResult:
    if isinstance(pair, BorderGroupRequest):
        pair, n, G, window, horizon = pair.pair, pair.n, pair.G, pair.window, pair.horizon
    return system_limit(StageSystem.of_pair(pair), n, G, "homology", window, horizon)


def border_cohomology(pair: SpacePair | BorderGroupRequest, n: int | None = None, G=Z,
                      window: int = DEFAULT_WINDOW, horizon: int | None = None) -> LimitResult:
    if isinstance(pair, BorderGroupRequest):
        pair, n, G, window, horizon = pair.pair, pair.n, pair.G, pair.window, pair.horizon
    return system_limit(StageSystem.of_pair(pair), n, G, "cohomology", window, horizon)


def nerve_dimension(space: FilteredSpace, window: int = DEFAULT_WINDOW, horizon: int | None = None) -> int:
    """Largest dimension of a stage nerve; border groups vanish above it."""
    sys = StageSystem(space)
    return max(sys.pair(i).total.dimension for i in range(sys.count(window, horizon)))


# ---------------------------------------------------------------------------
# Maps between limits


def system_map(src: StageSystem, tgt: StageSystem, vertex_map, reindex, n: int, G, variant: str,
               window: int = DEFAULT_WINDOW, horizon: int | None = None) -> GroupHom:
    """Limit of the maps induced by ``vertex_map`` from stage ``reindex(k)`` of ``src`` to stage ``k`` of ``tgt``.

    Homology maps go ``src -> tgt``; cohomology maps go ``tgt -> src``.
    """
    ls = system_limit(src, n, G, variant, window, horizon)
    lt = system_limit(tgt, n, G, variant, window, horizon)
    if n < 0:
        return GroupHom.zero(ls.orders, lt.orders) if variant == "homology" else GroupHom.zero(lt.orders, ls.orders)

    def stagewise(k: int) -> GroupHom:
        f = stage_map(src.pair(reindex(k)), tgt.pair(k), vertex_map)
        return induced_hom(f, n, G, variant)

    if variant == "homology":
        return limit_map(stagewise, reindex, ls, lt)
    return limit_map(stagewise, reindex, lt, ls)


def induced_infty(f: ProperModelMap, n: int, G=Z, variant: str = "homology",
                  window: int = DEFAULT_WINDOW, horizon: int | None = None) -> GroupHom:
    """Map on border (co)homology induced by a proper model map."""
    src = StageSystem.of_pair(f.source)
    tgt = StageSystem.of_pair(f.target)
    return system_map(src, tgt, f.vertex_map, f.stage_bound, n, G, variant, window, horizon)


def restricted_infty(f: ProperModelMap, n: int, G=Z, variant: str = "homology",
                     window: int = DEFAULT_WINDOW, horizon: int | None = None) -> GroupHom:
    """Map induced by ``f`` restricted to ``A -> B`` (subspace systems of the two pairs)."""
    src = StageSystem(f.source.space, f.source.a_vertices)
    tgt = StageSystem(f.target.space, f.target.a_vertices)
    return system_map(src, tgt, f.vertex_map, f.stage_bound, n, G, variant, window, horizon)


def inclusion_infty(space: FilteredSpace, src_top, src_bottom, tgt_top, tgt_bottom, n: int, G=Z,
                    variant: str = "homology", window: int = DEFAULT_WINDOW, horizon: int | None = None) -> GroupHom:
    """Map induced by the identity of ``space`` between two stage systems on it."""
    src = StageSystem(space, _part(src_top), frozenset(src_bottom))
    tgt = StageSystem(space, _part(tgt_top), frozenset(tgt_bottom))
    return system_map(src, tgt, _ID, lambda k: k, n, G, variant, window, horizon)


def _part(top):
    return None if top is None else frozenset(top)


@dataclass
class ConnectingMap:
    source: LimitResult
    target: LimitResult
    hom: GroupHom


def _connecting(space: FilteredSpace, top, mid, bottom, n: int, G, variant: str, window: int,
                horizon: int | None) -> ConnectingMap:
    """Homology ``H_n(top, mid) -> H_{n-1}(mid, bottom)``; cohomology ``H^{n-1}(mid, bottom) -> H^n(top, mid)``."""
    upper = StageSystem(space, _part(top), frozenset(mid))
    lower = StageSystem(space, frozenset(mid), frozenset(bottom))

    if variant == "homology":
        ls = system_limit(upper, n, G, variant, window, horizon)
        lt = system_limit(lower, n - 1, G, variant, window, horizon)
    else:
        ls = system_limit(lower, n - 1, G, variant, window, horizon)
        lt = system_limit(upper, n, G, variant, window, horizon)
    ls.require()
    lt.require()
    if n < 1:
        return ConnectingMap(ls, lt, GroupHom.zero(ls.orders, lt.orders))

    def stagewise(k: int) -> GroupHom:
        up = upper.pair(k)
        low = lower.pair(k)
        return triple_connecting(up.total, up.sub, low.sub, n, G, variant)

    return ConnectingMap(ls, lt, limit_map(stagewise, lambda k: k, ls, lt))


def boundary_infty(pair: SpacePair, n: int, G=Z, window: int = DEFAULT_WINDOW,
                   horizon: int | None = None) -> ConnectingMap:
    """``H_n(X, A) -> H_{n-1}(A)`` on border homology."""
    return _connecting(pair.space, None, pair.a_vertices, frozenset(), n, G, "homology", window, horizon)


def coboundary_infty(pair: SpacePair, n: int, G=Z, window: int = DEFAULT_WINDOW,
                     horizon: int | None = None) -> ConnectingMap:
    """``H^n(A) -> H^{n+1}(X, A)`` on border cohomology."""
    return _connecting(pair.space, None, pair.a_vertices, frozenset(), n + 1, G, "cohomology", window, horizon)


# ---------------------------------------------------------------------------
# Sequences


@dataclass
class SequenceReport:
    variant: str
    labels: list[str]
    groups: list[object]
    maps: list[GroupHom | None]
    composite_zero: list[bool | None] = field(default_factory=list)
    exact: list[bool | None] = field(default_factory=list)

    def audited(self) -> list[int]:
        return [k for k, z in enumerate(self.composite_zero) if z is not None]

    @property
    def all_composites_zero(self) -> bool:
        return all(self.composite_zero[k] for k in self.audited())

    @property
    def all_exact(self) -> bool:
        return all(self.exact[k] for k in self.audited())

    def lines(self, prefix: str = "") -> list[str]:
        out = []
        for k, label in enumerate(self.labels):
            g = self.groups[k]
            gs = "inconclusive" if g is None else str(g)
            z, e = self.composite_zero[k], self.exact[k]
            status = "unaudited" if z is None else f"composite_zero={'yes' if z else 'no'} exact={'yes' if e else 'no'}"
            out.append(f"{prefix}{label} = {gs} ; {status}")
        return out


def _audit(report: SequenceReport) -> SequenceReport:
    n = len(report.labels)
    report.composite_zero = [None] * n
    report.exact = [None] * n
    for k in range(1, n - 1):
        a, b = report.maps[k - 1], report.maps[k]
        if a is None or b is None:
            continue
        report.composite_zero[k] = b.compose(a).is_zero()
        dim = len(a.target_orders)
        image = Lattice(dim, a.matrix.columns() + _relation_columns(a.target_orders))
        report.exact[k] = b.kernel_lattice() == image
    return report


def _zero_end(orders, outgoing: bool) -> GroupHom:
    return GroupHom.zero((), orders) if outgoing else GroupHom.zero(orders, ())


def _ladder(space, top, mid, bottom, G, degrees, variant, window, horizon, label, compose_triple=False) -> SequenceReport:
    """Long sequence of the triple ``bottom <= mid <= top`` (``top=None`` is the whole space)."""
    lo, hi = degrees
    t_name, m_name, b_name = label
    sys_mb = StageSystem(space, frozenset(mid), frozenset(bottom))
    sys_tb = StageSystem(space, _part(top), frozenset(bottom))
    sys_tm = StageSystem(space, _part(top), frozenset(mid))

    def lim(sys, n):
        return system_limit(sys, n, G, variant, window, horizon)

    def safe(fn):
        try:
            return fn()
        except Inconclusive:
            return None

    def grp(res):
        return res.group if res.stabilized else None

    def incl(src, tgt, n):
        return safe(lambda: system_map(src, tgt, _ID, lambda k: k, n, G, variant, window, horizon))

    def conn(n):
        # homology: H_n(top, mid) -> H_{n-1}(mid, bottom); cohomology: H^{n-1}(mid, bottom) -> H^n(top, mid)
        if compose_triple:
            # the composite j' o d through H_{n-1}(mid), as in the triple sequence
            def build():
                d = _connecting(space, top, mid, frozenset(), n, G, variant, window, horizon).hom
                j = system_map(StageSystem(space, frozenset(mid)), sys_mb, _ID, lambda k: k, n - 1, G, variant,
                               window, horizon)
                return j.compose(d) if variant == "homology" else d.compose(j)
            return safe(build)
        return safe(lambda: _connecting(space, top, mid, bottom, n, G, variant, window, horizon).hom)

    labels, groups, maps = [], [], []
    if variant == "homology":
        for n in range(hi, lo - 1, -1):
            for name, sys in ((f"H_{n}({m_name},{b_name})", sys_mb), (f"H_{n}({t_name},{b_name})", sys_tb),
                              (f"H_{n}({t_name},{m_name})", sys_tm)):
                labels.append(name)
                groups.append(grp(lim(sys, n)))
            maps.append(incl(sys_mb, sys_tb, n))
            maps.append(incl(sys_tb, sys_tm, n))
            if n > lo:
                maps.append(conn(n))
        if lo == 0:
            labels.append("0")
            groups.append(FgAbGroup())
            res = lim(sys_tm, 0)
            maps.append(_zero_end(res.orders, False) if res.stabilized else None)
    else:
        if lo == 0:
            labels.append("0")
            groups.append(FgAbGroup())
            res = lim(sys_tm, 0)
            maps.append(_zero_end(res.orders, True) if res.stabilized else None)
        for n in range(lo, hi + 1):
            for name, sys in ((f"H^{n}({t_name},{m_name})", sys_tm), (f"H^{n}({t_name},{b_name})", sys_tb),
                              (f"H^{n}({m_name},{b_name})", sys_mb)):
                labels.append(name)
                groups.append(grp(lim(sys, n)))
            # cohomology maps run opposite to the inclusions
            maps.append(incl(sys_tb, sys_tm, n))
            maps.append(incl(sys_mb, sys_tb, n))
            if n < hi:
                maps.append(conn(n + 1))
    return _audit(SequenceReport(variant, labels, groups, maps))


def pair_sequence(pair: SpacePair, G=Z, degrees=(0, 2), variant: str = "homology",
                  window: int = DEFAULT_WINDOW, horizon: int | None = None) -> SequenceReport:
    """``... -> H(A) -> H(X) -> H(X,A) -> ...`` with audits at every interior node."""
    return _ladder(pair.space, None, pair.a_vertices, frozenset(), G, degrees, variant, window, horizon,
                   ("X", "A", "0"))


def triple_sequence(space: FilteredSpace, A, B, G=Z, degrees=(0, 2), variant: str = "homology",
                    window: int = DEFAULT_WINDOW, horizon: int | None = None) -> SequenceReport:
    """Sequence of the triple ``B <= A <= X`` with the composed connecting map."""
    A, B = frozenset(A), frozenset(B)
    if not B <= A:
        raise ValueError("B must be contained in A")
    return _ladder(space, None, A, B, G, degrees, variant, window, horizon, ("X", "A", "B"), compose_triple=True)


# ---------------------------------------------------------------------------
# Cyclicity and dimensions


@dataclass
class CyclicityReport:
    variant: str
    value: int | None  # None: every certified group vanishes
    lower: int | None
    upper: int | None
    nerve_dimension: int
    groups: dict[int, object]

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def cyclicity(pair: SpacePair, G=Z, variant: str = "cohomology", window: int = DEFAULT_WINDOW,
              horizon: int | None = None) -> CyclicityReport:
    """Top degree with a nonzero border group, up to the nerve dimension (higher degrees vanish)."""
    D = nerve_dimension(pair.space, window, horizon)
    groups = {}
    for n in range(D + 1):
        res = system_limit(StageSystem.of_pair(pair), n, G, variant, window, horizon)
        groups[n] = res.group if res.stabilized else None
    nonzero = [n for n, g in groups.items() if g is not None and not g.is_trivial()]
    unknown = [n for n, g in groups.items() if g is None]
    low = max(nonzero, default=None)
    high = max(nonzero + unknown, default=None)
    value = low if low == high else None
    return CyclicityReport(variant, value, low, high, D, groups)


@dataclass
class DimensionReport:
    variant: str
    lower_bound: int
    upper_bound: int
    witness: tuple | None
    scope: str
    tested: list[tuple] = field(default_factory=list)
    untested: list[tuple] = field(default_factory=list)


def _family_pairs(space: FilteredSpace, family):
    for vs in family:
        vs = frozenset(vs)
        unknown = vs - set(space.vertices)
        if unknown:
            raise ValueError(f"family member uses unknown vertices {sorted(unknown)[:5]}")
        yield vs


def cohdim_small(space: FilteredSpace, G=Z, family=(), window: int = DEFAULT_WINDOW,
                 horizon: int | None = None) -> DimensionReport:
    """Bounds for the smallest ``n`` past which restrictions to closed subspaces are onto."""
    D = nerve_dimension(space, window, horizon)
    whole = SpacePair(space)
    lower, witness = 0, None
    tested, untested = [], []
    for vs in _family_pairs(space, family):
        sub, inc = closed_subpair(whole, vs)
        key = tuple(sorted(vs))
        try:
            for m in range(D + 1):
                r = induced_infty(inc, m, G, "cohomology", window, horizon)
                if not r.is_surjective() and m + 1 > lower:
                    lower, witness = m + 1, (key, m)
            tested.append(key)
        except Inconclusive:
            untested.append(key)
    return DimensionReport("small", lower, max(D, lower), witness, "lower bound relative to the tested family",
                           tested, untested)


def cohdim_large(space: FilteredSpace, G=Z, family=(), window: int = DEFAULT_WINDOW,
                 horizon: int | None = None) -> DimensionReport:
    """Bounds for the largest ``n`` with a nonzero relative border cohomology group."""
    D = nerve_dimension(space, window, horizon)
    lower, witness = 0, None
    tested, untested = [], []
    for vs in [frozenset()] + list(_family_pairs(space, family)):
        key = tuple(sorted(vs))
        pair = SpacePair(space, vs)
        ok = True
        for n in range(D + 1):
            res = border_cohomology(pair, n, G, window, horizon)
            if not res.stabilized:
                ok = False
                continue
            if not res.group.is_trivial() and n >= lower:
                lower, witness = n, (key, n)
        (tested if ok else untested).append(key)
    return DimensionReport("large", lower, max(D, lower), witness, "lower bound relative to the tested family",
                           tested, untested)


__all__ = [
    "StageSystem", "stage_complex", "stage_map", "group_system", "system_limit", "BorderGroupRequest",
    "border_homology", "border_cohomology", "nerve_dimension", "system_map", "induced_infty",
    "restricted_infty", "inclusion_infty", "ConnectingMap", "boundary_infty", "coboundary_infty",
    "SequenceReport", "pair_sequence", "triple_sequence", "CyclicityReport", "cyclicity",
    "DimensionReport", "cohdim_small", "cohdim_large", "coefficient_moduli", "RationalSpace",
]
