"""Border covers made of star-unions, their refinements, and their nerves.

A member of a cover is the union of the open vertex stars over a finite set
of core vertices.  With this choice every question about intersections,
containment and meeting ``A`` becomes a finite check on the complex:

* a family of star-unions has a common point iff one core vertex per member
  can be chosen so that the chosen vertices span a simplex;
* one star-union lies inside another iff its core is contained in the other core;
* a star-union meets ``|A|`` iff its core contains an ``A``-vertex (``A`` is full).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .simplicial import SimplicialComplex, SimplicialMap, SimplicialPair
from .spaces import ProperModelMap, SpacePair

FAKE_VERTEX = "*"
MAX_MEMBERS = 10_000  # greedy witnesses are polynomial, so the cap only guards memory
MAX_NERVE_SIMPLEX = 16


@dataclass(frozen=True)
class StarUnionSet:
    pair: SpacePair = field(repr=False)
    core: frozenset

    def __post_init__(self):
        object.__setattr__(self, "core", frozenset(self.core))
        unknown = self.core - set(self.pair.space.vertices)
        if unknown:
            raise ValueError(f"star-union uses unknown vertices {sorted(unknown)[:5]}")

    @property
    def is_empty(self) -> bool:
        return not self.core

    def __le__(self, other: "StarUnionSet") -> bool:
        return self.core <= other.core

    def __and__(self, other: "StarUnionSet") -> "StarUnionSet":
        return StarUnionSet(self.pair, self.core & other.core)

    def meets_a(self) -> bool:
        return bool(self.core & self.pair.a_vertices)


@dataclass(frozen=True)
class BorderCover:
    """Finite family of star-unions indexed by strings, with the A-indexed part ``sub_index``."""

    pair: SpacePair = field(repr=False)
    members: Mapping[str, frozenset] = field(hash=False)
    sub_index: frozenset = frozenset()

    def __post_init__(self):
        members = {str(k): frozenset(v) for k, v in dict(self.members).items()}
        object.__setattr__(self, "members", dict(sorted(members.items())))
        object.__setattr__(self, "sub_index", frozenset(self.sub_index))
        if not self.sub_index <= set(members):
            raise ValueError("sub-index set must be a subset of the index set")
        verts = set(self.pair.space.vertices)
        for k, core in members.items():
            if not core <= verts:
                raise ValueError(f"member {k!r} uses unknown vertices {sorted(core - verts)[:5]}")

    def __hash__(self):
        return hash((self.pair, tuple(self.members.items()), self.sub_index))

    @property
    def index(self) -> tuple[str, ...]:
        return tuple(self.members)

    def member(self, k: str) -> StarUnionSet:
        return StarUnionSet(self.pair, self.members[k])

    @cached_property
    def union_core(self) -> frozenset:
        out = set()
        for core in self.members.values():
            out |= core
        return frozenset(out)

    @cached_property
    def enclosure(self) -> SimplicialComplex:
        """Complement of the union: the full subcomplex on vertices in no core."""
        return self.pair.complex.full_subcomplex(v for v in self.pair.space.vertices if v not in self.union_core)

    def is_proper(self) -> bool:
        return self.sub_index == {k for k, c in self.members.items() if c & self.pair.a_vertices}


def is_border_cover(cover: BorderCover) -> tuple[bool, SimplicialComplex]:
    """Check the border-cover conditions and return the enclosure.

    The enclosure must sit inside a finite stage below the horizon (any stage
    for a compact model), and every simplex of ``A`` outside the enclosure
    must touch a core vertex of an ``A``-indexed member.
    """
    space = cover.pair.space
    enc = cover.enclosure
    if space.depth > 0 and any(space.stage[v] >= space.depth for v in enc.vertices):
        return False, enc
    a_cores = set()
    for k in cover.sub_index:
        a_cores |= cover.members[k]
    union = cover.union_core
    for s in cover.pair.a_complex.simplices:
        if union.intersection(s) and not a_cores.intersection(s):
            return False, enc
    return True, enc


@dataclass(frozen=True)
class RefinementWitness:
    finer: BorderCover
    coarser: BorderCover
    projection: Mapping[str, str] = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "projection", dict(self.projection))
        for v, w in self.projection.items():
            if not self.finer.members[v] <= self.coarser.members[w]:
                raise ValueError(f"member {v!r} is not inside member {w!r}")
            if v in self.finer.sub_index and w not in self.coarser.sub_index:
                raise ValueError(f"A-indexed member {v!r} is sent outside the A-index set")
        if set(self.projection) != set(self.finer.members):
            raise ValueError("projection must be defined on the whole index set")


def refines(beta: BorderCover, alpha: BorderCover) -> RefinementWitness | None:
    """Greedy witness that ``beta`` refines ``alpha`` (smallest admissible target index)."""
    if beta.pair != alpha.pair:
        raise ValueError("covers live on different pairs")
    a_verts = beta.pair.a_vertices
    proj = {}
    for v, core in beta.members.items():
        admissible = [w for w, c in alpha.members.items()
                      if core <= c and (v not in beta.sub_index or w in alpha.sub_index)]
        if not admissible:
            return None
        if not core:
            # empty members only matter for the one-vertex nerve; prefer targets that are nerve vertices
            nonempty = [w for w in admissible if alpha.members[w]]
            if v in beta.sub_index:
                nonempty = [w for w in nonempty if alpha.members[w] & a_verts] or nonempty
            admissible = nonempty or admissible
        proj[v] = admissible[0]
    return RefinementWitness(beta, alpha, proj)


def common_refinement(alpha: BorderCover, beta: BorderCover) -> tuple[BorderCover, RefinementWitness, RefinementWitness]:
    """Pairwise intersections indexed by ``"v|w"``; empty intersections are kept."""
    if alpha.pair != beta.pair:
        raise ValueError("covers live on different pairs")
    members, sub = {}, set()
    to_a, to_b = {}, {}
    for v, cv in alpha.members.items():
        for w, cw in beta.members.items():
            k = f"{v}|{w}"
            members[k] = cv & cw
            to_a[k], to_b[k] = v, w
            if v in alpha.sub_index and w in beta.sub_index:
                sub.add(k)
    gamma = BorderCover(alpha.pair, members, frozenset(sub))
    return gamma, RefinementWitness(gamma, alpha, to_a), RefinementWitness(gamma, beta, to_b)


def properize(alpha: BorderCover) -> BorderCover:
    """Strip ``A``-vertices from members outside the A-index set, then index by meeting ``A``."""
    a_verts = alpha.pair.a_vertices
    members = {k: (c if k in alpha.sub_index else c - a_verts) for k, c in alpha.members.items()}
    sub = frozenset(k for k, c in members.items() if c & a_verts)
    return BorderCover(alpha.pair, members, sub)


def preimage_cover(f: ProperModelMap, alpha: BorderCover) -> BorderCover:
    """Pull a cover of the target back along ``f`` (exact for simplicial maps)."""
    if alpha.pair != f.target:
        raise ValueError("cover does not live on the target of the map")
    inverse: dict[str, set] = {}
    for v, w in f.vertex_map.items():
        inverse.setdefault(w, set()).add(v)
    members = {}
    for k, core in alpha.members.items():
        pre = set()
        for w in core:
            pre |= inverse.get(w, set())
        members[k] = frozenset(pre)
    return BorderCover(f.source, members, alpha.sub_index)


def _carrier_simplices(maximal, members: Mapping[str, frozenset]) -> list[tuple[str, ...]]:
    owners: dict[str, list[str]] = {}
    for k, c in members.items():
        for v in c:
            owners.setdefault(v, []).append(k)
    out = []
    for tau in maximal:
        hit = tuple(sorted({k for v in tau for k in owners.get(v, ())}))
        if len(hit) > MAX_NERVE_SIMPLEX:
            raise ValueError(f"nerve simplex with {len(hit)} vertices exceeds the cap")
        if hit:
            out.append(hit)
    return out


def _fake_vertex(cover: BorderCover) -> str:
    return cover.index[0] if cover.index else FAKE_VERTEX


def nerve(cover: BorderCover) -> SimplicialPair:
    """Nerve pair of a cover.

    Members with empty core are dropped.  If no member is left the nerve is
    a single vertex, which lies in the A-part iff ``A`` is nonempty and the
    vertex is A-indexed (or the family is empty).
    """
    if len(cover.members) > MAX_MEMBERS:
        raise ValueError(f"cover has {len(cover.members)} members, above the cap of {MAX_MEMBERS}")
    live = {k: c for k, c in cover.members.items() if c}
    if not live:
        v = _fake_vertex(cover)
        total = SimplicialComplex.from_simplices([(v,)])
        in_a = bool(cover.pair.a_vertices) and (not cover.index or v in cover.sub_index)
        sub = total if in_a else SimplicialComplex.empty()
        return SimplicialPair(total, sub)
    total = SimplicialComplex.from_simplices(_carrier_simplices(cover.pair.complex.maximal_simplices(), live))
    a_live = {k: c for k, c in live.items() if k in cover.sub_index}
    a_max = cover.pair.a_complex.maximal_simplices()
    sub = SimplicialComplex.from_simplices(_carrier_simplices(a_max, a_live))
    return SimplicialPair(total, sub)


def nerve_map(witness: RefinementWitness) -> SimplicialMap:
    """Simplicial map between nerves induced by a refinement projection."""
    src = nerve(witness.finer)
    tgt = nerve(witness.coarser)
    tgt_verts = set(tgt.total.vertices)
    vmap = {}
    for v in src.total.vertices:
        w = witness.projection.get(v)
        if w not in tgt_verts:
            # a fake vertex, or a target that is itself a one-vertex nerve
            w = tgt.total.vertices[0]
        vmap[v] = w
    return SimplicialMap(src, tgt, vmap)


def canonical_nerve_is_full_subcomplex(cover: BorderCover, i: int) -> bool:
    """The stage-``i`` canonical nerve equals the full subcomplex on stage above ``i``."""
    pair = cover.pair
    above = pair.space.vertices_above(i)
    if not above:
        return True
    n = nerve(cover)
    full = pair.complex.full_subcomplex(above)
    return n.total == full and n.sub == full.full_subcomplex(pair.a_vertices & set(above))


__all__ = [
    "StarUnionSet", "BorderCover", "RefinementWitness", "is_border_cover", "refines",
    "common_refinement", "properize", "preimage_cover", "nerve", "nerve_map",
    "canonical_nerve_is_full_subcomplex",
]
