"""Filtered simplicial models of non-compact spaces.

A space is a finite simplicial complex together with a stage for every
vertex.  Stage-bounded pieces stand in for compact subsets, and the largest
stage (the depth) is the computational horizon.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .simplicial import SimplicialComplex, SimplicialMap, SimplicialPair

EXAMPLES = ("point", "compact_triangle", "line", "ray", "plane", "cylinder", "two_rays_wedge")


@dataclass(frozen=True)
class FilteredSpace:
    """A complex with vertex stages.

    ``depth`` is the horizon; it defaults to the largest stage.  A space whose
    stages all stay below a positive horizon lies inside a finite stage and
    is therefore compact in the model.
    """

    complex: SimplicialComplex
    stage: Mapping[str, int] = field(hash=False)
    depth: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "stage", dict(self.stage))
        top = max(self.stage.values(), default=0)
        if self.depth is None:
            object.__setattr__(self, "depth", top)
        elif self.depth < top:
            raise ValueError(f"depth {self.depth} is below the largest stage {top}")
        verts = set(self.complex.vertices)
        if set(self.stage) != verts:
            raise ValueError("stage map must cover exactly the vertices")
        for v, k in self.stage.items():
            if not isinstance(k, int) or isinstance(k, bool) or k < 0:
                raise ValueError(f"stage of {v!r} must be a nonnegative integer")

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.complex, tuple(sorted(self.stage.items())), self.depth))
            self.__dict__["_hash"] = h
        return h

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.complex.vertices

    @property
    def max_stage(self) -> int:
        return max(self.stage.values(), default=0)

    @property
    def is_compact(self) -> bool:
        return self.depth == 0 or self.max_stage < self.depth

    def stage_count(self, window: int) -> int:
        """Number of canonical cover stages available for limits.

        Compact models repeat the empty cover forever, so they get enough
        stages for any window; otherwise the horizon is the limit.
        """
        if self.is_compact:
            return max(self.depth, self.max_stage + 1 + 2 * window)
        return self.depth

    def vertices_above(self, i: int) -> list[str]:
        return [v for v in self.vertices if self.stage[v] > i]

    def vertices_upto(self, i: int) -> list[str]:
        return [v for v in self.vertices if self.stage[v] <= i]

    @cached_property
    def neighbours(self) -> dict[str, set[str]]:
        out = {v: set() for v in self.vertices}
        for s in self.complex.cells(1):
            a, b = s
            out[a].add(b)
            out[b].add(a)
        return out


@dataclass(frozen=True)
class SpacePair:
    space: FilteredSpace
    a_vertices: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "a_vertices", frozenset(self.a_vertices))
        unknown = self.a_vertices - set(self.space.vertices)
        if unknown:
            raise ValueError(f"A uses unknown vertices {sorted(unknown)[:5]}")

    @property
    def complex(self) -> SimplicialComplex:
        return self.space.complex

    @cached_property
    def a_complex(self) -> SimplicialComplex:
        return self.space.complex.full_subcomplex(self.a_vertices)

    @property
    def depth(self) -> int:
        return self.space.depth

    def with_a(self, a_vertices: Iterable[str]) -> "SpacePair":
        return SpacePair(self.space, frozenset(a_vertices))

    def a_space(self) -> "SpacePair":
        """``(A, empty)`` as a pair in its own right."""
        sub = self.a_complex
        return SpacePair(FilteredSpace(sub, {v: self.space.stage[v] for v in sub.vertices}, self.space.depth))

    def simplicial_pair(self) -> SimplicialPair:
        return SimplicialPair(self.complex, self.a_complex)


@dataclass(frozen=True)
class ProperModelMap:
    """Simplicial map of space pairs that pulls finite stages back into finite stages.

    ``bound[k]`` is the largest source stage among vertices sent to target
    stage at most ``k`` (-1 when there are none).
    """

    source: SpacePair
    target: SpacePair
    vertex_map: Mapping[str, str] = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertex_map", dict(self.vertex_map))
        # raises on non-simplicial maps or A not landing in B
        SimplicialMap(self.source.simplicial_pair(), self.target.simplicial_pair(), self.vertex_map)
        src, tgt = self.source.space, self.target.space
        bound = []
        for k in range(tgt.depth + 1):
            pre = [src.stage[v] for v, w in self.vertex_map.items() if tgt.stage[w] <= k]
            bound.append(max(pre, default=-1))
        object.__setattr__(self, "bound", tuple(bound))
        # A finite stage must not pull back onto the horizon of a non-compact source.
        limit = tgt.depth if tgt.depth > 0 else 1
        if not src.is_compact:
            for k in range(limit):
                if bound[k] >= src.depth:
                    raise ValueError(f"map is not proper: target stage {k} pulls back to the source horizon")

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.vertex_map.items()))))

    def __call__(self, v: str) -> str:
        return self.vertex_map[v]

    def stage_bound(self, k: int) -> int:
        """Source stage bound for target stage ``k`` (clamped to be nonnegative)."""
        k = min(k, len(self.bound) - 1)
        return max(self.bound[k], 0)

    def then(self, g: "ProperModelMap") -> "ProperModelMap":
        """``g o self``."""
        return ProperModelMap(self.source, g.target, {v: g.vertex_map[w] for v, w in self.vertex_map.items()})

    @classmethod
    def identity(cls, pair: SpacePair) -> "ProperModelMap":
        return cls(pair, pair, {v: v for v in pair.space.vertices})


def make_space(simplices, stage: Mapping[str, int], a_vertices=()) -> SpacePair:
    cx = SimplicialComplex.from_simplices(simplices, vertices=stage.keys())
    return SpacePair(FilteredSpace(cx, stage), frozenset(a_vertices))


def generate_example(name: str, depth: int) -> SpacePair:
    """Deterministic fixture models; ``depth`` is the truncation horizon."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    d = depth
    if name == "point":
        return make_space([], {"0": 0})
    if name == "compact_triangle":
        return make_space([("0", "1"), ("1", "2"), ("0", "2")], {"0": 0, "1": 0, "2": 0})
    if name == "line":
        stage = {str(v): abs(v) for v in range(-d, d + 1)}
        return make_space([(str(v), str(v + 1)) for v in range(-d, d)], stage)
    if name == "ray":
        stage = {str(v): v for v in range(d + 1)}
        return make_space([(str(v), str(v + 1)) for v in range(d)], stage)
    if name == "two_rays_wedge":
        stage = {"0": 0}
        edges = []
        for arm in "ab":
            prev = "0"
            for k in range(1, d + 1):
                stage[f"{arm}{k}"] = k
                edges.append((prev, f"{arm}{k}"))
                prev = f"{arm}{k}"
        return make_space(edges, stage)
    if name == "plane":
        def p(x, y):
            return f"{x},{y}"

        stage = {p(x, y): max(abs(x), abs(y)) for x in range(-d, d + 1) for y in range(-d, d + 1)}
        tris = []
        for x in range(-d, d):
            for y in range(-d, d):
                tris.append((p(x, y), p(x + 1, y), p(x + 1, y + 1)))
                tris.append((p(x, y), p(x, y + 1), p(x + 1, y + 1)))
        return make_space(tris, stage)
    if name == "cylinder":
        around = 4

        def c(k, h):
            return f"{k % around},{h}"

        stage = {c(k, h): abs(h) for k in range(around) for h in range(-d, d + 1)}
        tris = []
        for k in range(around):
            for h in range(-d, d):
                tris.append((c(k, h), c(k + 1, h), c(k + 1, h + 1)))
                tris.append((c(k, h), c(k, h + 1), c(k + 1, h + 1)))
        return make_space(tris, stage)
    raise ValueError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")


def canonical_cover(pair: SpacePair, i: int):
    """Stage-``i`` cover: the open star of every vertex of stage above ``i``."""
    from .covers import BorderCover

    depth = pair.depth
    if i < 0 or (not pair.space.is_compact and i >= depth):
        raise ValueError(f"stage {i} out of range for depth {depth}")
    members = {v: frozenset([v]) for v in pair.space.vertices_above(i)}
    sub = frozenset(v for v in members if v in pair.a_vertices)
    return BorderCover(pair, members, sub)


def closed_subpair(pair: SpacePair, vertex_set: Iterable[str]) -> tuple[SpacePair, ProperModelMap]:
    """Full subcomplex on ``vertex_set`` with inherited stages, plus its inclusion."""
    vs = set(vertex_set)
    unknown = vs - set(pair.space.vertices)
    if unknown:
        raise ValueError(f"unknown vertices {sorted(unknown)[:5]}")
    sub = pair.complex.full_subcomplex(vs)
    space = FilteredSpace(sub, {v: pair.space.stage[v] for v in sub.vertices}, pair.space.depth)
    out = SpacePair(space, pair.a_vertices & vs)
    return out, ProperModelMap(out, pair, {v: v for v in sub.vertices})


def excise(pair: SpacePair, core_vertices: Iterable[str]) -> tuple[SpacePair, ProperModelMap]:
    """Remove the open star-union on ``core_vertices``.

    Every core vertex and each of its neighbours must lie in ``A``.
    """
    core = set(core_vertices)
    for u in sorted(core):
        if u not in pair.a_vertices:
            raise ValueError(f"excision core vertex {u!r} is not in A")
        for w in sorted(pair.space.neighbours[u]):
            if w not in pair.a_vertices:
                raise ValueError(f"excision core vertex {u!r} has neighbour {w!r} outside A")
    keep = [v for v in pair.space.vertices if v not in core]
    return closed_subpair(pair, keep)


def example_sectors(name: str, depth: int) -> list[frozenset]:
    """Vertex sets of fixture models that look the same at every stage (half-lines, quadrants, strips).

    Unions of sectors give closed subcomplexes whose stage nerves stop
    changing after the first stage, so their limits stabilize early.
    """
    d = depth
    if name in ("point", "compact_triangle"):
        return []
    if name == "line":
        return [frozenset(str(v) for v in range(-d, 0)), frozenset(str(v) for v in range(1, d + 1))]
    if name == "ray":
        return [frozenset(str(v) for v in range(1, d + 1))]
    if name == "two_rays_wedge":
        return [frozenset(f"{arm}{k}" for k in range(1, d + 1)) for arm in "ab"]
    if name == "plane":
        out = []
        for sx in (1, -1):
            for sy in (1, -1):
                out.append(frozenset(f"{sx * x},{sy * y}" for x in range(d + 1) for y in range(d + 1) if x or y))
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            out.append(frozenset(f"{dx * k},{dy * k}" for k in range(1, d + 1)))
        return out
    if name == "cylinder":
        out = []
        for sign in (1, -1):
            out.append(frozenset(f"{k},{sign * h}" for k in range(4) for h in range(1, d + 1)))
            for k in range(4):
                out.append(frozenset(f"{k},{sign * h}" for h in range(1, d + 1)))
        return out
    raise ValueError(f"unknown example {name!r}")


def random_closed_subpair(pair: SpacePair, rng: random.Random, sectors=None, with_a: bool = True) -> SpacePair:
    """Seeded random closed pair ``(X', A')`` inside ``pair``.

    ``X'`` is a union of random sectors plus random stage-0 and stage-1
    vertices; ``A'`` is built the same way inside ``X'``.  Both are full
    subcomplexes, so the result is a well-formed closed pair.
    """
    space = pair.space
    low = [v for v in space.vertices if space.stage[v] <= 1]
    sectors = list(sectors or [])

    def pick(allowed: set[str]) -> set[str]:
        chosen: set[str] = set()
        for sec in sectors:
            if rng.random() < 0.5:
                chosen |= sec & allowed
        chosen |= {v for v in low if v in allowed and rng.random() < 0.5}
        return chosen

    x_verts = pick(set(space.vertices)) or {rng.choice(space.vertices)}
    sub, _ = closed_subpair(pair.with_a(()), x_verts)
    if not with_a:
        return sub
    return sub.with_a(pick(x_verts))
