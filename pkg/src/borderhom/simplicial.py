"""Finite simplicial complexes, pairs, maps, and their (co)homology.

Vertices are strings; orientation comes from plain string order.  Relative
chains of a pair use the simplices of the total complex that are not in the
subcomplex as basis.

Homology with explicit generators is computed on a reduced chain complex:
pairs of cells joined by a unit boundary coefficient are cancelled (a chain
homotopy equivalence over Z), and the small complex that is left is handled
by dense Smith normal forms.  The reduction records enough to move chains and
cochains back and forth, so induced maps are computed on honest cycles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .abelian import (
    FgAbGroup,
    GroupHom,
    IntMatrix,
    RationalSpace,
    Rationals,
    Subquotient,
    _snf,
    direct_sum_hom,
    group_from_orders,
    nullspace,
    uct_coefficients,
)

Simplex = tuple  # sorted tuple of vertex ids


def _faces(s: Simplex):
    for i in range(len(s)):
        yield (-1) ** i, s[:i] + s[i + 1:]


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple[str, ...]
    simplices: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        vs = set(self.vertices)
        for s in self.simplices:
            if not s or tuple(sorted(s)) != s or len(set(s)) != len(s):
                raise ValueError(f"simplex {s!r} is not a sorted tuple of distinct vertices")
            if not vs.issuperset(s):
                raise ValueError(f"simplex {s!r} uses unknown vertices")
        for v in self.vertices:
            if (v,) not in self.simplices:
                raise ValueError(f"vertex {v!r} has no 0-simplex")
        for s in self.simplices:
            if len(s) > 1:
                for _, f in _faces(s):
                    if f not in self.simplices:
                        raise ValueError(f"face {f!r} of {s!r} is missing")

    @classmethod
    def from_simplices(cls, simplices: Iterable[Iterable[str]], vertices: Iterable[str] = ()) -> "SimplicialComplex":
        """Face closure of the given simplices (plus isolated vertices)."""
        out = set()
        for s in simplices:
            s = tuple(sorted(set(s)))
            if not s or s in out:
                continue
            for k in range(1, len(s) + 1):
                out.update(combinations(s, k))
        for v in vertices:
            out.add((v,))
        verts = {s[0] for s in out if len(s) == 1}
        return cls(tuple(verts), frozenset(out))

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls((), frozenset())

    @cached_property
    def by_dim(self) -> dict[int, list[Simplex]]:
        out: dict[int, list] = {}
        for s in self.simplices:
            out.setdefault(len(s) - 1, []).append(s)
        return {d: sorted(v) for d, v in sorted(out.items())}

    @property
    def dimension(self) -> int:
        return max(self.by_dim, default=-1)

    def cells(self, d: int) -> list[Simplex]:
        return self.by_dim.get(d, [])

    def __contains__(self, s) -> bool:
        return s in self.simplices

    def full_subcomplex(self, vertex_set) -> "SimplicialComplex":
        vs = set(vertex_set)
        keep = frozenset(s for s in self.simplices if vs.issuperset(s))
        return SimplicialComplex(tuple(v for v in self.vertices if v in vs), keep)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self.simplices <= other.simplices

    @cached_property
    def _maximal(self) -> tuple:
        covered = set()
        for s in self.simplices:
            if len(s) > 1:
                covered.update(f for _, f in _faces(s))
        return tuple(sorted(s for s in self.simplices if s not in covered))

    def maximal_simplices(self) -> list[Simplex]:
        return list(self._maximal)


@dataclass(frozen=True)
class SimplicialPair:
    total: SimplicialComplex
    sub: SimplicialComplex = field(default_factory=SimplicialComplex.empty)

    def __post_init__(self):
        if not self.sub.is_subcomplex_of(self.total):
            raise ValueError("sub is not a subcomplex of total")

    def relative_cells(self, d: int) -> list[Simplex]:
        return [s for s in self.total.cells(d) if s not in self.sub.simplices]


def _orient(image: Sequence[str]) -> tuple[int, Simplex | None]:
    """Sign of the sorting permutation and the sorted simplex (None if degenerate)."""
    if len(set(image)) != len(image):
        return 0, None
    perm = sorted(range(len(image)), key=lambda i: image[i])
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign, tuple(sorted(image))


@dataclass(frozen=True)
class SimplicialMap:
    source: SimplicialPair
    target: SimplicialPair
    vertex_map: Mapping[str, str] = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertex_map", dict(self.vertex_map))
        vm = self.vertex_map
        missing = [v for v in self.source.total.vertices if v not in vm]
        if missing:
            raise ValueError(f"vertex map undefined on {missing[:5]}")
        for s in self.source.total.simplices:
            img = tuple(sorted({vm[v] for v in s}))
            if img not in self.target.total.simplices:
                raise ValueError(f"image of {s!r} is not a simplex of the target")
        for s in self.source.sub.simplices:
            img = tuple(sorted({vm[v] for v in s}))
            if img not in self.target.sub.simplices:
                raise ValueError(f"image of {s!r} is not in the target subcomplex")

    def __call__(self, s: Simplex) -> tuple[int, Simplex | None]:
        return _orient([self.vertex_map[v] for v in s])

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.vertex_map.items()))))

    def then(self, g: "SimplicialMap") -> "SimplicialMap":
        """``g o self``."""
        return SimplicialMap(self.source, g.target, {v: g.vertex_map[w] for v, w in self.vertex_map.items()})


def contiguous(f: SimplicialMap, g: SimplicialMap) -> bool:
    if f.source != g.source or f.target != g.target:
        raise ValueError("contiguity needs maps with the same source and target")
    for part_src, part_tgt in ((f.source.total, f.target.total), (f.source.sub, f.target.sub)):
        for s in part_src.simplices:
            img = tuple(sorted({f.vertex_map[v] for v in s} | {g.vertex_map[v] for v in s}))
            if img not in part_tgt.simplices:
                return False
    return True


def boundary_matrices(pair: SimplicialPair, max_degree: int) -> list[IntMatrix]:
    """Relative boundary matrices ``d_0 .. d_max_degree`` (``d_0`` has no rows)."""
    out = []
    for n in range(max_degree + 1):
        cols = pair.relative_cells(n)
        if n == 0:
            out.append(IntMatrix(0, len(cols)))
            continue
        rows = pair.relative_cells(n - 1)
        index = {s: i for i, s in enumerate(rows)}
        M = IntMatrix(len(rows), len(cols))
        for j, s in enumerate(cols):
            for sign, f in _faces(s):
                i = index.get(f)
                if i is not None:
                    M.data[i][j] += sign
        out.append(M)
    return out


# ---------------------------------------------------------------------------
# Reduced chain complexes


class ReducedComplex:
    """Relative chain complex of a pair after cancelling unit-coefficient cell pairs."""

    def __init__(self, pair: SimplicialPair):
        self.pair = pair
        top = pair.total.dimension
        bd: dict = {}
        cob: dict = {}
        self.cell_dim: dict = {}
        for d in range(top + 1):
            for s in pair.relative_cells(d):
                self.cell_dim[s] = d
                bd[s] = {}
                cob.setdefault(s, {})
        for s, d in self.cell_dim.items():
            if d == 0:
                continue
            for sign, f in _faces(s):
                if f in bd:
                    bd[s][f] = sign
                    cob[f][s] = sign
        self.steps: list = []
        self._reduce(bd, cob, top)
        self.cells: dict[int, list[Simplex]] = {}
        for s in bd:
            self.cells.setdefault(self.cell_dim[s], []).append(s)
        for d in self.cells:
            self.cells[d].sort()
        self.index = {d: {s: i for i, s in enumerate(c)} for d, c in self.cells.items()}
        self._bd = bd

    def _reduce(self, bd, cob, top):
        dim = self.cell_dim
        for k in range(top, 0, -1):
            while True:
                pending = sorted((len(cob[b]), b) for b in bd if dim[b] == k - 1)
                progress = False
                for _, b in pending:
                    if b not in bd:
                        continue
                    cands = [(len(bd[a]), a) for a, c in cob[b].items() if c in (1, -1)]
                    if not cands:
                        continue
                    _, a = min(cands)
                    self._cancel(bd, cob, k, a, b)
                    progress = True
                if not progress:
                    break

    def _cancel(self, bd, cob, k, a, b):
        eps = bd[a][b]
        col_a = dict(bd[a])
        row_b = {y: c for y, c in cob[b].items() if y != a}
        for y, c in row_b.items():
            f = eps * c
            by = bd[y]
            for z, w in col_a.items():
                nv = by.get(z, 0) - f * w
                if nv:
                    by[z] = nv
                    cob[z][y] = nv
                else:
                    by.pop(z, None)
                    cob[z].pop(y, None)
        for z in bd[a]:
            cob[z].pop(a, None)
        for z in cob[a]:
            bd[z].pop(a, None)
        for z in bd[b]:
            cob[z].pop(b, None)
        for z in cob[b]:
            bd[z].pop(b, None)
        del bd[a], cob[a], bd[b], cob[b]
        self.steps.append((k, a, b, eps, col_a, row_b))

    def size(self, d: int) -> int:
        return len(self.cells.get(d, ()))

    def boundary(self, d: int) -> IntMatrix:
        """Reduced boundary ``C'_d -> C'_{d-1}``."""
        cols = self.cells.get(d, [])
        rows = self.cells.get(d - 1, [])
        idx = self.index.get(d - 1, {})
        M = IntMatrix(len(rows), len(cols))
        for j, s in enumerate(cols):
            for f, c in self._bd[s].items():
                M.data[idx[f]][j] = c
        return M

    # chain transport -------------------------------------------------------

    def project_chain(self, chain: Mapping[Simplex, int], d: int) -> list[int]:
        v = {s: c for s, c in chain.items() if c}
        for k, a, b, eps, col_a, _ in self.steps:
            if k == d:
                v.pop(a, None)
            elif k - 1 == d:
                c = v.pop(b, 0)
                if c:
                    for z, w in col_a.items():
                        if z == b:
                            continue
                        nv = v.get(z, 0) - eps * c * w
                        if nv:
                            v[z] = nv
                        else:
                            v.pop(z, None)
        out = [0] * self.size(d)
        idx = self.index.get(d, {})
        for s, c in v.items():
            out[idx[s]] = c
        return out

    def include_chain(self, vec: Sequence[int], d: int) -> dict:
        x = {s: c for s, c in zip(self.cells.get(d, []), vec) if c}
        for k, a, b, eps, col_a, row_b in reversed(self.steps):
            if k == d:
                coef = sum(x.get(y, 0) * r for y, r in row_b.items())
                if coef:
                    x[a] = -eps * coef
        return x

    def restrict_cochain(self, cochain: Mapping[Simplex, int], d: int) -> list[int]:
        """Transpose of the inclusion: evaluate a cochain on the reduced basis."""
        phi = {s: c for s, c in cochain.items() if c}
        for k, a, b, eps, col_a, row_b in self.steps:
            if k == d:
                pa = phi.pop(a, 0)
                if pa:
                    for y, r in row_b.items():
                        nv = phi.get(y, 0) - eps * r * pa
                        if nv:
                            phi[y] = nv
                        else:
                            phi.pop(y, None)
            elif k - 1 == d:
                phi.pop(b, None)
        out = [0] * self.size(d)
        idx = self.index.get(d, {})
        for s, c in phi.items():
            out[idx[s]] = c
        return out

    def extend_cochain(self, vec: Sequence[int], d: int) -> dict:
        """Transpose of the projection: pull a reduced cochain back to all cells."""
        psi = {s: c for s, c in zip(self.cells.get(d, []), vec) if c}
        for k, a, b, eps, col_a, _ in reversed(self.steps):
            if k - 1 == d:
                val = -eps * sum(w * psi.get(z, 0) for z, w in col_a.items() if z != b)
                if val:
                    psi[b] = val
        return psi


@lru_cache(maxsize=2048)
def reduced_complex(pair: SimplicialPair) -> ReducedComplex:
    return ReducedComplex(pair)


# ---------------------------------------------------------------------------
# (Co)homology with generators


def _unit_columns(n: int, m: int) -> list[list[int]]:
    return [[m if i == k else 0 for i in range(n)] for k in range(n)]


class ChainGroup:
    """``H_n`` or ``H^n`` of a pair with ``Z/modulus`` coefficients (0 means Z)."""

    def __init__(self, pair: SimplicialPair, n: int, modulus: int, variant: str):
        if variant not in ("homology", "cohomology"):
            raise ValueError(f"unknown variant {variant!r}")
        self.pair, self.n, self.modulus, self.variant = pair, n, modulus, variant
        if n < 0:
            self.rc = None
            self.sq = Subquotient(0, [], [])
            self.orders = ()
            return
        rc = self.rc = reduced_complex(pair)
        size = rc.size(n)
        d_in = rc.boundary(n)  # C_n -> C_{n-1}
        d_out = rc.boundary(n + 1)  # C_{n+1} -> C_n
        m = modulus
        if variant == "homology":
            test, image = d_in, d_out.columns()
        else:
            test, image = d_out.transpose(), d_in.transpose().columns()
        if m:
            image = image + _unit_columns(size, m)
            big = IntMatrix(test.rows, size + test.rows,
                            [row + [m if i == k else 0 for k in range(test.rows)] for i, row in enumerate(test.data)])
            cycles = [v[:size] for v in nullspace(big)]
        else:
            cycles = nullspace(test)
        self.sq = Subquotient(size, cycles, image)
        self.orders = self.sq.orders

    @property
    def group(self) -> FgAbGroup:
        return group_from_orders(self.orders)

    def coords(self, element: Mapping[Simplex, int]) -> list[int]:
        if self.rc is None:
            return []
        if self.variant == "homology":
            vec = self.rc.project_chain(element, self.n)
        else:
            vec = self.rc.restrict_cochain(element, self.n)
        if self.modulus:
            vec = [x % self.modulus for x in vec]
        return self.sq.coords(vec)

    def lift(self, k: int) -> dict:
        vec = self.sq.lift(k)
        if self.variant == "homology":
            return self.rc.include_chain(vec, self.n)
        return self.rc.extend_cochain(vec, self.n)


def coefficient_moduli(G) -> tuple[int, ...]:
    if isinstance(G, Rationals):
        return (0,)
    if isinstance(G, FgAbGroup):
        return G.orders
    raise ValueError(f"unsupported coefficient group {G!r}")


@lru_cache(maxsize=8192)
def chain_group(pair: SimplicialPair, n: int, modulus: int, variant: str) -> ChainGroup:
    return ChainGroup(pair, n, modulus, variant)


def chain_groups(pair: SimplicialPair, n: int, G, variant: str) -> list[ChainGroup]:
    return [chain_group(pair, n, m, variant) for m in coefficient_moduli(G)]


def _integral_groups(pair: SimplicialPair, n: int) -> tuple[FgAbGroup, FgAbGroup]:
    h = chain_group(pair, n, 0, "homology").group
    h1 = chain_group(pair, n - 1, 0, "homology").group
    return h, h1


def homology(pair: SimplicialPair, n: int, G):
    """``H_n(total, sub; G)`` from integral groups and universal coefficients."""
    if n < 0:
        return RationalSpace(0) if isinstance(G, Rationals) else FgAbGroup()
    return uct_coefficients(*_integral_groups(pair, n), G, "homology")


def cohomology(pair: SimplicialPair, n: int, G):
    if n < 0:
        return RationalSpace(0) if isinstance(G, Rationals) else FgAbGroup()
    return uct_coefficients(*_integral_groups(pair, n), G, "cohomology")


def homology_mod2_dimension(pair: SimplicialPair, n: int) -> int:
    """Dimension of ``H_n(total, sub; Z/2)`` by rank computations over GF(2).

    Independent of the Smith normal form path; used as a cross-check.
    """

    def rank2(d: int) -> int:
        if d <= 0:
            return 0
        rows = {s: i for i, s in enumerate(pair.relative_cells(d - 1))}
        vecs = []
        for s in pair.relative_cells(d):
            bits = 0
            for _, f in _faces(s):
                if f in rows:
                    bits ^= 1 << rows[f]
            vecs.append(bits)
        pivots: dict[int, int] = {}
        rank = 0
        for v in vecs:
            while v:
                top = v.bit_length() - 1
                if top in pivots:
                    v ^= pivots[top]
                else:
                    pivots[top] = v
                    rank += 1
                    break
        return rank

    if n < 0:
        return 0
    return len(pair.relative_cells(n)) - rank2(n) - rank2(n + 1)


# ---------------------------------------------------------------------------
# Maps


def push_chain(f: SimplicialMap, chain: Mapping[Simplex, int]) -> dict:
    out: dict = {}
    sub = f.target.sub.simplices
    for s, c in chain.items():
        sign, img = f(s)
        if img is None or img in sub:
            continue
        nv = out.get(img, 0) + sign * c
        if nv:
            out[img] = nv
        else:
            out.pop(img, None)
    return out


def pull_cochain(f: SimplicialMap, cochain: Mapping[Simplex, int], n: int) -> dict:
    out = {}
    for s in f.source.relative_cells(n):
        sign, img = f(s)
        if img is None:
            continue
        c = cochain.get(img, 0)
        if c:
            out[s] = sign * c
    return out


def _induced_one(f: SimplicialMap, n: int, modulus: int, variant: str) -> GroupHom:
    src = chain_group(f.source, n, modulus, variant)
    tgt = chain_group(f.target, n, modulus, variant)
    if variant == "homology":
        cols = [tgt.coords(push_chain(f, src.lift(k))) for k in range(len(src.orders))]
        return GroupHom.from_columns(src.orders, tgt.orders, cols)
    cols = [src.coords(pull_cochain(f, tgt.lift(k), n)) for k in range(len(tgt.orders))]
    return GroupHom.from_columns(tgt.orders, src.orders, cols)


def induced_hom(f: SimplicialMap, n: int, G, variant: str = "homology") -> GroupHom:
    """Map on ``H_n`` (covariant) or ``H^n`` (contravariant) induced by ``f``."""
    if n < 0:
        return GroupHom.zero((), ())
    return direct_sum_hom([_induced_one(f, n, m, variant) for m in coefficient_moduli(G)])


def _triple_connecting_one(X, A, B, n, modulus, variant) -> GroupHom:
    """Connecting map of the triple ``B <= A <= X`` for one cyclic coefficient."""
    upper = SimplicialPair(X, A)
    lower = SimplicialPair(A, B)
    in_b = B.simplices
    in_a = A.simplices
    if variant == "homology":
        src = chain_group(upper, n, modulus, variant)
        tgt = chain_group(lower, n - 1, modulus, variant)
        cols = []
        for k in range(len(src.orders)):
            z = src.lift(k)
            bz: dict = {}
            for s, c in z.items():
                for sign, face in _faces(s):
                    if face in in_a and face not in in_b:
                        bz[face] = bz.get(face, 0) + sign * c
            cols.append(tgt.coords(bz))
        return GroupHom.from_columns(src.orders, tgt.orders, cols)
    src = chain_group(lower, n - 1, modulus, variant)
    tgt = chain_group(upper, n, modulus, variant)
    cols = []
    for k in range(len(src.orders)):
        phi = src.lift(k)
        dphi = {}
        for s in upper.relative_cells(n):
            v = sum(sign * phi.get(face, 0) for sign, face in _faces(s))
            if v:
                dphi[s] = v
        cols.append(tgt.coords(dphi))
    return GroupHom.from_columns(src.orders, tgt.orders, cols)


def triple_connecting(X: SimplicialComplex, A: SimplicialComplex, B: SimplicialComplex, n: int, G, variant: str) -> GroupHom:
    """``H_n(X,A) -> H_{n-1}(A,B)``, or ``H^{n-1}(A,B) -> H^n(X,A)`` for cohomology."""
    if n < 1 and variant == "homology":
        src = chain_groups(SimplicialPair(X, A), n, G, variant)
        return GroupHom.zero(sum((c.orders for c in src), ()), ())
    if n < 1:
        tgt = chain_groups(SimplicialPair(X, A), n, G, variant)
        return GroupHom.zero((), sum((c.orders for c in tgt), ()))
    return direct_sum_hom([_triple_connecting_one(X, A, B, n, m, variant) for m in coefficient_moduli(G)])


def pair_connecting(pair: SimplicialPair, n: int, G, variant: str = "homology") -> GroupHom:
    """``H_n(X,A) -> H_{n-1}(A)``, or ``H^{n-1}(A) -> H^n(X,A)``."""
    return triple_connecting(pair.total, pair.sub, SimplicialComplex.empty(), n, G, variant)


def group_orders(pair: SimplicialPair, n: int, G, variant: str) -> tuple[int, ...]:
    return sum((c.orders for c in chain_groups(pair, n, G, variant)), ())
