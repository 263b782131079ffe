"""Inverse and direct limits of stage-indexed group systems, with certificates.

Only stabilized verdicts produce a group.  An inverse system (tower) is
stabilized at stage ``s`` when, for every ``k`` in ``s..s+window``, the images
of ``G_j -> G_k`` agree for ``window`` consecutive ``j > k`` (the stable
image), and the tower maps between consecutive stable images are
isomorphisms.  A direct system (chain) is
stabilized at ``s`` when ``window`` consecutive maps starting at ``s`` are
isomorphisms.  Anything else is reported as inconclusive.

Elements of a stabilized inverse limit are represented by the stable image at
``s``; elements of a stabilized direct limit by the group at ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .abelian import (
    FgAbGroup,
    GroupHom,
    IntMatrix,
    Lattice,
    RationalSpace,
    Subquotient,
    _relation_columns,
    _reduce_vec,
    _snf,
    group_from_orders,
    nullspace,
    solve,
)

DEFAULT_WINDOW = 3


class Inconclusive(Exception):
    """A limit or limit map could not be certified within the horizon."""


@dataclass
class GroupSystem:
    """Stage groups (as generator orders) and the maps between consecutive stages.

    ``kind`` is ``"inverse"`` (``maps[i]: G_{i+1} -> G_i``) or ``"direct"``
    (``maps[i]: G_i -> G_{i+1}``).  With ``rational`` set the groups are read
    after tensoring with Q, using only their free parts.
    """

    kind: str
    stages: list[tuple[int, ...]]
    maps: list[GroupHom]
    rational: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.kind not in ("inverse", "direct"):
            raise ValueError(f"unknown system kind {self.kind!r}")
        self.stages = [tuple(s.orders) if isinstance(s, FgAbGroup) else tuple(s) for s in self.stages]
        if not self.stages:
            raise ValueError("system needs at least one stage")
        if len(self.maps) != len(self.stages) - 1:
            raise ValueError("need exactly one map between consecutive stages")
        for i, h in enumerate(self.maps):
            src, tgt = (self.stages[i + 1], self.stages[i]) if self.kind == "inverse" else (self.stages[i], self.stages[i + 1])
            if h.source_orders != src or h.target_orders != tgt:
                raise ValueError(f"map {i} does not match its stages")

    def __len__(self) -> int:
        return len(self.stages)

    def composite(self, i: int, j: int) -> GroupHom:
        """Inverse: ``G_j -> G_i``; direct: ``G_i -> G_j`` (``i <= j``)."""
        if i > j:
            raise ValueError("composite needs i <= j")
        key = (i, j)
        if key not in self._cache:
            if i == j:
                h = GroupHom.identity(self.stages[i])
            elif self.kind == "inverse":
                h = self.composite(i, j - 1).compose(self.maps[j - 1])
            else:
                h = self.maps[j - 1].compose(self.composite(i, j - 1))
            self._cache[key] = h
        return self._cache[key]


def GroupTower(stages, maps, rational=False) -> GroupSystem:
    return GroupSystem("inverse", list(stages), list(maps), rational)


def GroupChain(stages, maps, rational=False) -> GroupSystem:
    return GroupSystem("direct", list(stages), list(maps), rational)


@dataclass
class LimitResult:
    verdict: str
    group: object
    stable_stage: int | None
    window: int
    system: GroupSystem = field(repr=False)
    note: str = ""
    stable: dict = field(default_factory=dict, repr=False)
    quotient: Subquotient | None = field(default=None, repr=False)

    @property
    def stabilized(self) -> bool:
        return self.verdict == "stabilized"

    @property
    def orders(self) -> tuple[int, ...]:
        """Generator orders of the limit, in the coordinates used by limit maps."""
        self.require()
        if self.system.kind == "inverse":
            return self.quotient.orders
        return self.system.stages[self.stable_stage]

    def require(self) -> "LimitResult":
        if not self.stabilized:
            raise Inconclusive(self.note or "limit did not stabilize")
        return self

    # transport helpers -------------------------------------------------

    def element_at(self, coords: Sequence[int], k: int) -> list[int]:
        """Stage-``k`` component of a limit element given in limit coordinates."""
        self.require()
        s, sys = self.stable_stage, self.system
        if sys.kind == "inverse":
            vec = [0] * len(sys.stages[s])
            for t, c in enumerate(coords):
                if c:
                    vec = [a + c * b for a, b in zip(vec, self.quotient.lift(t))]
            vec = _reduce_vec(vec, sys.stages[s])
            if k <= s:
                return sys.composite(k, s)(vec)
            for m in range(s + 1, k + 1):
                vec = _lift_through(sys.maps[m - 1], self.stable[m], vec)
            return vec
        vec = list(coords)
        if k >= s:
            return sys.composite(s, k)(vec)
        raise Inconclusive("direct limit elements are not defined below the stable stage")

    def coords_of(self, vec: Sequence[int], k: int) -> list[int]:
        """Limit coordinates of a stage-``k`` element (``k`` in the certified range)."""
        self.require()
        s, sys, w = self.stable_stage, self.system, self.window
        if sys.kind == "inverse":
            if not s <= k <= s + w:
                raise Inconclusive(f"stage {k} is outside the certified range {s}..{s + w}")
            if self.stable[k].coords(list(vec)) is None:
                raise Inconclusive(f"element at stage {k} is not in the stable image")
            down = sys.composite(s, k)(vec)
            return self.quotient.coords(down)
        if k < s:
            return sys.composite(k, s)(vec)
        if k > s + w:
            raise Inconclusive(f"stage {k} is beyond the certified range {s}..{s + w}")
        vec = list(vec)
        for m in range(k, s, -1):
            vec = _invert_through(sys.maps[m - 1], vec)
        return _reduce_vec(vec, sys.stages[s])


def _lift_through(h: GroupHom, target_lattice: Lattice, y: Sequence[int]) -> list[int]:
    """Some ``x`` in ``target_lattice`` (a lattice in the source of ``h``) with ``h(x) = y``."""
    basis = target_lattice.basis
    rel = _relation_columns(h.target_orders)
    cols = [h.matrix.apply(b) for b in basis] + rel
    M = IntMatrix.from_columns(cols, len(h.target_orders))
    sol = solve(M, list(y))
    if sol is None:
        raise Inconclusive("element does not lift through the stable image")
    x = [0] * len(h.source_orders)
    for c, b in zip(sol, basis):
        if c:
            x = [a + c * v for a, v in zip(x, b)]
    return _reduce_vec(x, h.source_orders)


def _invert_through(h: GroupHom, y: Sequence[int]) -> list[int]:
    """Preimage of ``y`` under an isomorphism ``h``."""
    src = len(h.source_orders)
    cols = h.matrix.columns() + _relation_columns(h.target_orders)
    sol = solve(IntMatrix.from_columns(cols, len(h.target_orders)), list(y))
    if sol is None:
        raise Inconclusive("element is not in the image of a certified isomorphism")
    return _reduce_vec(sol[:src], h.source_orders)


# ---------------------------------------------------------------------------
# Rational helpers


def _free_block(h: GroupHom) -> IntMatrix:
    rows = [i for i, o in enumerate(h.target_orders) if o == 0]
    cols = [j for j, o in enumerate(h.source_orders) if o == 0]
    return IntMatrix(len(rows), len(cols), [[h.matrix.data[i][j] for j in cols] for i in rows])


def _rank(M: IntMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return _snf(M).rank


# ---------------------------------------------------------------------------
# Limits


def _image(sys: GroupSystem, i: int, j: int) -> Lattice:
    key = ("img", i, j)
    if key not in sys._cache:
        sys._cache[key] = sys.composite(i, j).image_lattice()
    return sys._cache[key]


def _restricted_injective(h: GroupHom, sub: Lattice) -> bool:
    """Is ``h`` injective on the subgroup ``sub`` (which contains the source relations)?"""
    basis = sub.basis
    rel_t = _relation_columns(h.target_orders)
    cols = [h.matrix.apply(b) for b in basis] + rel_t
    M = IntMatrix.from_columns(cols, len(h.target_orders))
    src_rel = Lattice(len(h.source_orders), _relation_columns(h.source_orders))
    for c in nullspace(M):
        x = [0] * len(h.source_orders)
        for coef, b in zip(c[: len(basis)], basis):
            if coef:
                x = [a + coef * v for a, v in zip(x, b)]
        if x not in src_rel:
            return False
    return True


def _stable_image(sys: GroupSystem, k: int, w: int) -> Lattice | None:
    """First run of ``w`` equal images ``Im(G_j -> G_k)``, ``j > k``, inside the horizon."""
    for j0 in range(k + 1, len(sys) - w + 1):
        first = _image(sys, k, j0)
        if all(_image(sys, k, j) == first for j in range(j0 + 1, j0 + w)):
            return first
    return None


def _inverse_stable_at(sys: GroupSystem, i: int, w: int) -> dict | None:
    stable = {}
    for k in range(i, i + w + 1):
        lat = _stable_image(sys, k, w)
        if lat is None:
            return None
        stable[k] = lat
    for k in range(i, i + w):
        # p_k maps S_{k+1} onto S_k and is injective there
        h = sys.maps[k]
        pushed = Lattice(len(h.target_orders), [h.matrix.apply(b) for b in stable[k + 1].basis]
                         + _relation_columns(h.target_orders))
        if pushed != stable[k]:
            return None
        if not _restricted_injective(h, stable[k + 1]):
            return None
    return stable


def _rational_inverse_stable_at(sys: GroupSystem, i: int, w: int) -> int | None:
    def r(a, b):
        return _rank(_free_block(sys.composite(a, b)))

    # over Q, images are subspaces and equal ranks along a chain of images mean equal images
    dims, ends = {}, {}
    for k in range(i, i + w + 1):
        for j0 in range(k + 1, len(sys) - w + 1):
            ranks = {r(k, j) for j in range(j0, j0 + w)}
            if len(ranks) == 1:
                dims[k], ends[k] = ranks.pop(), j0
                break
        else:
            return None
    for k in range(i, i + w):
        # p_k(S_{k+1}) is an image of G_{k+1}'s composite; images at stage k are nested,
        # so equal dimensions mean p_k carries S_{k+1} isomorphically onto S_k
        if not (r(k, ends[k + 1]) == dims[k] == dims[k + 1]):
            return None
    return dims[i]


def inverse_limit(t: GroupSystem, window: int = DEFAULT_WINDOW) -> LimitResult:
    if window < 1:
        raise ValueError("window must be at least 1")
    if t.kind != "inverse":
        raise ValueError("inverse_limit needs a tower")
    n = len(t)
    for i in range(0, n - 2 * window):  # needs stages i..i+2*window
        if t.rational:
            dim = _rational_inverse_stable_at(t, i, window)
            if dim is not None:
                return LimitResult("stabilized", RationalSpace(dim), i, window, t)
            continue
        stable = _inverse_stable_at(t, i, window)
        if stable is not None:
            rel = _relation_columns(t.stages[i])
            q = Subquotient(len(t.stages[i]), stable[i].basis + rel, rel)
            return LimitResult("stabilized", q.group, i, window, t, stable=stable, quotient=q)
    return LimitResult("inconclusive", None, None, window, t,
                       note=f"no stable image within {n} stages (needs {2 * window + 1} from the stable stage)")


def direct_limit(c: GroupSystem, window: int = DEFAULT_WINDOW) -> LimitResult:
    if window < 1:
        raise ValueError("window must be at least 1")
    if c.kind != "direct":
        raise ValueError("direct_limit needs a chain")
    n = len(c)

    def iso(k: int) -> bool:
        h = c.maps[k]
        if c.rational:
            M = _free_block(h)
            return M.rows == M.cols and _rank(M) == M.rows
        return h.is_iso()

    for s in range(0, n - window):
        if all(iso(k) for k in range(s, s + window)):
            if c.rational:
                return LimitResult("stabilized", RationalSpace(c.stages[s].count(0)), s, window, c)
            return LimitResult("stabilized", group_from_orders(c.stages[s]), s, window, c)
    return LimitResult("inconclusive", None, None, window, c,
                       note=f"no run of {window} isomorphisms within {n} stages")


def limit_map(
    stagewise: Callable[[int], GroupHom],
    reindex: Callable[[int], int],
    source: LimitResult,
    target: LimitResult,
    check_commutes: bool = True,
) -> GroupHom:
    """Homomorphism between stabilized limits induced by a map of systems.

    For towers ``stagewise(k)`` maps source stage ``reindex(k)`` to target
    stage ``k``; for chains it maps source stage ``k`` to target stage
    ``reindex(k)``.  Raises :class:`Inconclusive` when either limit is not
    stabilized or the map cannot be evaluated inside the certified ranges.
    """
    source.require()
    target.require()
    ss, ts = source.system, target.system
    if ss.kind != ts.kind:
        raise ValueError("systems of different kinds")
    if ss.rational or ts.rational:
        raise Inconclusive("limit maps are computed for finitely generated coefficients only")
    w = min(source.window, target.window)
    if ss.kind == "inverse":
        k = None
        for cand in range(target.stable_stage, target.stable_stage + target.window + 1):
            j = reindex(cand)
            if 0 <= j < len(ss) and j <= source.stable_stage + source.window:
                k = cand
                break
        if k is None:
            raise Inconclusive("no target stage whose source stage lies in the certified range")
        if check_commutes:
            for a in range(k, min(k + w, target.stable_stage + target.window)):
                ja, jb = reindex(a), reindex(a + 1)
                if jb >= len(ss):
                    break
                left = stagewise(a).compose(ss.composite(ja, jb))
                right = ts.maps[a].compose(stagewise(a + 1))
                if left != right:
                    raise ValueError(f"stagewise maps do not commute with the tower maps at stage {a}")
        f = stagewise(k)
        j = reindex(k)
        cols = [target.coords_of(f(source.element_at(e, j)), k) for e in _unit_vectors(len(source.orders))]
        return GroupHom.from_columns(source.orders, target.orders, cols)
    # direct systems
    k = None
    for cand in range(source.stable_stage, source.stable_stage + source.window + 1):
        j = reindex(cand)
        if 0 <= j < len(ts) and j <= target.stable_stage + target.window:
            k = cand
            break
    if k is None:
        raise Inconclusive("no source stage whose target stage lies in the certified range")
    if check_commutes:
        for a in range(k, min(k + w, source.stable_stage + source.window)):
            ja, jb = reindex(a), reindex(a + 1)
            if jb >= len(ts):
                break
            left = stagewise(a + 1).compose(ss.maps[a])
            right = ts.composite(ja, jb).compose(stagewise(a))
            if left != right:
                raise ValueError(f"stagewise maps do not commute with the chain maps at stage {a}")
    f = stagewise(k)
    j = reindex(k)
    cols = [target.coords_of(f(source.element_at(e, k)), j) for e in _unit_vectors(len(source.orders))]
    return GroupHom.from_columns(source.orders, target.orders, cols)


def _unit_vectors(n: int) -> list[list[int]]:
    return IntMatrix.identity(n).columns()
