"""Exact arithmetic for finitely generated abelian groups.

Everything here works over Python integers; there is no floating point.
Groups are kept in invariant-factor form ``Z^r + Z/d1 + ... + Z/dk`` with
``d1 | d2 | ... | dk`` and every ``di >= 2``.  Homomorphisms act on explicit
generator lists described by their orders (0 meaning infinite order), so a
map between direct sums does not have to be rewritten in canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence


class IntMatrix:
    """Dense integer matrix with explicit shape (so 0 x n and n x 0 are distinct)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            data = [[0] * cols for _ in range(rows)]
        else:
            data = [[int(x) for x in row] for row in data]
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("matrix entries do not match the declared shape")
        self.data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        data = [[col[i] for col in columns] for i in range(rows)]
        return cls(rows, len(columns), data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def column(self, j: int) -> list[int]:
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, [self.column(j) for j in range(self.cols)])

    T = property(transpose)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns()
        out = [[sum(a * b for a, b in zip(row, col) if a) for col in ocols] for row in self.data]
        return IntMatrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match matrix")
        return [sum(a * b for a, b in zip(row, vec) if a) for row in self.data]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(map(tuple, self.data))))

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}, {self.cols}, {self.data})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]


def determinant(m: IntMatrix) -> int:
    """Bareiss fraction-free determinant."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class _SNF:
    U: list
    Uinv: list
    D: list
    V: list
    Vinv: list
    diag: list  # nonzero diagonal entries, in order
    rows: int
    cols: int

    @property
    def rank(self) -> int:
        return len(self.diag)


def _snf(mat: IntMatrix) -> _SNF:
    m, n = mat.rows, mat.cols
    a = mat.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Uinv = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vinv = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i == j:
            return
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q == 0:
            return
        ra, rs = a[dst], a[src]
        for k in range(n):
            if rs[k]:
                ra[k] += q * rs[k]
        ud, us = U[dst], U[src]
        for k in range(m):
            if us[k]:
                ud[k] += q * us[k]
        for row in Uinv:
            if row[dst]:
                row[src] -= q * row[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        if q == 0:
            return
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        for row in V:
            if row[src]:
                row[dst] += q * row[src]
        vd, vs = Vinv[dst], Vinv[src]
        for k in range(n):
            if vd[k]:
                vs[k] -= q * vd[k]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover in row/column t to the pivot
                cand = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
            for row in Uinv:
                row[t] = -row[t]
        diag.append(a[t][t])
        t += 1
    return _SNF(U, Uinv, a, V, Vinv, diag, m, n)


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D``, ``U``/``V`` unimodular.

    ``D`` is diagonal with ``d1 | d2 | ...``; pivots are chosen by smallest
    nonzero magnitude.
    """
    s = _snf(M)
    return (
        IntMatrix(M.rows, M.rows, s.U),
        IntMatrix(M.rows, M.cols, s.D),
        IntMatrix(M.cols, M.cols, s.V),
    )


def nullspace(M: IntMatrix) -> list[list[int]]:
    """A Z-basis of ``{x : M x = 0}``."""
    s = _snf(M)
    return [[s.V[i][j] for i in range(M.cols)] for j in range(s.rank, M.cols)]


def solve(M: IntMatrix, b: Sequence[int]) -> list[int] | None:
    """An integer solution of ``M x = b``, or None if there is none."""
    s = _snf(M)
    ub = [sum(u * x for u, x in zip(row, b) if u) for row in s.U]
    y = [0] * M.cols
    for i, d in enumerate(s.diag):
        if ub[i] % d:
            return None
        y[i] = ub[i] // d
    if any(ub[i] for i in range(s.rank, M.rows)):
        return None
    return [sum(s.V[i][j] * y[j] for j in range(s.rank)) for i in range(M.cols)]


# ---------------------------------------------------------------------------
# Groups


@dataclass(frozen=True)
class FgAbGroup:
    """Finitely generated abelian group ``Z^free_rank + Z/t1 + ... + Z/tk``."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(d < 2 for d in t):
            raise ValueError(f"invariant factors must be >= 2, got {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"invariant factors must form a divisibility chain, got {t}")

    @property
    def orders(self) -> tuple[int, ...]:
        """Orders of the canonical generators: torsion first, then free (0)."""
        return self.torsion + (0,) * self.free_rank

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.free_rank

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __add__(self, other: "FgAbGroup") -> "FgAbGroup":
        return group_from_orders(self.orders + other.orders)

    def __str__(self) -> str:
        return render_group(self)


TRIVIAL = FgAbGroup()
Z = FgAbGroup(1)


def Zmod(m: int) -> FgAbGroup:
    return group_from_orders([m])


@dataclass(frozen=True)
class RationalSpace:
    """A finite-dimensional Q-vector space (kept apart: Q is not f.g. over Z)."""

    dim: int = 0

    def is_trivial(self) -> bool:
        return self.dim == 0

    def __str__(self) -> str:
        return render_group(self)


class Rationals:
    """Marker for rational coefficients."""

    def __repr__(self):
        return "Q"

    __str__ = __repr__

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


Q = Rationals()


def group_from_presentation(generators: int, relations: IntMatrix) -> FgAbGroup:
    """``Z^generators / column-span(relations)`` in canonical form."""
    if relations.rows != generators:
        raise ValueError("relation matrix needs one row per generator")
    s = _snf(relations)
    torsion = tuple(d for d in s.diag if d > 1)
    return FgAbGroup(generators - s.rank, torsion)


def group_from_orders(orders: Iterable[int]) -> FgAbGroup:
    """Canonical form of a direct sum of cyclic groups (order 0 means Z)."""
    orders = list(orders)
    n = len(orders)
    rel = IntMatrix(n, n, [[orders[i] if i == j else 0 for j in range(n)] for i in range(n)])
    return group_from_presentation(n, rel)


def iso_check(g1, g2) -> bool:
    return g1 == g2


def render_group(g) -> str:
    """Render as ``Z^r + Z/d1 + ...``; ``Z`` for rank one, ``0`` if trivial."""
    if isinstance(g, RationalSpace):
        if g.dim == 0:
            return "0"
        return "Q" if g.dim == 1 else f"Q^{g.dim}"
    if isinstance(g, Rationals):
        return "Q"
    parts = []
    if g.free_rank == 1:
        parts.append("Z")
    elif g.free_rank > 1:
        parts.append(f"Z^{g.free_rank}")
    parts += [f"Z/{d}" for d in g.torsion]
    return " + ".join(parts) if parts else "0"


def parse_group(text: str):
    """Parse the coefficient grammar: ``Z``, ``Z^r``, ``Z/m``, ``Q``, ``0``, sums with ``+``."""
    terms = [t.strip() for t in text.replace(" ", "").split("+")]
    if terms == ["Q"]:
        return Q
    orders: list[int] = []
    for t in terms:
        if t == "Z":
            orders.append(0)
        elif t.startswith("Z^") and t[2:].isdigit():
            orders += [0] * int(t[2:])
        elif t.startswith("Z/") and t[2:].isdigit():
            m = int(t[2:])
            if m < 2:
                raise ValueError(f"Z/{m}: modulus must be at least 2")
            orders.append(m)
        elif t == "0":
            continue
        elif t == "Q":
            raise ValueError("Q cannot be mixed with other summands")
        else:
            raise ValueError(f"cannot parse group term {t!r}")
    return group_from_orders(orders)


# ---------------------------------------------------------------------------
# Lattices and subquotients


class Lattice:
    """The subgroup of ``Z^dim`` spanned by a list of vectors."""

    def __init__(self, dim: int, gens: Sequence[Sequence[int]]):
        self.dim = dim
        gens = [list(g) for g in gens if any(g)]
        s = _snf(IntMatrix.from_columns(gens, dim))
        self._U = s.U
        self._d = s.diag
        self.rank = s.rank
        self.basis = [[s.Uinv[i][k] * d for i in range(dim)] for k, d in enumerate(s.diag)]

    def _transform(self, v):
        if len(v) != self.dim:
            raise ValueError("vector has the wrong length")
        return [sum(u * x for u, x in zip(row, v) if u) for row in self._U]

    def coords(self, v: Sequence[int]) -> list[int] | None:
        w = self._transform(v)
        out = []
        for i, d in enumerate(self._d):
            if w[i] % d:
                return None
            out.append(w[i] // d)
        if any(w[i] for i in range(self.rank, self.dim)):
            return None
        return out

    def __contains__(self, v) -> bool:
        return self.coords(v) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(b in self for b in other.basis)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Lattice)
            and self.dim == other.dim
            and self.rank == other.rank
            and self.contains_lattice(other)
            and other.contains_lattice(self)
        )

    __hash__ = None


class Subquotient:
    """The group ``span(sub) / span(rel)`` inside ``Z^dim`` with explicit generators.

    ``rel`` must lie in ``span(sub)``.  After construction, ``orders`` lists the
    generator orders (torsion ascending, then 0 for free generators),
    ``coords`` expresses an element of ``span(sub)`` in those generators and
    ``lift`` returns a representative vector for a generator.
    """

    def __init__(self, dim: int, sub, rel):
        self.dim = dim
        self.lattice = Lattice(dim, sub)
        r = self.lattice.rank
        rel_coords = []
        for v in rel:
            if not any(v):
                continue
            c = self.lattice.coords(v)
            if c is None:
                raise ValueError("relation does not lie in the subgroup")
            rel_coords.append(c)
        s = _snf(IntMatrix.from_columns(rel_coords, r))
        self._U2 = s.U
        diag = s.diag + [0] * (r - s.rank)
        self._keep = [k for k, d in enumerate(diag) if d != 1]
        self.orders = tuple(diag[k] for k in self._keep)
        self._lifts = []
        basis = self.lattice.basis
        for k in self._keep:
            col = [s.Uinv[i][k] for i in range(r)]
            self._lifts.append([sum(b[i] * c for b, c in zip(basis, col) if c) for i in range(dim)])

    @property
    def group(self) -> FgAbGroup:
        return group_from_orders(self.orders)

    def coords(self, v: Sequence[int]) -> list[int]:
        x = self.lattice.coords(v)
        if x is None:
            raise ValueError("element is not in the subgroup")
        out = []
        for k, o in zip(self._keep, self.orders):
            z = sum(u * xi for u, xi in zip(self._U2[k], x) if u)
            out.append(z % o if o else z)
        return out

    def lift(self, k: int) -> list[int]:
        return list(self._lifts[k])


# ---------------------------------------------------------------------------
# Homomorphisms


def _reduce_vec(vec, orders):
    return [x % o if o else x for x, o in zip(vec, orders)]


def _relation_columns(orders) -> list[list[int]]:
    n = len(orders)
    return [[o if i == k else 0 for i in range(n)] for k, o in enumerate(orders) if o]


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between groups given by generator orders.

    ``matrix`` has one column per source generator and one row per target
    generator.  Entries in torsion rows are stored reduced.
    """

    source_orders: tuple[int, ...]
    target_orders: tuple[int, ...]
    matrix: IntMatrix = field(compare=False)

    def __post_init__(self):
        so = tuple(int(x) for x in self.source_orders)
        to = tuple(int(x) for x in self.target_orders)
        object.__setattr__(self, "source_orders", so)
        object.__setattr__(self, "target_orders", to)
        M = self.matrix
        if M.shape != (len(to), len(so)):
            raise ValueError(f"matrix shape {M.shape} does not fit {len(to)}x{len(so)}")
        data = [[x % o for x in row] if o else list(row) for row, o in zip(M.data, to)]
        object.__setattr__(self, "matrix", IntMatrix(M.rows, M.cols, data))
        rel = Lattice(len(to), _relation_columns(to))
        for j, o in enumerate(so):
            if o and [o * x for x in self.matrix.column(j)] not in rel:
                raise ValueError(f"generator {j} of order {o} is not mapped to an element of compatible order")

    @classmethod
    def from_columns(cls, source_orders, target_orders, columns) -> "GroupHom":
        return cls(tuple(source_orders), tuple(target_orders), IntMatrix.from_columns(columns, len(target_orders)))

    @classmethod
    def identity(cls, orders) -> "GroupHom":
        return cls(tuple(orders), tuple(orders), IntMatrix.identity(len(orders)))

    @classmethod
    def zero(cls, source_orders, target_orders) -> "GroupHom":
        return cls(tuple(source_orders), tuple(target_orders), IntMatrix.zeros(len(target_orders), len(source_orders)))

    @property
    def source(self) -> FgAbGroup:
        return group_from_orders(self.source_orders)

    @property
    def target(self) -> FgAbGroup:
        return group_from_orders(self.target_orders)

    def __call__(self, vec: Sequence[int]) -> list[int]:
        return _reduce_vec(self.matrix.apply(vec), self.target_orders)

    def compose(self, first: "GroupHom") -> "GroupHom":
        """``self o first``."""
        if first.target_orders != self.source_orders:
            raise ValueError("cannot compose: intermediate groups differ")
        return GroupHom(first.source_orders, self.target_orders, self.matrix @ first.matrix)

    __matmul__ = compose

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupHom)
            and self.source_orders == other.source_orders
            and self.target_orders == other.target_orders
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.source_orders, self.target_orders, self.matrix))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def kernel_lattice(self) -> Lattice:
        """Preimage of the target relations, as a lattice in source coordinates."""
        s, t = len(self.source_orders), len(self.target_orders)
        rel = _relation_columns(self.target_orders)
        big = IntMatrix(t, s + len(rel), [row + [c[i] for c in rel] for i, row in enumerate(self.matrix.data)])
        gens = [v[:s] for v in nullspace(big)]
        return Lattice(s, gens + _relation_columns(self.source_orders))

    def image_lattice(self) -> Lattice:
        return Lattice(len(self.target_orders), self.matrix.columns() + _relation_columns(self.target_orders))

    def is_surjective(self) -> bool:
        image = self.image_lattice()
        return all(e in image for e in IntMatrix.identity(len(self.target_orders)).columns())

    def is_injective(self) -> bool:
        return self.kernel_lattice() == Lattice(len(self.source_orders), _relation_columns(self.source_orders))

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()


def hom_kernel_image_cokernel(h: GroupHom) -> tuple[FgAbGroup, FgAbGroup, FgAbGroup]:
    s, t = len(h.source_orders), len(h.target_orders)
    rel_s = _relation_columns(h.source_orders)
    rel_t = _relation_columns(h.target_orders)
    cols = h.matrix.columns()
    kernel = Subquotient(s, h.kernel_lattice().basis + rel_s, rel_s).group
    image = Subquotient(t, cols + rel_t, rel_t).group
    cokernel = Subquotient(t, IntMatrix.identity(t).columns(), cols + rel_t).group
    return kernel, image, cokernel


def direct_sum_hom(homs: Sequence[GroupHom]) -> GroupHom:
    so = sum((h.source_orders for h in homs), ())
    to = sum((h.target_orders for h in homs), ())
    M = IntMatrix.zeros(len(to), len(so))
    r = c = 0
    for h in homs:
        for i in range(h.matrix.rows):
            for j in range(h.matrix.cols):
                M.data[r + i][c + j] = h.matrix.data[i][j]
        r += h.matrix.rows
        c += h.matrix.cols
    return GroupHom(so, to, M)


# ---------------------------------------------------------------------------
# Universal coefficients


def _cyclic_pairs(a: FgAbGroup, b: FgAbGroup):
    return [(x, y) for x in a.orders for y in b.orders]


def tensor(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    # Z/x (x) Z/y = Z/gcd(x, y), with Z = Z/0
    return group_from_orders(gcd(x, y) for x, y in _cyclic_pairs(a, b))


def tor(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    return group_from_orders(gcd(x, y) for x, y in _cyclic_pairs(a, b) if x and y)


def hom(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    out = []
    for x, y in _cyclic_pairs(a, b):
        if x == 0:
            out.append(y)
        elif y:
            out.append(gcd(x, y))
    return group_from_orders(out)


def ext(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    # Ext(Z, -) = 0, Ext(Z/x, Z) = Z/x, Ext(Z/x, Z/y) = Z/gcd(x, y)
    return group_from_orders(gcd(x, y) for x, y in _cyclic_pairs(a, b) if x)


def uct_coefficients(h_n: FgAbGroup, h_nminus1: FgAbGroup, G, variant: str = "homology"):
    """Universal-coefficient value from integral groups.

    Homology gives ``H_n (x) G + Tor(H_{n-1}, G)``; cohomology gives
    ``Hom(H_n, G) + Ext(H_{n-1}, G)``.  With ``G = Q`` the result is a
    :class:`RationalSpace` of dimension ``rank H_n``.
    """
    if variant not in ("homology", "cohomology"):
        raise ValueError(f"unknown variant {variant!r}")
    if isinstance(G, Rationals):
        return RationalSpace(h_n.free_rank)
    if not isinstance(G, FgAbGroup):
        raise ValueError(f"unsupported coefficient group {G!r}")
    if variant == "homology":
        return tensor(h_n, G) + tor(h_nminus1, G)
    return hom(h_n, G) + ext(h_nminus1, G)
