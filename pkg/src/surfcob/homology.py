"""Finitely presented abelian groups, Smith normal form, and chain-complex homology.

Everything here is exact: matrices hold arbitrary-precision Python ints, never
floats.  Two coefficient rings are supported, the integers and the field with two
elements; groups over the latter are presentations whose invariant factors are all
2, exposed through f2_dimension.

>>> A = IntMatrix([[2, 4], [6, 8]])
>>> U, D, V = smith_normal_form(A)
>>> D.diagonal()
[2, 4]
>>> (U @ D @ V).data == A.data
True
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    GroupMismatchError,
    InputError,
    NotACycleError,
    SizeLimitError,
)

MAX_DENSE_DIM = 512


# ---------------------------------------------------------------------------
# matrices


class IntMatrix:
    """Dense integer matrix.  Immutable by convention; entries are Python ints."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows_data, cols: int | None = None):
        if isinstance(rows_data, IntMatrix):
            self.rows, self.cols, self.data = (
                rows_data.rows,
                rows_data.cols,
                rows_data.data,
            )
            return
        data = [list(r) for r in rows_data]
        nrows = len(data)
        if nrows == 0:
            if cols is None:
                cols = 0
            ncols = cols
        else:
            ncols = len(data[0])
            if cols is not None and cols != ncols:
                raise InputError(f"declared {cols} columns, rows have {ncols}")
        for r in data:
            if len(r) != ncols:
                raise InputError("ragged matrix rows")
            for v in r:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise InputError(f"matrix entry {v!r} is not an integer")
        self.rows = nrows
        self.cols = ncols
        self.data = tuple(tuple(r) for r in data)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.data]!r})"

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InputError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        ot = list(zip(*other.data)) if other.data else [()] * other.cols
        out = [
            [sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.data
        ]
        return IntMatrix(out, cols=other.cols)

    def matvec(self, v) -> list[int]:
        if len(v) != self.cols:
            raise InputError(f"vector length {len(v)} != {self.cols} columns")
        return [sum(a * b for a, b in zip(row, v)) for row in self.data]

    def diagonal(self) -> list[int]:
        return [self.data[i][i] for i in range(min(self.rows, self.cols))]

    def mod2(self) -> list[list[int]]:
        return [[v & 1 for v in row] for row in self.data]

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise InputError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


def _check_size(mat: IntMatrix, what: str) -> None:
    if mat.rows > MAX_DENSE_DIM or mat.cols > MAX_DENSE_DIM:
        raise SizeLimitError(
            f"{what} is {mat.rows}x{mat.cols}; this tool works densely and refuses "
            f"matrices beyond {MAX_DENSE_DIM}x{MAX_DENSE_DIM}"
        )


# ---------------------------------------------------------------------------
# Smith normal form


class _SnfState:
    """Mutable workspace tracking D together with U, U^-1, V, V^-1.

    Invariant throughout: original A equals U @ D @ V, with U and V unimodular.
    """

    def __init__(self, a: IntMatrix):
        self.d = [list(r) for r in a.data]
        self.m = a.rows
        self.n = a.cols
        self.u = [[1 if i == j else 0 for j in range(self.m)] for i in range(self.m)]
        self.uinv = [r[:] for r in self.u]
        self.v = [[1 if i == j else 0 for j in range(self.n)] for i in range(self.n)]
        self.vinv = [r[:] for r in self.v]

    # D' = E D  =>  U' = U E^-1, Uinv' = E Uinv
    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        self.d[i], self.d[j] = self.d[j], self.d[i]
        self.uinv[i], self.uinv[j] = self.uinv[j], self.uinv[i]
        for row in self.u:
            row[i], row[j] = row[j], row[i]

    def negate_row(self, i: int) -> None:
        self.d[i] = [-x for x in self.d[i]]
        self.uinv[i] = [-x for x in self.uinv[i]]
        for row in self.u:
            row[i] = -row[i]

    def add_row(self, src: int, dst: int, mult: int) -> None:
        """Row dst of D += mult * row src."""
        if mult == 0:
            return
        dd, uu = self.d[dst], self.uinv[dst]
        ds, us = self.d[src], self.uinv[src]
        for k in range(self.n):
            dd[k] += mult * ds[k]
        for k in range(self.m):
            uu[k] += mult * us[k]
        for row in self.u:
            row[src] -= mult * row[dst]

    def combine_rows(self, t: int, i: int, p: int, q: int, r: int, s: int) -> None:
        """Replace rows (t, i) of D by the block [[p, q], [r, s]] acting on them.

        The block must have determinant +1, so a single call can land a gcd in
        the pivot while zeroing the entry below it without growing the loop
        count the way repeated remainder swaps do.
        """
        dt, di = self.d[t], self.d[i]
        for k in range(self.n):
            dt[k], di[k] = p * dt[k] + q * di[k], r * dt[k] + s * di[k]
        ut, ui = self.uinv[t], self.uinv[i]
        for k in range(self.m):
            ut[k], ui[k] = p * ut[k] + q * ui[k], r * ut[k] + s * ui[k]
        for row in self.u:
            row[t], row[i] = s * row[t] - r * row[i], -q * row[t] + p * row[i]

    # D' = D F  =>  V' = F^-1 V, Vinv' = Vinv F
    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        for row in self.d:
            row[i], row[j] = row[j], row[i]
        self.v[i], self.v[j] = self.v[j], self.v[i]
        for row in self.vinv:
            row[i], row[j] = row[j], row[i]

    def add_col(self, src: int, dst: int, mult: int) -> None:
        """Column dst of D += mult * column src."""
        if mult == 0:
            return
        for row in self.d:
            row[dst] += mult * row[src]
        vs, vd = self.v[src], self.v[dst]
        for k in range(self.n):
            vs[k] -= mult * vd[k]
        for row in self.vinv:
            row[dst] += mult * row[src]

    def combine_cols(self, t: int, j: int, p: int, q: int, r: int, s: int) -> None:
        """Replace columns (t, j) of D by new_t = p*t + q*j, new_j = r*t + s*j.

        Requires p*s - q*r == 1, mirroring combine_rows on the column side.
        """
        for row in self.d:
            row[t], row[j] = p * row[t] + q * row[j], r * row[t] + s * row[j]
        vt, vj = self.v[t], self.v[j]
        for k in range(self.n):
            vt[k], vj[k] = s * vt[k] - r * vj[k], -q * vt[k] + p * vj[k]
        for row in self.vinv:
            row[t], row[j] = p * row[t] + q * row[j], r * row[t] + s * row[j]


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) > 0 and x*a + y*b == g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        return -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _pick_pivot(d, t: int, m: int, n: int):
    """Smallest nonzero absolute value in the trailing submatrix, row-major ties."""
    best = None
    best_pos = None
    for i in range(t, m):
        row = d[i]
        for j in range(t, n):
            v = row[j]
            if v != 0:
                a = -v if v < 0 else v
                if best is None or a < best:
                    best = a
                    best_pos = (i, j)
                    if a == 1:
                        return best_pos
    return best_pos


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Decompose a = U @ D @ V with U, V unimodular and D = diag(d1, d2, ...),
    each d nonnegative and d1 | d2 | ... .

    Pivots are chosen by smallest nonzero absolute value, ties broken row-major,
    so the factorization is deterministic.

    >>> U, D, V = smith_normal_form(IntMatrix([[0]]))
    >>> D.diagonal()
    [0]
    """
    _check_size(a, "matrix")
    st = _snf_state(a)
    return (
        IntMatrix(st.u, cols=a.rows),
        IntMatrix(st.d, cols=a.cols),
        IntMatrix(st.v, cols=a.cols),
    )


def _snf_state(a: IntMatrix) -> _SnfState:
    st = _SnfState(a)
    d, m, n = st.d, st.m, st.n
    t = 0
    while t < min(m, n):
        pos = _pick_pivot(d, t, m, n)
        if pos is None:
            break
        st.swap_rows(t, pos[0])
        st.swap_cols(t, pos[1])
        while True:
            # Zero column t below the pivot.  A divisible entry is cleared by a
            # plain row subtraction; otherwise one unimodular 2x2 combine puts
            # gcd(pivot, entry) in the pivot and 0 below it, so the pivot only
            # ever shrinks and intermediate entries stay small.
            for i in range(t + 1, m):
                b = d[i][t]
                if b == 0:
                    continue
                a2 = d[t][t]
                if b % a2 == 0:
                    st.add_row(t, i, -(b // a2))
                else:
                    g, x, y = _egcd(a2, b)
                    st.combine_rows(t, i, x, y, -(b // g), a2 // g)
            # Zero row t right of the pivot the same way.  Only the gcd
            # combines can reintroduce entries into column t, so rerun the
            # passes exactly when one fired.
            column_dirtied = False
            for j in range(t + 1, n):
                b = d[t][j]
                if b == 0:
                    continue
                a2 = d[t][t]
                if b % a2 == 0:
                    st.add_col(t, j, -(b // a2))
                else:
                    g, x, y = _egcd(a2, b)
                    st.combine_cols(t, j, x, y, -(b // g), a2 // g)
                    column_dirtied = True
            if column_dirtied:
                continue
            # pivot must divide every remaining entry for the chain condition
            offender = None
            piv = d[t][t]
            for i in range(t + 1, m):
                row = d[i]
                for j in range(t + 1, n):
                    if row[j] % piv != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            st.add_row(offender, t, 1)
        if d[t][t] < 0:
            st.negate_row(t)
        t += 1
    return st


# ---------------------------------------------------------------------------
# groups and classes


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """Z^free_rank plus cyclic factors Z/d1 x Z/d2 x ... with d1 | d2 | ... .

    Invariant factors exclude 0 and 1; the 0s of a Smith form are the free rank
    and the 1s are trivial.
    """

    free_rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "invariant_factors", tuple(self.invariant_factors)
        )
        if self.free_rank < 0:
            raise InputError("free_rank must be nonnegative")
        prev = None
        for d in self.invariant_factors:
            if not isinstance(d, int) or d < 2:
                raise InputError(
                    f"invariant factor {d!r} invalid: factors are integers >= 2"
                )
            if prev is not None and d % prev != 0:
                raise InputError(
                    f"invariant factors must form a divisibility chain; "
                    f"{prev} does not divide {d}"
                )
            prev = d

    @property
    def coordinate_length(self) -> int:
        return self.free_rank + len(self.invariant_factors)

    def is_trivial(self) -> bool:
        return self.coordinate_length == 0


def f2_group(dimension: int) -> AbelianGroupPresentation:
    """The presentation used for mod-2 homology: every factor is 2, no free part."""
    return AbelianGroupPresentation(0, (2,) * dimension)


def f2_dimension(group: AbelianGroupPresentation) -> int:
    """Dimension accessor for groups produced by the mod-2 computations."""
    if group.free_rank != 0 or any(d != 2 for d in group.invariant_factors):
        raise InputError(
            "group is not an F2 vector-space presentation (all factors 2, free rank 0)"
        )
    return len(group.invariant_factors)


@dataclass(frozen=True)
class HomologyClass:
    """An element of a presented group: free coordinates first, then one
    coordinate per invariant factor, reduced into [0, d)."""

    group: AbelianGroupPresentation
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        if len(coords) != self.group.coordinate_length:
            raise InputError(
                f"class has {len(coords)} coordinates, group needs "
                f"{self.group.coordinate_length}"
            )
        fr = self.group.free_rank
        reduced = list(coords[:fr])
        for d, c in zip(self.group.invariant_factors, coords[fr:]):
            reduced.append(c % d)
        object.__setattr__(self, "coords", tuple(reduced))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        if self.group != other.group:
            raise GroupMismatchError("cannot add classes from different groups")
        return HomologyClass(
            self.group, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(self.group, tuple(-c for c in self.coords))

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        return self + (-other)


def zero_class(group: AbelianGroupPresentation) -> HomologyClass:
    return HomologyClass(group, (0,) * group.coordinate_length)


def classes_equal(a: HomologyClass, b: HomologyClass) -> bool:
    """Equality in the common group; comparing across groups is an error."""
    if a.group != b.group:
        raise GroupMismatchError(
            f"classes live in different groups: {a.group} vs {b.group}"
        )
    return a.coords == b.coords


# ---------------------------------------------------------------------------
# chain complexes


class ChainComplexPresentation:
    """Boundary maps by degree over Z or F2.

    boundary_maps[n] sends degree-n chains to degree n-1: the matrix has one
    column per n-cell and one row per (n-1)-cell.  A missing map is the zero map
    to or from a rank-0 group; chain ranks are inferred from the maps present.
    """

    def __init__(self, ring: str, boundary_maps: dict[int, IntMatrix]):
        if ring not in ("Z", "F2"):
            raise InputError(f"ring must be 'Z' or 'F2', got {ring!r}")
        self.ring = ring
        self.boundary_maps = {int(k): IntMatrix(v) for k, v in boundary_maps.items()}
        for n, mat in self.boundary_maps.items():
            _check_size(mat, f"boundary map in degree {n}")
        for n, mat in sorted(self.boundary_maps.items()):
            upper = self.boundary_maps.get(n + 1)
            if upper is None:
                continue
            if upper.rows != mat.cols:
                raise InputError(
                    f"rank mismatch between degrees {n} and {n + 1}: "
                    f"boundary_{n} has {mat.cols} columns but boundary_{n + 1} "
                    f"has {upper.rows} rows"
                )
            comp = mat @ upper
            bad = any(
                (v if self.ring == "Z" else v & 1) != 0
                for row in comp.data
                for v in row
            )
            if bad:
                raise InputError(
                    f"boundary_{n} o boundary_{n + 1} != 0: not a chain complex"
                )

    def rank(self, n: int) -> int:
        if n in self.boundary_maps:
            return self.boundary_maps[n].cols
        if n + 1 in self.boundary_maps:
            return self.boundary_maps[n + 1].rows
        return 0

    def boundary(self, n: int) -> IntMatrix:
        if n in self.boundary_maps:
            return self.boundary_maps[n]
        return IntMatrix.zero(self.rank(n - 1), self.rank(n))


# ---------------------------------------------------------------------------
# F2 linear algebra (small and dense)


def _rref2(rows: list[list[int]]):
    """Row-reduce over F2 in place; returns the pivot column list."""
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(rows)):
            if rows[i][c] & 1:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] & 1:
                rows[i] = [(a + b) & 1 for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def _rank2(mat: IntMatrix) -> int:
    return len(_rref2(mat.mod2()))


def _solve2(columns: list[list[int]], target: list[int]) -> list[int] | None:
    """One F2 solution x with sum_j x_j * columns[j] = target, or None."""
    ncols = len(columns)
    nrows = len(target)
    aug = [[columns[j][i] & 1 for j in range(ncols)] + [target[i] & 1] for i in range(nrows)]
    pivots = _rref2(aug)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for r, c in enumerate(pivots):
        x[c] = aug[r][ncols]
    return x


# ---------------------------------------------------------------------------
# homology computations


@dataclass
class _ZPresentation:
    group: AbelianGroupPresentation
    v_of_dn: list[list[int]]          # V from SNF of the degree-n boundary
    kernel_indices: list[int]
    kernel_basis: list[list[int]]     # columns (as row-vectors) of Vinv at kernel indices
    uprime: list[list[int]]           # SNF bookkeeping for the relation matrix
    uprime_inv: list[list[int]]
    diag_prime: list[int]
    free_positions: list[int]         # internal kernel-coordinate index per free gen
    torsion_positions: list[int]

    def kernel_coords(self, z: list[int]) -> list[int]:
        y = [sum(a * b for a, b in zip(row, z)) for row in self.v_of_dn]
        return [y[i] for i in self.kernel_indices]

    def class_coords(self, k: list[int]) -> tuple[int, ...]:
        w = [sum(a * b for a, b in zip(row, k)) for row in self.uprime_inv]
        free = [w[i] for i in self.free_positions]
        tors = [w[i] for i in self.torsion_positions]
        return tuple(free + tors)

    def generator_cycle(self, coord_index: int) -> list[int]:
        """A representative chain for the coord_index-th presentation generator."""
        nfree = len(self.free_positions)
        if coord_index < nfree:
            internal = self.free_positions[coord_index]
        else:
            internal = self.torsion_positions[coord_index - nfree]
        k = [row[internal] for row in self.uprime]
        if not self.kernel_basis:
            return []
        ncells = len(self.kernel_basis[0])
        z = [0] * ncells
        for coef, basis_vec in zip(k, self.kernel_basis):
            if coef:
                for i in range(ncells):
                    z[i] += coef * basis_vec[i]
        return z


def _z_presentation(complex_: ChainComplexPresentation, n: int) -> _ZPresentation:
    dn = complex_.boundary(n)
    dn1 = complex_.boundary(n + 1)
    st = _snf_state(dn)
    diag = [st.d[i][i] for i in range(min(dn.rows, dn.cols))]
    kernel_indices = [j for j in range(dn.cols) if j >= len(diag) or diag[j] == 0]
    # columns of V^-1 at the kernel indices form a basis of ker dn
    kernel_basis = [
        [st.vinv[r][j] for r in range(dn.cols)] for j in kernel_indices
    ]
    # image of dn1 written in kernel coordinates: rows of V @ dn1 at kernel indices
    vd = [
        [sum(st.v[i][r] * dn1.data[r][c] for r in range(dn1.rows)) for c in range(dn1.cols)]
        for i in range(dn.cols)
    ]
    relations = IntMatrix([vd[i] for i in kernel_indices], cols=dn1.cols)
    st2 = _snf_state(relations)
    diag2 = [st2.d[i][i] for i in range(min(relations.rows, relations.cols))]
    free_positions = []
    torsion_positions = []
    factors = []
    for i in range(len(kernel_indices)):
        d = diag2[i] if i < len(diag2) else 0
        if d == 0:
            free_positions.append(i)
        elif d >= 2:
            torsion_positions.append(i)
            factors.append(d)
        # d == 1: trivial generator, dropped
    group = AbelianGroupPresentation(len(free_positions), tuple(factors))
    return _ZPresentation(
        group=group,
        v_of_dn=st.v,
        kernel_indices=kernel_indices,
        kernel_basis=kernel_basis,
        uprime=st2.u,
        uprime_inv=st2.uinv,
        diag_prime=diag2,
        free_positions=free_positions,
        torsion_positions=torsion_positions,
    )


@dataclass
class _F2Presentation:
    dimension: int
    image_columns: list[list[int]]     # basis of the boundary image
    quotient_columns: list[list[int]]  # kernel vectors completing it; their classes generate

    @property
    def group(self) -> AbelianGroupPresentation:
        return f2_group(self.dimension)

    def class_coords(self, z: list[int]) -> tuple[int, ...]:
        cols = self.image_columns + self.quotient_columns
        x = _solve2(cols, z)
        if x is None:
            raise InputError("cycle is not in the span of the kernel basis")
        return tuple(x[len(self.image_columns):])


def _f2_presentation(complex_: ChainComplexPresentation, n: int) -> _F2Presentation:
    dn = complex_.boundary(n)
    dn1 = complex_.boundary(n + 1)
    ncells = complex_.rank(n)
    # kernel basis of dn over F2 from the RREF of dn
    rows = dn.mod2()
    pivots = _rref2(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncells) if c not in pivot_set]
    kernel = []
    for c in free_cols:
        vec = [0] * ncells
        vec[c] = 1
        for r, pc in enumerate(pivots):
            if r < len(rows) and rows[r][c] & 1:
                vec[pc] = 1
        kernel.append(vec)
    # image basis: independent columns of dn1
    image: list[list[int]] = []
    seen: list[list[int]] = []
    for c in range(dn1.cols):
        col = [dn1.data[r][c] & 1 for r in range(dn1.rows)]
        trial = seen + [col]
        if len(_rref2([list(v) for v in zip(*trial)])) == len(trial):
            seen.append(col)
            image.append(col)
    quotient: list[list[int]] = []
    for vec in kernel:
        trial = image + quotient + [vec]
        if len(_rref2([list(v) for v in zip(*trial)])) == len(trial):
            quotient.append(vec)
    return _F2Presentation(len(quotient), image, quotient)


def homology_of_complex(
    complex_: ChainComplexPresentation, n: int
) -> AbelianGroupPresentation:
    """Homology in degree n as a presented group.

    >>> c = ChainComplexPresentation("Z", {2: IntMatrix([[2]])})
    >>> homology_of_complex(c, 1)
    AbelianGroupPresentation(free_rank=0, invariant_factors=(2,))
    """
    if complex_.ring == "Z":
        return _z_presentation(complex_, n).group
    return _f2_presentation(complex_, n).group


def class_of_cycle(
    complex_: ChainComplexPresentation, z, n: int
) -> HomologyClass:
    """The homology class of a cycle, in the canonical coordinates of
    homology_of_complex(complex_, n).  Chains with nonzero boundary are rejected
    with an error carrying that boundary."""
    z = [int(v) for v in z]
    if len(z) != complex_.rank(n):
        raise InputError(
            f"cycle has {len(z)} coordinates, degree-{n} chains have "
            f"{complex_.rank(n)}"
        )
    dz = complex_.boundary(n).matvec(z)
    if complex_.ring == "F2":
        dz = [v & 1 for v in dz]
    if any(v != 0 for v in dz):
        raise NotACycleError(
            f"chain is not a cycle: boundary is {dz}", boundary=tuple(dz)
        )
    if complex_.ring == "Z":
        pres = _z_presentation(complex_, n)
        return HomologyClass(pres.group, pres.class_coords(pres.kernel_coords(z)))
    pres2 = _f2_presentation(complex_, n)
    return HomologyClass(pres2.group, pres2.class_coords([v & 1 for v in z]))


# ---------------------------------------------------------------------------
# mod-2 reduction


@dataclass(frozen=True)
class ReductionMap:
    """A linear map from an integral group presentation to an F2 one, given by a
    matrix acting on coordinates.  Applying it to twice any class gives zero, so
    it always factors through the mod-2 quotient."""

    source: AbelianGroupPresentation
    target: AbelianGroupPresentation
    matrix: IntMatrix

    def __post_init__(self):
        f2_dimension(self.target)  # validates target shape
        if self.matrix.rows != self.target.coordinate_length:
            raise InputError("reduction matrix row count != target dimension")
        if self.matrix.cols != self.source.coordinate_length:
            raise InputError("reduction matrix column count != source coordinates")

    def apply(self, c: HomologyClass) -> HomologyClass:
        if c.group != self.source:
            raise GroupMismatchError("class does not live in the reduction's source")
        image = [v & 1 for v in self.matrix.matvec(list(c.coords))]
        return HomologyClass(self.target, tuple(image))


def identity_reduction(source: AbelianGroupPresentation) -> ReductionMap:
    """Coordinate-wise reduction; the natural map when every generator survives
    mod 2 (free groups, all factors even)."""
    ncoords = source.coordinate_length
    return ReductionMap(source, f2_group(ncoords), IntMatrix.identity(ncoords))


def reduction_map(complex_: ChainComplexPresentation, n: int) -> ReductionMap:
    """The natural map H_n(.; Z) -> H_n(.; F2) of an integral complex, computed
    by reducing a representative cycle of each integral generator."""
    if complex_.ring != "Z":
        raise InputError("reduction_map needs an integral complex")
    zpres = _z_presentation(complex_, n)
    f2pres = _f2_presentation(complex_, n)
    cols = []
    for j in range(zpres.group.coordinate_length):
        rep = zpres.generator_cycle(j)
        cols.append(list(f2pres.class_coords([v & 1 for v in rep])))
    rows = [
        [cols[j][i] for j in range(len(cols))] for i in range(f2pres.dimension)
    ]
    return ReductionMap(
        zpres.group, f2pres.group, IntMatrix(rows, cols=zpres.group.coordinate_length)
    )


def mod2_reduce(c: HomologyClass, reduction: ReductionMap) -> HomologyClass:
    """Image of an integral class under an accompanying reduction map."""
    return reduction.apply(c)
