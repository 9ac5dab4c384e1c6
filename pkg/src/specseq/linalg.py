"""Exact linear algebra over the rationals.

Every subspace, quotient and induced-map computation in the package bottoms
out here.  All arithmetic uses `fractions.Fraction`, and subspaces are kept
in a canonical column-echelon basis so that equality of subspaces is plain
equality of the stored data.  Dense representations throughout; sizes stay
in the hundreds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction
_ZERO = Fraction(0)
_ONE = Fraction(1)


class DimensionMismatch(ValueError):
    """Operands live in different ambient spaces."""


class ContainmentError(ValueError):
    """A subspace that was required to contain another does not."""


class InducedMapError(ValueError):
    """The map does not preserve the subspaces, so no quotient map exists.

    Hitting this from the spectral-sequence engine signals a modeling bug,
    not bad user data.
    """


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense rational matrix; `entries` is a tuple of row tuples."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count mismatch")

    @staticmethod
    def from_rows(rows: Iterable[Iterable], cols: int | None = None) -> "Matrix":
        data = tuple(tuple(_frac(x) for x in row) for row in rows)
        if cols is None:
            if not data:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(data[0])
        return Matrix(len(data), cols, data)

    @staticmethod
    def from_cols(cols_: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        cols_ = [tuple(_frac(x) for x in c) for c in cols_]
        if rows is None:
            if not cols_:
                raise ValueError("cannot infer row count of an empty matrix")
            rows = len(cols_[0])
        data = tuple(tuple(c[i] for c in cols_) for i in range(rows))
        return Matrix(rows, len(cols_), data)

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, tuple(tuple([_ZERO] * cols) for _ in range(rows)))

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(
            n, n, tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n))
        )

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def apply(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        out = []
        for row in self.entries:
            acc = _ZERO
            for a, b in zip(row, v):
                if a and b:
                    acc += a * b
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions do not match")
        other_rows = other.entries
        out = []
        for i in range(self.rows):
            acc = [_ZERO] * other.cols
            for k, a in enumerate(self.entries[i]):
                if a:
                    brow = other_rows[k]
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return Matrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shapes differ")
        return Matrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            ),
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(tuple(-x for x in row) for row in self.entries))

    def scaled(self, c) -> "Matrix":
        c = _frac(c)
        return Matrix(
            self.rows, self.cols, tuple(tuple(c * x for x in row) for row in self.entries)
        )


def _rref_data(rows: list[list[Fraction]], cols: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot columns)."""
    pivots: list[int] = []
    pr = 0
    nrows = len(rows)
    for pc in range(cols):
        pivot = None
        for i in range(pr, nrows):
            if rows[i][pc]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[pr], rows[pivot] = rows[pivot], rows[pr]
        lead = rows[pr][pc]
        if lead != 1:
            rows[pr] = [x / lead for x in rows[pr]]
        prow = rows[pr]
        for i in range(nrows):
            if i != pr and rows[i][pc]:
                f = rows[i][pc]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], prow)]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...], int]:
    """Reduced row-echelon form of `m` with pivot columns and rank."""
    rows = [list(r) for r in m.entries]
    rows, pivots = _rref_data(rows, m.cols)
    reduced = Matrix(m.rows, m.cols, tuple(tuple(r) for r in rows))
    return reduced, tuple(pivots), len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[2]


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^ambient_dim with canonical column-echelon basis.

    The basis columns are the nonzero rows of the row-reduced span, so two
    equal subspaces always compare equal as dataclasses.
    """

    ambient_dim: int
    basis: Matrix  # ambient_dim x dim

    @property
    def dim(self) -> int:
        return self.basis.cols

    @staticmethod
    def span(ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [[_frac(x) for x in v] for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatch("spanning vector has wrong length")
        rows, pivots = _rref_data(rows, ambient_dim)
        basis_rows = rows[: len(pivots)]
        basis = Matrix.from_cols(basis_rows, rows=ambient_dim) if basis_rows else Matrix.zero(
            ambient_dim, 0
        )
        return Subspace(ambient_dim, basis)

    @staticmethod
    def from_matrix(m: Matrix) -> "Subspace":
        """Column span of `m`."""
        return Subspace.span(m.rows, m.columns())

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix.zero(ambient_dim, 0))

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix.identity(ambient_dim))

    @staticmethod
    def coordinate(ambient_dim: int, indices: Iterable[int]) -> "Subspace":
        """Span of the given coordinate directions."""
        vecs = []
        for i in sorted(set(indices)):
            v = [_ZERO] * ambient_dim
            v[i] = _ONE
            vecs.append(v)
        return Subspace.span(ambient_dim, vecs)

    def pivots(self) -> tuple[int, ...]:
        """Leading-one positions of the canonical basis columns."""
        out = []
        for j in range(self.dim):
            for i in range(self.ambient_dim):
                if self.basis.entries[i][j]:
                    out.append(i)
                    break
        return tuple(out)

    def coords_of(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Coordinates of v w.r.t. the canonical basis (valid when v lies here)."""
        return tuple(_frac(v[p]) for p in self.pivots())

    def contains_vector(self, v: Sequence[Fraction]) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector has wrong length")
        v = tuple(_frac(x) for x in v)
        return self.basis.apply(self.coords_of(v)) == v

    def contains(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        return all(self.contains_vector(c) for c in other.basis.columns())


def kernel_basis(m: Matrix) -> Subspace:
    """Basis of {v : m v = 0} as a subspace of the column space domain."""
    reduced, pivots, rk = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    vecs = []
    for fc in free:
        v = [_ZERO] * m.cols
        v[fc] = _ONE
        for r, pc in enumerate(pivots):
            v[pc] = -reduced.entries[r][fc]
        vecs.append(v)
    return Subspace.span(m.cols, vecs)


def image_basis(m: Matrix) -> Subspace:
    """Column span of m."""
    return Subspace.from_matrix(m)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    # Solve A x = B y; the intersection is A x over kernel vectors (x | y).
    stacked = Matrix.from_cols(
        a.basis.columns() + [tuple(-x for x in c) for c in b.basis.columns()],
        rows=a.ambient_dim,
    )
    ker = kernel_basis(stacked)
    vecs = []
    for kv in ker.basis.columns():
        x = kv[: a.dim]
        vecs.append(a.basis.apply(x))
    return Subspace.span(a.ambient_dim, vecs)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    return Subspace.span(a.ambient_dim, a.basis.columns() + b.basis.columns())


def annihilator_rows(s: Subspace) -> Matrix:
    """A matrix C with ker C = s (rows span the annihilator of s)."""
    ker = kernel_basis(s.basis.transpose())
    if ker.dim == 0:
        return Matrix.zero(0, s.ambient_dim)
    return ker.basis.transpose()


def preimage(f: Matrix, s: Subspace) -> Subspace:
    """{v : f v in s}; always contains ker f."""
    if f.rows != s.ambient_dim:
        raise DimensionMismatch("codomain of f does not match ambient of s")
    c = annihilator_rows(s)
    if c.rows == 0:
        return Subspace.full(f.cols)
    return kernel_basis(c @ f)


@dataclass(frozen=True)
class Quotient:
    """The quotient ambient/sub with a fixed projection and section.

    `project` (dim x N) annihilates `sub` and restricts to the quotient map
    on `ambient`; `section` (N x dim) picks canonical coset representatives,
    with project @ section the identity.
    """

    ambient: Subspace
    sub: Subspace
    dim: int
    project: Matrix
    section: Matrix


def quotient(ambient: Subspace, sub: Subspace) -> Quotient:
    if sub.ambient_dim != ambient.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    if not ambient.contains(sub):
        raise ContainmentError("sub is not contained in ambient")
    n = ambient.ambient_dim
    m = ambient.dim
    amb_pivots = ambient.pivots()
    # Work in coordinates of the ambient subspace: coordinates are just the
    # entries at the pivot rows of the canonical basis.
    sub_coords = [
        [col[p] for p in amb_pivots] for col in sub.basis.columns()
    ]  # k vectors in Q^m
    reduced, piv = _rref_data([list(v) for v in sub_coords], m)
    red_rows = reduced[: len(piv)]
    free = [c for c in range(m) if c not in piv]
    qdim = len(free)
    # project, in ambient coordinates: x |-> (x - sum_t x[piv_t] * red_rows[t]) at free positions
    proj_rows = []
    for f in free:
        row = [_ZERO] * n
        row[amb_pivots[f]] = _ONE
        for t, pc in enumerate(piv):
            coeff = red_rows[t][f]
            if coeff:
                row[amb_pivots[pc]] -= coeff
        proj_rows.append(tuple(row))
    project = Matrix(qdim, n, tuple(proj_rows))
    section = (
        Matrix.from_cols([ambient.basis.col(f) for f in free], rows=n)
        if qdim
        else Matrix.zero(n, 0)
    )
    return Quotient(ambient, sub, qdim, project, section)


def induced_map(f: Matrix, src: Quotient, dst: Quotient) -> Matrix:
    """Matrix of the map induced by f on src.ambient/src.sub -> dst.ambient/dst.sub."""
    if f.cols != src.ambient.ambient_dim or f.rows != dst.ambient.ambient_dim:
        raise DimensionMismatch("f does not map the source ambient into the target ambient")
    for col in src.ambient.basis.columns():
        if not dst.ambient.contains_vector(f.apply(col)):
            raise InducedMapError("f does not map the source ambient space into the target")
    for col in src.sub.basis.columns():
        if not dst.sub.contains_vector(f.apply(col)):
            raise InducedMapError("f does not preserve the subspaces; induced map undefined")
    return dst.project @ f @ src.section


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise DimensionMismatch("only square matrices are invertible")
    n = m.rows
    aug = [list(r) + [_ONE if i == j else _ZERO for j in range(n)] for i, r in enumerate(m.entries)]
    aug, pivots = _rref_data(aug, 2 * n)
    if list(pivots[:n]) != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return Matrix(n, n, tuple(tuple(row[n:]) for row in aug[:n]))


def solve(a: Matrix, b: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
    """One solution of a x = b (free variables set to zero), or None."""
    if len(b) != a.rows:
        raise DimensionMismatch("right-hand side has wrong length")
    aug = [list(r) + [_frac(b[i])] for i, r in enumerate(a.entries)]
    aug, pivots = _rref_data(aug, a.cols + 1)
    if a.cols in pivots:
        return None
    x = [_ZERO] * a.cols
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][a.cols]
    return tuple(x)
