"""Exact rational matrices and the subspace lattice built on top of them.

Everything here works over Q via fractions.Fraction, so ranks, kernels and
echelon forms are exact decisions, never tolerance calls.  Zero-dimension
matrices (0 x k and k x 0) are first-class citizens because the canonical
feedback-form templates contain blocks like 0_{1x0}.

Subspaces are stored as reduced column echelon bases, which are unique for
a given span.  Two Subspace values therefore describe the same space if and
only if they compare equal field by field.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class Mat:
    """Immutable dense matrix over Q, row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, entries: Iterable[Iterable] = ()):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        grid = tuple(tuple(_q(x) for x in row) for row in entries)
        if rows == 0 or cols == 0:
            grid = tuple(() for _ in range(rows))
        if len(grid) != rows or any(len(r) != cols for r in grid):
            raise ValueError(f"entry grid does not match shape {rows}x{cols}")
        super().__setattr__("rows", rows)
        super().__setattr__("cols", cols)
        super().__setattr__("data", grid)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Mat":
        """Build from a list of rows; shape is inferred (no empty rows allowed)."""
        rows = list(rows)
        if not rows:
            raise ValueError("cannot infer shape from an empty row list; use zeros()")
        ncols = len(rows[0])
        return cls(len(rows), ncols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def col_vec(cls, entries: Sequence) -> "Mat":
        return cls(len(entries), 1, [[x] for x in entries])

    # -- basic queries ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.data[i]

    def col(self, j: int) -> "Mat":
        return Mat(self.rows, 1, [[self.data[i][j]] for i in range(self.rows)])

    def columns(self) -> list["Mat"]:
        return [self.col(j) for j in range(self.cols)]

    def sub(self, r0: int, r1: int, c0: int, c1: int) -> "Mat":
        """Submatrix with rows r0:r1 and columns c0:c1 (half-open)."""
        return Mat(r1 - r0, c1 - c0, [row[c0:c1] for row in self.data[r0:r1]])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"Mat({self.rows}x{self.cols})"
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"Mat({self.rows}x{self.cols}: {body})"

    # -- arithmetic -------------------------------------------------------------

    def _same_shape(self, other: "Mat"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat(self.rows, self.cols,
                   [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat(self.rows, self.cols,
                   [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, [[-a for a in row] for row in self.data])

    def __mul__(self, scalar) -> "Mat":
        s = _q(scalar)
        return Mat(self.rows, self.cols, [[a * s for a in row] for row in self.data])

    __rmul__ = __mul__

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = []
        for row in self.data:
            out.append([sum(a * b for a, b in zip(row, oc)) for oc in ocols]
                       if other.rows else [Q(0)] * other.cols)
        return Mat(self.rows, other.cols, out)

    @property
    def T(self) -> "Mat":
        return Mat(self.cols, self.rows, list(zip(*self.data)) if self.rows else
                   [() for _ in range(self.cols)])

    # -- stacking ----------------------------------------------------------------

    @staticmethod
    def hstack(*mats: "Mat") -> "Mat":
        if not mats:
            raise ValueError("hstack needs at least one matrix")
        rows = mats[0].rows
        if any(m.rows != rows for m in mats):
            raise ValueError("hstack: row counts differ")
        data = [sum((m.data[i] for m in mats), ()) for i in range(rows)]
        return Mat(rows, sum(m.cols for m in mats), data)

    @staticmethod
    def vstack(*mats: "Mat") -> "Mat":
        if not mats:
            raise ValueError("vstack needs at least one matrix")
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("vstack: column counts differ")
        data = [row for m in mats for row in m.data]
        return Mat(sum(m.rows for m in mats), cols, data)

    @staticmethod
    def block_diag(*mats: "Mat") -> "Mat":
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        out = [[Q(0)] * cols for _ in range(rows)]
        r = c = 0
        for m in mats:
            for i in range(m.rows):
                out[r + i][c:c + m.cols] = list(m.data[i])
            r += m.rows
            c += m.cols
        return Mat(rows, cols, out)

    # -- rank and inversion --------------------------------------------------------

    def rank(self) -> int:
        return rref(self)[2]

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inv(self) -> "Mat":
        if self.rows != self.cols:
            raise ValueError("only square matrices can be inverted")
        x = solve_right(self, Mat.identity(self.rows))
        if x is None or (self @ x) != Mat.identity(self.rows):
            raise ValueError("matrix is singular")
        return x


def rref(m: Mat) -> tuple[Mat, tuple[int, ...], int]:
    """Reduced row echelon form of ``m`` over Q.

    Returns (R, pivot_columns, rank).  R is unique for the row space of ``m``.
    """
    work = [list(row) for row in m.data]
    pivots: list[int] = []
    pr = 0
    for pc in range(m.cols):
        sel = None
        for i in range(pr, m.rows):
            if work[i][pc] != 0:
                sel = i
                break
        if sel is None:
            continue
        work[pr], work[sel] = work[sel], work[pr]
        inv = Q(1) / work[pr][pc]
        if inv != 1:
            work[pr] = [x * inv for x in work[pr]]
        prow = work[pr]
        for i in range(m.rows):
            if i != pr and work[i][pc] != 0:
                f = work[i][pc]
                work[i] = [a - f * b for a, b in zip(work[i], prow)]
        pivots.append(pc)
        pr += 1
        if pr == m.rows:
            break
    return Mat(m.rows, m.cols, work), tuple(pivots), len(pivots)


class Subspace:
    """Linear subspace of Q^n held as a canonical full-column-rank basis.

    The basis is the reduced column echelon form of any spanning set, so the
    representation is unique and equality is a syntactic check.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Mat, *, canonical: bool = False):
        if basis.rows != ambient_dim:
            raise ValueError("basis rows must equal the ambient dimension")
        if not canonical:
            basis = _canonical_basis(basis)
        super().__setattr__("ambient_dim", ambient_dim)
        super().__setattr__("basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def span(cls, ambient_dim: int, spanning: Mat) -> "Subspace":
        return cls(ambient_dim, spanning)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Mat.zeros(ambient_dim, 0), canonical=True)

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Mat.identity(ambient_dim), canonical=True)

    @property
    def dim(self) -> int:
        return self.basis.cols

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"

    def contains_vector(self, v: Mat) -> bool:
        if v.shape != (self.ambient_dim, 1):
            raise ValueError("vector has wrong ambient dimension")
        return solve_right(self.basis, v) is not None

    def contains(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return Mat.hstack(self.basis, other.basis).rank() == self.dim

    def _check_ambient(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimensions differ")

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace(self.ambient_dim, Mat.hstack(self.basis, other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the kernel of the stacked bases [B1, -B2]."""
        self._check_ambient(other)
        d1 = self.dim
        if d1 == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        ker = kernel_basis(Mat.hstack(self.basis, -other.basis))
        coeff = ker.basis.sub(0, d1, 0, ker.basis.cols)
        return Subspace(self.ambient_dim, self.basis @ coeff)

    def image_under(self, m: Mat) -> "Subspace":
        """The subspace m . self, living in Q^(m.rows)."""
        if m.cols != self.ambient_dim:
            raise ValueError("matrix does not act on this ambient space")
        return Subspace(m.rows, m @ self.basis)


def _canonical_basis(spanning: Mat) -> Mat:
    r, _, rank = rref(spanning.T)
    return Mat(rank, spanning.rows, r.data[:rank]).T


def kernel_basis(m: Mat) -> Subspace:
    """The kernel {x : m x = 0} as a canonical subspace of Q^cols."""
    r, pivots, rank = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    cols = []
    for f in free:
        v = [Q(0)] * m.cols
        v[f] = Q(1)
        for i, p in enumerate(pivots):
            v[p] = -r.data[i][f]
        cols.append(v)
    basis = Mat(m.cols, len(cols), list(zip(*cols)) if cols else [() for _ in range(m.cols)])
    return Subspace(m.cols, basis)


def image_basis(m: Mat) -> Subspace:
    """The column span of m as a canonical subspace of Q^rows."""
    return Subspace(m.rows, m)


def preimage(m: Mat, s: Subspace) -> Subspace:
    """The preimage {x : m x in s} under the linear map induced by m.

    Computed as the projection onto the first block of ker [m, -basis(s)].
    """
    if s.ambient_dim != m.rows:
        raise ValueError("subspace must live in the codomain of m")
    ker = kernel_basis(Mat.hstack(m, -s.basis))
    proj = ker.basis.sub(0, m.cols, 0, ker.basis.cols)
    return Subspace(m.cols, proj)


def complement(inner: Subspace, outer: Subspace, preferred: Mat | None = None,
               *, variant: int = 0) -> Mat:
    """A full-column-rank C with im(inner) (+) im(C) = outer.

    Columns are chosen greedily from ``preferred`` first (candidates outside
    ``outer`` are skipped), then from the canonical basis of ``outer``.  With
    ``variant=1`` the fill-up candidates are tried in reverse order, which
    yields a different but equally valid complement.
    """
    if not outer.contains(inner):
        raise ValueError("inner subspace is not contained in the outer one")
    want = outer.dim - inner.dim
    chosen: list[Mat] = []
    current = inner.basis
    rank = inner.dim

    def try_candidates(cands):
        nonlocal current, rank
        for cand in cands:
            if len(chosen) == want:
                return
            stacked = Mat.hstack(current, cand)
            if stacked.rank() > rank:
                chosen.append(cand)
                current = stacked
                rank += 1

    if preferred is not None:
        if preferred.rows != outer.ambient_dim:
            raise ValueError("preferred columns have wrong ambient dimension")
        try_candidates([c for c in preferred.columns() if outer.contains_vector(c)])
    fill = outer.basis.columns()
    if variant:
        fill = fill[::-1]
    try_candidates(fill)
    if len(chosen) != want:
        raise AssertionError("complement construction failed to fill the outer space")
    if not chosen:
        return Mat.zeros(outer.ambient_dim, 0)
    return Mat.hstack(*chosen)


def solve_right(a: Mat, b_rhs: Mat) -> Mat | None:
    """Some X with a X = b_rhs, or None when no solution exists.

    Free variables are set to zero after the RREF, so the result is
    deterministic.
    """
    if a.rows != b_rhs.rows:
        raise ValueError("row counts differ")
    r, pivots, _ = rref(Mat.hstack(a, b_rhs))
    n = a.cols
    if any(p >= n for p in pivots):
        return None
    out = [[Q(0)] * b_rhs.cols for _ in range(n)]
    for i, p in enumerate(pivots):
        out[p] = list(r.data[i][n:])
    return Mat(n, b_rhs.cols, out)
