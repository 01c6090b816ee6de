"""Exact dense/sparse linear algebra: matrices, RREF spans, kernels.

Matrices are stored row-sparse (list of {col: scalar} dicts); scalars are
duck-typed exact numbers (gmpy2.mpq or fields.QuadExt).  Subspace keeps a
canonical reduced row-echelon basis: pivot columns strictly increasing,
pivot entries 1, pivot columns eliminated from all other rows.  Two equal
subspaces therefore have identical row data.
"""
from __future__ import annotations

from .errors import ShapeError, SolveError


def vec_to_sparse(vec) -> dict:
    if isinstance(vec, dict):
        return {c: v for c, v in vec.items() if v}
    return {i: v for i, v in enumerate(vec) if v}


def sparse_to_dense(sv: dict, n: int, zero) -> list:
    out = [zero] * n
    for c, v in sv.items():
        out[c] = v
    return out


def sparse_axpy(target: dict, coeff, src: dict) -> None:
    """target += coeff * src, dropping zeros."""
    for c, v in src.items():
        w = target.get(c)
        if w is None:
            target[c] = coeff * v
        else:
            w = w + coeff * v
            if w:
                target[c] = w
            else:
                del target[c]


class Matrix:
    """Row-sparse exact matrix."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]

    # -- constructors ------------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int, one) -> "Matrix":
        return cls(n, n, [{i: one} for i in range(n)])

    @classmethod
    def from_dense(cls, data) -> "Matrix":
        rows = [vec_to_sparse(r) for r in data]
        ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, rows)

    def copy(self) -> "Matrix":
        return Matrix(self.nrows, self.ncols, [dict(r) for r in self.rows])

    # -- queries -----------------------------------------------------------
    def __getitem__(self, rc):
        r, c = rc
        return self.rows[r].get(c, 0)

    def entries(self):
        for r, row in enumerate(self.rows):
            for c, v in row.items():
                yield r, c, v

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def col(self, j: int) -> dict:
        out = {}
        for r, row in enumerate(self.rows):
            v = row.get(j)
            if v is not None:
                out[r] = v
        return out

    def to_dense(self, zero):
        return [sparse_to_dense(r, self.ncols, zero) for r in self.rows]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        raise TypeError("Matrix is unhashable")

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    # -- arithmetic --------------------------------------------------------
    def set_entry(self, r: int, c: int, v) -> None:
        if v:
            self.rows[r][c] = v
        elif c in self.rows[r]:
            del self.rows[r][c]

    def __add__(self, other):
        self._check_same_shape(other)
        out = self.copy()
        for r, row in enumerate(other.rows):
            sparse_axpy(out.rows[r], 1, row)
        return out

    def __sub__(self, other):
        self._check_same_shape(other)
        out = self.copy()
        for r, row in enumerate(other.rows):
            sparse_axpy(out.rows[r], -1, row)
        return out

    def __neg__(self):
        return Matrix(
            self.nrows, self.ncols, [{c: -v for c, v in r.items()} for r in self.rows]
        )

    def scale(self, coeff) -> "Matrix":
        if not coeff:
            return Matrix.zeros(self.nrows, self.ncols)
        return Matrix(
            self.nrows,
            self.ncols,
            [{c: coeff * v for c, v in r.items()} for r in self.rows],
        )

    def _check_same_shape(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ShapeError(
                f"shape mismatch {self.nrows}x{self.ncols} vs "
                f"{other.nrows}x{other.ncols}"
            )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ShapeError(
                f"cannot multiply {self.nrows}x{self.ncols} by "
                f"{other.nrows}x{other.ncols}"
            )
        rows = []
        orows = other.rows
        for row in self.rows:
            acc: dict = {}
            for k, v in row.items():
                sparse_axpy(acc, v, orows[k])
            rows.append(acc)
        return Matrix(self.nrows, other.ncols, rows)

    def commutator(self, other: "Matrix") -> "Matrix":
        return (self @ other) - (other @ self)

    def apply(self, vec: list) -> list:
        if len(vec) != self.ncols:
            raise ShapeError("vector length does not match matrix columns")
        sv = vec_to_sparse(vec)
        acc: dict = {}
        # (M v)_r = sum_c M[r,c] v_c; iterate columns of v
        for r, row in enumerate(self.rows):
            s = None
            for c, v in row.items():
                w = sv.get(c)
                if w is not None:
                    s = v * w if s is None else s + v * w
            if s:
                acc[r] = s
        zero = 0 * vec[0] if vec else 0
        return sparse_to_dense(acc, self.nrows, zero)

    def apply_sparse(self, sv: dict) -> dict:
        acc: dict = {}
        for r, row in enumerate(self.rows):
            small, big = (row, sv) if len(row) <= len(sv) else (sv, row)
            s = None
            for c, v in small.items():
                w = big.get(c)
                if w is not None:
                    s = v * w if s is None else s + v * w
            if s:
                acc[r] = s
        return acc

    def transpose(self) -> "Matrix":
        out = Matrix.zeros(self.ncols, self.nrows)
        for r, c, v in self.entries():
            out.rows[c][r] = v
        return out

    def flatten(self) -> dict:
        """Row-major flattening into a sparse vector of length nrows*ncols."""
        out = {}
        n = self.ncols
        for r, c, v in self.entries():
            out[r * n + c] = v
        return out

    @classmethod
    def from_flat(cls, sv: dict, nrows: int, ncols: int) -> "Matrix":
        out = cls.zeros(nrows, ncols)
        for idx, v in sv.items():
            out.rows[idx // ncols][idx % ncols] = v
        return out


class Subspace:
    """Canonical RREF span of vectors in an ambient coordinate space."""

    __slots__ = ("ambient", "rows", "pivots")

    def __init__(self, ambient: int):
        self.ambient = ambient
        self.rows: list[dict] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec) -> dict:
        """Residual of vec after elimination against the RREF rows."""
        sv = dict(vec_to_sparse(vec))
        for p, row in zip(self.pivots, self.rows):
            c = sv.get(p)
            if c is not None:
                sparse_axpy(sv, -c, row)
        return sv

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def extend(self, vec) -> bool:
        """Add vec to the span; returns True when the dimension grew."""
        sv = self.reduce(vec)
        if not sv:
            return False
        p = min(sv.keys())
        if p >= self.ambient:
            raise ShapeError("vector exceeds ambient dimension")
        inv = 1 / sv[p]
        new_row = {c: inv * v for c, v in sv.items()}
        for row in self.rows:
            c = row.get(p)
            if c is not None:
                sparse_axpy(row, -c, new_row)
        idx = 0
        while idx < len(self.pivots) and self.pivots[idx] < p:
            idx += 1
        self.pivots.insert(idx, p)
        self.rows.insert(idx, new_row)
        return True

    def coords(self, vec, check: bool = True):
        """Coefficients w.r.t. the RREF basis.

        With check=True the residual is verified to vanish (SolveError
        otherwise); check=False reads pivot coordinates and trusts that the
        vector lies in the span.
        """
        sv = vec_to_sparse(vec)
        cs = [sv.get(p, 0) for p in self.pivots]
        if check:
            res = dict(sv)
            for c, row in zip(cs, self.rows):
                if c:
                    sparse_axpy(res, -c, row)
            if res:
                raise SolveError("vector is not in the subspace")
        return cs

    def linear_combination(self, coeffs) -> dict:
        acc: dict = {}
        for c, row in zip(coeffs, self.rows):
            if c:
                sparse_axpy(acc, c, row)
        return acc

    def basis_dense(self, zero) -> list[list]:
        return [sparse_to_dense(r, self.ambient, zero) for r in self.rows]

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.pivots == other.pivots
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"Subspace(ambient={self.ambient}, dim={self.dim})"


def echelon_span(vectors, ambient: int) -> Subspace:
    s = Subspace(ambient)
    for v in vectors:
        s.extend(v)
    return s


def kernel(rows, ncols: int, one) -> Subspace:
    """Null space of the linear system given by sparse equation rows."""
    rspace = echelon_span(rows, ncols)
    pivset = set(rspace.pivots)
    free = [c for c in range(ncols) if c not in pivset]
    ker = Subspace(ncols)
    for f in free:
        v = {f: one}
        for p, row in zip(rspace.pivots, rspace.rows):
            c = row.get(f)
            if c is not None:
                v[p] = -c
        ker.extend(v)
    return ker


def invert_matrix(m: Matrix, one) -> Matrix:
    """Exact inverse of a square matrix (SolveError when singular)."""
    if m.nrows != m.ncols:
        raise ShapeError("only square matrices can be inverted")
    n = m.nrows
    # Gauss-Jordan on [m | I] with sparse rows
    aug = []
    for r in range(n):
        row = dict(m.rows[r])
        row[n + r] = one
        aug.append(row)
    span = echelon_span(aug, 2 * n)
    if span.dim < n or span.pivots[:n] != list(range(n)):
        raise SolveError("matrix is singular")
    inv = Matrix.zeros(n, n)
    for r, row in enumerate(span.rows[:n]):
        for c, v in row.items():
            if c >= n:
                inv.rows[r][c - n] = v
    return inv
