"""Finite-dimensional algebras given by structure constants.

The multiplication tensor is stored sparsely as mul[i][j] = [(k, c), ...]
meaning e_i * e_j = sum c * e_k.  Optional extras: an involution matrix and
the polar matrix Q of a quadratic form q (q(x) = Q(x,x)/2).
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    FormError,
    InvolutionError,
    ParseError,
    ShapeError,
    SolveError,
)
from .fields import Field
from .linalg import Matrix, Subspace, echelon_span, kernel, sparse_axpy
from .reports import Report


@dataclass(frozen=True)
class OperatorPair:
    """Left/right multiplication operators l_x, r_x."""

    left: Matrix
    right: Matrix


class Algebra:
    __slots__ = ("field", "n", "mul", "invol", "form", "name",
                 "_lops", "_rops", "_unit")

    def __init__(self, field: Field, n: int, mul, invol=None, form=None,
                 name: str | None = None):
        self.field = field
        self.n = n
        self.mul = mul  # dict i -> dict j -> list[(k, coeff)]
        self.invol = invol
        self.form = form
        self.name = name
        self._lops: list = [None] * n
        self._rops: list = [None] * n
        self._unit: list | tuple | None = None

    # -- products ------------------------------------------------------
    def basis_product(self, i: int, j: int) -> list:
        return self.mul.get(i, {}).get(j, [])

    def product_sparse(self, sx: dict, sy: dict) -> dict:
        acc: dict = {}
        mul = self.mul
        for i, a in sx.items():
            mi = mul.get(i)
            if not mi:
                continue
            for j, b in sy.items():
                ent = mi.get(j)
                if ent:
                    ab = a * b
                    for k, c in ent:
                        w = acc.get(k)
                        w = ab * c if w is None else w + ab * c
                        if w:
                            acc[k] = w
                        elif k in acc:
                            del acc[k]
        return acc

    def product(self, x: list, y: list) -> list:
        sx = {i: v for i, v in enumerate(x) if v}
        sy = {j: v for j, v in enumerate(y) if v}
        acc = self.product_sparse(sx, sy)
        out = [self.field.zero] * self.n
        for k, v in acc.items():
            out[k] = v
        return out

    def lmul(self, i: int) -> Matrix:
        """Operator of left multiplication by e_i."""
        m = self._lops[i]
        if m is None:
            m = Matrix.zeros(self.n, self.n)
            mi = self.mul.get(i, {})
            for j, ent in mi.items():
                for k, c in ent:
                    m.rows[k][j] = c
            self._lops[i] = m
        return m

    def rmul(self, j: int) -> Matrix:
        """Operator of right multiplication by e_j."""
        m = self._rops[j]
        if m is None:
            m = Matrix.zeros(self.n, self.n)
            for i, mi in self.mul.items():
                ent = mi.get(j)
                if ent:
                    for k, c in ent:
                        m.rows[k][i] = c
            self._rops[j] = m
        return m

    def lmul_vec(self, x: list) -> Matrix:
        m = Matrix.zeros(self.n, self.n)
        for i, v in enumerate(x):
            if v:
                for r, c, w in self.lmul(i).entries():
                    m.set_entry(r, c, m.rows[r].get(c, 0) + v * w)
        return m

    def rmul_vec(self, x: list) -> Matrix:
        m = Matrix.zeros(self.n, self.n)
        for j, v in enumerate(x):
            if v:
                for r, c, w in self.rmul(j).entries():
                    m.set_entry(r, c, m.rows[r].get(c, 0) + v * w)
        return m

    # -- involution / form ----------------------------------------------
    def conj(self, x: list) -> list:
        if self.invol is None:
            raise InvolutionError("algebra has no involution")
        return self.invol.apply(x)

    def basis_conj(self, i: int) -> dict:
        if self.invol is None:
            raise InvolutionError("algebra has no involution")
        return self.invol.col(i)

    def polar(self, x: list, y: list):
        if self.form is None:
            raise FormError("algebra has no bilinear form")
        z = self.field.zero
        acc = z
        for r, row in enumerate(self.form.rows):
            xv = x[r]
            if xv:
                for c, v in row.items():
                    if y[c]:
                        acc = acc + xv * v * y[c]
        return acc

    def quad(self, x: list):
        return self.polar(x, x) / 2

    def basis_vec(self, i: int) -> list:
        v = [self.field.zero] * self.n
        v[i] = self.field.one
        return v

    # -- unit ------------------------------------------------------------
    def unit(self) -> list | None:
        """The two-sided unit element, or None."""
        if self._unit is None:
            n = self.n
            one = self.field.one
            rows = []
            for i in range(n):
                # x * e_i = e_i  and  e_i * x = e_i
                for op in (self.rmul(i), self.lmul(i)):
                    for k in range(n):
                        row = dict(op.rows[k])
                        if i == k:
                            row[n] = one
                        if row:
                            rows.append(row)
            sol = linear_solve(rows, n, one)
            self._unit = ("none",) if sol is None else tuple(sol)
        if self._unit == ("none",):
            return None
        return [self.field.coerce(v) for v in self._unit]

    # -- spans -------------------------------------------------------------
    def products_span(self) -> Subspace:
        vecs = []
        for i, mi in self.mul.items():
            for j, ent in mi.items():
                vecs.append({k: c for k, c in ent})
        return echelon_span(vecs, self.n)

    # -- JSON --------------------------------------------------------------
    def to_json(self) -> dict:
        f = self.field
        out = {
            "field": f.to_json(),
            "dim": self.n,
            "mul": [
                [i, j, k, f.fmt(c)]
                for i, mi in sorted(self.mul.items())
                for j, ent in sorted(mi.items())
                for k, c in ent
            ],
        }
        if self.invol is not None:
            out["involution"] = _matrix_to_json(self.invol, f, self.n)
        if self.form is not None:
            out["form"] = _matrix_to_json(self.form, f, self.n)
        if self.name:
            out["name"] = self.name
        return out

    def __repr__(self):
        return f"Algebra({self.name or 'anon'}, dim={self.n}, {self.field!r})"


def _matrix_to_json(m: Matrix, field: Field, n: int) -> list:
    zero = field.zero
    return [field.fmt(m.rows[r].get(c, zero)) for r in range(n) for c in range(n)]


def matrix_from_json(data: list, field: Field, n: int) -> Matrix:
    if len(data) != n * n:
        raise ParseError(f"matrix payload should have {n*n} entries")
    m = Matrix.zeros(n, n)
    for idx, s in enumerate(data):
        v = field.parse(s)
        if v:
            m.rows[idx // n][idx % n] = v
    return m


def linear_solve(rows, ncols: int, one):
    """Solve augmented sparse rows (last column = rhs); None if inconsistent.

    Free variables are set to zero.
    """
    span = echelon_span(rows, ncols + 1)
    if ncols in span.pivots:
        return None
    sol = [0] * ncols
    for p, row in zip(span.pivots, span.rows):
        sol[p] = row.get(ncols, 0)
    return sol


def make_algebra(field: Field, dim: int, mul_entries, involution=None,
                 form=None, name=None, validate=True) -> Algebra:
    """Build an Algebra from sparse (i, j, k, coeff) entries."""
    mul: dict = {}
    for i, j, k, c in mul_entries:
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise ShapeError("structure constant index out of range")
        c = field.coerce(c)
        if c:
            mul.setdefault(i, {}).setdefault(j, []).append((k, c))
    inv = involution
    if inv is not None and not isinstance(inv, Matrix):
        inv = Matrix.from_dense([[field.coerce(v) for v in row] for row in inv])
    frm = form
    if frm is not None and not isinstance(frm, Matrix):
        frm = Matrix.from_dense([[field.coerce(v) for v in row] for row in frm])
    a = Algebra(field, dim, mul, inv, frm, name)
    if validate:
        validate_algebra(a)
    return a


def validate_algebra(a: Algebra) -> None:
    n, f = a.n, a.field
    if a.invol is not None:
        b = a.invol
        if b.nrows != n or b.ncols != n:
            raise InvolutionError("involution has the wrong shape")
        if b @ b != Matrix.identity(n, f.one):
            raise InvolutionError("involution does not square to identity")
        for i in range(n):
            ci = b.col(i)
            for j in range(n):
                cj = b.col(j)
                lhs = b.apply_sparse(
                    {k: c for k, c in a.basis_product(i, j)}
                )
                rhs = a.product_sparse(cj, ci)
                if lhs != rhs:
                    raise InvolutionError(
                        f"involution is not an anti-automorphism at ({i},{j})"
                    )
    if a.form is not None:
        q = a.form
        if q.nrows != n or q.ncols != n:
            raise FormError("form has the wrong shape")
        if q != q.transpose():
            raise FormError("polar form matrix is not symmetric")


def algebra_from_json(obj: dict, validate: bool = False) -> Algebra:
    field = Field.from_json(obj["field"])
    dim = int(obj["dim"])
    mul_entries = [
        (int(i), int(j), int(k), field.parse(s)) for i, j, k, s in obj["mul"]
    ]
    inv = obj.get("involution")
    frm = obj.get("form")
    return make_algebra(
        field,
        dim,
        mul_entries,
        involution=matrix_from_json(inv, field, dim) if inv is not None else None,
        form=matrix_from_json(frm, field, dim) if frm is not None else None,
        name=obj.get("name"),
        validate=validate,
    )


def change_field(a: Algebra, field: Field) -> Algebra:
    """Re-embed a rational algebra into a quadratic extension."""
    if a.field.is_quadratic:
        if a.field == field:
            return a
        raise ShapeError("can only extend scalars from Q")

    def lift_matrix(m):
        if m is None:
            return None
        out = Matrix.zeros(m.nrows, m.ncols)
        for r, c, v in m.entries():
            out.rows[r][c] = field.coerce(v)
        return out

    mul = {
        i: {j: [(k, field.coerce(c)) for k, c in ent] for j, ent in mi.items()}
        for i, mi in a.mul.items()
    }
    return Algebra(field, a.n, mul, lift_matrix(a.invol), lift_matrix(a.form),
                   a.name)


def mult_operator(a: Algebra, x: list) -> OperatorPair:
    return OperatorPair(a.lmul_vec(x), a.rmul_vec(x))


def check_symmetric_composition(a: Algebra) -> list[Report]:
    """Verify q(x*y) = q(x)q(y), form associativity and nondegeneracy.

    The multiplicative law is checked through its full char-0 polarization
    over basis tuples, which is equivalent to the law for all vectors.
    """
    if a.form is None:
        raise FormError("symmetric composition check needs a form")
    n, f = a.n, a.field
    prods = [[a.product(a.basis_vec(i), a.basis_vec(j)) for j in range(n)]
             for i in range(n)]

    def polar(x, y):
        return a.polar(x, y)

    def quad(x):
        return a.polar(x, x) / 2

    qdiag = [quad(a.basis_vec(i)) for i in range(n)]
    pol = [[polar(a.basis_vec(i), a.basis_vec(k)) for k in range(n)]
           for i in range(n)]

    reports = []
    witness = None
    for i in range(n):
        for j in range(n):
            if quad(prods[i][j]) != qdiag[i] * qdiag[j]:
                witness = ("diag", i, j)
                break
        if witness:
            break
    if witness is None:
        for j in range(n):
            for i in range(n):
                for k in range(i + 1, n):
                    if polar(prods[i][j], prods[k][j]) != pol[i][k] * qdiag[j]:
                        witness = ("left-polar", i, k, j)
                        break
                if witness:
                    break
            if witness:
                break
    if witness is None:
        for i in range(n):
            for j in range(n):
                for l in range(j + 1, n):
                    if polar(prods[i][j], prods[i][l]) != qdiag[i] * pol[j][l]:
                        witness = ("right-polar", i, j, l)
                        break
                if witness:
                    break
            if witness:
                break
    if witness is None:
        for i in range(n):
            for k in range(i + 1, n):
                for j in range(n):
                    for l in range(j + 1, n):
                        lhs = polar(prods[i][j], prods[k][l]) + polar(
                            prods[i][l], prods[k][j]
                        )
                        if lhs != pol[i][k] * pol[j][l]:
                            witness = ("full-polar", i, k, j, l)
                            break
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
    reports.append(
        Report("multiplicativity", "fail" if witness else "pass", witness)
    )

    witness = None
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if polar(prods[i][j], a.basis_vec(k)) != polar(
                    a.basis_vec(i), prods[j][k]
                ):
                    witness = (i, j, k)
                    break
            if witness:
                break
        if witness:
            break
    reports.append(Report("associativity", "fail" if witness else "pass", witness))

    rank = echelon_span([dict(r) for r in a.form.rows], n).dim
    reports.append(
        Report("nondegeneracy", "pass" if rank == n else "fail",
               None if rank == n else ("rank", rank))
    )
    return reports


def inner_derivation(a: Algebra, x: list, y: list) -> Matrix:
    """D_{x,y} = (1/3)ad([x,y]+[xb,yb]) + (.,y,x) - (.,xb,yb)."""
    f = a.field
    xb = a.conj(x) if a.invol is not None else x
    yb = a.conj(y) if a.invol is not None else y
    xy = a.product(x, y)
    yx = a.product(y, x)
    xbyb = a.product(xb, yb)
    ybxb = a.product(yb, xb)
    w = [xy[i] - yx[i] + xbyb[i] - ybxb[i] for i in range(a.n)]
    third = f.one / f.from_int(3)
    ad_w = (a.lmul_vec(w) - a.rmul_vec(w)).scale(third)
    # (z,y,x) = (z*y)*x - z*(y*x) as operator in z: R_x R_y - R_{y*x}
    assoc1 = a.rmul_vec(x) @ a.rmul_vec(y) - a.rmul_vec(yx)
    assoc2 = a.rmul_vec(yb) @ a.rmul_vec(xb) - a.rmul_vec(xbyb)
    return ad_w + assoc1 - assoc2


def derivation_algebra(a: Algebra, respect_involution: bool = False) -> Subspace:
    """All D with D(xy) = D(x)y + xD(y), as flattened n*n vectors."""
    n = a.n
    rows = []
    for i in range(n):
        for j in range(n):
            prod = a.basis_product(i, j)
            licol = {k: c for k, c in prod}
            for m in range(n):
                row: dict = {}
                w = licol.get(m)
                # D(e_i e_j) contributes D[m, l] * (e_i e_j)_l
                for l, c in prod:
                    row[m * n + l] = row.get(m * n + l, 0) + c
                # -(D e_i) e_j: -D[p,i] c[p][j][m]
                for p in range(n):
                    for kk, c in a.basis_product(p, j):
                        if kk == m:
                            key = p * n + i
                            row[key] = row.get(key, 0) - c
                # -e_i (D e_j): -D[q,j] c[i][q][m]
                for q in range(n):
                    for kk, c in a.basis_product(i, q):
                        if kk == m:
                            key = q * n + j
                            row[key] = row.get(key, 0) - c
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    if respect_involution:
        if a.invol is None:
            raise InvolutionError("no involution to respect")
        b = a.invol
        for r in range(n):
            for c in range(n):
                row: dict = {}
                # (D B - B D)[r,c] = sum_k D[r,k]B[k,c] - B[r,k]D[k,c]
                for k in range(n):
                    v = b.rows[k].get(c)
                    if v:
                        row[r * n + k] = row.get(r * n + k, 0) + v
                    v = b.rows[r].get(k)
                    if v:
                        row[k * n + c] = row.get(k * n + c, 0) - v
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    return kernel(rows, n * n, a.field.one)


def subspace_matrices(s: Subspace, n: int) -> list[Matrix]:
    """Interpret an n*n-ambient subspace basis as matrices."""
    return [Matrix.from_flat(row, n, n) for row in s.rows]


def span_closure(vectors, ops, ambient: int) -> Subspace:
    """Smallest subspace containing vectors and stable under the operators.

    Each basis row is processed once; rows mutated by later eliminations only
    change by multiples of rows that are themselves processed, so stability
    of the final span follows by linearity.
    """
    span = Subspace(ambient)
    for v in vectors:
        span.extend(v)
    done: set[int] = set()
    while True:
        todo = [r for r in span.rows if id(r) not in done]
        if not todo:
            return span
        for row in todo:
            done.add(id(row))
            snapshot = dict(row)
            for op in ops:
                img = op.apply_sparse(snapshot)
                if img:
                    span.extend(img)


def ideal_closure(a: Algebra, generators, extra_ops=()) -> Subspace:
    """Two-sided ideal generated by the vectors, optionally also stable
    under extra operators."""
    ops = [a.lmul(i) for i in range(a.n)] + [a.rmul(i) for i in range(a.n)]
    ops += list(extra_ops)
    return span_closure(generators, ops, a.n)
