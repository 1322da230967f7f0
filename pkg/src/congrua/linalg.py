"""Dense exact matrices and subspaces.

Vectors are rows and operators act on the right, ``v -> v @ A``.  A
subspace is stored as the reduced row-echelon basis of its span, so two
subspaces are equal exactly when their basis matrices are.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

from .errors import AmbientMismatch, DimensionMismatch, FieldMismatch, Singular
from .field import FieldSpec, Scalar
from .poly import Polynomial


class Matrix:
    """Immutable dense matrix of raw field values (see :mod:`congrua.field`)."""

    __slots__ = ("spec", "nrows", "ncols", "_rows")

    def __init__(self, spec: FieldSpec, rows: Iterable[Iterable], ncols: int | None = None):
        conv = spec.convert
        data = tuple(tuple(conv(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise DimensionMismatch("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise DimensionMismatch("ragged matrix rows")
        self.spec = spec
        self.nrows = len(data)
        self.ncols = ncols
        self._rows = data

    @classmethod
    def _raw(cls, spec, rows, ncols):
        m = object.__new__(cls)
        m.spec = spec
        m._rows = tuple(tuple(r) for r in rows)
        m.nrows = len(m._rows)
        m.ncols = ncols
        return m

    @classmethod
    def identity(cls, spec, n):
        one, zero = spec.one(), spec.zero()
        return cls._raw(spec, [[one if i == j else zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, spec, nrows, ncols):
        z = spec.zero()
        return cls._raw(spec, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def diag(cls, spec, values):
        vals = [spec.convert(v) for v in values]
        n = len(vals)
        z = spec.zero()
        return cls._raw(spec, [[vals[i] if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def vstack(cls, spec, mats: Sequence["Matrix"], ncols: int):
        rows = []
        for m in mats:
            if m.ncols != ncols:
                raise DimensionMismatch("vstack column mismatch")
            rows.extend(m._rows)
        return cls._raw(spec, rows, ncols)

    @classmethod
    def hstack(cls, spec, mats: Sequence["Matrix"], nrows: int):
        for m in mats:
            if m.nrows != nrows:
                raise DimensionMismatch("hstack row mismatch")
        rows = [sum((m._rows[i] for m in mats), ()) for i in range(nrows)]
        return cls._raw(spec, rows, sum(m.ncols for m in mats))

    @property
    def rows(self) -> tuple:
        """Raw row tuples."""
        return self._rows

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return Scalar._raw(self.spec, self._rows[i][j])

    def row(self, i) -> tuple:
        return self._rows[i]

    def to_lists(self) -> list[list[Scalar]]:
        return [[Scalar._raw(self.spec, x) for x in r] for r in self._rows]

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self._rows]

    def _same(self, other):
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        norm, z = self.spec.norm, self.spec.zero()
        cols = list(zip(*other._rows)) if other.nrows else [()] * other.ncols
        p = self.spec.p
        out = []
        for r in self._rows:
            nz = [(k, a) for k, a in enumerate(r) if a]  # skip zero terms
            if p is not None:
                out.append([sum(a * c[k] for k, a in nz) % p for c in cols])
            else:
                out.append([norm(sum((a * c[k] for k, a in nz), z)) for c in cols])
        return Matrix._raw(self.spec, out, other.ncols)

    def __add__(self, other):
        self._same(other)
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch in addition")
        norm = self.spec.norm
        return Matrix._raw(self.spec, [[norm(a + b) for a, b in zip(r, s)]
                                       for r, s in zip(self._rows, other._rows)], self.ncols)

    def __sub__(self, other):
        self._same(other)
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch in subtraction")
        norm = self.spec.norm
        return Matrix._raw(self.spec, [[norm(a - b) for a, b in zip(r, s)]
                                       for r, s in zip(self._rows, other._rows)], self.ncols)

    def __neg__(self):
        norm = self.spec.norm
        return Matrix._raw(self.spec, [[norm(-a) for a in r] for r in self._rows], self.ncols)

    def scale(self, c) -> "Matrix":
        c = self.spec.convert(c)
        norm = self.spec.norm
        return Matrix._raw(self.spec, [[norm(c * a) for a in r] for r in self._rows], self.ncols)

    @property
    def T(self) -> "Matrix":
        if not self.nrows:
            return Matrix._raw(self.spec, [() for _ in range(self.ncols)], 0)
        return Matrix._raw(self.spec, list(zip(*self._rows)), self.nrows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.spec == other.spec and self.shape == other.shape
                and self._rows == other._rows)

    def __hash__(self):
        return hash((self.spec, self.shape, self._rows))

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._rows[i][j] == self._rows[j][i]
            for i in range(self.nrows) for j in range(i + 1, self.ncols))

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self._rows)
                   for j, x in enumerate(r) if i != j)

    def diagonal(self) -> list[Scalar]:
        return [Scalar._raw(self.spec, self._rows[i][i]) for i in range(min(self.shape))]

    def vec(self) -> tuple:
        return tuple(x for r in self._rows for x in r)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"Matrix({self.spec}, {self.nrows}x{self.ncols}, [{body}])"

    def __str__(self):
        cells = [[str(self.spec.signed(x)) for x in r] for r in self._rows]
        if not cells:
            return f"[] ({self.nrows}x{self.ncols})"
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


def _axpy(row, f, pivot_row, p, norm):
    """``row - f * pivot_row``, reduced."""
    if p is not None:
        return [(a - f * b) % p if b else a for a, b in zip(row, pivot_row)]
    return [norm(a - f * b) if b else a for a, b in zip(row, pivot_row)]


def _rref_rows(spec, rows, ncols, transform=False):
    """Gauss-Jordan on raw rows; first nonzero pivot by column, then row."""
    A = [list(r) for r in rows]
    m = len(A)
    norm, p = spec.norm, spec.p
    T = None
    if transform:
        one, z = spec.one(), spec.zero()
        T = [[one if i == j else z for j in range(m)] for i in range(m)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
            if T is not None:
                T[r], T[piv] = T[piv], T[r]
        lead = A[r][c]
        if lead != 1:
            li = spec.inv(lead)
            A[r] = [norm(x * li) for x in A[r]]
            if T is not None:
                T[r] = [norm(x * li) for x in T[r]]
        pr = A[r]
        tr = T[r] if T is not None else None
        for i in range(m):
            if i != r:
                f = A[i][c]
                if f != 0:
                    A[i] = _axpy(A[i], f, pr, p, norm)
                    if T is not None:
                        T[i] = _axpy(T[i], f, tr, p, norm)
        pivots.append(c)
        r += 1
    return A, pivots, T


class RREF(NamedTuple):
    matrix: Matrix
    rank: int
    transform: Matrix


def rref(M: Matrix) -> RREF:
    """``R = transform @ M`` in reduced row-echelon form."""
    A, pivots, T = _rref_rows(M.spec, M.rows, M.ncols, transform=True)
    return RREF(Matrix._raw(M.spec, A, M.ncols), len(pivots),
                Matrix._raw(M.spec, T, M.nrows))


def pivot_columns(M: Matrix) -> list[int]:
    return _rref_rows(M.spec, M.rows, M.ncols)[1]


def rank(M: Matrix) -> int:
    return len(pivot_columns(M))


def det(M: Matrix) -> Scalar:
    if not M.is_square():
        raise DimensionMismatch("determinant of a non-square matrix")
    spec = M.spec
    norm = spec.norm
    A = [list(r) for r in M.rows]
    n = len(A)
    d = spec.one()
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Scalar._raw(spec, spec.zero())
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = norm(-d)
        lead = A[c][c]
        d = norm(d * lead)
        li = spec.inv(lead)
        pr = A[c]
        for i in range(c + 1, n):
            f = A[i][c]
            if f != 0:
                f = norm(f * li)
                A[i] = [norm(a - f * b) for a, b in zip(A[i], pr)]
    return Scalar._raw(spec, d)


def is_singular(M: Matrix) -> bool:
    return det(M).is_zero()


def inverse(M: Matrix) -> Matrix:
    if not M.is_square():
        raise DimensionMismatch("inverse of a non-square matrix")
    A, pivots, T = _rref_rows(M.spec, M.rows, M.ncols, transform=True)
    if len(pivots) != M.nrows:
        raise Singular("matrix is singular")
    return Matrix._raw(M.spec, T, M.nrows)


class Subspace:
    """Subspace of K^n held as the RREF basis of its span."""

    __slots__ = ("spec", "ambient_dim", "basis")

    def __init__(self, spec: FieldSpec, ambient_dim: int, basis: Matrix):
        # trusted constructor: ``basis`` must already be in canonical form
        self.spec = spec
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def span(cls, spec: FieldSpec, ambient_dim: int, vectors) -> "Subspace":
        rows = [tuple(spec.convert(x) for x in v) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise AmbientMismatch("vector length differs from ambient dimension")
        A, pivots, _ = _rref_rows(spec, rows, ambient_dim)
        return cls(spec, ambient_dim, Matrix._raw(spec, A[: len(pivots)], ambient_dim))

    @classmethod
    def _of_raw(cls, spec, ambient_dim, rows) -> "Subspace":
        A, pivots, _ = _rref_rows(spec, rows, ambient_dim)
        return cls(spec, ambient_dim, Matrix._raw(spec, A[: len(pivots)], ambient_dim))

    @classmethod
    def of_rows(cls, M: Matrix) -> "Subspace":
        return cls._of_raw(M.spec, M.ncols, M._rows)

    @classmethod
    def zero(cls, spec, n):
        return cls(spec, n, Matrix._raw(spec, [], n))

    @classmethod
    def full(cls, spec, n):
        return cls(spec, n, Matrix.identity(spec, n))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def vectors(self) -> tuple:
        return self.basis.rows

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def _check(self, other):
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")
        if other.ambient_dim != self.ambient_dim:
            raise AmbientMismatch("subspaces live in different ambient spaces")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.spec == other.spec and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.spec, self.ambient_dim, self.basis))

    def __repr__(self):
        vecs = ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in self.vectors)
        return f"Subspace(dim={self.dim}/{self.ambient_dim}, span{{{vecs}}})"

    def contains(self, v) -> bool:
        v = tuple(self.spec.convert(x) for x in v)
        if len(v) != self.ambient_dim:
            raise AmbientMismatch("vector length differs from ambient dimension")
        rows = list(self.vectors) + [v]
        return len(_rref_rows(self.spec, rows, self.ambient_dim)[1]) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return self.sum(other).dim == self.dim

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace._of_raw(self.spec, self.ambient_dim, self.vectors + other.vectors)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        k = self.dim
        stacked = self.vectors + other.vectors
        A, pivots, T = _rref_rows(self.spec, stacked, self.ambient_dim, transform=True)
        # (a | b) with a*B1 + b*B2 = 0 gives a*B1 in both spaces
        coeffs = [T[i][:k] for i in range(len(pivots), len(stacked))]
        if not coeffs or k == 0:
            return Subspace.zero(self.spec, self.ambient_dim)
        B1 = self.basis
        vecs = (Matrix._raw(self.spec, coeffs, k) @ B1).rows
        return Subspace._of_raw(self.spec, self.ambient_dim, vecs)

    def complement(self) -> "Subspace":
        """Standard basis vectors on the non-pivot columns."""
        pivots = set(_rref_rows(self.spec, self.vectors, self.ambient_dim)[1])
        one, z = self.spec.one(), self.spec.zero()
        n = self.ambient_dim
        return Subspace._of_raw(self.spec, n, [[one if j == c else z for j in range(n)]
                                              for c in range(n) if c not in pivots])

    def complement_in(self, outer: "Subspace") -> "Subspace":
        """A complement of ``self`` inside ``outer`` (``self`` must lie in it).

        Greedily extends the basis of ``self`` by basis vectors of ``outer``.
        """
        self._check(outer)
        spec, n = self.spec, self.ambient_dim
        chosen = []
        current = list(self.vectors)
        r = len(_rref_rows(spec, current, n)[1])
        for v in outer.vectors:
            trial = current + [v]
            r2 = len(_rref_rows(spec, trial, n)[1])
            if r2 > r:
                chosen.append(v)
                current, r = trial, r2
        if r != outer.dim:
            raise AmbientMismatch("subspace is not contained in the outer space")
        return Subspace._of_raw(spec, n, chosen)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a.sum(b)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def complement(s: Subspace) -> Subspace:
    return s.complement()


def contains(s: Subspace, v) -> bool:
    return s.contains(v)


def left_kernel(M: Matrix) -> Subspace:
    """Row vectors ``x`` with ``x @ M == 0``."""
    A, pivots, T = _rref_rows(M.spec, M.rows, M.ncols, transform=True)
    return Subspace._of_raw(M.spec, M.nrows, T[len(pivots):])


def right_kernel(M: Matrix) -> Subspace:
    return left_kernel(M.T)


def eigenspace(T: Matrix, lam) -> Subspace:
    """``{v : v @ T == lam * v}``."""
    if not T.is_square():
        raise DimensionMismatch("eigenspace of a non-square matrix")
    lam = T.spec.convert(lam)
    return left_kernel(T - Matrix.identity(T.spec, T.nrows).scale(lam))


def restrict_form(M: Matrix, B: Matrix) -> Matrix:
    """Gram matrix ``B @ M @ B.T`` of the form restricted to the rows of ``B``."""
    if not M.is_square() or B.ncols != M.nrows:
        raise DimensionMismatch(f"cannot restrict a {M.shape} form to a {B.shape} basis")
    return B @ M @ B.T


def min_poly(T: Matrix) -> Polynomial:
    """Monic least-degree annihilating polynomial, from the first linear
    dependency among ``I, T, T^2, ...`` flattened to vectors."""
    if not T.is_square():
        raise DimensionMismatch("minimal polynomial of a non-square matrix")
    spec, n = T.spec, T.nrows
    power = Matrix.identity(spec, n)
    vecs = [power.vec()]
    for k in range(1, n + 2):
        power = power @ T
        vecs.append(power.vec())
        A, pivots, Tr = _rref_rows(spec, vecs, n * n, transform=True)
        if len(pivots) < len(vecs):
            # earlier powers are independent, so the relation involves T^k
            rel = Tr[len(pivots)]
            return Polynomial._raw(spec, rel).monic()
    raise AssertionError("no dependency among n+1 powers")  # Cayley-Hamilton
