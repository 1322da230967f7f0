"""Families of symmetric bilinear forms given by Gram matrices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import AmbientMismatch, DimensionMismatch, FieldMismatch, NotSymmetric
from .field import FieldSpec, Scalar, enumerate_scalars
from .linalg import (Matrix, Subspace, _rref_rows, det, left_kernel, restrict_form)

DEFAULT_BUDGET = 10 ** 6


class FormFamily:
    """Ordered list of symmetric ``dim x dim`` Gram matrices over one field."""

    __slots__ = ("spec", "dim", "grams")

    def __init__(self, spec: FieldSpec, dim: int, grams: Sequence[Matrix]):
        grams = tuple(grams)
        for k, g in enumerate(grams):
            if g.spec != spec:
                raise FieldMismatch(f"form {k} is over {g.spec}, family over {spec}")
            if g.shape != (dim, dim):
                raise DimensionMismatch(f"form {k} has shape {g.shape}, expected {dim}x{dim}")
            if not g.is_symmetric():
                raise NotSymmetric(f"form {k} is not symmetric")
        self.spec = spec
        self.dim = dim
        self.grams = grams

    @classmethod
    def from_lists(cls, spec: FieldSpec, mats, dim: int | None = None) -> "FormFamily":
        grams = [Matrix(spec, m) for m in mats]
        if dim is None:
            if not grams:
                raise DimensionMismatch("dim is required for an empty family")
            dim = grams[0].nrows
        return cls(spec, dim, grams)

    def __len__(self):
        return len(self.grams)

    def __iter__(self):
        return iter(self.grams)

    def __getitem__(self, i) -> Matrix:
        return self.grams[i]

    def __repr__(self):
        return f"FormFamily({self.spec}, dim={self.dim}, forms={len(self.grams)})"

    def restrict(self, B: Matrix) -> "FormFamily":
        """The family on the span of the rows of ``B``, in those coordinates."""
        return FormFamily(self.spec, B.nrows, [restrict_form(g, B) for g in self.grams])

    def subfamily(self, indices) -> "FormFamily":
        return FormFamily(self.spec, self.dim, [self.grams[i] for i in indices])

    def combination(self, coeffs) -> Matrix:
        if len(coeffs) != len(self.grams):
            raise DimensionMismatch("one coefficient per form is required")
        out = Matrix.zeros(self.spec, self.dim, self.dim)
        for c, g in zip(coeffs, self.grams):
            c = self.spec.convert(c)
            if c != 0:
                out = out + g.scale(c)
        return out


def radical_of_family(F: FormFamily) -> Subspace:
    """Intersection of the left kernels of all Gram matrices."""
    if not F.grams:
        return Subspace.full(F.spec, F.dim)
    return left_kernel(Matrix.hstack(F.spec, F.grams, F.dim))


def independent_indices(F: FormFamily) -> list[int]:
    keep, rows = [], []
    n2 = F.dim * F.dim
    for i, g in enumerate(F.grams):
        trial = rows + [g.vec()]
        if len(_rref_rows(F.spec, trial, n2)[1]) == len(trial):
            rows = trial
            keep.append(i)
    return keep


def independent_subfamily(F: FormFamily) -> tuple[FormFamily, list[int]]:
    """Earliest maximal linearly independent subfamily, with its indices."""
    keep = independent_indices(F)
    return F.subfamily(keep), keep


def _bil(spec, M, x, y):
    norm = spec.norm
    acc = spec.zero()
    for xi, row in zip(x, M.rows):
        if xi != 0:
            acc += xi * sum(a * b for a, b in zip(row, y))
    return norm(acc)


def _perp_within(spec, M, W, v):
    """Basis of ``{x in span(W) : <v, x> = 0}``; ``W`` is a list of rows."""
    g = [[_bil(spec, M, w, v)] for w in W]
    A, pivots, T = _rref_rows(spec, g, 1, transform=True)
    coeffs = T[len(pivots):]
    if not coeffs:
        return []
    return list((Matrix._raw(spec, coeffs, len(W)) @ Matrix._raw(spec, W, M.ncols)).rows)


def _split_nondegenerate(spec, M, W):
    """Orthogonal basis of span(W), on which ``M`` must be nondegenerate."""
    norm = spec.norm
    char2 = spec.characteristic == 2
    out = []
    while W:
        v = next((w for w in W if _bil(spec, M, w, w) != 0), None)
        if v is None and not char2:
            for i, j in itertools.combinations(range(len(W)), 2):
                if _bil(spec, M, W[i], W[j]) != 0:
                    v = tuple(norm(a + b) for a, b in zip(W[i], W[j]))
                    break
        if v is None:
            # char 2: q(x) = <x,x> is additive, so the form is alternating here
            return None
        perp = _perp_within(spec, M, W, v)
        if char2 and perp and all(_bil(spec, M, p, p) == 0 for p in perp):
            # v-perp is alternating; v + e keeps <v,v> and makes the new perp
            # non-alternating (it contains v + <v,v> f with <e,f> = 1)
            v = tuple(norm(a + b) for a, b in zip(v, perp[0]))
            perp = _perp_within(spec, M, W, v)
        out.append(tuple(v))
        W = perp
    return out


def orthogonal_basis_single(M: Matrix) -> Optional[Matrix]:
    """Rows forming a basis in which ``M`` is diagonal, or ``None``.

    ``None`` happens only in characteristic 2, when the form is alternating
    (and nonzero) modulo its radical.
    """
    if not M.is_symmetric():
        raise NotSymmetric("Gram matrix is not symmetric")
    spec, n = M.spec, M.nrows
    if M.is_diagonal():
        return Matrix.identity(spec, n)
    rad = left_kernel(M)
    body = _split_nondegenerate(spec, M, list(rad.complement().vectors))
    if body is None:
        return None
    return Matrix._raw(spec, body + list(rad.vectors), n)


@dataclass(frozen=True)
class CombinationWitness:
    coeffs: tuple
    gram: Matrix

    def __post_init__(self):
        if det(self.gram).is_zero():
            raise ValueError("witness Gram matrix is singular")


@dataclass(frozen=True)
class CombinationSearch:
    """Outcome of the nondegenerate-combination search.

    ``exhaustive`` means the full coefficient grid was covered, so a missing
    witness proves every combination degenerate (see ``find_nondegenerate_combination``).
    """

    witness: Optional[CombinationWitness]
    exhaustive: bool
    evaluations: int

    def __bool__(self):
        return self.witness is not None


def _candidate_tuples(m, values):
    nonzero = [s for s in values if s != 0]
    one = values[1] if len(values) > 1 else None
    for i in range(m):
        t = [values[0]] * m
        t[i] = one
        yield tuple(t)
    for i, j in itertools.combinations(range(m), 2):
        for a in nonzero:
            for b in nonzero:
                t = [values[0]] * m
                t[i], t[j] = a, b
                yield tuple(t)


def find_nondegenerate_combination(F: FormFamily, budget: int = DEFAULT_BUDGET) -> CombinationSearch:
    """Search ``sum(l_i M_i)`` with ``det != 0`` over the grid ``S^m``.

    ``S`` is ``0, 1, ..., dim`` (all of F_p when ``p <= dim``).  Each
    variable appears with degree at most ``dim`` in the determinant, so if
    it is not identically zero it is nonzero somewhere on this grid; an
    exhausted grid is therefore a proof that no combination over the field
    is nondegenerate.  Singles, then pairs, then the lexicographic grid.
    """
    m, spec = len(F), F.spec
    if m == 0 or F.dim == 0:
        return CombinationSearch(None, True, 0)
    values = [s.value for s in enumerate_scalars(spec, F.dim + 1)]
    seen = set()
    evaluations = 0

    def attempt(t):
        nonlocal evaluations
        seen.add(t)
        evaluations += 1
        gram = F.combination(t)
        if det(gram).is_zero():
            return None
        return CombinationWitness(tuple(Scalar._raw(spec, c) for c in t), gram)

    grid = itertools.product(values, repeat=m)
    staged = itertools.chain(
        () if len(values) < 2 else _candidate_tuples(m, values), grid)
    for t in staged:
        if t in seen or all(c == 0 for c in t):
            continue
        if evaluations >= budget:
            return CombinationSearch(None, False, evaluations)
        w = attempt(t)
        if w is not None:
            return CombinationSearch(w, False, evaluations)
    return CombinationSearch(None, True, evaluations)


def _orthogonal_complement_all(F: FormFamily, S: Subspace) -> Subspace:
    """``{x : <s, x>_j = 0 for every s in S and every form j}``."""
    if S.is_zero() or not F.grams:
        return Subspace.full(F.spec, F.dim)
    BT = S.basis.T
    blocks = [g @ BT for g in F.grams]
    return left_kernel(Matrix.hstack(F.spec, blocks, F.dim))


def f_supplement(F: FormFamily, S: Subspace) -> Optional[Subspace]:
    """An F-supplement of ``S``: ``V = S (+) S'`` with ``S'`` F-orthogonal
    to ``S``.  Exists iff ``S + U = V`` where ``U`` is the joint orthogonal
    of ``S``; then any complement of ``S & U`` inside ``U`` works."""
    if S.ambient_dim != F.dim:
        raise AmbientMismatch("subspace and family live in different spaces")
    U = _orthogonal_complement_all(F, S)
    if not S.sum(U).is_full():
        return None
    return S.intersect(U).complement_in(U)


def check_f_supplement(F: FormFamily, S: Subspace, S2: Subspace) -> bool:
    if S.ambient_dim != F.dim or S2.ambient_dim != F.dim:
        raise AmbientMismatch("subspace and family live in different spaces")
    if S.dim + S2.dim != F.dim or not S.sum(S2).is_full():
        return False
    if S.is_zero() or S2.is_zero():
        return True
    return all((S.basis @ g @ S2.basis.T).is_zero() for g in F.grams)
