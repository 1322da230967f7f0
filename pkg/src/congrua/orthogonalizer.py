"""Decide simultaneous orthogonalizability and build a basis or a refusal.

Pipeline: drop linearly dependent forms, split off the joint radical, then
on the radical-free part either pick a nondegenerate pivot form (possibly a
linear combination) and simultaneously diagonalize the operators
``T_i = M_i @ inv(M_pivot)``, or split along the radical of one form and
its F-supplement and recurse.

Sub-problems live on subspaces of the input space.  They are described by
a basis matrix in ambient coordinates plus the indices of the input forms
still in play, so certificates always speak in ambient coordinates and
original form indices.

A note on the supplement split: if ``S'`` and ``S''`` are both
F-supplements of a radical ``R``, projecting ``S''`` onto ``S'`` along
``R`` is an isometry for every form (vectors of either supplement are
F-orthogonal to ``R``, which kills all cross terms).  So one supplement is
as good as any other and no search over supplements is needed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import SingularPivot
from .field import Scalar
from .forms import (DEFAULT_BUDGET, FormFamily, f_supplement,
                    find_nondegenerate_combination, independent_indices,
                    orthogonal_basis_single, radical_of_family)
from .linalg import (Matrix, Subspace, det, eigenspace, inverse, left_kernel, min_poly,
                     restrict_form)
from .poly import Polynomial, distinct_linear_roots


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"


RADICAL_BLOCK = "RadicalBlock"
NONDEGENERATE_BLOCK = "NondegenerateBlock"
ERDAMUS_SPLIT = "ErdamusSplit"


@dataclass
class DecompositionNode:
    kind: str
    subspace: Subspace
    pivot_form_index: Optional[int] = None
    children: list = field(default_factory=list)
    pivot_combination: Optional[tuple] = None

    def leaves(self):
        if not self.children:
            yield self
        for c in self.children:
            yield from c.leaves()

    def to_dict(self):
        out = {"kind": self.kind, "subspace": self.subspace.basis.to_strings()}
        if self.pivot_form_index is not None:
            out["pivot_form_index"] = self.pivot_form_index
        if self.pivot_combination is not None:
            out["pivot_combination"] = [str(c) for c in self.pivot_combination]
        if self.children:
            out["children"] = [c.to_dict() for c in self.children]
        return out

    def render(self, indent=0) -> list[str]:
        label = self.kind
        if self.pivot_form_index is not None:
            label += f" pivot={self.pivot_form_index}"
        elif self.pivot_combination is not None:
            label += " pivot=(" + ", ".join(str(c) for c in self.pivot_combination) + ")"
        vecs = " ".join("(" + ",".join(str(x) for x in v) + ")" for v in self.subspace.vectors)
        lines = ["  " * indent + f"{label} dim={self.subspace.dim} span {vecs}"]
        for c in self.children:
            lines.extend(c.render(indent + 1))
        return lines


# --- certificates -----------------------------------------------------------

def _mat_strings(M: Matrix):
    return M.to_strings()


def _local(F: FormFamily, basis: Matrix, i: int) -> Matrix:
    return restrict_form(F.grams[i], basis)


def _pivot_gram(F: FormFamily, basis: Matrix, pivot) -> Matrix:
    out = Matrix.zeros(F.spec, basis.nrows, basis.nrows)
    for i, c in enumerate(pivot):
        c = F.spec.convert(c)
        if c != 0:
            out = out + _local(F, basis, i).scale(c)
    return out


def _operator(F, basis, pivot, i) -> Optional[Matrix]:
    M0 = _pivot_gram(F, basis, pivot)
    if det(M0).is_zero():
        return None
    return _local(F, basis, i) @ inverse(M0)


class Certificate:
    """Checkable witness for a No verdict.

    ``basis`` (rows in ambient coordinates) spans the sub-problem the
    obstruction was found on; ``check`` re-derives the obstruction from
    the input family alone.
    """

    kind = "Certificate"

    def check(self, F: FormFamily) -> bool:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    def describe(self) -> str:
        return self.kind


@dataclass
class TooManyIndependentForms(Certificate):
    count: int
    dim: int
    basis: Matrix
    kind = "TooManyIndependentForms"

    def check(self, F):
        local = F.restrict(self.basis)
        n = len(independent_indices(local))
        return n == self.count and self.dim == self.basis.nrows and n > self.dim

    def to_dict(self):
        return {"kind": self.kind, "count": self.count, "dim": self.dim,
                "basis": _mat_strings(self.basis)}

    def describe(self):
        return f"{self.kind}: {self.count} independent forms on a {self.dim}-dimensional space"


@dataclass
class NonCommutingPair(Certificate):
    i: int
    j: int
    witness: Matrix
    pivot: tuple
    basis: Matrix
    kind = "NonCommutingPair"

    def check(self, F):
        Ti = _operator(F, self.basis, self.pivot, self.i)
        Tj = _operator(F, self.basis, self.pivot, self.j)
        if Ti is None or Tj is None:
            return False
        C = Ti @ Tj - Tj @ Ti
        return C == self.witness and not C.is_zero()

    def to_dict(self):
        return {"kind": self.kind, "i": self.i, "j": self.j,
                "witness": _mat_strings(self.witness),
                "pivot": [str(c) for c in self.pivot], "basis": _mat_strings(self.basis)}

    def describe(self):
        return f"{self.kind}: T_{self.i} and T_{self.j} do not commute"


@dataclass
class NonSplitMinimalPolynomial(Certificate):
    i: int
    polynomial: Polynomial
    pivot: tuple
    basis: Matrix
    kind = "NonSplitMinimalPolynomial"

    def check(self, F):
        T = _operator(F, self.basis, self.pivot, self.i)
        if T is None:
            return False
        m = min_poly(T)
        return m == self.polynomial and distinct_linear_roots(m) is None

    def to_dict(self):
        return {"kind": self.kind, "i": self.i, "polynomial": str(self.polynomial),
                "coefficients": [str(c) for c in self.polynomial.raw],
                "pivot": [str(c) for c in self.pivot], "basis": _mat_strings(self.basis)}

    def describe(self):
        return (f"{self.kind}: minimal polynomial of T_{self.i} is {self.polynomial}, "
                "not a product of distinct linear factors")


@dataclass
class AlternatingEigenspace(Certificate):
    eigenvalues: tuple
    operators: tuple
    subspace: Subspace
    pivot: tuple
    basis: Matrix
    kind = "AlternatingEigenspace"

    def check(self, F):
        if F.spec.characteristic != 2:
            return False
        spec = F.spec
        d = self.basis.nrows
        block = Subspace.full(spec, d)
        for i, lam in zip(self.operators, self.eigenvalues):
            T = _operator(F, self.basis, self.pivot, i)
            if T is None:
                return False
            block = block.intersect(eigenspace(T, lam))
        if block.is_zero():
            return False
        if Subspace.of_rows(block.basis @ self.basis) != self.subspace:
            return False
        G = restrict_form(_pivot_gram(F, self.basis, self.pivot), block.basis)
        return orthogonal_basis_single(G) is None

    def to_dict(self):
        return {"kind": self.kind, "eigenvalues": [str(c) for c in self.eigenvalues],
                "operators": list(self.operators),
                "subspace": _mat_strings(self.subspace.basis),
                "pivot": [str(c) for c in self.pivot], "basis": _mat_strings(self.basis)}

    def describe(self):
        vals = ", ".join(str(v) for v in self.eigenvalues)
        return (f"{self.kind}: joint eigenspace ({vals}) of dim {self.subspace.dim} "
                "carries an alternating pivot form")


@dataclass
class UnsupplementedRadical(Certificate):
    form_index: int
    radical: Subspace
    basis: Matrix
    kind = "UnsupplementedRadical"

    def check(self, F):
        local = F.restrict(self.basis)
        rad = left_kernel(local.grams[self.form_index])
        if Subspace.of_rows(rad.basis @ self.basis) != self.radical:
            return False
        return f_supplement(local, rad) is None

    def to_dict(self):
        return {"kind": self.kind, "form_index": self.form_index,
                "radical": _mat_strings(self.radical.basis), "basis": _mat_strings(self.basis)}

    def describe(self):
        return (f"{self.kind}: radical of form {self.form_index} (dim {self.radical.dim}) "
                "has no F-supplement")


@dataclass
class SingleFormUnorthogonalizable(Certificate):
    form_index: int
    basis: Matrix
    kind = "SingleFormUnorthogonalizable"

    def check(self, F):
        if F.spec.characteristic != 2:
            return False
        return orthogonal_basis_single(_local(F, self.basis, self.form_index)) is None

    def to_dict(self):
        return {"kind": self.kind, "form_index": self.form_index,
                "basis": _mat_strings(self.basis)}

    def describe(self):
        return f"{self.kind}: form {self.form_index} alone has no orthogonal basis"


def check_certificate(F: FormFamily, cert: Certificate) -> bool:
    return cert.check(F)


def certificate_from_dict(spec, data: dict) -> Certificate:
    """Inverse of ``Certificate.to_dict``."""
    kind = data["kind"]

    def mat(key, ncols):
        return Matrix(spec, data[key], ncols=ncols)

    basis = Matrix(spec, data["basis"], ncols=len(data["basis"][0]) if data["basis"] else 0)
    n = basis.ncols
    if kind == TooManyIndependentForms.kind:
        return TooManyIndependentForms(int(data["count"]), int(data["dim"]), basis)
    if kind == SingleFormUnorthogonalizable.kind:
        return SingleFormUnorthogonalizable(int(data["form_index"]), basis)
    if kind == UnsupplementedRadical.kind:
        return UnsupplementedRadical(int(data["form_index"]),
                                     Subspace.of_rows(mat("radical", n)), basis)
    pivot = tuple(Scalar(spec, c) for c in data["pivot"])
    if kind == NonCommutingPair.kind:
        return NonCommutingPair(int(data["i"]), int(data["j"]),
                                mat("witness", basis.nrows), pivot, basis)
    if kind == NonSplitMinimalPolynomial.kind:
        return NonSplitMinimalPolynomial(int(data["i"]), Polynomial(spec, data["coefficients"]),
                                         pivot, basis)
    if kind == AlternatingEigenspace.kind:
        return AlternatingEigenspace(tuple(Scalar(spec, c) for c in data["eigenvalues"]),
                                     tuple(int(i) for i in data["operators"]),
                                     Subspace.of_rows(mat("subspace", n)), pivot, basis)
    raise ValueError(f"unknown certificate kind {kind!r}")


# --- results ----------------------------------------------------------------

@dataclass
class OrthoResult:
    verdict: Verdict
    basis: Optional[Matrix] = None
    diagonals: Optional[list] = None
    decomposition: Optional[list] = None
    certificate: Optional[Certificate] = None

    @property
    def is_yes(self) -> bool:
        return self.verdict is Verdict.YES

    def __bool__(self):
        return self.is_yes

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict.value}
        if self.is_yes:
            out["basis"] = self.basis.to_strings()
            out["diagonals"] = [[str(x) for x in d] for d in self.diagonals]
            out["decomposition"] = [n.to_dict() for n in self.decomposition]
        else:
            out["certificate"] = self.certificate.to_dict()
        return out


class _Refuted(Exception):
    def __init__(self, cert: Certificate):
        self.cert = cert


class _Ctx:
    """Sub-problem: the input family restricted to the rows of ``basis``."""

    def __init__(self, F: FormFamily, basis: Matrix, active: Sequence[int], budget: int):
        self.F = F
        self.basis = basis
        self.active = list(active)
        self.budget = budget
        self._local = {}

    @property
    def dim(self):
        return self.basis.nrows

    @property
    def spec(self):
        return self.F.spec

    def local(self, i) -> Matrix:
        g = self._local.get(i)
        if g is None:
            g = self._local[i] = restrict_form(self.F.grams[i], self.basis)
        return g

    def family(self, indices=None) -> FormFamily:
        idx = self.active if indices is None else indices
        return FormFamily(self.spec, self.dim, [self.local(i) for i in idx])

    def sub(self, local_rows: Matrix, active) -> "_Ctx":
        return _Ctx(self.F, local_rows @ self.basis, active, self.budget)

    def ambient(self, local_rows: Matrix) -> Subspace:
        return Subspace.of_rows(local_rows @ self.basis)

    def unit(self, i) -> tuple:
        one, z = self.spec.one(), self.spec.zero()
        return tuple(Scalar._raw(self.spec, one if k == i else z) for k in range(len(self.F)))


# --- solvers ------------------------------------------------------------------

def joint_eigenspaces(Ts: Sequence[Matrix], *, spec=None, dim=None):
    """Refine the whole space by the eigenspaces of each operator in turn.

    Operators must commute and each must split with distinct roots.  Returns
    ``(Subspace, eigenvalue tuple)`` blocks, which direct-sum to the space.
    """
    if Ts:
        spec, dim = Ts[0].spec, Ts[0].nrows
    elif spec is None or dim is None:
        raise ValueError("spec and dim are required when no operators are given")
    roots = []
    for T in Ts:
        r = distinct_linear_roots(min_poly(T)) if dim else []
        if r is None:
            raise ValueError("operator is not diagonalizable over the field")
        roots.append(r)
    return _refine(Ts, roots, spec, dim)


def _refine(Ts, roots_per_op, spec, dim):
    blocks = [(Subspace.full(spec, dim), ())]
    for T, roots in zip(Ts, roots_per_op):
        spaces = [(lam, eigenspace(T, lam)) for lam in roots]
        refined = []
        for S, lams in blocks:
            for lam, E in spaces:
                piece = S.intersect(E)
                if not piece.is_zero():
                    refined.append((piece, lams + (lam,)))
        blocks = refined
    return blocks


def _solve_nondegenerate(ctx: _Ctx, pivot: tuple):
    """Returns ``(rows in ctx coordinates, node)`` or raises ``_Refuted``."""
    spec, d = ctx.spec, ctx.dim
    M0 = Matrix.zeros(spec, d, d)
    for i, c in enumerate(pivot):
        if c.value != 0:
            M0 = M0 + ctx.local(i).scale(c.value)
    if det(M0).is_zero():
        raise SingularPivot("pivot form is degenerate on this subspace")
    inv0 = inverse(M0)
    unit_pivot = None
    nonzero = [i for i, c in enumerate(pivot) if c.value != 0]
    if len(nonzero) == 1 and pivot[nonzero[0]].value == 1:
        unit_pivot = nonzero[0]
    indices = [i for i in ctx.active if i != unit_pivot]
    ops = [ctx.local(i) @ inv0 for i in indices]

    for a in range(len(ops)):
        for b in range(a + 1, len(ops)):
            C = ops[a] @ ops[b] - ops[b] @ ops[a]
            if not C.is_zero():
                raise _Refuted(NonCommutingPair(indices[a], indices[b], C, pivot, ctx.basis))
    roots = []
    for i, T in zip(indices, ops):
        m = min_poly(T)
        r = distinct_linear_roots(m)
        if r is None:
            raise _Refuted(NonSplitMinimalPolynomial(i, m, pivot, ctx.basis))
        roots.append(r)

    rows = []
    for block, lams in _refine(ops, roots, spec, d):
        G = restrict_form(M0, block.basis)
        P = orthogonal_basis_single(G)
        if P is None:
            raise _Refuted(AlternatingEigenspace(
                lams, tuple(indices), ctx.ambient(block.basis), pivot, ctx.basis))
        rows.extend((P @ block.basis).rows)
    node = DecompositionNode(NONDEGENERATE_BLOCK, Subspace.of_rows(ctx.basis),
                             pivot_form_index=unit_pivot,
                             pivot_combination=None if unit_pivot is not None else pivot)
    return Matrix._raw(spec, rows, d), node


def _solve_zero_radical(ctx: _Ctx):
    d = ctx.dim
    local = ctx.family()
    keep = [ctx.active[k] for k in independent_indices(local)]
    if len(keep) > d:
        raise _Refuted(TooManyIndependentForms(len(keep), d, ctx.basis))
    ctx.active = keep
    if d == 0:
        return Matrix._raw(ctx.spec, [], 0), DecompositionNode(
            NONDEGENERATE_BLOCK, Subspace.of_rows(ctx.basis))
    search = find_nondegenerate_combination(ctx.family(), ctx.budget)
    if search.witness is not None:
        pivot = [Scalar._raw(ctx.spec, ctx.spec.zero())] * len(ctx.F)
        for k, c in zip(keep, search.witness.coeffs):
            pivot[k] = c
        return _solve_nondegenerate(ctx, tuple(pivot))
    return _erdamus_step(ctx)


def _erdamus_step(ctx: _Ctx):
    spec, d = ctx.spec, ctx.dim
    rads = [(left_kernel(ctx.local(i)), i) for i in ctx.active]
    rads = [(r, i) for r, i in rads if not r.is_full()]
    if not rads:
        raise AssertionError("family with zero radical has no nonzero form")
    rad, i = min(rads, key=lambda t: (t[0].dim, t[1]))
    if rad.is_zero():
        return _solve_nondegenerate(ctx, ctx.unit(i))
    local = ctx.family()
    sup = f_supplement(local, rad)
    if sup is None:
        raise _Refuted(UnsupplementedRadical(i, ctx.ambient(rad.basis), ctx.basis))

    outer = ctx.sub(sup.basis, ctx.active)
    rows_s, node_s = _solve_nondegenerate(outer, ctx.unit(i))

    inner = ctx.sub(rad.basis, [k for k in ctx.active if k != i])
    assert radical_of_family(inner.family()).is_zero(), "radical branch must be radical-free"
    rows_r, node_r = _solve_zero_radical(inner)

    rows = list((rows_s @ sup.basis).rows) + list((rows_r @ rad.basis).rows)
    node = DecompositionNode(ERDAMUS_SPLIT, Subspace.of_rows(ctx.basis), pivot_form_index=i,
                             children=[node_s, node_r])
    return Matrix._raw(spec, rows, d), node


def _diagonals(F: FormFamily, P: Matrix):
    out = []
    for g in F.grams:
        D = restrict_form(g, P)
        assert D.is_diagonal(), "solver produced a non-orthogonalizing basis"
        out.append(D.diagonal())
    return out


def _run(F: FormFamily, solver, prefix_rows=(), prefix_nodes=(), W: Matrix | None = None,
         active=None, budget=DEFAULT_BUDGET, **kw) -> OrthoResult:
    W = Matrix.identity(F.spec, F.dim) if W is None else W
    ctx = _Ctx(F, W, range(len(F)) if active is None else active, budget)
    try:
        rows, node = solver(ctx, **kw)
    except _Refuted as r:
        return OrthoResult(Verdict.NO, certificate=r.cert)
    nodes = list(prefix_nodes) + [node]
    basis = Matrix._raw(F.spec, list(prefix_rows) + list((rows @ W).rows), F.dim)
    return OrthoResult(Verdict.YES, basis, _diagonals(F, basis), nodes)


def solve_nondegenerate(F: FormFamily, pivot: int) -> OrthoResult:
    """Decide ``F`` using its form ``pivot``, which must be nondegenerate."""
    if det(F.grams[pivot]).is_zero():
        raise SingularPivot(f"form {pivot} is degenerate")
    unit = _Ctx(F, Matrix.identity(F.spec, F.dim), range(len(F)), DEFAULT_BUDGET).unit(pivot)
    return _run(F, lambda ctx: _solve_nondegenerate(ctx, unit))


def solve_zero_radical(F: FormFamily, budget: int = DEFAULT_BUDGET) -> OrthoResult:
    """Decide a family whose joint radical is zero."""
    return _run(F, _solve_zero_radical, budget=budget)


def erdamus_step(F: FormFamily, budget: int = DEFAULT_BUDGET) -> OrthoResult:
    """Split along the radical of one form and its F-supplement, then recurse."""
    return _run(F, _erdamus_step, budget=budget)


def orthogonalize(F: FormFamily, budget: int = DEFAULT_BUDGET) -> OrthoResult:
    """Full decision procedure with a basis or a certificate."""
    spec, n = F.spec, F.dim
    if n == 0:
        return OrthoResult(Verdict.YES, Matrix._raw(spec, [], 0), [[] for _ in F.grams], [])
    keep = independent_indices(F)
    full = Matrix.identity(spec, n)
    if len(keep) > n:
        return OrthoResult(Verdict.NO, certificate=TooManyIndependentForms(len(keep), n, full))
    if spec.characteristic == 2:
        for i in keep:
            if orthogonal_basis_single(F.grams[i]) is None:
                return OrthoResult(Verdict.NO,
                                   certificate=SingleFormUnorthogonalizable(i, full))
    rad = radical_of_family(F)
    prefix_nodes = [DecompositionNode(RADICAL_BLOCK, rad)] if not rad.is_zero() else []
    if rad.is_full():
        return OrthoResult(Verdict.YES, rad.basis, _diagonals(F, rad.basis), prefix_nodes)
    W = rad.complement().basis
    return _run(F, _solve_zero_radical, prefix_rows=rad.vectors, prefix_nodes=prefix_nodes,
                W=W, active=keep, budget=budget)


def verify(F: FormFamily, P: Matrix) -> bool:
    """True iff ``P`` is invertible and every ``P @ M_i @ P.T`` is diagonal."""
    if P.spec != F.spec or P.shape != (F.dim, F.dim):
        return False
    if det(P).is_zero():
        return False
    return all(restrict_form(g, P).is_diagonal() for g in F.grams)
