"""Commutative algebras by structure constants, as families of forms.

For a basis ``e_1..e_n`` write ``x y = sum_k <x, y>_k e_k``; the k-th
coordinate form has Gram matrix ``(M_k)[i][j] = c[i][j][k]``.  The algebra
has a natural basis (``u_p u_q = 0`` for ``p != q``) exactly when these
forms are simultaneously orthogonalizable.

Test-ideal text format
----------------------
One generator per line.  A line is a sum of monomials joined by `` + ``;
each monomial is ``coef`` followed by ``*var`` or ``*var^e`` factors
(``^e`` omitted when ``e == 1``), with a negative coefficient carried in
``coef`` (``-1*z``).  Over F_p coefficients are residues in ``[0, p)``.
Variables are ``z`` and ``x<i>_<j>`` for ``1 <= i, j <= n``.  Terms are
sorted by decreasing graded-lex order with ``z < x1_1 < x1_2 < ... < xn_n``.
The first line is ``1 - z*det(X)``; the rest are ``x_i M_k x_j^T`` for
``i < j``, in ``(i, j, k)`` order, omitting zero and repeated generators.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Optional

from .errors import DimensionMismatch, NotCommutative, ParseError
from .field import FieldSpec, Scalar
from .forms import FormFamily
from .linalg import Matrix, inverse
from .orthogonalizer import Certificate, OrthoResult, orthogonalize


class AlgebraStructure:
    """Structure constants ``c[i][j][k]``: coordinate k of ``e_i e_j``."""

    __slots__ = ("spec", "dim", "c")

    def __init__(self, spec: FieldSpec, c):
        table = [[[spec.convert(x) for x in cell] for cell in row] for row in c]
        n = len(table)
        for i, row in enumerate(table):
            if len(row) != n or any(len(cell) != n for cell in row):
                raise DimensionMismatch(f"structure table row {i} is not {n}x{n}")
        for i in range(n):
            for j in range(i + 1, n):
                if table[i][j] != table[j][i]:
                    raise NotCommutative(f"e{i + 1}*e{j + 1} != e{j + 1}*e{i + 1}")
        self.spec = spec
        self.dim = n
        self.c = tuple(tuple(tuple(cell) for cell in row) for row in table)

    @classmethod
    def from_grams(cls, spec: FieldSpec, grams) -> "AlgebraStructure":
        """Algebra whose k-th coordinate form has Gram matrix ``grams[k]``."""
        mats = [Matrix(spec, g) if not isinstance(g, Matrix) else g for g in grams]
        n = len(mats)
        for g in mats:
            if g.shape != (n, n):
                raise DimensionMismatch("need n Gram matrices of size n x n")
        return cls(spec, [[[mats[k].rows[i][j] for k in range(n)] for j in range(n)]
                          for i in range(n)])

    def product(self, x, y) -> tuple:
        """Coordinates of ``x y``, straight from the table."""
        spec, n = self.spec, self.dim
        x = [spec.convert(v) for v in x]
        y = [spec.convert(v) for v in y]
        out = [spec.zero()] * n
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(n):
                if y[j] == 0:
                    continue
                w = x[i] * y[j]
                cell = self.c[i][j]
                for k in range(n):
                    out[k] += w * cell[k]
        return tuple(spec.norm(v) for v in out)


def forms_from_algebra(A: AlgebraStructure) -> FormFamily:
    n = A.dim
    grams = [Matrix._raw(A.spec, [[A.c[i][j][k] for j in range(n)] for i in range(n)], n)
             for k in range(n)]
    return FormFamily(A.spec, n, grams)


def structure_matrix(A: AlgebraStructure, U: Matrix) -> Matrix:
    """Column q holds the coordinates of ``u_q^2`` in the basis ``U`` (rows)."""
    Uinv = inverse(U)
    cols = [Matrix._raw(A.spec, [A.product(u, u)], A.dim) @ Uinv for u in U.rows]
    return Matrix._raw(A.spec, [c.rows[0] for c in cols], A.dim).T


def square_table(A: AlgebraStructure, U: Matrix) -> Matrix:
    """Row q holds ``u_q^2`` in the algebra's own basis ``e_1..e_n``.

    Entry ``[q][k]`` is ``<u_q, u_q>_k``, so column k lists the diagonal of
    form k in the basis ``U``.  This is not the structure matrix unless ``U``
    is the identity.
    """
    return Matrix._raw(A.spec, [A.product(u, u) for u in U.rows], A.dim)


@dataclass
class EvolutionReport:
    is_evolution: bool
    natural_basis: Optional[Matrix] = None
    structure_matrix: Optional[Matrix] = None
    certificate: Optional[Certificate] = None
    result: Optional[OrthoResult] = None

    def to_dict(self):
        out = {"is_evolution": self.is_evolution}
        if self.is_evolution:
            out["natural_basis"] = self.natural_basis.to_strings()
            out["structure_matrix"] = self.structure_matrix.to_strings()
        else:
            out["certificate"] = self.certificate.to_dict()
        return out


def detect_evolution(A: AlgebraStructure) -> EvolutionReport:
    res = orthogonalize(forms_from_algebra(A))
    if not res.is_yes:
        return EvolutionReport(False, certificate=res.certificate, result=res)
    U = res.basis
    return EvolutionReport(True, U, structure_matrix(A, U), result=res)


# --- evolution test ideal -------------------------------------------------

def ideal_variables(n: int) -> list[str]:
    return ["z"] + [f"x{i}_{j}" for i in range(1, n + 1) for j in range(1, n + 1)]


class MPoly:
    """Sparse polynomial over the ideal's variables: exponent tuple -> raw coef."""

    def __init__(self, spec: FieldSpec, names, terms=None):
        self.spec = spec
        self.names = list(names)
        self.terms = {}
        for e, c in (terms or {}).items():
            self._accumulate(e, c)

    def _accumulate(self, e, c):
        v = self.spec.norm(self.terms.get(e, self.spec.zero()) + c)
        if v == 0:
            self.terms.pop(e, None)
        else:
            self.terms[e] = v

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.terms == other.terms

    def __neg__(self):
        return MPoly(self.spec, self.names, {e: -c for e, c in self.terms.items()})

    def _key(self, e):
        return (sum(e), e[::-1])

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self._key(t[0]), reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [str(c)]
            for name, k in zip(self.names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def evaluate(self, values) -> Scalar:
        """``values`` maps variable names to field elements."""
        spec = self.spec
        point = [spec.convert(values[n]) for n in self.names]
        acc = spec.zero()
        for e, c in self.terms.items():
            t = c
            for v, k in zip(point, e):
                if k:
                    t = t * v ** k
            acc += t
        return Scalar._raw(spec, spec.norm(acc))

    @classmethod
    def parse(cls, spec: FieldSpec, names, text: str) -> "MPoly":
        index = {n: i for i, n in enumerate(names)}
        out = cls(spec, names)
        if text.strip() == "0":
            return out
        for mono in text.split(" + "):
            factors = mono.strip().split("*")
            coef = spec.parse_scalar(factors[0])
            e = [0] * len(names)
            for f in factors[1:]:
                m = re.fullmatch(r"([A-Za-z][\w]*)(?:\^(\d+))?", f)
                if m is None or m.group(1) not in index:
                    raise ParseError(f"bad factor {f!r} in {mono!r}")
                e[index[m.group(1)]] += int(m.group(2) or 1)
            out._accumulate(tuple(e), coef)
        return out


def _perm_sign(p):
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def test_ideal_generators(A: AlgebraStructure) -> list[MPoly]:
    """``p0 = 1 - z*det(X)`` followed by the distinct nonzero ``x_i M_k x_j^T``."""
    spec, n = A.spec, A.dim
    names = ideal_variables(n)
    nv = len(names)

    def var(i, j):
        return 1 + i * n + j

    p0 = MPoly(spec, names, {(0,) * nv: spec.one()})
    for perm in itertools.permutations(range(n)):
        e = [0] * nv
        e[0] = 1
        for i, j in enumerate(perm):
            e[var(i, j)] += 1
        p0._accumulate(tuple(e), spec.convert(-_perm_sign(perm)))
    gens = [p0]
    for i, j in itertools.combinations(range(n), 2):
        for k in range(n):
            p = MPoly(spec, names)
            for a in range(n):
                for b in range(n):
                    c = A.c[a][b][k]
                    if c == 0:
                        continue
                    e = [0] * nv
                    e[var(i, a)] += 1
                    e[var(j, b)] += 1
                    p._accumulate(tuple(e), c)
            if not p.is_zero() and p not in gens:
                gens.append(p)
    return gens


# not a pytest test despite the name
test_ideal_generators.__test__ = False


def emit_test_ideal(A: AlgebraStructure) -> str:
    return "\n".join(g.to_text() for g in test_ideal_generators(A)) + "\n"


def parse_test_ideal(spec: FieldSpec, n: int, text: str) -> list[MPoly]:
    names = ideal_variables(n)
    return [MPoly.parse(spec, names, line) for line in text.splitlines() if line.strip()]
