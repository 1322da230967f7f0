import itertools
import random

import pytest
import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from congrua import (GF, QQ, AlgebraStructure, Matrix, NonSplitMinimalPolynomial, det,
                     detect_evolution, emit_test_ideal, forms_from_algebra, parse_test_ideal,
                     square_table, structure_matrix)
from congrua.errors import NotCommutative
from congrua.evolution import ideal_variables

from conftest import orthogonalizable_family
from paper_data import GM, GM_IDEAL_CHAR2, GM_IDEAL_Q, Q6

_TRANSFORMS = standard_transformations + (convert_xor,)


def sym(text):
    names = {n: sympy.Symbol(n) for n in ideal_variables(3)}
    return sympy.expand(parse_expr(text, local_dict=names, transformations=_TRANSFORMS))


def same_up_to_sign(a, b, modulus=None):
    if modulus is None:
        return sympy.expand(a - b) == 0 or sympy.expand(a + b) == 0
    gens = sorted(a.free_symbols | b.free_symbols, key=str)
    pa = sympy.Poly(a, *gens, modulus=modulus)
    pb = sympy.Poly(b, *gens, modulus=modulus)
    return (pa - pb).is_zero or (pa + pb).is_zero


def gm_algebra(spec):
    return AlgebraStructure.from_grams(spec, GM["matrices"])


def test_non_commutative_rejected():
    c = [[[1, 0], [0, 1]], [[1, 1], [0, 0]]]  # e1 e2 != e2 e1
    with pytest.raises(NotCommutative):
        AlgebraStructure(QQ, c)


def test_forms_are_symmetric_and_recover_grams():
    A = gm_algebra(QQ)
    F = forms_from_algebra(A)
    assert [g.to_lists() for g in F] == [Matrix(QQ, m).to_lists() for m in GM["matrices"]]
    for g in F:
        assert g.is_symmetric()


def test_product_matches_forms():
    rng = random.Random(4)
    A = AlgebraStructure.from_grams(QQ, Q6["matrices"])
    F = forms_from_algebra(A)
    for _ in range(20):
        x = [rng.randint(-2, 2) for _ in range(6)]
        y = [rng.randint(-2, 2) for _ in range(6)]
        X, Y = Matrix(QQ, [x]), Matrix(QQ, [y])
        assert A.product(x, y) == tuple((X @ g @ Y.T).rows[0][0] for g in F)


def test_two_dim_algebra_over_f2_is_evolution():
    rep = detect_evolution(gm_algebra(GF(2)))
    assert rep.is_evolution
    U = rep.natural_basis
    assert A_products_vanish(gm_algebra(GF(2)), U)


def test_two_dim_algebra_over_q_is_not():
    rep = detect_evolution(gm_algebra(QQ))
    assert not rep.is_evolution
    assert isinstance(rep.certificate, NonSplitMinimalPolynomial)
    assert str(rep.certificate.polynomial) == "x^2 + 1"
    assert rep.certificate.check(forms_from_algebra(gm_algebra(QQ)))


def test_two_dim_algebra_over_f5_is_evolution():
    assert detect_evolution(gm_algebra(GF(5))).is_evolution


def A_products_vanish(A, U):
    for p, q in itertools.permutations(range(A.dim), 2):
        if any(v != 0 for v in A.product(U.rows[p], U.rows[q])):
            return False
    return True


def structure_consistent(A, U, C):
    """u_q^2 from the table equals sum_p C[p][q] u_p."""
    for q, u in enumerate(U.rows):
        lhs = A.product(u, u)
        rhs = [A.spec.zero()] * A.dim
        for p, up in enumerate(U.rows):
            rhs = [A.spec.norm(a + C.rows[p][q] * b) for a, b in zip(rhs, up)]
        if tuple(rhs) != lhs:
            return False
    return True


def test_six_dim_algebra():
    A = AlgebraStructure.from_grams(QQ, Q6["matrices"])
    rep = detect_evolution(A)
    assert rep.is_evolution
    assert A_products_vanish(A, rep.natural_basis)
    assert structure_consistent(A, rep.natural_basis, rep.structure_matrix)
    U = Matrix(QQ, Q6["basis"])
    assert A_products_vanish(A, U)
    assert structure_consistent(A, U, structure_matrix(A, U))


def test_printed_six_dim_table_lists_squares_in_input_basis():
    # the printed 6x6 table has row q = u_q^2 in e_1..e_6, which is what
    # square_table returns; it is not the natural-basis structure matrix
    A = AlgebraStructure.from_grams(QQ, Q6["matrices"])
    U = Matrix(QQ, Q6["basis"])
    assert square_table(A, U) == Matrix(QQ, Q6["printed_structure_matrix"])
    assert structure_matrix(A, U) != Matrix(QQ, Q6["printed_structure_matrix"])


@pytest.mark.parametrize("spec", [GF(3), GF(5), QQ])
def test_structure_matrix_consistency_random(spec):
    rng = random.Random(8)
    for _ in range(30):
        n = rng.randint(1, 3)
        F = orthogonalizable_family(rng, spec, n, n)
        A = AlgebraStructure.from_grams(spec, F.grams)
        rep = detect_evolution(A)
        assert rep.is_evolution
        assert A_products_vanish(A, rep.natural_basis)
        assert structure_consistent(A, rep.natural_basis, rep.structure_matrix)


def test_ideal_matches_worked_example_over_q():
    lines = emit_test_ideal(gm_algebra(QQ)).splitlines()
    assert len(lines) == 3
    got = [sym(s) for s in lines]
    want = [sym(s) for s in GM_IDEAL_Q]
    assert all(any(same_up_to_sign(g, w) for g in got) for w in want)


def test_ideal_matches_worked_example_char2():
    lines = emit_test_ideal(gm_algebra(GF(2))).splitlines()
    assert len(lines) == 2
    got = [sym(s) for s in lines]
    want = [sym(s) for s in GM_IDEAL_CHAR2]
    assert all(any(same_up_to_sign(g, w, modulus=2) for g in got) for w in want)


def test_ideal_text_format():
    text = emit_test_ideal(gm_algebra(QQ))
    assert text.splitlines()[0] == "-1*z*x1_1*x2_2 + 1*z*x1_2*x2_1 + 1"
    assert text.endswith("\n")


def test_zero_algebra_ideal_is_p0_only():
    A = AlgebraStructure(QQ, [[[0, 0], [0, 0]], [[0, 0], [0, 0]]])
    lines = emit_test_ideal(A).splitlines()
    assert len(lines) == 1 and lines[0].startswith("-1*z")


def test_ideal_roundtrip():
    for spec in (QQ, GF(2), GF(7)):
        A = gm_algebra(spec)
        text = emit_test_ideal(A)
        polys = parse_test_ideal(spec, 2, text)
        assert "\n".join(p.to_text() for p in polys) + "\n" == text


@pytest.mark.parametrize("spec, mats", [
    (GF(2), GM["matrices"]), (GF(5), GM["matrices"]), (QQ, Q6["matrices"]),
], ids=["gm-f2", "gm-f5", "six-q"])
def test_ideal_vanishes_at_natural_basis(spec, mats):
    A = AlgebraStructure.from_grams(spec, mats)
    rep = detect_evolution(A)
    U = rep.natural_basis
    values = {"z": det(U).inv()}
    for i, row in enumerate(U.rows):
        for j, x in enumerate(row):
            values[f"x{i + 1}_{j + 1}"] = x
    for p in parse_test_ideal(A.spec, A.dim, emit_test_ideal(A)):
        assert p.evaluate(values) == 0
