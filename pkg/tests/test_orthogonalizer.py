import random

import pytest
from hypothesis import given

from congrua import (GF, QQ, AlternatingEigenspace, FormFamily, Matrix, NonCommutingPair,
                     NonSplitMinimalPolynomial, SingleFormUnorthogonalizable, Subspace,
                     TooManyIndependentForms, UnsupplementedRadical, Verdict,
                     certificate_from_dict, erdamus_step, inverse, joint_eigenspaces,
                     orthogonalize, solve_nondegenerate, solve_zero_radical, verify)
from congrua.errors import SingularPivot
from congrua.linalg import restrict_form

from conftest import families, orthogonalizable_family, random_family, random_invertible
from oracle import brute_force_orthogonalizable
from paper_data import CHAR2, F2_NO_COMBINATION, GM, Q3, Q4, Q6, THREE


def spec_of(example):
    f = example["field"]
    return QQ if f == "Q" else GF(int(f.split(":")[1]))


def fam(example):
    return FormFamily.from_lists(spec_of(example), example["matrices"])


GOLDEN_YES = [Q3, CHAR2, Q4, F2_NO_COMBINATION, Q6]

NO_CASES = {
    NonCommutingPair: (QQ, [[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                            [[1, 0, 0], [0, 2, 0], [0, 0, 3]],
                            [[0, 1, 0], [1, 0, 0], [0, 0, 0]]]),
    NonSplitMinimalPolynomial: (QQ, GM["matrices"]),
    AlternatingEigenspace: (GF(2), [[[1, 0, 0], [0, 0, 1], [0, 1, 0]],
                                    [[1, 0, 0], [0, 0, 0], [0, 0, 0]]]),
    UnsupplementedRadical: (QQ, [[[0, 1, 0], [1, 0, 0], [0, 0, 0]],
                                 [[0, 0, 1], [0, 0, 0], [1, 0, 0]]]),
    SingleFormUnorthogonalizable: (GF(2), [[[0, 1], [1, 0]], [[1, 0], [0, 0]]]),
    TooManyIndependentForms: (QQ, THREE["matrices"]),
}


@pytest.mark.parametrize("example", GOLDEN_YES, ids=lambda e: e["field"] + str(len(e["matrices"][0])))
def test_golden_yes(example):
    F = fam(example)
    res = orthogonalize(F)
    assert res.verdict is Verdict.YES
    assert verify(F, res.basis)
    assert res.diagonals == [restrict_form(g, res.basis).diagonal() for g in F]


@pytest.mark.parametrize("example", [Q3, CHAR2, Q4, Q6], ids=["q3", "char2", "q4", "q6"])
def test_printed_bases_and_diagonals(example):
    F = fam(example)
    P = Matrix(F.spec, example["basis"])
    assert verify(F, P)
    got = [[x.value for x in restrict_form(g, P).diagonal()] for g in F]
    assert got == [[F.spec.convert(x) for x in d] for d in example["diagonals"]]


def test_printed_basis_without_combination():
    F = fam(F2_NO_COMBINATION)
    assert verify(F, Matrix(F.spec, F2_NO_COMBINATION["basis"]))


def test_no_combination_family_goes_through_a_split():
    res = orthogonalize(fam(F2_NO_COMBINATION))
    assert res.is_yes
    assert res.decomposition[-1].kind == "ErdamusSplit"


def test_degenerate_example_structure():
    res = orthogonalize(fam(Q4))
    kinds = [n.kind for n in res.decomposition]
    assert kinds == ["RadicalBlock", "NondegenerateBlock"]
    assert res.decomposition[0].subspace == Subspace.span(QQ, 4, Q4["radical"])
    assert res.basis.rows[0] == tuple(QQ.convert(x) for x in Q4["radical"][0])


def test_six_dim_example_direct_split():
    F = fam(Q6)
    res = erdamus_step(F)
    assert res.is_yes and verify(F, res.basis)
    root = res.decomposition[-1]
    assert root.kind == "ErdamusSplit" and len(root.children) == 2


@pytest.mark.parametrize("cls", list(NO_CASES), ids=lambda c: c.kind)
def test_certificates(cls):
    spec, mats = NO_CASES[cls]
    F = FormFamily.from_lists(spec, mats)
    res = orthogonalize(F)
    assert res.verdict is Verdict.NO
    cert = res.certificate
    assert isinstance(cert, cls)
    assert cert.check(F)
    again = certificate_from_dict(spec, cert.to_dict())
    assert again.check(F)
    if spec.p is not None:
        assert not brute_force_orthogonalizable(spec.p, mats, len(mats[0]))


def test_gm_certificate_polynomial():
    res = orthogonalize(fam(GM))
    assert str(res.certificate.polynomial) == "x^2 + 1"


def test_three_forms_certificate():
    cert = orthogonalize(fam(THREE)).certificate
    assert (cert.count, cert.dim) == (3, 2)


def test_certificate_rejects_other_family():
    cert = orthogonalize(fam(GM)).certificate
    other = FormFamily.from_lists(QQ, [[[1, 0], [0, 1]], [[1, 0], [0, 2]]])
    assert not cert.check(other)


def test_gm_over_f5_is_yes():
    # -1 is a square mod 5
    F = FormFamily.from_lists(GF(5), GM["matrices"])
    res = orthogonalize(F)
    assert res.is_yes and verify(F, res.basis)


def test_solve_nondegenerate_worked_example():
    F = fam(Q3)
    res = solve_nondegenerate(F, 0)
    assert res.is_yes and verify(F, res.basis)
    blocks = [Subspace.of_rows(Matrix(QQ, [r])) for r in res.basis.rows]
    expected = {Subspace.span(QQ, 3, [v]) for v in Q3["basis"]}
    assert set(blocks) == expected


def test_solve_nondegenerate_rejects_singular_pivot():
    with pytest.raises(SingularPivot):
        solve_nondegenerate(fam(Q3), 1)


def test_solve_zero_radical():
    F = fam(F2_NO_COMBINATION)
    res = solve_zero_radical(F)
    assert res.is_yes and verify(F, res.basis)


def test_zero_and_edge_families():
    assert orthogonalize(FormFamily(QQ, 0, [])).is_yes
    F = FormFamily(QQ, 2, [Matrix.zeros(QQ, 2, 2)])
    res = orthogonalize(F)
    assert res.is_yes and verify(F, res.basis)
    assert orthogonalize(FormFamily(QQ, 3, [])).is_yes


def test_verify_rejects():
    F = fam(Q3)
    assert not verify(F, Matrix.identity(QQ, 3))
    P = Matrix(QQ, [[1, -1, 0], [1, -1, 0], [1, 0, -1]])
    assert not verify(F, P)


def test_joint_eigenspaces_worked_example():
    M0, M1, M2 = (Matrix(QQ, m) for m in Q3["matrices"])
    inv0 = inverse(M0)
    blocks = joint_eigenspaces([M1 @ inv0, M2 @ inv0])
    got = dict(blocks)
    assert got[Subspace.span(QQ, 3, [[1, -1, 0]])] == (0, QQ.convert("-1/2"))
    assert got[Subspace.span(QQ, 3, [[-1, 1, 1]])] == (1, -1)
    assert got[Subspace.span(QQ, 3, [[1, 0, -1]])] == (-1, -1)


def test_joint_eigenspaces_char2_example():
    M0, M1, M2 = (Matrix(GF(2), m) for m in CHAR2["matrices"])
    assert M1 @ inverse(M0) == Matrix(GF(2), CHAR2["operators"][0])
    assert M2 @ inverse(M0) == Matrix(GF(2), CHAR2["operators"][1])
    blocks = joint_eigenspaces([M1 @ inverse(M0), M2 @ inverse(M0)])
    assert {S for S, _ in blocks} == {Subspace.span(GF(2), 3, [v]) for v in CHAR2["basis"]}


@given(families(max_dim=3))
def test_solver_soundness(F):
    res = orthogonalize(F)
    if res.is_yes:
        assert verify(F, res.basis)
    else:
        assert res.certificate.check(F)


@pytest.mark.parametrize("spec", [GF(3), GF(5), QQ])
def test_constructed_families_are_yes(spec):
    rng = random.Random(17)
    for _ in range(80):
        n = rng.randint(1, 4)
        F = orthogonalizable_family(rng, spec, n, rng.randint(1, 4))
        res = orthogonalize(F)
        assert res.is_yes and verify(F, res.basis)


def test_congruence_invariance_sample():
    rng = random.Random(23)
    for spec in (GF(3), GF(5)):
        for _ in range(60):
            n = rng.randint(1, 4)
            if rng.random() < 0.5:
                F = orthogonalizable_family(rng, spec, n, 2)
            else:
                F = random_family(rng, spec, n, 2)
            Q = random_invertible(rng, spec, n)
            G = FormFamily(spec, n, [Q @ g @ Q.T for g in F])
            assert orthogonalize(F).is_yes == orthogonalize(G).is_yes
