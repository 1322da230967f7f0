import random
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from congrua import GF, QQ, FormFamily, Matrix, inverse

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIELDS = [QQ, GF(2), GF(3), GF(5), GF(7)]


def field_specs():
    return st.sampled_from(FIELDS)


def raw_scalars(spec, bound=4):
    if spec.p is None:
        return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, 3))
    return st.integers(0, spec.p - 1)


@st.composite
def symmetric_matrices(draw, spec, n, bound=3):
    vals = {}
    for i in range(n):
        for j in range(i, n):
            vals[i, j] = draw(st.integers(-bound, bound))
    return Matrix(spec, [[vals[min(i, j), max(i, j)] for j in range(n)] for i in range(n)])


@st.composite
def families(draw, spec=None, max_dim=3, max_forms=3):
    spec = spec or draw(field_specs())
    n = draw(st.integers(1, max_dim))
    m = draw(st.integers(1, max_forms))
    return FormFamily(spec, n, [draw(symmetric_matrices(spec, n)) for _ in range(m)])


def random_symmetric(rng, spec, n, lo=-2, hi=2):
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            M[i][j] = M[j][i] = rng.randint(lo, hi)
    return Matrix(spec, M)


def random_invertible(rng, spec, n, lo=-2, hi=2):
    while True:
        P = Matrix(spec, [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])
        try:
            inverse(P)
            return P
        except Exception:
            continue


def random_family(rng, spec, n, m):
    return FormFamily(spec, n, [random_symmetric(rng, spec, n) for _ in range(m)])


def orthogonalizable_family(rng, spec, n, m, zero_bias=0.3):
    """``{P D_k P^T}`` for random invertible P and diagonal D_k."""
    P = random_invertible(rng, spec, n)
    grams = []
    for _ in range(m):
        d = [0 if rng.random() < zero_bias else rng.randint(-2, 2) for _ in range(n)]
        grams.append(P.T @ Matrix.diag(spec, d) @ P)
    return FormFamily(spec, n, grams)


@pytest.fixture
def rng():
    return random.Random(20261015)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        terminalreporter.write_line(results[key])
