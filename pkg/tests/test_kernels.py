import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbitint import kernels
from orbitint.kernels import _pykernels as py

ck = pytest.importorskip("orbitint.kernels._ckernels")

bounds = st.fractions(min_value=1, max_value=Fraction(9, 2), max_denominator=5).map(lambda B: B * B)


@given(bounds)
def test_count_quadratics_equivalent(X):
    assert ck.count_quadratics(X.numerator, X.denominator) == py.count_quadratics(X.numerator, X.denominator)


@given(bounds, st.integers(1, 20))
def test_list_quadratics_equivalent(X, a):
    P, Q = X.numerator, X.denominator
    assert ck.list_quadratics(P, Q, a) == py.list_quadratics(P, Q, a)


@given(
    bounds,
    st.sampled_from([(-2, 0, 1), (-5, 1), (1, 1, 1), (-3, 2), (-2, 0, 0, 1), (-7, 0, 3)]),
    st.lists(st.sampled_from([2, 3, 5, 7]), unique=True, max_size=3),
)
def test_hit_candidates_equivalent(X, g, primes):
    P, Q = X.numerator, X.denominator
    primes = sorted(primes)
    assert ck.quadratic_hit_candidates(P, Q, g, primes) == py.quadratic_hit_candidates(P, Q, g, primes)


def test_overflow_falls_back_to_python():
    with pytest.raises(OverflowError):
        ck.count_quadratics(1 << 40, 1)
    # the dispatcher reroutes oversized inputs
    assert kernels.list_quadratics(1 << 40, (1 << 40) - 1, 1) == py.list_quadratics(1 << 40, (1 << 40) - 1, 1)


def test_small_resultant():
    assert kernels.small_resultant((-2, 0, 1), (-3, 0, 1)) == 1


def test_backend_selection_env():
    code = "from orbitint import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, ORBITINT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    env.pop("ORBITINT_PURE_PYTHON")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "cython"


def test_pure_python_counts_agree():
    code = "from orbitint.enumeration import count_points; print(count_points(2, 3).total)"
    env = dict(os.environ, ORBITINT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert int(out.stdout) == 4446
