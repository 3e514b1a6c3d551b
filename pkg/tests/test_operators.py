import pytest
import sympy

import oracles
from conftest import to_sympy
from macbranch.core import macdonald_P_expr
from macbranch.families import R_exact
from macbranch.operators import (
    DiffOperator,
    Dn_1,
    Dn_bc,
    Dn_c,
    apply,
    calD1_b,
    calD_eigenvalue,
    calE,
    dn_bc_on_P,
    macdonald_eigenvalue,
    qshift,
)
from macbranch.partitions import omega, partitions_upto
from macbranch.ring import ExactDivisionError, substitute, var

q, t, b, c = (var(s) for s in "qtbc")


def X(n):
    return [var(f"x{i}") for i in range(1, n + 1)]


def test_qshift_examples():
    x1, x2 = X(2)
    assert qshift(x1 + x2, 1) == q * x1 + x2
    assert qshift(1 / (1 - b * x1), 1) == 1 / (1 - b * q * x1)
    f = (x1 + b * x2**2) / (1 - x1 * x2)
    assert qshift(qshift(f, 2), 2, -1) == f
    with pytest.raises(ValueError):
        qshift(f, 1, 2)


def test_apply_examples():
    x1, x2 = X(2)
    assert apply(Dn_1(2), x1 + x2) == (q * t + 1) * (x1 + x2)
    assert apply(Dn_bc(1), 1) == 1 - c
    z = var("x1")
    R = z / (1 - b * z)
    assert apply(calD1_b(1), R) == R / q
    assert calD1_b(1)(R) == omega((1,), 1) * R


def test_operator_bounds():
    with pytest.raises(ValueError):
        Dn_1(5)
    with pytest.raises(ValueError):
        DiffOperator("nope", 2)


def test_asymmetric_input_is_rejected():
    x1, _ = X(2)
    with pytest.raises(ExactDivisionError, match="Vandermonde"):
        apply(Dn_1(2), x1)


def test_macdonald_operator_matches_sympy_oracle():
    f = to_sympy(macdonald_P_expr((2, 1), X(3)))
    ours = to_sympy(apply(Dn_1(3), macdonald_P_expr((2, 1), X(3))))
    assert sympy.simplify(ours - oracles.macdonald_operator(f, 3)) == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_macdonald_operator_eigen(n):
    for lam in partitions_upto(3, n):
        P = macdonald_P_expr(lam, X(n))
        assert apply(Dn_c(n), P) == macdonald_eigenvalue(lam, n) * P
        eig1 = sum((q ** lam.part(i) * t ** (n - i) for i in range(1, n + 1)), start=0 * q)
        assert apply(Dn_1(n), P) == eig1 * P


def test_Dn_c_first_order_term_is_Dn_1():
    # D_n(c) = 1 - c D_n^1 + O(c^2) on any symmetric input
    xs = X(2)
    f = macdonald_P_expr((2,), xs)
    image = apply(Dn_c(2), f)
    first = (substitute(image, {"c": 0}) - image) / c
    assert substitute(first, {"c": 0}) == apply(Dn_1(2), f)


@pytest.mark.parametrize("n", [1, 2])
def test_Dn_bc_on_R(n):
    for lam in partitions_upto(3, n):
        value = apply(Dn_bc(n), R_exact(lam, X(n)))
        assert value == R_exact(lam, X(n), b * q) * macdonald_eigenvalue(lam, n)


@pytest.mark.parametrize("n", [1, 2])
def test_calD_eigen(n):
    for lam in partitions_upto(3, n):
        R = R_exact(lam, X(n))
        assert apply(calD1_b(n), R) == calD_eigenvalue(lam, n) * R


def test_calE_lowers_degree_of_P():
    # E_n annihilates constants and is defined by the same subset sums
    assert apply(calE(2), 1) == 0


@pytest.mark.parametrize("n", [1, 2])
def test_Dn_bc_on_P(n):
    for mu in partitions_upto(2, n):
        computed, predicted = dn_bc_on_P(mu, n)
        assert computed == predicted
