import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import SYMS, to_sympy
from macbranch.core import macdonald_P_expr, principal_P, schur_det, skew_P_expr
from macbranch.families import (
    R_closed,
    R_exact,
    R_norm,
    R_norm_skew,
    R_principal,
    R_series,
    absymm,
    b_taylor,
    eval_symmetry,
    family_M,
    family_O,
    family_R_ab,
    interpolation_M,
    lemma_bindep,
    lemma_clim,
    lemma_reduce,
    mm_consistency,
    principal_letters,
    spectral_point,
)
from macbranch.partitions import (
    Partition,
    c_factors,
    contained_in,
    gen_poch,
    partitions_of,
    partitions_upto,
)
from macbranch.ring import RatFunc, TruncSeries, qpoch_finite, rsum, substitute, var

q, t, a, b, c, z = (var(s) for s in "qtabcz")


def X(n):
    return [var(f"x{i}") for i in range(1, n + 1)]


def hat_factor(lam, mu=()):
    lam, mu = Partition(lam), Partition(mu)
    return t ** (lam.n() - mu.n()) * c_factors(mu).c_prime / c_factors(lam).c_prime


# -- M, O, R(a, b)


def test_M_examples():
    assert family_M((), X(2)) == 1
    for lam in [(1,), (2,), (3,)]:
        lam = Partition(lam)
        expected = t ** lam.n() * z**lam.weight * gen_poch(a / z, lam) * gen_poch(b, lam) / c_factors(lam).c
        assert family_M(lam, [z]) == expected


def test_M_top_component_is_P():
    value = family_M((1,), X(2), t, t)
    rest = value - macdonald_P_expr((1,), X(2))
    assert substitute(rest, {"x1": 0, "x2": 0}) == rest


@pytest.mark.parametrize("n", [1, 2])
def test_interpolation_M_vanishes_off_its_own_point(n):
    for lam in partitions_upto(3, n):
        M = interpolation_M(lam, X(n))
        for mu in partitions_upto(lam.weight, n):
            point = {f"x{i}": v for i, v in enumerate(spectral_point(mu, n), 1)}
            assert substitute(M, point).is_zero() == (mu != lam)


def test_O_examples():
    assert family_O((), X(2)) == 1
    assert family_O((1,), [z]) == (1 - a / z) * (1 - b * z) / b
    with pytest.raises(ValueError):
        family_O((1,), [z], a, 0)


@pytest.mark.parametrize("lam", partitions_upto(2, 2))
def test_O_inversion_symmetry(lam):
    xs = X(2)
    inverted = [1 / x for x in xs]
    assert family_O(lam, xs, a, b) == (a / b) ** lam.weight * family_O(lam, inverted, b, a)


def test_R_ab_examples():
    assert family_R_ab((), X(2)) == 1
    assert family_R_ab((1,), [z]) == a * (1 - z / a) / (1 - b * z)


@pytest.mark.parametrize("family", [family_M, family_O, family_R_ab, R_exact])
@pytest.mark.parametrize("lam", partitions_upto(3, 3))
def test_families_symmetric_in_three_letters(family, lam):
    x1, x2, x3 = X(3)
    base = family(lam, [x1, x2, x3])
    assert family(lam, [x2, x1, x3]) == base
    assert family(lam, [x1, x3, x2]) == base


# -- R(X; b)


def test_R_exact_examples():
    for k in range(4):
        assert R_exact((k,) if k else (), [z]) == z**k / qpoch_finite(b * z, k)
    x1, x2 = X(2)
    expected = (x1 + x2 - b * (1 + 1 / t) * x1 * x2) / ((1 - b * x1) * (1 - b * x2))
    assert R_exact((1,), [x1, x2]) == expected


@pytest.mark.parametrize("lam", partitions_upto(4, 3))
def test_R_at_b_zero_is_P(lam):
    assert R_exact(lam, X(3), 0) == macdonald_P_expr(lam, X(3))


def test_R_vanishes_when_too_long():
    assert R_exact((1, 1, 1), X(2)).is_zero()
    assert R_exact((2, 1), [z]).is_zero()


@pytest.mark.parametrize("lam", partitions_upto(3, 2))
def test_R_denominator_bound(lam):
    xs = X(2)
    bound = 1
    for x in xs:
        for i, part in enumerate(lam, 1):
            bound = bound * qpoch_finite(b * x * t ** (1 - i), part)
    # what is left over is a scalar in q and t from the branching coefficients
    product = R_exact(lam, xs) * bound
    assert RatFunc(product.denominator_poly).free_symbols() <= {"q", "t"}


def test_R_series_examples():
    assert R_series((), ["x1"], cutoff=3) == TruncSeries.one(["x1"], 3)
    x = var("x1")
    assert R_series((1,), ["x1"], cutoff=2) == TruncSeries.from_ratfunc(x + b * x**2, ["x1"], 2)
    assert R_series((1, 1), ["x1"], cutoff=3) == TruncSeries.constant(0, ["x1"], 3)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_R_series_matches_sympy_expansion(k):
    x, B, Q = SYMS["x1"], SYMS["b"], SYMS["q"]
    expr = x**k / sympy.prod([1 - B * Q**i * x for i in range(k)])
    poly = sympy.series(expr, x, 0, 6).removeO()
    series = R_series((k,), ["x1"], cutoff=5)
    for d in range(6):
        assert sympy.simplify(to_sympy(series.coefficient((d,))) - poly.coeff(x, d)) == 0


def test_R_norm_examples():
    assert R_norm_skew((2, 1), (2, 1), []) == 1
    assert R_norm((1,), [z]) == z / ((1 - q) * (1 - b * z))
    assert R_norm_skew((1,), (), [z]) == R_norm((1,), [z])


@pytest.mark.parametrize("lam", partitions_upto(3))
def test_R_norm_skew_at_b_zero(lam):
    for mu in contained_in(lam):
        assert R_norm_skew(lam, mu, X(2), 0) == hat_factor(lam, mu) * skew_P_expr(lam, mu, X(2))


@pytest.mark.parametrize("lam", partitions_upto(3))
def test_R_norm_skew_cobranching(lam):
    x1, x2, x3 = X(3)
    for mu in contained_in(lam):
        split = rsum(
            R_norm_skew(lam, nu, [x1]) * R_norm_skew(nu, mu, [x2, x3])
            for nu in contained_in(lam)
            if nu.contains(mu)
        )
        assert R_norm_skew(lam, mu, [x1, x2, x3]) == split


# -- closed forms and specialisations


def test_R_closed_examples():
    x1, x2 = X(2)
    assert R_closed((1,), [x1, x2], which="t=1") == x1 / (1 - b * x1) + x2 / (1 - b * x2)
    assert R_closed((3,), [z]) == z**3 / qpoch_finite(b * z, 3)
    assert R_closed((2, 1), [x1, x2], 0) == schur_det((2, 1), 2).to_expr()
    with pytest.raises(ValueError):
        R_closed((1,), [z], which="t=2")


@pytest.mark.parametrize("lam", partitions_upto(3, 2))
def test_R_closed_agrees_with_branching(lam):
    xs = X(2)
    value = R_exact(lam, xs)
    assert R_closed(lam, xs, which="t=q") == substitute(value, {"t": q})
    assert R_closed(lam, xs, which="t=1") == substitute(value, {"t": 1})


def test_R_principal_examples():
    assert R_principal((1,), 2) == (1 + t) / (1 - b * t)
    assert R_principal((), 3) == 1
    assert R_principal((2, 1), 2, 0) == principal_P((2, 1), 2)
    with pytest.raises(ValueError):
        R_principal((1, 1, 1), 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_R_principal_matches_branching(n):
    for lam in partitions_upto(3, n):
        assert R_principal(lam, n) == R_exact(lam, principal_letters(n))
        assert R_principal(lam, n, b, a) == R_exact(lam, principal_letters(n, a))


# -- lemmas


@pytest.mark.parametrize("lam", partitions_upto(3, 2))
def test_lemma_bindep(lam):
    assert lemma_bindep(lam, 2)


def test_lemma_bindep_one_letter_by_hand():
    assert R_exact((1,), [c * z]) == c * z / (1 - b * c * z)
    assert lemma_bindep((1,), 1)


@pytest.mark.parametrize("n", [1, 2])
def test_lemma_clim(n):
    for lam in partitions_upto(3, n):
        degree, lead, expected = lemma_clim(lam, n)
        assert degree == 0
        assert lead == expected


def test_lemma_clim_one_box():
    assert lemma_clim((1,), 1)[1:] == (-1 / b, -1 / b)


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1), (2, 2), (3, 1)])
def test_lemma_reduce(lam):
    assert lemma_reduce(lam, len(lam))


def test_lemma_reduce_needs_full_length():
    with pytest.raises(ValueError):
        lemma_reduce((1,), 2)


def test_eval_symmetry_trivial_case():
    lhs, rhs = eval_symmetry((1,), (), 1)
    assert lhs == 1 and rhs == 1


@pytest.mark.parametrize("n", [1, 2])
def test_eval_symmetry(n):
    for lam in partitions_upto(2, n):
        for mu in partitions_upto(2, n):
            lhs, rhs = eval_symmetry(lam, mu, n)
            assert lhs == rhs


@pytest.mark.parametrize("lam", partitions_upto(3, 2))
def test_absymm(lam):
    lhs, rhs = absymm(lam, 2)
    assert lhs == rhs


@pytest.mark.parametrize("mu", partitions_upto(2, 2))
def test_b_taylor(mu):
    for computed, predicted in b_taylor(mu, 2, order=2):
        assert computed == predicted


@pytest.mark.parametrize("lam", [(), (1,), (2,), (1, 1), (2, 1), (2, 2)])
def test_mm_consistency(lam):
    lhs, rhs = mm_consistency(lam, 2, 2)
    assert lhs == rhs


def test_mm_rejects_large_parts():
    with pytest.raises(ValueError):
        mm_consistency((3,), 2, 2)


@given(st.integers(0, 3).flatmap(lambda w: st.sampled_from(partitions_of(w, 2))), st.integers(-2, 2))
@settings(max_examples=20, deadline=None)
def test_homogeneity_in_scaled_letters(lam, k):
    # R(q^k X; b) = q^(k|lam|) R(X; b q^k)
    xs = X(2)
    scaled = [q**k * x for x in xs]
    assert R_exact(lam, scaled) == q ** (k * lam.weight) * R_exact(lam, xs, b * q**k)
