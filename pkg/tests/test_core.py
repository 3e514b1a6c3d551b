import pytest
import sympy
from hypothesis import given, settings, strategies as st

import oracles
from conftest import to_sympy
from macbranch.core import (
    MACDONALD_RULE,
    SCHUR_RULE,
    StructureCache,
    SymFunc,
    branch_build,
    macdonald_P,
    macdonald_P_expr,
    monomial_symmetric,
    phi,
    phi_psi_prime,
    principal_P_hat,
    psi,
    psi_prime,
    qbinom,
    schur_det,
    skewQ_diff,
    structure_constants,
    to_P_basis,
)
from macbranch.partitions import (
    Partition,
    c_factors,
    contained_in,
    gen_poch,
    hstrip_successors,
    is_horizontal_strip,
    is_vertical_strip,
    partitions_of,
    partitions_upto,
    vstrip_successors,
)
from macbranch.ring import qpoch_finite, substitute, var

q, t, a, b, c = (var(s) for s in "qtabc")


def X(n):
    return [var(f"x{i}") for i in range(1, n + 1)]


# -- branching coefficients


def test_psi_examples():
    assert psi((2, 1), (2, 1)) == 1
    assert psi((1,), ()) == 1
    assert psi((2,), (1,)) == (1 - t) * (1 - q**2) / ((1 - q) * (1 - q * t))


def test_phi_and_psi_prime_examples():
    ph, pp = phi_psi_prime((2, 1), (2, 1))
    assert ph == 1 and pp == 1
    assert psi_prime((1, 1), (1,)) == (1 - q) * (1 - t**2) / ((1 - t) * (1 - q * t))
    assert phi((1,), ()) == (1 - t) / (1 - q)


@given(st.integers(0, 5).flatmap(lambda w: st.sampled_from(partitions_of(w))))
@settings(max_examples=25, deadline=None)
def test_phi_is_b_ratio_times_psi(lam):
    for mu in contained_in(lam):
        if not is_horizontal_strip(lam, mu):
            continue
        expected = c_factors(lam).b / c_factors(mu).b * psi(lam, mu)
        assert phi(lam, mu) == expected


# -- branching construction


def test_branch_examples():
    x1, x2 = X(2)
    assert branch_build(SCHUR_RULE, (1,), X(2)) == x1 + x2
    assert branch_build(MACDONALD_RULE, (1, 1), X(2)) == x1 * x2
    expected = x1**2 + x2**2 + (1 + q) * (1 - t) / (1 - q * t) * x1 * x2
    assert macdonald_P_expr((2,), X(2)) == expected


def test_monomial_expansion_examples():
    assert macdonald_P((1,), 3) == SymFunc(3, "monomial", {(1,): 1})
    assert macdonald_P((1, 1), 2) == SymFunc(2, "monomial", {(1, 1): 1})
    at_q = macdonald_P((2,), 2).specialize({"t": q})
    assert at_q == SymFunc(2, "monomial", {(2,): 1, (1, 1): 1})


@pytest.mark.parametrize("lam, n", [((2,), 2), ((1, 1), 2), ((2, 1), 2), ((3,), 2), ((2, 1), 3)])
def test_macdonald_P_matches_eigenfunction_oracle(lam, n):
    expected = oracles.macdonald_P(lam, n)
    assert sympy.simplify(to_sympy(macdonald_P_expr(lam, X(n))) - expected) == 0


@pytest.mark.parametrize("lam", partitions_upto(4, 3))
def test_tableau_and_branching_routes_agree(lam):
    assert macdonald_P(lam, 3).to_expr() == macdonald_P_expr(lam, X(3))


@pytest.mark.parametrize("lam", partitions_upto(4, 4))
def test_symmetry_under_transpositions(lam):
    xs = X(4)
    for rule in (SCHUR_RULE, MACDONALD_RULE):
        base = branch_build(rule, lam, xs)
        for i in range(3):
            swapped = xs[:i] + [xs[i + 1], xs[i]] + xs[i + 2 :]
            assert branch_build(rule, lam, swapped) == base


@pytest.mark.parametrize("lam", partitions_upto(4, 3))
def test_stability_under_setting_last_letter_to_zero(lam):
    xs = X(4)
    assert macdonald_P_expr(lam, xs[:3] + [0]) == macdonald_P_expr(lam, xs[:3])


# -- Schur functions


def test_schur_det_examples():
    x1, x2 = X(2)
    assert schur_det((1,), 2).to_expr() == x1 + x2
    assert schur_det((2, 1), 2).to_expr() == x1**2 * x2 + x1 * x2**2
    assert schur_det((1, 1, 1), 2) == SymFunc(2, "monomial", {})


@pytest.mark.parametrize("lam", partitions_upto(4, 3))
def test_schur_det_matches_bialternant_oracle(lam):
    assert sympy.expand(to_sympy(schur_det(lam, 3).to_expr()) - oracles.schur(lam, 3)) == 0


# -- basis change and structure constants


def test_to_P_basis_examples():
    assert to_P_basis(SymFunc(2, "monomial", {(1,): 1})) == SymFunc(2, "P", {(1,): 1})


@pytest.mark.parametrize("lam", partitions_upto(4, 3))
def test_to_P_basis_inverts_expansion(lam):
    assert to_P_basis(macdonald_P(lam, 3)) == SymFunc(3, "P", {lam: 1})


def test_structure_constants_of_one_box_squared():
    f = structure_constants((1,), (1,))
    assert set(f) == {Partition((2,)), Partition((1, 1))}
    assert f[Partition((2,))] == 1 + q
    assert f[Partition((1, 1))] == (1 + t) / t


@pytest.mark.parametrize("nu", partitions_upto(3))
def test_structure_constants_with_empty_partition(nu):
    assert structure_constants((), nu) == {nu: 1}


@pytest.mark.parametrize("mu, nu", [((1,), (1,)), ((1,), (2,)), ((1,), (1, 1)), ((2,), (1, 1))])
def test_structure_constants_reproduce_products(mu, nu):
    xs = X(len(mu) + len(nu))
    hat = lambda lam: t ** Partition(lam).n() / c_factors(Partition(lam)).c_prime * macdonald_P_expr(lam, xs)
    lhs = hat(mu) * hat(nu)
    rhs = sum((f * hat(lam) for lam, f in structure_constants(mu, nu).items()), start=0 * q)
    assert lhs == rhs


def test_pieri_coefficients():
    """``P_mu g_r`` expands with phi on horizontal strips, ``P_mu e_r`` with
    psi' on vertical strips."""
    n = 3
    xs = X(n)
    for mu in partitions_upto(3, n):
        for r in range(1, 4):
            if mu.weight + r > 5:
                continue
            g = macdonald_P_expr((r,), xs) * qpoch_finite(t, r) / qpoch_finite(q, r)
            e = monomial_symmetric((1,) * r, xs)
            pg = to_P_basis(SymFunc.from_expr(macdonald_P_expr(mu, xs) * g, n))
            pe = to_P_basis(SymFunc.from_expr(macdonald_P_expr(mu, xs) * e, n))
            expected_g = {lam: phi(lam, mu) for lam in hstrip_successors(mu, r, n)}
            expected_e = {lam: psi_prime(lam, mu) for lam in vstrip_successors(mu, r, n)}
            assert pg == SymFunc(n, "P", expected_g)
            assert pe == SymFunc(n, "P", expected_e)


# -- lambda-ring skew Q and binomials


def test_skewQ_examples():
    assert skewQ_diff((2, 1), (2, 1), a, b) == 1
    for lam in partitions_upto(3):
        assert skewQ_diff(lam, (), 1, c) == gen_poch(c, lam)
    assert skewQ_diff((1,), (), a, b) == a - b


@pytest.mark.parametrize("lam", partitions_upto(5))
def test_skewQ_at_q_one_is_signed_psi_prime(lam):
    # the identity holds for the unnormalised Q, so undo the normalisation
    for mu in contained_in(lam):
        norm = t ** (lam.n() - mu.n()) * c_factors(mu).c_prime / c_factors(lam).c_prime
        value = norm * skewQ_diff(lam, mu, q, 1)
        if is_vertical_strip(lam, mu):
            assert value == (-1) ** (lam.weight - mu.weight) * psi_prime(lam, mu)
        else:
            assert value == 0


def test_qbinom_examples():
    assert qbinom((2,), (1,)) == 1 + q
    assert qbinom((2, 1), (2, 1)) == 1
    assert qbinom((1, 1), (1,)).subs({"t": q}) == (1 + q) / q
    assert qbinom((1, 1), (1,), "closed-t=q") == (1 + q) / q
    assert qbinom((1, 1), (1,), "recursion").subs({"t": q}) == (1 + q) / q


@pytest.mark.parametrize("lam", partitions_upto(4))
def test_qbinom_conjugation_symmetry(lam):
    for mu in contained_in(lam):
        swapped = substitute(qbinom(lam.conjugate(), mu.conjugate()), {"q": 1 / t, "t": 1 / q})
        assert qbinom(lam, mu) == swapped


def test_qbinom_rejects_small_working_n():
    with pytest.raises(ValueError):
        qbinom((1, 1), (1,), "recursion", n=1)


# -- principal specialisation


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_principal_specialisation(n):
    pts = [t ** (i - 1) for i in range(1, n + 1)]
    for lam in partitions_upto(4, n):
        hat = t ** lam.n() / c_factors(lam).c_prime * macdonald_P_expr(lam, pts)
        assert principal_P_hat(lam, n) == hat
        at_q = substitute(hat, {"t": q})
        assert at_q == substitute(schur_det(lam, n).to_expr(), {f"x{i}": q ** (i - 1) for i in range(1, n + 1)}) * substitute(
            t ** lam.n() / c_factors(lam).c_prime, {"t": q}
        )


# -- structure-constant cache


def test_cache_round_trip(tmp_path):
    cache = StructureCache(tmp_path)
    values = {Partition((2,)): 1 + q, Partition((1, 1)): (1 + t) / t}
    cache.put(Partition((1,)), Partition((1,)), values)
    fresh = StructureCache(tmp_path)
    assert fresh.get(Partition((1,)), Partition((1,))) == values
    text = (tmp_path / "structure_constants.v1").read_text().splitlines()
    assert text[0] == "macbranch structure-constants v1"
    assert text[1].startswith("1|1|2|")
    assert fresh.stats()["records"] == 2
    fresh.clear()
    assert not (tmp_path / "structure_constants.v1").exists()


def test_cache_ignores_foreign_file(tmp_path):
    (tmp_path / "structure_constants.v1").write_text("something else\n1|1|2|(+1)/(+1)\n")
    assert StructureCache(tmp_path).get(Partition((1,)), Partition((1,))) is None


def test_cache_memory_only_by_default(monkeypatch):
    monkeypatch.delenv("MACBRANCH_CACHE_DIR", raising=False)
    cache = StructureCache()
    assert cache.path is None
    cache.put(Partition((1,)), Partition((1,)), {Partition((2,)): 1 + q})
    assert cache.get(Partition((1,)), Partition((1,))) == {Partition((2,)): 1 + q}


def test_cache_flushes_memory_when_directory_is_attached(tmp_path, monkeypatch):
    monkeypatch.delenv("MACBRANCH_CACHE_DIR", raising=False)
    cache = StructureCache()
    cache.put(Partition((1,)), Partition((1,)), {Partition((2,)): 1 + q})
    cache.set_directory(tmp_path)
    cache.stats()
    assert StructureCache(tmp_path).get(Partition((1,)), Partition((1,))) == {Partition((2,)): 1 + q}
