import pytest
from hypothesis import given, settings, strategies as st

from macbranch.partitions import (
    Partition,
    StripRelation,
    c_factors,
    contained_in,
    gen_poch,
    gen_poch_skew,
    hook_stats,
    hstrip_predecessors,
    hstrip_successors,
    is_horizontal_strip,
    is_vertical_strip,
    omega,
    one_poch_skew,
    orbit,
    partitions_of,
    partitions_upto,
    strip_relation,
    vstrip_successors,
)
from macbranch.ring import substitute, var

q, t, b = var("q"), var("t"), var("b")

partitions = st.integers(0, 8).flatmap(lambda w: st.sampled_from(partitions_of(w)))
small = st.integers(0, 6).flatmap(lambda w: st.sampled_from(partitions_of(w)))


def swap_qt(r):
    return substitute(r, {"q": t, "t": q})


# -- construction and text form


def test_parse_and_str():
    assert Partition.parse("2,1") == Partition((2, 1))
    assert Partition.parse("0") == Partition.parse("") == Partition(())
    assert str(Partition((2, 1))) == "2,1"
    assert str(Partition(())) == "0"


def test_trailing_zeros_dropped():
    assert Partition((2, 1, 0, 0)) == Partition((2, 1))


@pytest.mark.parametrize("bad", [(1, 2), (-1,), "a,b"])
def test_invalid(bad):
    with pytest.raises(ValueError):
        Partition.parse(bad) if isinstance(bad, str) else Partition(bad)


def test_order_is_weight_then_reverse_lex():
    assert partitions_upto(2, 2) == [Partition(()), Partition((1,)), Partition((2,)), Partition((1, 1))]
    assert Partition((2,)) < Partition((1, 1)) < Partition((3,))


# -- conjugation and statistics


@pytest.mark.parametrize("lam, conj", [((2, 1), (2, 1)), ((3,), (1, 1, 1)), ((), ())])
def test_conjugate_examples(lam, conj):
    assert Partition(lam).conjugate() == Partition(conj)


@given(partitions)
def test_conjugate_involution_and_n(lam):
    conj = lam.conjugate()
    assert conj.conjugate() == lam
    assert conj.weight == lam.weight
    assert lam.n() == sum(hook_stats(lam, s)[3] for s in lam.squares())
    assert lam.n() == sum(p * (p - 1) // 2 for p in conj)


@pytest.mark.parametrize(
    "lam, square, stats",
    [((2, 1), (1, 1), (1, 0, 1, 0)), ((2, 1), (1, 2), (0, 1, 0, 0)), ((1,), (1, 1), (0, 0, 0, 0))],
)
def test_hook_stats(lam, square, stats):
    assert hook_stats(lam, square) == stats


def test_hook_stats_outside_diagram():
    with pytest.raises(ValueError):
        hook_stats((2, 1), (2, 2))


# -- strips


@pytest.mark.parametrize(
    "lam, mu, rel",
    [
        ((6, 2), (3,), StripRelation.HORIZONTAL_STRIP),
        ((2, 2), (1,), StripRelation.CONTAINED),
        ((1, 1), (1,), StripRelation.VERTICAL_STRIP),
        ((1,), (2,), StripRelation.NOT_CONTAINED),
    ],
)
def test_strip_relation(lam, mu, rel):
    assert strip_relation(lam, mu) == rel


def test_single_square_is_both_strips():
    assert is_horizontal_strip((1, 1), (1,)) and is_vertical_strip((1, 1), (1,))


@given(small, small)
@settings(max_examples=200)
def test_strips_agree_with_column_counts(lam, mu):
    """A horizontal strip adds at most one square per column; a vertical
    strip adds at most one square per row."""
    if not lam.contains(mu):
        assert not is_horizontal_strip(lam, mu) and not is_vertical_strip(lam, mu)
        return
    cols = [lam.conjugate().part(j) - mu.conjugate().part(j) for j in range(1, (lam[0] if lam else 0) + 1)]
    rows = [lam.part(i) - mu.part(i) for i in range(1, len(lam) + 1)]
    assert is_horizontal_strip(lam, mu) == all(c <= 1 for c in cols)
    assert is_vertical_strip(lam, mu) == all(r <= 1 for r in rows)


def test_hstrip_predecessors_example():
    assert set(hstrip_predecessors((2, 1))) == {
        Partition((2, 1)), Partition((2,)), Partition((1, 1)), Partition((1,))
    }


@given(small, st.integers(0, 3))
@settings(max_examples=60)
def test_strip_successors_are_strips(mu, size):
    for lam in hstrip_successors(mu, size):
        assert is_horizontal_strip(lam, mu) and lam.weight == mu.weight + size
    for lam in vstrip_successors(mu, size):
        assert is_vertical_strip(lam, mu) and lam.weight == mu.weight + size


def test_enumeration_examples():
    assert partitions_upto(2, 2) == [Partition(p) for p in [(), (1,), (2,), (1, 1)]]
    assert orbit((2, 1), 2) == [(2, 1), (1, 2)]
    assert len(contained_in((2, 1))) == 5


def test_decrement_increment():
    lam = Partition((2, 1))
    assert lam.decrement(1) == Partition((1, 1))
    assert lam.decrement(2) == Partition((2,))
    assert Partition((1, 1)).decrement(1) is None
    assert lam.increment(2) == Partition((2, 2))
    assert Partition((1, 1)).increment(2) is None
    assert lam.increment(3) == Partition((2, 1, 1))


# -- Pochhammer symbols and c-factors


def test_gen_poch_examples():
    assert gen_poch(b, ()) == 1
    assert gen_poch(b, (2, 1)) == (1 - b) * (1 - b * q) * (1 - b / t)
    assert gen_poch(t, (1, 1)) == 0


@given(partitions)
@settings(max_examples=40, deadline=None)
def test_gen_poch_row_and_square_forms_agree(lam):
    assert gen_poch(b, lam) == gen_poch_skew(b, lam)


def test_c_factors_examples():
    assert c_factors(Partition(())) == (1, 1, 1, 0, 0)
    c1 = c_factors(Partition((1,)))
    assert (c1.c, c1.c_prime, c1.b, c1.n, c1.n_conj) == (1 - t, 1 - q, (1 - t) / (1 - q), 0, 0)
    c2 = c_factors(Partition((2,)))
    assert c2.c == (1 - t) * (1 - q * t)
    assert c2.c_prime == (1 - q) * (1 - q**2)
    assert (c2.n, c2.n_conj) == (0, 1)


@given(small)
@settings(max_examples=40, deadline=None)
def test_c_prime_is_conjugate_c_with_q_t_swapped(lam):
    assert c_factors(lam).c_prime == swap_qt(c_factors(lam.conjugate()).c)


def test_omega_examples():
    assert omega((), 2) == 1 / t + 1
    assert omega((1,), 1) == 1 / q
    assert omega((2, 1), 2) == 1 / (q**2 * t) + 1 / q
    with pytest.raises(ValueError):
        omega((1, 1), 1)


def test_one_poch_skew_examples():
    assert one_poch_skew((2, 1), (2, 1)) == 1
    assert one_poch_skew((2,), (1,)) == 1 - q
    assert one_poch_skew((1, 1), (1,)) == 1 - 1 / t


@given(small)
@settings(max_examples=40, deadline=None)
def test_one_poch_skew_multiplies_along_chains(lam):
    for mu in contained_in(lam):
        for nu in contained_in(mu):
            assert one_poch_skew(lam, mu) * one_poch_skew(mu, nu) == one_poch_skew(lam, nu)
