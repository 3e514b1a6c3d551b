"""Symmetric families defined by branching rules.

* ``M_lam(x; a, b)``: generalised interpolation Macdonald polynomials,
* ``O_lam(x; a, b)``: BC_n type interpolation functions,
* ``R_lam(x; a, b)``: two-parameter rational family,
* ``R_lam(X; b)``: the one-parameter rational family, its normalised and
  skew versions, closed forms at ``t = q`` and ``t = 1`` and its principal
  specialisation.
"""

from __future__ import annotations

from functools import lru_cache

from .core import (
    BranchRule,
    _det,
    _psi_cached,
    branch_build,
    macdonald_P_expr,
    principal_P,
    qbinom,
    skewQ_diff,
    vandermonde,
)
from .partitions import (
    Partition,
    c_factors,
    gen_poch,
    gen_poch_skew,
    one_poch_skew,
    orbit,
    partitions_of,
)
from .ring import (
    ExactPoly,
    RatFunc,
    TruncSeries,
    as_ratfunc,
    qpoch_finite,
    rsum,
    substitute,
    taylor,
    var,
)

__all__ = [
    "FAMILIES",
    "family_M",
    "family_O",
    "family_R_ab",
    "R_exact",
    "R_norm",
    "R_norm_skew",
    "R_series",
    "R_closed",
    "R_principal",
    "interpolation_M",
    "principal_letters",
    "skewP_at_diff",
    "lemma_bindep",
    "lemma_clim",
    "lemma_reduce",
    "eval_symmetry",
    "absymm",
    "b_taylor",
    "mm_consistency",
    "spectral_point",
]


def _skew_product(b, lam, mu):
    """``(b)_lam / (b)_mu`` as a product over the squares of ``lam/mu``."""
    return gen_poch_skew(b, lam, mu)


def _hstrip_P(lam, mu, z):
    """Single-letter ``P_{lam/mu}(z)``."""
    return z ** (lam.weight - mu.weight) * _psi_cached(lam, mu, False)


@lru_cache(maxsize=None)
def _skewP_diff_cached(lam, mu, one_text, b_text):
    from .ring import parse

    A, B = parse(one_text), parse(b_text)
    t = var("t")
    cl, cm = c_factors(lam), c_factors(mu)
    return t ** (lam.n() - mu.n()) * cm.c / cl.c * skewQ_diff(lam, mu, A, B)


def skewP_at_diff(lam, mu, A, B) -> RatFunc:
    """``P_{lam/mu}[(A - B)/(1 - t)]`` (unnormalised skew P)."""
    lam, mu = Partition(lam), Partition(mu)
    return _skewP_diff_cached(lam, mu, as_ratfunc(A).to_text(), as_ratfunc(B).to_text())


# ---------------------------------------------------------------------------
# the four rules


def _m_coefficient(lam, mu, z, params):
    a, b = params["a"], params["b"]
    q, t = var("q"), var("t")
    lift = RatFunc(1)
    for i, j in lam.skew_squares(mu):
        lift = lift * (z - a * q ** (j - 1) * t ** (1 - i))
    return lift * skewP_at_diff(lam, mu, 1, b)


def _m_evolve(params):
    return {"a": params["a"] / params["b"], "b": params["b"]}


def _o_coefficient(lam, mu, z, params):
    a, b = params["a"], params["b"]
    return (
        _skew_product(a / z, lam, mu)
        * _skew_product(b * z, lam, mu)
        * b ** (mu.weight - lam.weight)
        * _psi_cached(lam, mu, False)
    )


def _o_evolve(params):
    t = var("t")
    return {"a": params["a"] / t, "b": params["b"] / t}


def _rab_coefficient(lam, mu, z, params):
    a, b = params["a"], params["b"]
    t = var("t")
    return (
        _skew_product(z / a, lam, mu)
        * gen_poch(b * z / t, mu)
        / gen_poch(b * z, lam)
        * _hstrip_P(lam, mu, a)
    )


def _rab_evolve(params):
    return {"a": params["a"] * var("t"), "b": params["b"]}


def _rb_coefficient(lam, mu, z, params):
    b = params["b"]
    t = var("t")
    return gen_poch(b * z / t, mu) / gen_poch(b * z, lam) * _hstrip_P(lam, mu, z)


def _rnorm_coefficient(lam, mu, z, params):
    b = params["b"]
    t = var("t")
    hat = t ** (lam.n() - mu.n()) * c_factors(mu).c_prime / c_factors(lam).c_prime
    return gen_poch(b * z / t, mu) / gen_poch(b * z, lam) * hat * _hstrip_P(lam, mu, z)


M_RULE = BranchRule("M", _m_coefficient, _m_evolve, support="contained")
O_RULE = BranchRule("O", _o_coefficient, _o_evolve)
RAB_RULE = BranchRule("Rab", _rab_coefficient, _rab_evolve)
RB_RULE = BranchRule("R", _rb_coefficient)
RNORM_RULE = BranchRule("Rnorm", _rnorm_coefficient)


def family_M(lam, letters, a="a", b="b") -> RatFunc:
    """``M_lam(x; a, b)`` with parameters ``(a, b) -> (a/b, b)`` per letter."""
    return branch_build(M_RULE, lam, letters, {"a": a, "b": b})


def family_O(lam, letters, a="a", b="b") -> RatFunc:
    """``O_lam(x; a, b)`` with parameters ``(a, b) -> (a/t, b/t)`` per letter."""
    if as_ratfunc(b).is_zero():
        raise ValueError("family O needs b != 0")
    return branch_build(O_RULE, lam, letters, {"a": a, "b": b})


def family_R_ab(lam, letters, a="a", b="b") -> RatFunc:
    """``R_lam(x; a, b)`` with parameters ``(a, b) -> (a t, b)`` per letter."""
    return branch_build(RAB_RULE, lam, letters, {"a": a, "b": b})


def R_exact(lam, letters, b="b") -> RatFunc:
    """``R_lam(X; b)`` by branching."""
    return branch_build(RB_RULE, lam, letters, {"b": b})


def R_norm(lam, letters, b="b") -> RatFunc:
    """Normalised ``t^n(lam) R_lam(X; b) / c'_lam``."""
    lam = Partition(lam)
    return var("t") ** lam.n() * R_exact(lam, letters, b) / c_factors(lam).c_prime


def R_norm_skew(lam, mu, letters, b="b") -> RatFunc:
    """Skew normalised ``R_{lam/mu}(X; b)``; equals 1 at the empty alphabet
    when ``lam == mu``."""
    lam, mu = Partition(lam), Partition(mu)
    if not lam.contains(mu):
        return RatFunc(0)
    return branch_build(RNORM_RULE, lam, letters, {"b": b}, base=mu)


FAMILIES = {
    "M": family_M,
    "O": family_O,
    "Rab": family_R_ab,
    "R": R_exact,
}


def R_series(lam, letters, b="b", cutoff: int = 3, normalised: bool = False) -> TruncSeries:
    """Expansion of ``R_lam`` (or its normalised form) to total degree ``cutoff``."""
    letters = tuple(letters)
    values = [var(x) for x in letters]
    expr = R_norm(lam, values, b) if normalised else R_exact(lam, values, b)
    return TruncSeries.from_ratfunc(expr, letters, cutoff)


def R_closed(lam, letters, b="b", which: str = "t=q") -> RatFunc:
    """``R_lam(X; b)`` at ``t = q`` (determinant) or ``t = 1`` (orbit sum)."""
    lam = Partition(lam)
    xs = [as_ratfunc(x) for x in letters]
    b = as_ratfunc(b)
    n = len(xs)
    if len(lam) > n:
        return RatFunc(0)
    parts = lam.padded(n)
    if which == "t=q":
        matrix = [
            [x ** (parts[j] + n - 1 - j) / qpoch_finite(b * x, parts[j] - j) for j in range(n)]
            for x in xs
        ]
        return _det(matrix) / vandermonde(xs)
    if which == "t=1":
        terms = []
        for u in orbit(lam, n):
            term = RatFunc(1)
            for x, e in zip(xs, u):
                term = term * x**e / qpoch_finite(b * x, e)
            terms.append(term)
        return rsum(terms)
    raise ValueError(f"unknown closed form {which!r}")


def principal_letters(n: int, scale=1) -> list[RatFunc]:
    """``scale * (t^(n-1), .., t, 1)``."""
    t = var("t")
    scale = as_ratfunc(scale)
    return [scale * t ** (n - i) for i in range(1, n + 1)]


def R_principal(lam, n: int, b="b", a=None) -> RatFunc:
    """Closed form of ``R_lam(a <0>; b)``, ``<0> = (1, t, .., t^(n-1))``."""
    lam = Partition(lam)
    if len(lam) > n:
        raise ValueError(f"l({lam}) exceeds n={n}")
    t = var("t")
    b = as_ratfunc(b)
    a = RatFunc(1) if a is None else as_ratfunc(a)
    return a**lam.weight * principal_P(lam, n) / gen_poch(a * b * t ** (n - 1), lam)


# ---------------------------------------------------------------------------
# lemmas and structural properties


def _symbolic_letters(n):
    return [var(f"x{i}") for i in range(1, n + 1)]


def lemma_bindep(lam, n: int, b="b", c="c") -> bool:
    """``R_lam(cX; b) == c^|lam| R_lam(X; bc)``."""
    lam = Partition(lam)
    xs = _symbolic_letters(n)
    c, b = as_ratfunc(c), as_ratfunc(b)
    lhs = R_exact(lam, [c * x for x in xs], b)
    rhs = c**lam.weight * R_exact(lam, xs, b * c)
    return lhs == rhs


def lemma_clim(lam, n: int, b="b", c="c"):
    """Leading behaviour of ``R_lam(cX; b)`` as ``c -> infinity``.

    Returns ``(degree, leading ratio, expected value)``; the lemma holds
    when the degree is 0 and the two values agree.
    """
    lam = Partition(lam)
    xs = _symbolic_letters(n)
    b = as_ratfunc(b)
    cv = var(str(c))
    value = R_exact(lam, [cv * x for x in xs], b)
    degree, lead = value.leading_in(str(c))
    q, t = var("q"), var("t")
    expected = (
        (-(t ** (1 - n)) / b) ** lam.weight
        * q ** (-lam.conjugate().n())
        * t ** lam.n()
        * principal_P(lam, n)
    )
    return degree, lead, expected


def lemma_reduce(lam, n: int, b="b") -> bool:
    """``R_lam(X; b) == R_{lam - 1^n}(X; bq) prod x/(1 - bx)`` when ``l(lam) = n``."""
    lam = Partition(lam)
    if len(lam) != n:
        raise ValueError("the reduction needs l(lam) equal to the number of letters")
    xs = _symbolic_letters(n)
    b = as_ratfunc(b)
    lower = Partition(p - 1 for p in lam)
    rhs = R_exact(lower, xs, b * var("q"))
    for x in xs:
        rhs = rhs * x / (1 - b * x)
    return R_exact(lam, xs, b) == rhs


def spectral_point(mu, n: int, scale=1) -> list[RatFunc]:
    """``scale * (q^mu_1 t^(n-1), .., q^mu_n)``."""
    mu = Partition(mu)
    q, t = var("q"), var("t")
    scale = as_ratfunc(scale)
    return [scale * q ** mu.part(i) * t ** (n - i) for i in range(1, n + 1)]


def eval_symmetry(lam, mu, n: int, a="a", b="b"):
    """Both sides of the evaluation symmetry
    ``R_lam(a<mu>)/R_lam(a<0>) = R_mu(a<lam>)/R_mu(a<0>)``."""
    lam, mu = Partition(lam), Partition(mu)
    a, b = as_ratfunc(a), as_ratfunc(b)
    lhs = R_exact(lam, spectral_point(mu, n, a), b) / R_principal(lam, n, b, a)
    rhs = R_exact(mu, spectral_point(lam, n, a), b) / R_principal(mu, n, b, a)
    return lhs, rhs


def absymm(lam, n: int, a="a", b="b"):
    """Both sides of ``R_lam(aX; b) = (a/b)^|lam| R_lam(bX; a)`` (normalised R)."""
    lam = Partition(lam)
    a, b = as_ratfunc(a), as_ratfunc(b)
    xs = _symbolic_letters(n)
    lhs = R_norm(lam, [a * x for x in xs], b)
    rhs = (a / b) ** lam.weight * R_norm(lam, [b * x for x in xs], a)
    return lhs, rhs


def b_taylor(mu, n: int, order: int = 3):
    """Pairs ``(computed, predicted)`` of ``b^r`` coefficients of the
    normalised ``R_mu(X; b)`` for ``r = 0..order``."""
    mu = Partition(mu)
    xs = _symbolic_letters(n)
    t = var("t")
    computed = taylor(R_norm(mu, xs, "b"), "b", order)
    out = []
    for r in range(order + 1):
        terms = []
        for lam in partitions_of(mu.weight + r, n):
            if not lam.contains(mu):
                continue
            hat = t ** lam.n() / c_factors(lam).c_prime * macdonald_P_expr(lam, xs)
            terms.append(one_poch_skew(lam, mu) * qbinom(lam, mu) * hat)
        out.append((computed[r], rsum(terms)))
    return out


def interpolation_M(lam, letters) -> RatFunc:
    """Interpolation Macdonald polynomial ``M_lam(x_1..x_n)``."""
    n = len(letters)
    t = var("t")
    return family_M(lam, letters, t ** (n - 1), t)


def mm_consistency(lam, n: int, m: int):
    """Both sides of ``R_lam(X; q^(1-m)) = M_{m^n - lam}(1/X; 1/q, 1/t) / M_{m^n}(..)``.

    ``m^n - lam`` is ``(m - lam_n, .., m - lam_1)`` with ``lam`` padded to
    ``n`` parts.
    """
    lam = Partition(lam)
    if lam and lam[0] > m:
        raise ValueError("needs lam_1 <= m")
    xs = _symbolic_letters(n)
    q, t = var("q"), var("t")
    lhs = R_exact(lam, xs, q ** (1 - m))
    comp = Partition(sorted((m - p for p in lam.padded(n)), reverse=True))
    full = Partition((m,) * n)
    inversion = {"q": 1 / q, "t": 1 / t}
    inversion.update({f"x{i}": 1 / xs[i - 1] for i in range(1, n + 1)})
    num = substitute(interpolation_M(comp, xs), inversion)
    den = substitute(interpolation_M(full, xs), inversion)
    return lhs, num / den
