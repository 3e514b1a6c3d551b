"""Catalog of identities, each checked as an exact equality of rational
functions or as an equality of power series truncated at total degree D.

Every entry accepts ``mutate=True``, which perturbs one factor on the
left-hand side; the harness must then report a failure with a witness.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from .core import (
    macdonald_P_expr,
    principal_P_hat,
    qbinom,
    skew_P_expr,
    skewQ_diff,
    SymFunc,
)
from .families import (
    M_RULE,
    O_RULE,
    RAB_RULE,
    R_norm,
    R_exact,
    R_norm_skew,
    b_taylor,
    skewP_at_diff,
)
from .operators import (
    Dn_bc,
    apply,
    calD1_b,
    calD_eigenvalue,
    dn_bc_on_P,
    macdonald_eigenvalue,
)
from .partitions import (
    Partition,
    c_factors,
    contained_in,
    gen_poch,
    gen_poch_skew,
    is_horizontal_strip,
    partitions_of,
    partitions_upto,
)
from .ring import (
    RatFunc,
    TruncSeries,
    as_ratfunc,
    qpoch_finite,
    qpoch_inf_series,
    rsum,
    symbols,
    var,
)

__all__ = [
    "MAX_N",
    "MAX_DEGREE",
    "MAX_WEIGHT",
    "CATALOG",
    "IdentityError",
    "ConstraintError",
    "check",
    "run_all",
    "hyperseries",
    "hat_P",
    "hat_P_skew",
]

MAX_N = 3
MAX_DEGREE = 5
MAX_WEIGHT = 6


class IdentityError(ValueError):
    """Unknown identity or a configuration outside the supported bounds."""


class ConstraintError(IdentityError):
    """Parameter bindings violate a constraint of the identity."""


# ---------------------------------------------------------------------------
# building blocks


def _x(n):
    return [var(f"x{i}") for i in range(1, n + 1)]


def _names(n):
    return [f"x{i}" for i in range(1, n + 1)]


def hat_P(lam, letters) -> RatFunc:
    """Normalised ``t^n(lam) P_lam / c'_lam`` at the given letters."""
    lam = Partition(lam)
    return var("t") ** lam.n() / c_factors(lam).c_prime * macdonald_P_expr(lam, letters)


def hat_P_skew(lam, mu, letters) -> RatFunc:
    lam, mu = Partition(lam), Partition(mu)
    if not lam.contains(mu):
        return RatFunc(0)
    scale = var("t") ** (lam.n() - mu.n()) * c_factors(mu).c_prime / c_factors(lam).c_prime
    return scale * skew_P_expr(lam, mu, letters)


def _hat_P_skew_diff(lam, mu, A, B) -> RatFunc:
    """Normalised skew P at the difference alphabet ``(A - B)/(1 - t)``."""
    lam, mu = Partition(lam), Partition(mu)
    if not lam.contains(mu):
        return RatFunc(0)
    scale = var("t") ** (lam.n() - mu.n()) * c_factors(mu).c_prime / c_factors(lam).c_prime
    return scale * skewP_at_diff(lam, mu, A, B)


def _hat_P_one_letter(lam, mu, z) -> RatFunc:
    lam, mu = Partition(lam), Partition(mu)
    if not is_horizontal_strip(lam, mu):
        return RatFunc(0)
    return hat_P_skew(lam, mu, [as_ratfunc(z)])


def _poch(params, lam) -> RatFunc:
    out = RatFunc(1)
    for p in params:
        out = out * gen_poch(p, lam)
    return out


def _ratio(b, lam, mu) -> RatFunc:
    """``(b)_lam / (b)_mu``; a finite product when ``mu`` sits in ``lam``."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.contains(mu):
        return gen_poch_skew(b, lam, mu)
    if mu.contains(lam):
        return 1 / gen_poch_skew(b, mu, lam)
    return gen_poch(b, lam) / gen_poch(b, mu)


def _inf_products(bases_num, bases_den, letters, D) -> TruncSeries:
    """``prod_x prod (b x)_inf / prod (b' x)_inf`` over the alphabet."""
    out = TruncSeries.one(letters, D)
    for name in letters:
        x = var(name)
        for b in bases_num:
            out = out * qpoch_inf_series(b * x, letters, D)
        for b in bases_den:
            out = out * qpoch_inf_series(b * x, letters, D, inverse=True)
    return out


def _series(expr, letters, D) -> TruncSeries:
    return TruncSeries.from_ratfunc(expr, letters, D)


def _series_sum(terms, letters, D) -> TruncSeries:
    out = TruncSeries(letters, D, {})
    for term in terms:
        out = out + (term if isinstance(term, TruncSeries) else _series(term, letters, D))
    return out


def _R_hat_series(lam, letters, b, D, mu=()) -> TruncSeries:
    xs = [var(x) for x in letters]
    if Partition(mu):
        expr = R_norm_skew(lam, mu, xs, b)
    else:
        expr = R_norm(lam, xs, b)
    return _series(expr, letters, D)


def _supersets(mu, extra: int, max_len: int):
    """``lam`` containing ``mu`` with ``|lam/mu| <= extra`` and ``l(lam) <= max_len``."""
    mu = Partition(mu)
    out = []
    for w in range(mu.weight, mu.weight + extra + 1):
        for lam in partitions_of(w, max_len):
            if lam.contains(mu):
                out.append(lam)
    return out


# ---------------------------------------------------------------------------
# comparison and witnesses


def _series_witness(lhs: TruncSeries, rhs: TruncSeries, case=None):
    hit = lhs.first_mismatch(rhs)
    if hit is None:
        return None
    exps, a, b = hit
    out = {
        "monomial": _monomial_text(lhs.letters, exps),
        "degree": sum(exps),
        "lhs": a.to_text(),
        "rhs": b.to_text(),
    }
    if case:
        out["case"] = case
    return out


def _monomial_text(letters, exps):
    parts = [f"{x}^{e}" if e > 1 else x for x, e in zip(letters, exps) if e]
    return "*".join(parts) if parts else "1"


def _exact_witness(lhs, rhs, case):
    lhs, rhs = as_ratfunc(lhs), as_ratfunc(rhs)
    if lhs == rhs:
        return None
    diff = lhs - rhs
    terms = list(diff.num.terms())
    lead = terms[0] if terms else None
    return {
        "case": case,
        "monomial": _term_text(lead) if lead else "1",
        "degree": sum(lead[0]) if lead else 0,
        "lhs": lhs.to_text(),
        "rhs": rhs.to_text(),
    }


def _term_text(term):
    exps, coeff = term
    names = [sym.name for sym in symbols()]
    parts = [f"{x}^{e}" if e != 1 else x for x, e in zip(names, exps) if e]
    return f"{coeff}*{'*'.join(parts)}" if parts else str(coeff)


def _case(**kwargs):
    return {k: (str(v) if isinstance(v, Partition) else v) for k, v in kwargs.items()}


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class Entry:
    id: str
    run: Callable
    defaults: dict
    summary: str


def _param(cfg, name):
    value = cfg.get("params", {}).get(name, name)
    return as_ratfunc(value)


def _partition_list(value):
    return [Partition.parse(v) if isinstance(v, str) else Partition(v) for v in value]


def _resolve(entry: Entry, config):
    cfg = dict(entry.defaults)
    cfg.update(config or {})
    cfg["params"] = dict(cfg.get("params", {}))
    n, D = int(cfg.get("n", 1)), int(cfg.get("D", 0))
    if not 1 <= n <= MAX_N:
        raise IdentityError(f"n={n} is outside 1..{MAX_N}")
    if not 0 <= D <= MAX_DEGREE:
        raise IdentityError(f"D={D} is outside 0..{MAX_DEGREE}")
    for key in ("weight", "mu_weight"):
        if key in cfg and not 0 <= int(cfg[key]) <= MAX_WEIGHT:
            raise IdentityError(f"{key}={cfg[key]} is outside 0..{MAX_WEIGHT}")
    for key in ("mu", "nu"):
        if key in cfg:
            p = Partition.parse(cfg[key]) if isinstance(cfg[key], str) else Partition(cfg[key])
            if p.weight > MAX_WEIGHT:
                raise IdentityError(f"{key} has weight above {MAX_WEIGHT}")
            cfg[key] = p
    return cfg


def _balanced(cfg, solved: str, value: RatFunc):
    """Bind ``solved`` to ``value`` unless it is bound already, in which
    case the binding must agree."""
    given = cfg["params"].get(solved)
    if given is None:
        return value
    if as_ratfunc(given) != value:
        raise ConstraintError(
            f"binding {solved}={given} violates the constraint {solved}={value}"
        )
    return as_ratfunc(given)


# ---------------------------------------------------------------------------
# entries


def _suf_symmetry(cfg, mutate):
    """For the M, O and two-parameter R rules the two-letter sum
    ``sum_mu f_{lam/mu}(z; a) f_{mu/nu}(y; a')`` is symmetric in ``y, z``."""
    y, z = var("y1"), var("y2")
    a, b = _param(cfg, "a"), _param(cfg, "b")
    for rule in (M_RULE, O_RULE, RAB_RULE):
        outer = {"a": a, "b": b}
        inner = rule.evolve(outer)
        if mutate:
            inner = {"a": inner["a"] * var("q"), "b": inner["b"]}
        for lam in partitions_upto(cfg["weight"]):
            for nu in contained_in(lam):
                sides = []
                for first, second in ((z, y), (y, z)):
                    terms = []
                    for mu in contained_in(lam):
                        if not mu.contains(nu):
                            continue
                        if rule.support == "hstrip" and not (
                            is_horizontal_strip(lam, mu) and is_horizontal_strip(mu, nu)
                        ):
                            continue
                        terms.append(
                            rule.coefficient(lam, mu, first, outer)
                            * rule.coefficient(mu, nu, second, inner)
                        )
                    sides.append(rsum(terms))
                w = _exact_witness(sides[0], sides[1], _case(rule=rule.name, lam=lam, nu=nu))
                if w:
                    return w
    return None


def _skew_cauchy_macdonald(cfg, mutate):
    n, D = cfg["n"], cfg["D"]
    letters, xs = _names(n), _x(n)
    a, c = _param(cfg, "a"), _param(cfg, "c")
    mu, nu = cfg["mu"], cfg["nu"]
    # q-binomial theorem: sum (a)_lam Phat_lam = prod (ax)_inf/(x)_inf
    aa = a * var("q") if mutate else a
    lhs = _series_sum(
        (gen_poch(aa, lam) * hat_P(lam, xs) for lam in partitions_upto(D, n)), letters, D
    )
    rhs = _inf_products([a], [RatFunc(1)], letters, D)
    w = _series_witness(lhs, rhs, _case(part="q-binomial"))
    if w:
        return w
    lhs_terms = []
    for lam in _supersets(mu, D, len(mu) + n):
        if not lam.contains(nu):
            continue
        lhs_terms.append(skewQ_diff(lam, nu, a, c) * hat_P_skew(lam, mu, xs))
    rhs_terms = []
    for lam in contained_in(mu):
        if not nu.contains(lam):
            continue
        rhs_terms.append(skewQ_diff(mu, lam, a, c) * hat_P_skew(nu, lam, xs))
    lhs = _series_sum(lhs_terms, letters, D)
    rhs = _inf_products([c], [a], letters, D) * _series_sum(rhs_terms, letters, D)
    return _series_witness(lhs, rhs, _case(part="skew Cauchy", mu=mu, nu=nu))


def _pieri_macdonald(cfg, mutate):
    n, D = cfg["n"], cfg["D"]
    letters, xs = _names(n), _x(n)
    a, b = _param(cfg, "a"), _param(cfg, "b")
    mu = cfg["mu"]
    lhs = _series(hat_P(mu, xs), letters, D) * _inf_products([b], [a], letters, D)
    bb = b * var("q") if mutate else b
    terms = [
        skewQ_diff(lam, mu, a, bb) * hat_P(lam, xs)
        for lam in _supersets(mu, D - mu.weight, n)
    ]
    return _series_witness(lhs, _series_sum(terms, letters, D), _case(mu=mu))


def _skew_cauchy_R(cfg, mutate):
    n, D = cfg["n"], cfg["D"]
    letters = _names(n)
    a, b, c = _param(cfg, "a"), _param(cfg, "b"), _param(cfg, "c")
    d = _balanced(cfg, "d", a * b / c)
    mu, nu = cfg["mu"], cfg["nu"]
    r = b / c
    lhs_terms = []
    for lam in _supersets(mu, D, len(mu) + n):
        if not lam.contains(nu):
            continue
        coeff = _ratio(r, lam, nu) * skewQ_diff(lam, nu, a, c)
        if mutate:
            coeff = coeff * _ratio(var("q"), lam, nu)
        if coeff.is_zero():
            continue
        lhs_terms.append(_R_hat_series(lam, letters, b, D, mu).scale(coeff))
    rhs_terms = []
    for lam in contained_in(mu):
        if not nu.contains(lam):
            continue
        coeff = _ratio(r, mu, lam) * skewQ_diff(mu, lam, a, c)
        if coeff.is_zero():
            continue
        rhs_terms.append(_R_hat_series(nu, letters, d, D, lam).scale(coeff))
    lhs = _series_sum(lhs_terms, letters, D)
    rhs = _inf_products([c, d], [a, b], letters, D) * _series_sum(rhs_terms, letters, D)
    return _series_witness(lhs, rhs, _case(mu=mu, nu=nu))


def _pieri_R(cfg, mutate):
    n, D = cfg["n"], cfg["D"]
    letters = _names(n)
    a, b, c = _param(cfg, "a"), _param(cfg, "b"), _param(cfg, "c")
    d = _balanced(cfg, "d", a * b / c)
    mu = cfg["mu"]
    lhs = _R_hat_series(mu, letters, d, D) * _inf_products([c, d], [a, b], letters, D)
    terms = []
    for lam in _supersets(mu, D - mu.weight, n):
        coeff = _ratio(b / c, lam, mu) * skewQ_diff(lam, mu, a, c)
        if mutate:
            coeff = coeff * _ratio(a, lam, mu)
        terms.append(_R_hat_series(lam, letters, b, D).scale(coeff))
    return _series_witness(lhs, _series_sum(terms, letters, D), _case(mu=mu))


def _q_binomial_R(cfg, mutate):
    n, D = cfg["n"], cfg["D"]
    letters, xs = _names(n), _x(n)
    b = _param(cfg, "b")
    mu = cfg["mu"]
    for bb, label in ((b, "general b"), (RatFunc(0), "b=0")):
        terms = []
        for lam in _supersets(mu, D - mu.weight, n):
            coeff = _ratio(bb, lam, mu) * qbinom(lam, mu)
            if mutate:
                coeff = coeff * var("q") ** (lam.weight - mu.weight)
            terms.append(coeff * hat_P(lam, xs))
        lhs = _series_sum(terms, letters, D)
        if bb.is_zero():
            head = _series(hat_P(mu, xs), letters, D)
            rhs = head * _inf_products([], [RatFunc(1)], letters, D)
        else:
            rhs = _R_hat_series(mu, letters, bb, D) * _inf_products([bb], [RatFunc(1)], letters, D)
        w = _series_witness(lhs, rhs, _case(mu=mu, part=label))
        if w:
            return w
    return None


def _one_phi_one(cfg, mutate):
    n, D = cfg["n"], cfg["D"]
    letters, xs = _names(n), _x(n)
    b, c = _param(cfg, "b"), _param(cfg, "c")
    mu = cfg["mu"]
    terms = []
    for lam in _supersets(mu, D - mu.weight, n):
        coeff = (
            c ** (lam.weight - mu.weight)
            * _ratio(b / c, lam, mu)
            * skewQ_diff(lam, mu, 0, 1)
        )
        if mutate:
            coeff = coeff * _ratio(c, lam, mu)
        terms.append(_R_hat_series(lam, letters, b, D).scale(coeff))
    lhs = _series_sum(terms, letters, D)
    rhs = _series(hat_P(mu, xs), letters, D) * _inf_products([c], [b], letters, D)
    return _series_witness(lhs, rhs, _case(mu=mu))


def _q_gauss(cfg, mutate):
    n, D = cfg["n"], cfg["D"]
    letters = _names(n)
    a, b, c = _param(cfg, "a"), _param(cfg, "b"), _param(cfg, "c")
    pair = (a, a) if mutate else (a, b)
    terms = [
        _R_hat_series(lam, letters, c, D).scale((c / (a * b)) ** lam.weight * _poch(pair, lam))
        for lam in partitions_upto(D, n)
    ]
    lhs = _series_sum(terms, letters, D)
    rhs = _inf_products([c / a, c / b], [c, c / (a * b)], letters, D)
    w = _series_witness(lhs, rhs, _case(part="alphabet"))
    if w:
        return w
    return _kaneko(n, D, a, b, pair)


def _kaneko(n, D, a, b, pair):
    """Principal specialisation: a series in ``u = c t^(1-n)/ab``."""
    u = var("u")
    t = var("t")
    c = u * a * b * t ** (n - 1)
    letters = ["u"]
    terms = [
        u**lam.weight * _poch(pair, lam) / gen_poch(c, lam) * principal_P_hat(lam, n)
        for lam in partitions_upto(D, n)
    ]
    lhs = _series_sum(terms, letters, D)
    rhs = TruncSeries.one(letters, D)
    for i in range(1, n + 1):
        s = t ** (1 - i)
        for base in (c * s / a, c * s / b):
            rhs = rhs * qpoch_inf_series(base, letters, D)
        for base in (c * s, c * s / (a * b)):
            rhs = rhs * qpoch_inf_series(base, letters, D, inverse=True)
    return _series_witness(lhs, rhs, _case(part="principal specialisation", n=n))


def _b_taylor(cfg, mutate):
    for mu in partitions_upto(cfg["mu_weight"], cfg["n"]):
        pairs = b_taylor(mu, cfg["n"], cfg["D"])
        for r, (computed, predicted) in enumerate(pairs):
            if mutate and r == 1:
                predicted = predicted * var("q")
            w = _exact_witness(computed, predicted, _case(mu=mu, order=r))
            if w:
                return w
    return None


def _saalschutz(cfg, mutate):
    a, b, c = _param(cfg, "a"), _param(cfg, "b"), _param(cfg, "c")
    for lam in partitions_upto(cfg["weight"]):
        for nu in contained_in(lam):
            terms = []
            for mu in contained_in(lam):
                if not mu.contains(nu):
                    continue
                top = a * var("q") if mutate else a
                terms.append(
                    gen_poch(top, mu)
                    / gen_poch(c, mu)
                    * skewQ_diff(lam, mu, a, b)
                    * skewQ_diff(mu, nu, b, c)
                )
            lhs = rsum(terms)
            rhs = (
                gen_poch(a, nu)
                * gen_poch(b, lam)
                / (gen_poch(b, nu) * gen_poch(c, lam))
                * skewQ_diff(lam, nu, a, c)
            )
            w = _exact_witness(lhs, rhs, _case(lam=lam, nu=nu))
            if w:
                return w
    return None


def _sears(cfg, mutate):
    a, b, c, d, e = (_param(cfg, s) for s in "abcde")
    q = var("q")
    top = a * a * q * q / (b * c * d * e)

    def side(p1, p2, s1, s2, lam, nu, mut):
        r = a * q / (s1 * s2)
        terms = []
        for mu in contained_in(lam):
            if not mu.contains(nu):
                continue
            coeff = (
                _ratio(a * q / p1, lam, mu)
                * _ratio(a * q / p2, lam, mu)
                * _ratio(s1, mu, nu)
                * _ratio(s2 * (q if mut else 1), mu, nu)
            )
            terms.append(
                coeff * skewP_at_diff(lam, mu, 1, r) * skewP_at_diff(mu, nu, r, top)
            )
        return rsum(terms)

    for lam in partitions_upto(cfg["weight"]):
        for nu in contained_in(lam):
            lhs = side(b, c, d, e, lam, nu, mutate)
            rhs = side(d, e, b, c, lam, nu, False)
            w = _exact_witness(lhs, rhs, _case(lam=lam, nu=nu))
            if w:
                return w
    return None


def _propskew(cfg, mutate):
    """Both sides multiplied out as series in ``u = c/ab``, so ``c = u a b``."""
    D = cfg["D"]
    a, b = _param(cfg, "a"), _param(cfg, "b")
    u, t = var("u"), var("t")
    c = u * a * b
    letters = ["u"]
    mu, nu = cfg["mu"], cfg["nu"]
    lhs_terms = []
    for lam in _supersets(mu, D, len(mu) + 1):
        if not lam.contains(nu) or not is_horizontal_strip(lam, mu):
            continue
        top = a * var("q") if mutate else a
        lhs_terms.append(
            gen_poch(top, lam)
            / gen_poch(c, lam)
            * _hat_P_one_letter(lam, mu, u)
            * skewQ_diff(lam, nu, 1, b)
        )
    rhs_terms = []
    for lam in contained_in(mu):
        if not nu.contains(lam) or not is_horizontal_strip(nu, lam):
            continue
        rhs_terms.append(
            gen_poch(c / (b * t), lam)
            / gen_poch(a, lam)
            * _hat_P_one_letter(nu, lam, u)
            * skewQ_diff(mu, lam, 1, b)
        )
    lhs = _series_sum(lhs_terms, letters, D)
    pref = gen_poch(a, mu) / gen_poch(c / t, mu) * gen_poch(a, nu) / gen_poch(c / b, nu)
    rhs = _series_sum(rhs_terms, letters, D) * _series(pref, letters, D)
    for base in (c / a, c / b):
        rhs = rhs * qpoch_inf_series(base, letters, D)
    for base in (c, c / (a * b)):
        rhs = rhs * qpoch_inf_series(base, letters, D, inverse=True)
    return _series_witness(lhs, rhs, _case(mu=mu, nu=nu))


def _rains_terminating(cfg, mutate):
    """Terminating case ``(b, c) = (q^-N, t)`` with ``f = a d q^(1-N)/e``."""
    a, d, e = _param(cfg, "a"), _param(cfg, "d"), _param(cfg, "e")
    q, t = var("q"), var("t")
    for N in range(1, cfg["N"] + 1):
        b = q ** (-N)
        f = a * d * q ** (1 - N) / e
        for mu in partitions_upto(cfg["weight"]):
            for nu in partitions_upto(cfg["weight"]):
                lhs_terms = []
                for lam in _supersets(mu, N * (len(mu) + 1), len(mu) + 1):
                    if not lam.contains(nu) or not is_horizontal_strip(lam, mu):
                        continue
                    if lam and lam[0] > N:
                        continue
                    top = a * q if mutate else a
                    lhs_terms.append(
                        q**lam.weight
                        * _poch((top, b), lam)
                        / _poch((e, f), lam)
                        * _hat_P_one_letter(lam, mu, 1)
                        * skewQ_diff(lam, nu, 1, d)
                    )
                lhs = rsum(lhs_terms)
                pref = (
                    (q / t) ** mu.weight
                    * _poch((a, b), mu)
                    / _poch((e / t, f / t), mu)
                    * (q / d) ** nu.weight
                    * gen_poch(a, nu)
                    / _poch((e / d, f / d), nu)
                    * qpoch_finite(e / a, N)
                    * qpoch_finite(e / d, N)
                    / (qpoch_finite(e, N) * qpoch_finite(e / (a * d), N))
                )
                rhs_terms = []
                for lam in contained_in(nu):
                    if not mu.contains(lam) or not is_horizontal_strip(nu, lam):
                        continue
                    rhs_terms.append(
                        (d * t / q) ** lam.weight
                        * _poch((e / (d * t), f / (d * t)), lam)
                        / gen_poch(a, lam)
                        * _ratio(b, nu, lam)
                        * _hat_P_one_letter(nu, lam, 1)
                        * skewQ_diff(mu, lam, 1, d)
                    )
                rhs = pref * rsum(rhs_terms)
                w = _exact_witness(lhs, rhs, _case(N=N, mu=mu, nu=nu))
                if w:
                    return w
    return None


def hyperseries(uppers, lowers, z, alphabet, D: int) -> TruncSeries:
    """``rPhi_s[uppers; lowers; z; X]`` truncated at total degree ``D``.

    The last lower parameter is the ``b`` slot of the normalised
    ``R_lam(X; b)``; the others divide as generalised Pochhammer symbols.
    """
    lowers = [as_ratfunc(v) for v in lowers]
    if not lowers:
        raise ValueError("hyperseries needs at least one lower parameter")
    uppers = [as_ratfunc(v) for v in uppers]
    z = as_ratfunc(z)
    letters = list(alphabet)
    q, t = var("q"), var("t")
    power = len(lowers) - len(uppers) + 1
    out = TruncSeries(letters, D, {})
    for lam in partitions_upto(D, len(letters)):
        weight = (-1) ** lam.weight * q ** lam.conjugate().n() * t ** (-lam.n())
        coeff = _poch(uppers, lam) / _poch(lowers[:-1], lam) * weight**power * z**lam.weight
        if coeff.is_zero():
            continue
        out = out + _R_hat_series(lam, letters, lowers[-1], D).scale(coeff)
    return out


def _ktw(cfg, mutate):
    n, D = cfg["n"], cfg["D"]
    letters = _names(n)
    a, b, c, d, e = (_param(cfg, s) for s in "abcde")
    f = _balanced(cfg, "f", d * e / (b * c))
    mu = cfg["mu"]
    top = a * var("q") if mutate else a
    lhs_terms, rhs_terms = [], []
    for lam in _supersets(mu, D, n):
        if lam.weight > D:
            continue
        lhs_terms.append(
            _R_hat_series(lam, letters, e, D).scale(
                _poch((top, b), lam) / gen_poch(d, lam) * skewQ_diff(lam, mu, f / a, c * f / a)
            )
        )
        rhs_terms.append(
            _R_hat_series(lam, letters, f, D).scale(
                gen_poch(b, mu)
                * gen_poch(a, lam)
                * _ratio(d / c, lam, mu)
                / gen_poch(d, lam)
                * skewQ_diff(lam, mu, e / a, c * f / a)
            )
        )
    lhs = _series_sum(lhs_terms, letters, D)
    rhs = _series_sum(rhs_terms, letters, D) * _inf_products(
        [f, e / a], [e, f / a], letters, D
    )
    w = _series_witness(lhs, rhs, _case(part="transformation", mu=mu))
    if w:
        return w
    # the hypergeometric form and its d = c reduction
    lhs = hyperseries([top, b, c], [d, e], f / a, letters, D)
    rhs = hyperseries([a, d / b, d / c], [d, f], e / a, letters, D) * _inf_products(
        [f, e / a], [e, f / a], letters, D
    )
    w = _series_witness(lhs, rhs, _case(part="3Phi2"))
    if w:
        return w
    g = e / b
    lhs = hyperseries([top, b, c], [c, e], g / a, letters, D)
    rhs = _inf_products([e / a, e / b], [e, e / (a * b)], letters, D)
    return _series_witness(lhs, rhs, _case(part="d=c reduction"))


def _heine(cfg, mutate):
    n, D = cfg["n"], cfg["D"]
    letters = _names(n)
    a, b, c, z = (_param(cfg, s) for s in "abcz")
    top = a * var("q") if mutate else a
    lhs = hyperseries([top, b], [c], z, letters, D)
    rhs = hyperseries([a, a * b * z / c], [a * z], c / a, letters, D) * _inf_products(
        [c / a, a * z], [c, z], letters, D
    )
    return _series_witness(lhs, rhs)


def _dn_bc_eigen(cfg, mutate):
    b, c = _param(cfg, "b"), _param(cfg, "c")
    for n in range(1, cfg["n"] + 1):
        xs = _x(n)
        for lam in partitions_upto(cfg["weight"], n):
            lhs = apply(Dn_bc(n, b, c), R_exact(lam, xs, b))
            shift = b * var("q") * (var("q") if mutate else 1)
            rhs = R_exact(lam, xs, shift) * macdonald_eigenvalue(lam, n, c)
            w = _exact_witness(lhs, rhs, _case(n=n, lam=lam))
            if w:
                return w
    return None


def _calD_eigen(cfg, mutate):
    b = _param(cfg, "b")
    for n in range(1, cfg["n"] + 1):
        xs = _x(n)
        for lam in partitions_upto(cfg["weight"], n):
            f = R_exact(lam, xs, b)
            lhs = apply(calD1_b(n, b), f)
            value = calD_eigenvalue(lam, n) * (var("q") if mutate else 1)
            w = _exact_witness(lhs, value * f, _case(n=n, lam=lam))
            if w:
                return w
    return None


def _dn_bc_on_P(cfg, mutate):
    b, c = _param(cfg, "b"), _param(cfg, "c")
    for n in range(1, cfg["n"] + 1):
        for mu in partitions_upto(cfg["weight"], n):
            computed, predicted = dn_bc_on_P(mu, n, b, c)
            if mutate:
                predicted = SymFunc(n, "P", {k: v * var("q") for k, v in predicted.coeffs.items()})
            for lam in sorted(set(computed.coeffs) | set(predicted.coeffs)):
                w = _exact_witness(
                    computed.coefficient(lam), predicted.coefficient(lam), _case(n=n, mu=mu, lam=lam)
                )
                if w:
                    return w
    return None


CATALOG: dict[str, Entry] = {
    e.id: e
    for e in [
        Entry(
            "suf-symmetry",
            _suf_symmetry,
            {"weight": 3},
            "two-letter exchange symmetry of the M, O and R(a,b) branching coefficients",
        ),
        Entry(
            "skew-cauchy-macdonald",
            _skew_cauchy_macdonald,
            {"n": 2, "D": 3, "mu": (1,), "nu": (1,)},
            "skew Cauchy identity at a difference alphabet, with the q-binomial theorem",
        ),
        Entry(
            "pieri-macdonald",
            _pieri_macdonald,
            {"n": 2, "D": 3, "mu": (1,)},
            "Pieri-type expansion of P_mu times a ratio of infinite products",
        ),
        Entry(
            "skew-cauchy-R",
            _skew_cauchy_R,
            {"n": 2, "D": 3, "mu": (1,), "nu": (1,)},
            "skew Cauchy-type identity for the normalised R functions, ab = cd",
        ),
        Entry(
            "pieri-R",
            _pieri_R,
            {"n": 2, "D": 3, "mu": (1,)},
            "Pieri formula for the normalised R functions, ab = cd",
        ),
        Entry(
            "q-binomial-R",
            _q_binomial_R,
            {"n": 2, "D": 3, "mu": (1,)},
            "q-binomial formula in terms of R, and its b = 0 case",
        ),
        Entry(
            "one-phi-one",
            _one_phi_one,
            {"n": 2, "D": 3, "mu": (1,)},
            "multivariable 1phi1 summation",
        ),
        Entry(
            "q-gauss",
            _q_gauss,
            {"n": 2, "D": 3},
            "q-Gauss sum for R, and its principal specialisation",
        ),
        Entry(
            "b-taylor",
            _b_taylor,
            {"n": 2, "D": 3, "mu_weight": 2},
            "Taylor coefficients of R in b",
        ),
        Entry(
            "saalschutz",
            _saalschutz,
            {"weight": 4},
            "q-Pfaff-Saalschutz sum for skew Q at difference alphabets",
        ),
        Entry(
            "sears",
            _sears,
            {"weight": 3},
            "Sears transformation for skew P at difference alphabets",
        ),
        Entry(
            "propskew",
            _propskew,
            {"D": 3, "mu": (1,), "nu": (1,)},
            "skew q-Gauss-type transformation, graded by u = c/ab",
        ),
        Entry(
            "rains-cauchy-terminating",
            _rains_terminating,
            {"N": 2, "weight": 2},
            "terminating Cauchy-type identity at (b, c) = (q^-N, t)",
        ),
        Entry(
            "ktw",
            _ktw,
            {"n": 2, "D": 3, "mu": (1,)},
            "q-Kummer-Thomae-Whipple transformation and its d = c reduction",
        ),
        Entry(
            "heine",
            _heine,
            {"n": 2, "D": 3},
            "Heine transformation for 2Phi1",
        ),
        Entry(
            "dn-bc-eigen",
            _dn_bc_eigen,
            {"n": 2, "weight": 3},
            "D_n(b, c) R(X; b) = R(X; bq) times the Macdonald eigenvalue",
        ),
        Entry(
            "calD-eigen",
            _calD_eigen,
            {"n": 2, "weight": 3},
            "R(X; b) is an eigenfunction of the b-deformed D_n^1",
        ),
        Entry(
            "dn-bc-on-P",
            _dn_bc_on_P,
            {"n": 2, "weight": 2},
            "expansion of D_n(b, c) P_mu over vertical strips",
        ),
    ]
}


def check(identity: str, config: dict | None = None) -> dict:
    """Run one catalog entry; returns ``{id, config, pass, witness?, millis}``.

    ``config`` may set ``n``, ``D``, ``mu``, ``nu``, ``weight``,
    ``params`` (name -> expression) and ``mutate``.
    """
    entry = CATALOG.get(identity)
    if entry is None:
        raise IdentityError(
            f"unknown identity {identity!r}; known: {', '.join(sorted(CATALOG))}"
        )
    config = dict(config or {})
    mutate = bool(config.pop("mutate", False))
    cfg = _resolve(entry, config)
    if "N" in cfg and not 0 <= int(cfg["N"]) <= 3:
        raise IdentityError("N is limited to 0..3")
    start = time.perf_counter()
    witness = entry.run(cfg, mutate)
    millis = int((time.perf_counter() - start) * 1000)
    shown = {k: (str(v) if isinstance(v, Partition) else v) for k, v in cfg.items()}
    if mutate:
        shown["mutate"] = True
    result = {"id": identity, "config": shown, "pass": witness is None, "millis": millis}
    if witness is not None:
        result["witness"] = witness
    return result


def run_all(ids=None, config: dict | None = None) -> list[dict]:
    """Run entries (all by default) in catalog order."""
    ids = list(CATALOG) if ids is None else list(ids)
    return [check(i, config) for i in ids]
