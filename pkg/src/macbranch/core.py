"""Skew coefficients, the branching engine, Macdonald polynomials,
structure constants, lambda-ring skew Q values and q,t-binomials."""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from pathlib import Path
from typing import Callable

from .partitions import (
    Partition,
    c_factors,
    hstrip_predecessors,
    is_horizontal_strip,
    is_vertical_strip,
    omega,
    orbit,
    partitions_of,
    contained_in,
)
from .ring import (
    ExactPoly,
    RatFunc,
    as_ratfunc,
    parse,
    qpoch_finite,
    rsum,
    var,
)

__all__ = [
    "psi",
    "phi",
    "psi_prime",
    "phi_psi_prime",
    "BranchRule",
    "branch_build",
    "SCHUR_RULE",
    "MACDONALD_RULE",
    "SymFunc",
    "macdonald_P",
    "macdonald_P_expr",
    "skew_P_expr",
    "schur_det",
    "to_P_basis",
    "structure_constants",
    "StructureCache",
    "STRUCTURE_CACHE",
    "skewQ_diff",
    "qbinom",
    "q_binomial",
    "principal_P",
    "principal_P_hat",
    "principal_schur",
    "vandermonde",
    "monomial_symmetric",
]


# ---------------------------------------------------------------------------
# psi, phi, psi'


def _psi_generic(lam: Partition, mu: Partition, Q: RatFunc, T: RatFunc) -> RatFunc:
    out = RatFunc(1)
    for i in range(1, len(mu) + 1):
        for j in range(i, len(mu) + 1):
            tau = T ** (j - i)
            low = mu.part(i) - mu.part(j)
            high = lam.part(i) - mu.part(j)
            if high > low:
                x = Q**low * tau
                out = out * _poch(x * T, Q, high - low) / _poch(x * Q, Q, high - low)
            low = mu.part(i) - lam.part(j + 1)
            high = lam.part(i) - lam.part(j + 1)
            if high > low:
                x = Q**low * tau
                out = out * _poch(x * Q, Q, high - low) / _poch(x * T, Q, high - low)
    return out


def _poch(x, Q, k):
    out = RatFunc(1)
    for i in range(k):
        out = out * (1 - x * Q**i)
    return out


@lru_cache(maxsize=None)
def _psi_cached(lam, mu, swapped):
    q, t = var("q"), var("t")
    if swapped:
        return _psi_generic(lam, mu, t, q)
    return _psi_generic(lam, mu, q, t)


def psi(lam, mu) -> RatFunc:
    """Branching coefficient of the Macdonald polynomial on a horizontal strip."""
    lam, mu = Partition(lam), Partition(mu)
    if not is_horizontal_strip(lam, mu):
        raise ValueError(f"{lam}/{mu} is not a horizontal strip")
    return _psi_cached(lam, mu, False)


def phi(lam, mu) -> RatFunc:
    """``(b_lam / b_mu) psi_{lam/mu}``."""
    lam, mu = Partition(lam), Partition(mu)
    return c_factors(lam).b / c_factors(mu).b * psi(lam, mu)


def psi_prime(lam, mu) -> RatFunc:
    """``psi_{lam'/mu'}`` with ``q`` and ``t`` interchanged (vertical strips)."""
    lam, mu = Partition(lam), Partition(mu)
    if not is_vertical_strip(lam, mu):
        raise ValueError(f"{lam}/{mu} is not a vertical strip")
    return _psi_cached(lam.conjugate(), mu.conjugate(), True)


def phi_psi_prime(lam, mu):
    """``(phi, psi')``; a component is None when its strip condition fails."""
    lam, mu = Partition(lam), Partition(mu)
    ph = phi(lam, mu) if is_horizontal_strip(lam, mu) else None
    pp = psi_prime(lam, mu) if is_vertical_strip(lam, mu) else None
    if ph is None and pp is None:
        raise ValueError(f"{lam}/{mu} is neither a horizontal nor a vertical strip")
    return ph, pp


# ---------------------------------------------------------------------------
# branching engine


@dataclass(frozen=True)
class BranchRule:
    """A one-letter branching coefficient together with its parameter map.

    ``coefficient(lam, mu, z, params)`` is the weight of ``mu -> lam`` when
    the letter ``z`` is added; ``evolve`` maps the parameters used for the
    outer letter to those used for the remaining ones.  ``support`` is
    ``"hstrip"`` when the coefficient vanishes off horizontal strips and
    ``"contained"`` otherwise.
    """

    name: str
    coefficient: Callable
    evolve: Callable = field(default=lambda params: params)
    support: str = "hstrip"

    def predecessors(self, lam: Partition):
        if self.support == "hstrip":
            return hstrip_predecessors(lam)
        return contained_in(lam)


_BRANCH_MEMO: dict = {}
_BRANCH_LOCK = threading.Lock()
_BRANCH_MEMO_LIMIT = 200_000


def _params_key(params):
    return tuple(sorted((k, as_ratfunc(v).to_text()) for k, v in params.items()))


def branch_build(rule: BranchRule, lam, letters, params=None, base=()) -> RatFunc:
    """Evaluate ``f_lam(letters)`` from ``f_mu(-) = delta_{mu, base}``.

    Letters are added one at a time, the last letter first, exactly as in
    ``f_lam(x_1..x_n) = sum_mu f_{lam/mu}(x_n; a) f_mu(x_1..x_{n-1}; a')``.
    A nonzero ``base`` yields the skew version ``f_{lam/base}``.
    """
    lam, base = Partition(lam), Partition(base)
    letters = [as_ratfunc(x) for x in letters]
    params = {k: as_ratfunc(v) for k, v in (params or {}).items()}
    chain = [params]
    for _ in range(len(letters) - 1):
        chain.append({k: as_ratfunc(v) for k, v in rule.evolve(chain[-1]).items()})
    chain.reverse()  # chain[k-1] are the parameters seen by letter k
    texts = [x.to_text() for x in letters]
    pkeys = [_params_key(p) for p in chain]
    local: dict = {}

    def value(mu: Partition, k: int) -> RatFunc:
        if k == 0:
            return RatFunc(1) if mu == base else RatFunc(0)
        if not mu.contains(base):
            return RatFunc(0)
        if rule.support == "hstrip" and len(mu) > k + len(base):
            return RatFunc(0)
        key = (rule.name, base, mu, tuple(texts[:k]), pkeys[k - 1])
        hit = local.get(key)
        if hit is None:
            hit = _BRANCH_MEMO.get(key)
        if hit is not None:
            return hit
        terms = []
        z = letters[k - 1]
        for nu in rule.predecessors(mu):
            if not nu.contains(base):
                continue
            inner = value(nu, k - 1)
            if inner.is_zero():
                continue
            coeff = rule.coefficient(mu, nu, z, chain[k - 1])
            if not coeff.is_zero():
                terms.append(coeff * inner)
        out = rsum(terms)
        local[key] = out
        with _BRANCH_LOCK:
            if len(_BRANCH_MEMO) > _BRANCH_MEMO_LIMIT:
                _BRANCH_MEMO.clear()
            _BRANCH_MEMO[key] = out
        return out

    return value(lam, len(letters))


def _schur_coefficient(lam, mu, z, params):
    return z ** (lam.weight - mu.weight)


def _macdonald_coefficient(lam, mu, z, params):
    return z ** (lam.weight - mu.weight) * _psi_cached(lam, mu, False)


SCHUR_RULE = BranchRule("schur", _schur_coefficient)
MACDONALD_RULE = BranchRule("macdonald", _macdonald_coefficient)


def macdonald_P_expr(lam, letters) -> RatFunc:
    """``P_lam`` evaluated at the given letters (symbols or values)."""
    return branch_build(MACDONALD_RULE, lam, letters)


def skew_P_expr(lam, mu, letters) -> RatFunc:
    """Skew ``P_{lam/mu}`` at the given letters; zero unless ``mu`` is in ``lam``."""
    lam, mu = Partition(lam), Partition(mu)
    if not lam.contains(mu):
        return RatFunc(0)
    return branch_build(MACDONALD_RULE, lam, letters, base=mu)


# ---------------------------------------------------------------------------
# symmetric functions in n letters


def _letters(n):
    return [var(f"x{i}") for i in range(1, n + 1)]


def monomial_symmetric(nu, letters) -> RatFunc:
    """``m_nu`` at the given letters; zero if ``nu`` has too many parts."""
    nu = Partition(nu)
    n = len(letters)
    if len(nu) > n:
        return RatFunc(0)
    out = []
    for u in orbit(nu, n):
        term = RatFunc(1)
        for x, e in zip(letters, u):
            if e:
                term = term * as_ratfunc(x) ** e
        out.append(term)
    return rsum(out)


class SymFunc:
    """Symmetric function in ``n`` letters.

    ``basis`` is ``"monomial"`` (coefficients of ``m_nu``) or ``"P"``
    (coefficients of Macdonald ``P_nu``).  Zero coefficients are not stored.
    """

    __slots__ = ("n", "basis", "coeffs")

    def __init__(self, n: int, basis: str, coeffs=None):
        if basis not in ("monomial", "P"):
            raise ValueError(f"unknown basis {basis!r}")
        self.n = n
        self.basis = basis
        clean = {}
        for nu, c in (coeffs or {}).items():
            nu = Partition(nu)
            c = as_ratfunc(c)
            if c.is_zero() or len(nu) > n:
                continue
            clean[nu] = c
        self.coeffs = dict(sorted(clean.items()))

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        return (self.n, self.basis, self.coeffs) == (other.n, other.basis, other.coeffs)

    def __repr__(self):
        body = " + ".join(f"({c})*{self.basis[0]}[{nu}]" for nu, c in self.coeffs.items())
        return f"SymFunc(n={self.n}, {body or '0'})"

    def coefficient(self, nu) -> RatFunc:
        return self.coeffs.get(Partition(nu), RatFunc(0))

    def specialize(self, bindings) -> SymFunc:
        return SymFunc(self.n, self.basis, {nu: c.subs(bindings) for nu, c in self.coeffs.items()})

    def to_expr(self, letters=None) -> RatFunc:
        letters = _letters(self.n) if letters is None else list(letters)
        if self.basis == "monomial":
            return rsum(c * monomial_symmetric(nu, letters) for nu, c in self.coeffs.items())
        return rsum(c * macdonald_P_expr(nu, letters) for nu, c in self.coeffs.items())

    @classmethod
    def from_expr(cls, expr, n: int, letters=None, check: bool = True) -> SymFunc:
        """Read off ``m_nu`` coefficients of a polynomial in the letters."""
        expr = as_ratfunc(expr)
        names = [f"x{i}" for i in range(1, n + 1)] if letters is None else list(letters)
        from .ring import symbol

        idx = [symbol(name).index for name in names]
        den = expr.denominator_poly
        degs = den.degrees()
        if any(i < len(degs) and degs[i] > 0 for i in idx):
            raise ValueError("expression is not polynomial in the letters")
        groups: dict[tuple, dict] = {}
        for exps, coeff in expr.numerator_poly.terms():
            key = tuple(exps[i] if i < len(exps) else 0 for i in idx)
            rest = list(exps)
            for i in idx:
                if i < len(rest):
                    rest[i] = 0
            groups.setdefault(key, {})[tuple(rest)] = coeff
        ctx = expr.numerator_poly.context()
        coeffs = {}
        by_exp = {k: RatFunc(ctx.from_dict(v), 1) / RatFunc(den, 1) for k, v in groups.items()}
        for key, c in by_exp.items():
            if all(key[i] >= key[i + 1] for i in range(len(key) - 1)):
                coeffs[Partition(key)] = c
        if check:
            for key, c in by_exp.items():
                if coeffs.get(Partition(sorted(key, reverse=True))) != c:
                    raise ValueError("expression is not symmetric in the letters")
        return cls(n, "monomial", coeffs)


def _chain_coefficient(lam: Partition, strips: tuple[int, ...]) -> RatFunc:
    """Sum over tableau chains with given strip sizes of the product of psi."""

    @lru_cache(maxsize=None)
    def go(mu: Partition, k: int) -> RatFunc:
        if k == 0:
            return RatFunc(1) if not mu else RatFunc(0)
        if len(mu) > k:
            return RatFunc(0)
        terms = []
        for nu in hstrip_predecessors(mu):
            if mu.weight - nu.weight != strips[k - 1]:
                continue
            inner = go(nu, k - 1)
            if not inner.is_zero():
                terms.append(_psi_cached(mu, nu, False) * inner)
        return rsum(terms)

    return go(lam, len(strips))


@lru_cache(maxsize=None)
def _macdonald_P_cached(lam: Partition, n: int) -> SymFunc:
    if len(lam) > n:
        return SymFunc(n, "monomial", {})
    coeffs = {}
    for nu in partitions_of(lam.weight, n):
        if not lam.dominates(nu):
            continue
        c = _chain_coefficient(lam, Partition(nu).padded(n))
        if not c.is_zero():
            coeffs[nu] = c
    return SymFunc(n, "monomial", coeffs)


def macdonald_P(lam, n: int) -> SymFunc:
    """Monomial expansion of ``P_lam(x_1..x_n; q, t)``."""
    return _macdonald_P_cached(Partition(lam), n)


def vandermonde(letters) -> RatFunc:
    letters = [as_ratfunc(x) for x in letters]
    out = RatFunc(1)
    for i in range(len(letters)):
        for j in range(i + 1, len(letters)):
            out = out * (letters[i] - letters[j])
    return out


def _det(matrix):
    """Leibniz determinant; the matrices here are at most 6x6."""
    n = len(matrix)
    if n == 0:
        return RatFunc(1)
    terms = []
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = RatFunc(sign)
        for i, j in enumerate(perm):
            term = term * matrix[i][j]
            if term.is_zero():
                break
        terms.append(term)
    return rsum(terms)


def schur_det(lam, n: int) -> SymFunc:
    """Schur function as alternant over Vandermonde, by exact division."""
    lam = Partition(lam)
    if len(lam) > n:
        return SymFunc(n, "monomial", {})
    xs = _letters(n)
    parts = lam.padded(n)
    alt = _det([[x ** (parts[j] + n - 1 - j) for j in range(n)] for x in xs])
    quotient = ExactPoly._raw(alt.numerator_poly).exact_divide(
        ExactPoly._raw(vandermonde(xs).numerator_poly)
    )
    return SymFunc.from_expr(RatFunc(quotient), n)


def to_P_basis(f: SymFunc) -> SymFunc:
    """Rewrite a monomial-basis symmetric function in the ``P`` basis."""
    if f.basis == "P":
        return f
    rest = dict(f.coeffs)
    out = {}
    while rest:
        # in partition order the lex-largest, hence dominance-maximal, comes first
        top = min(rest)
        c = rest.pop(top)
        out[top] = c
        for nu, d in macdonald_P(top, f.n).coeffs.items():
            if nu == top:
                continue
            val = rest.get(nu, RatFunc(0)) - c * d
            if val.is_zero():
                rest.pop(nu, None)
            else:
                rest[nu] = val
    return SymFunc(f.n, "P", out)


# ---------------------------------------------------------------------------
# structure constants


_CACHE_HEADER = "macbranch structure-constants v1"
_CACHE_FILE = "structure_constants.v1"
CACHE_ENV = "MACBRANCH_CACHE_DIR"


class StructureCache:
    """In-memory table of normalised structure constants, optionally backed
    by a line-oriented file ``mu|nu|lam|value``."""

    def __init__(self, directory=None):
        self._lock = threading.Lock()
        self._table: dict[tuple, dict] = {}
        self._directory = None
        self._loaded = False
        self.hits = 0
        self.misses = 0
        self.set_directory(directory)

    def set_directory(self, directory):
        with self._lock:
            self._directory = Path(directory) if directory else None
            self._loaded = False

    @property
    def directory(self):
        if self._directory is None and os.environ.get(CACHE_ENV):
            return Path(os.environ[CACHE_ENV])
        return self._directory

    @property
    def path(self):
        d = self.directory
        return d / _CACHE_FILE if d else None

    def _load(self):
        """Merge the file into memory, then append pairs known only in memory."""
        if self._loaded:
            return
        self._loaded = True
        path = self.path
        if path is None:
            return
        on_disk = set()
        if path.exists():
            lines = path.read_text().splitlines()
            if lines and lines[0].strip() != _CACHE_HEADER:
                return  # foreign file: leave it alone
            for line in lines[1:]:
                parts = line.split("|")
                if len(parts) != 4:
                    continue
                mu, nu, lam = (Partition.parse(p) for p in parts[:3])
                self._table.setdefault((mu, nu), {})[lam] = parse(parts[3])
                on_disk.add((mu, nu))
        for key in sorted(set(self._table) - on_disk):
            self._append(key, self._table[key])

    def _append(self, key, values):
        path = self.path
        path.parent.mkdir(parents=True, exist_ok=True)
        fresh = not path.exists() or path.stat().st_size == 0
        lines = [_CACHE_HEADER] if fresh else []
        mu, nu = key
        for lam, val in sorted(values.items()):
            lines.append(f"{mu}|{nu}|{lam}|{val.to_text()}")
        with open(path, "a") as fh:
            fh.write("\n".join(lines) + "\n")

    def get(self, mu, nu):
        with self._lock:
            self._load()
            hit = self._table.get((mu, nu))
        if hit is None:
            self.misses += 1
        else:
            self.hits += 1
        return hit

    def put(self, mu, nu, values: dict):
        with self._lock:
            self._load()
            if (mu, nu) in self._table:
                return
            self._table[(mu, nu)] = values
            if self.path is not None and self._writable():
                self._append((mu, nu), values)

    def _writable(self):
        path = self.path
        if not path.exists() or path.stat().st_size == 0:
            return True
        with open(path) as fh:
            return fh.readline().strip() == _CACHE_HEADER

    def stats(self) -> dict:
        with self._lock:
            self._load()
            records = sum(len(v) for v in self._table.values())
            return {
                "directory": str(self.directory) if self.directory else None,
                "pairs": len(self._table),
                "records": records,
                "hits": self.hits,
                "misses": self.misses,
            }

    def clear(self, disk: bool = True):
        with self._lock:
            self._table.clear()
            self._loaded = False
            path = self.path
            if disk and path is not None and path.exists():
                path.unlink()


STRUCTURE_CACHE = StructureCache()


def _product_coefficients(mu: Partition, nu: Partition, n: int) -> SymFunc:
    """Monomial expansion of ``P_mu P_nu`` in ``n`` letters."""
    pm = macdonald_P(mu, n).coeffs
    pn = macdonald_P(nu, n).coeffs
    total = mu.weight + nu.weight
    coeffs = {}
    for lam in partitions_of(total, n):
        parts = lam.padded(n)
        terms = []
        for alpha in _compositions_below(parts, mu.weight):
            a = pm.get(Partition(sorted(alpha, reverse=True)))
            if a is None:
                continue
            beta = tuple(p - x for p, x in zip(parts, alpha))
            b = pn.get(Partition(sorted(beta, reverse=True)))
            if b is None:
                continue
            terms.append(a * b)
        c = rsum(terms)
        if not c.is_zero():
            coeffs[lam] = c
    return SymFunc(n, "monomial", coeffs)


def _compositions_below(bound, weight):
    if not bound:
        if weight == 0:
            yield ()
        return
    rest_cap = sum(bound[1:])
    for first in range(min(bound[0], weight), -1, -1):
        if weight - first > rest_cap:
            break
        for tail in _compositions_below(bound[1:], weight - first):
            yield (first,) + tail


def structure_constants(mu, nu) -> dict:
    """``{lam: fsf^lam_{mu nu}}`` with ``Phat_mu Phat_nu = sum fsf Phat_lam``."""
    mu, nu = Partition(mu), Partition(nu)
    if nu < mu:
        mu, nu = nu, mu
    hit = STRUCTURE_CACHE.get(mu, nu)
    if hit is not None:
        return {k: v for k, v in hit.items() if not v.is_zero()}
    n = max(1, len(mu) + len(nu))
    prod = to_P_basis(_product_coefficients(mu, nu, n))
    t = var("t")
    cm, cn = c_factors(mu), c_factors(nu)
    out = {}
    for lam, d in prod.coeffs.items():
        cl = c_factors(lam)
        out[lam] = d * t ** (mu.n() + nu.n() - lam.n()) * cl.c_prime / (cm.c_prime * cn.c_prime)
    STRUCTURE_CACHE.put(mu, nu, out)
    return out


# ---------------------------------------------------------------------------
# lambda-ring skew Q and q,t-binomials


def _square_product(nu: Partition, A: RatFunc, B: RatFunc) -> RatFunc:
    q, t = var("q"), var("t")
    out = RatFunc(1)
    for i, j in nu.squares():
        out = out * (A - B * q ** (j - 1) * t ** (1 - i))
    return out


def skewQ_diff(lam, mu, A, B) -> RatFunc:
    """``Qhat_{lam/mu}[(A - B)/(1 - t)]``, a polynomial in ``A`` and ``B``."""
    lam, mu = Partition(lam), Partition(mu)
    if not lam.contains(mu):
        return RatFunc(0)
    if lam == mu:
        return RatFunc(1)
    A, B = as_ratfunc(A), as_ratfunc(B)
    terms = []
    for nu in partitions_of(lam.weight - mu.weight, len(lam)):
        if not lam.contains(nu):
            continue
        f = structure_constants(mu, nu).get(lam)
        if f is None:
            continue
        terms.append(_square_product(nu, A, B) * f)
    return rsum(terms)


def q_binomial(m: int, k: int) -> RatFunc:
    """Classical Gaussian binomial ``[m; k]_q``."""
    if k < 0 or k > m:
        return RatFunc(0)
    q = var("q")
    return qpoch_finite(q, m) / (qpoch_finite(q, k) * qpoch_finite(q, m - k))


def _binom_step(lam: Partition, i: int) -> RatFunc:
    """``[lam; lam_(i)]`` from its closed form in terms of psi'."""
    low = lam.decrement(i)
    q, t = var("q"), var("t")
    return (
        c_factors(lam).c_prime
        / c_factors(low).c_prime
        * psi_prime(lam, low)
        / ((1 - q) * t ** (i - 1))
    )


def _qbinom_recursive(lam: Partition, mu: Partition, n: int) -> RatFunc:
    q, t = var("q"), var("t")

    @lru_cache(maxsize=None)
    def go(lam: Partition) -> RatFunc:
        if not lam.contains(mu):
            return RatFunc(0)
        if lam == mu:
            return RatFunc(1)
        terms = []
        for i in range(1, len(lam) + 1):
            low = lam.decrement(i)
            if low is None or not low.contains(mu):
                continue
            terms.append(q ** (-lam[i - 1]) * t ** (i - n) * _binom_step(lam, i) * go(low))
        return (1 - q) * rsum(terms) / (omega(lam, n) - omega(mu, n))

    return go(lam)


def principal_schur(lam, n: int, base=None) -> RatFunc:
    """``s_lam(1, base, .., base^(n-1))`` with ``base`` defaulting to ``q``."""
    lam = Partition(lam)
    if len(lam) > n:
        return RatFunc(0)
    q = var("q") if base is None else as_ratfunc(base)
    out = q ** lam.n()
    conj = lam.conjugate()
    for i, j in lam.squares():
        arm = lam[i - 1] - j
        leg = conj[j - 1] - i
        out = out / (1 - q ** (arm + leg + 1))
    for i in range(1, n + 1):
        out = out * qpoch_finite(q, lam.part(i) + n - i) / qpoch_finite(q, n - i)
    return out


def qbinom(lam, mu, method: str = "skewQ", n: int | None = None) -> RatFunc:
    """Generalised q,t-binomial coefficient ``[lam; mu]``.

    ``method`` is ``"skewQ"`` (lambda-ring evaluation), ``"recursion"``
    (recursion in the part-decrements, working with ``n`` letters,
    default ``l(lam)``), ``"closed-t=q"`` or ``"closed-t=1"``.  The closed
    forms return the value at that specialisation of ``t`` only.
    """
    lam, mu = Partition(lam), Partition(mu)
    if method == "skewQ":
        return skewQ_diff(lam, mu, 1, 0)
    if method == "recursion":
        n = max(len(lam), 1) if n is None else n
        if n < len(lam):
            raise ValueError(f"working n={n} is smaller than l({lam})")
        return _qbinom_recursive(lam, mu, n)
    if not lam.contains(mu):
        return RatFunc(0)
    n = max(len(lam), 1) if n is None else n
    if method == "closed-t=q":
        lp, mp = lam.padded(n), mu.padded(n)
        matrix = [[q_binomial(lp[i] + n - 1 - i, mp[j] + n - 1 - j) for j in range(n)] for i in range(n)]
        return principal_schur(mu, n) / principal_schur(lam, n) * _det(matrix)
    if method == "closed-t=1":
        lp = lam.padded(n)
        terms = []
        for u in orbit(mu, n):
            term = RatFunc(1)
            for a, b in zip(lp, u):
                term = term * q_binomial(a, b)
            terms.append(term)
        return rsum(terms)
    raise ValueError(f"unknown q-binomial method {method!r}")


def principal_P(lam, n: int) -> RatFunc:
    """``P_lam(1, t, .., t^(n-1)) = t^n(lam) (t^n)_lam / c_lam``."""
    from .partitions import gen_poch

    lam = Partition(lam)
    t = var("t")
    return t ** lam.n() * gen_poch(t**n, lam) / c_factors(lam).c


def principal_P_hat(lam, n: int) -> RatFunc:
    """Normalised ``Phat_lam(1, t, .., t^(n-1))``."""
    from .partitions import gen_poch

    lam = Partition(lam)
    t = var("t")
    cf = c_factors(lam)
    return t ** (2 * lam.n()) * gen_poch(t**n, lam) / (cf.c * cf.c_prime)
