"""q-difference operators of Macdonald type acting on rational functions
of the letters ``x1..xn``."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .core import macdonald_P_expr, psi_prime, SymFunc, to_P_basis
from .partitions import Partition, omega, vstrip_successors
from .ring import ExactPoly, ExactDivisionError, RatFunc, as_ratfunc, rsum, substitute, var

__all__ = [
    "MAX_LETTERS",
    "DiffOperator",
    "qshift",
    "apply",
    "Dn_c",
    "Dn_1",
    "Dn_bc",
    "calE",
    "calD1_b",
    "macdonald_eigenvalue",
    "dn_bc_on_P",
    "calD_eigenvalue",
]

MAX_LETTERS = 4
KINDS = ("Dn-c", "Dn-1", "Dn-bc", "calE", "calD1-b")


def _letter(i: int) -> RatFunc:
    return var(f"x{i}")


def qshift(f, i: int, direction: int = 1) -> RatFunc:
    """``x_i -> q^direction x_i`` (``direction`` is ``1`` or ``-1``)."""
    if direction not in (1, -1):
        raise ValueError("direction must be 1 or -1")
    x = _letter(i)
    return substitute(f, {f"x{i}": x * var("q") ** direction})


@dataclass(frozen=True)
class DiffOperator:
    """One of the operators ``D_n(c)``, ``D_n^1``, ``D_n(b, c)``,
    ``E_n`` and ``calD_n^1(b)`` on ``n`` letters."""

    kind: str
    n: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if not 1 <= self.n <= MAX_LETTERS:
            raise ValueError(f"operators are limited to 1..{MAX_LETTERS} letters")

    def _param(self, name):
        return as_ratfunc(self.params.get(name, name))

    def terms(self):
        """Yield ``(I, t_base, [(scalar, shift), ...])``: the term
        ``prod_{i in I, j not in I} (t_base x_i - x_j)/(x_i - x_j)
        * sum scalar * T^shift_I``."""
        n = self.n
        q, t = var("q"), var("t")
        xs = [_letter(i) for i in range(1, n + 1)]
        idx = range(n)
        if self.kind in ("Dn-c", "Dn-bc"):
            c = self._param("c")
            b = self._param("b") if self.kind == "Dn-bc" else None
            for k in range(n + 1):
                for I in combinations(idx, k):
                    if b is None:
                        scalar = (-c) ** k * t ** comb(k, 2)
                    else:
                        scalar = RatFunc((-1) ** k) * t ** comb(k, 2)
                        for j in idx:
                            if j in I:
                                scalar = scalar * (c - b * t ** (1 - n) * xs[j])
                            else:
                                scalar = scalar * (1 - b * xs[j])
                    yield I, t, [(scalar, 1)]
        elif self.kind == "Dn-1":
            for i in idx:
                yield (i,), t, [(RatFunc(1), 1)]
        elif self.kind == "calE":
            for i in idx:
                yield (i,), 1 / t, [(xs[i], -1), (-xs[i], 0)]
        else:
            b = self._param("b")
            for i in idx:
                yield (i,), 1 / t, [(1 - b * xs[i] / q, -1), (b * xs[i] / q, 0)]

    def __call__(self, f):
        return apply(self, f)


def _shift_all(f, I, shift):
    if shift == 0 or not I:
        return f
    q = var("q")
    return substitute(f, {f"x{i + 1}": _letter(i + 1) * q**shift for i in I})


def apply(op: DiffOperator, f) -> RatFunc:
    """Apply ``op`` to ``f``.

    Each subset term is multiplied out over the Vandermonde product
    ``prod_{i<j} (x_i - x_j)``; the sum is then divided by it exactly, and
    a nonzero remainder raises :class:`ExactDivisionError`.
    """
    f = as_ratfunc(f)
    n = op.n
    xs = [_letter(i) for i in range(1, n + 1)]
    total = []
    for I, tb, parts in op.terms():
        inside = set(I)
        pref = RatFunc(1)
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                a_in, b_in = i in inside, j in inside
                if a_in and not b_in:
                    pref = pref * (tb * xs[i] - xs[j])
                elif b_in and not a_in:
                    # (t x_j - x_i)/(x_j - x_i) = -(t x_j - x_i)/(x_i - x_j)
                    pref = pref * (tb * xs[j] - xs[i])
                    sign = -sign
                else:
                    pref = pref * (xs[i] - xs[j])
        body = rsum(scalar * _shift_all(f, I, shift) for scalar, shift in parts)
        total.append(sign * pref * body)
    numer = rsum(total)
    delta = RatFunc(1)
    for i in range(n):
        for j in range(i + 1, n):
            delta = delta * (xs[i] - xs[j])
    top = ExactPoly._raw(numer.numerator_poly)
    try:
        quotient = top.exact_divide(ExactPoly._raw(delta.numerator_poly))
    except ExactDivisionError as exc:
        raise ExactDivisionError(
            f"{op.kind} on {n} letters: Vandermonde does not divide the numerator"
        ) from exc
    return RatFunc(quotient) / RatFunc(numer.denominator_poly)


def Dn_c(n: int, c="c") -> DiffOperator:
    return DiffOperator("Dn-c", n, {"c": c})


def Dn_1(n: int) -> DiffOperator:
    return DiffOperator("Dn-1", n)


def Dn_bc(n: int, b="b", c="c") -> DiffOperator:
    return DiffOperator("Dn-bc", n, {"b": b, "c": c})


def calE(n: int) -> DiffOperator:
    return DiffOperator("calE", n)


def calD1_b(n: int, b="b") -> DiffOperator:
    return DiffOperator("calD1-b", n, {"b": b})


def macdonald_eigenvalue(lam, n: int, c="c") -> RatFunc:
    """``prod_i (1 - c q^lam_i t^(n-i))``."""
    lam = Partition(lam)
    q, t = var("q"), var("t")
    c = as_ratfunc(c)
    out = RatFunc(1)
    for i in range(1, n + 1):
        out = out * (1 - c * q ** lam.part(i) * t ** (n - i))
    return out


def dn_bc_on_P(mu, n: int, b="b", c="c"):
    """``(computed, predicted)`` P-basis expansions of ``D_n(b, c) P_mu``.

    The prediction sums over vertical strips ``lam/mu`` with ``l(lam) <= n``.
    """
    mu = Partition(mu)
    b, c = as_ratfunc(b), as_ratfunc(c)
    q, t = var("q"), var("t")
    xs = [_letter(i) for i in range(1, n + 1)]
    image = apply(Dn_bc(n, b, c), macdonald_P_expr(mu, xs))
    computed = to_P_basis(SymFunc.from_expr(image, n))
    predicted = {}
    for size in range(n + 1):
        for lam in vstrip_successors(mu, size, n):
            coeff = (-b) ** size * psi_prime(lam, mu)
            for i in range(1, n + 1):
                if lam.part(i) == mu.part(i):
                    coeff = coeff * (1 - c * q ** lam.part(i) * t ** (n - i))
                else:
                    coeff = coeff * (1 - q ** mu.part(i) * t ** (1 - i))
            predicted[lam] = coeff
    return computed, SymFunc(n, "P", predicted)


def calD_eigenvalue(lam, n: int) -> RatFunc:
    """``omega_lam`` for the operator ``calD_n^1(b)``."""
    return omega(lam, n)
