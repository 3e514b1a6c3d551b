"""Independent sympy constructions used as test oracles."""

from itertools import permutations

import sympy

from conftest import SYMS

Q, T = SYMS["q"], SYMS["t"]


def xs(n):
    return [SYMS[f"x{i}"] for i in range(1, n + 1)]


def partitions(w, max_len):
    def go(w, cap, k):
        if w == 0:
            yield ()
            return
        if k == 0:
            return
        for first in range(min(w, cap), 0, -1):
            for rest in go(w - first, first, k - 1):
                yield (first,) + rest

    return list(go(w, w, max_len))


def dominates(lam, mu):
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def monomial(nu, n):
    x = xs(n)
    padded = tuple(nu) + (0,) * (n - len(nu))
    return sum(
        sympy.prod([xi**e for xi, e in zip(x, u)]) for u in set(permutations(padded))
    )


def macdonald_operator(f, n):
    """``D_n^1 f`` by direct substitution."""
    x = xs(n)
    out = 0
    for i in range(n):
        pref = sympy.prod([(T * x[i] - x[j]) / (x[i] - x[j]) for j in range(n) if j != i])
        out += pref * f.subs(x[i], Q * x[i])
    return sympy.cancel(sympy.together(out))


def macdonald_P(lam, n):
    """Monic, dominance-triangular eigenfunction of ``D_n^1``."""
    lam = tuple(lam)
    lower = [nu for nu in partitions(sum(lam), n) if nu != lam and dominates(lam, nu)]
    coeffs = sympy.symbols(f"k0:{len(lower)}")
    P = monomial(lam, n) + sum(k * monomial(nu, n) for k, nu in zip(coeffs, lower))
    eig = sum(Q ** (lam[i] if i < len(lam) else 0) * T ** (n - 1 - i) for i in range(n))
    residual = sympy.expand(sympy.cancel(macdonald_operator(P, n) - eig * P))
    if not lower:
        assert residual == 0
        return P
    eqs = sympy.Poly(residual, *xs(n)).coeffs()
    sol = sympy.solve(eqs, coeffs, dict=True)[0]
    return sympy.expand(P.subs(sol))


def schur(lam, n):
    """Bialternant ``a_{lam+delta}/a_delta``."""
    x = xs(n)
    parts = tuple(lam) + (0,) * (n - len(lam))
    if len(lam) > n:
        return sympy.Integer(0)
    num = sympy.Matrix(n, n, lambda i, j: x[i] ** (parts[j] + n - 1 - j)).det()
    den = sympy.Matrix(n, n, lambda i, j: x[i] ** (n - 1 - j)).det()
    return sympy.expand(sympy.cancel(num / den))
