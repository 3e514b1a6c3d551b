"""Exact coefficient arithmetic.

Symbols live in a process-wide registry whose order fixes the canonical
(graded reverse-lexicographic) term order.  Polynomial arithmetic and gcds
are delegated to FLINT's ``fmpz_mpoly``; this module wraps it with the
value types used throughout the package:

* :class:`ExactPoly` -- integer polynomial, Laurent in ``q`` and ``t`` only,
* :class:`RatFunc` -- reduced quotient of two polynomials,
* :class:`TruncSeries` -- power series in alphabet letters truncated at a
  total degree, with :class:`RatFunc` coefficients.

All values are immutable.
"""

from __future__ import annotations

import re
import threading
from fractions import Fraction
from math import comb

import flint

__all__ = [
    "BASE_Q",
    "BASE_T",
    "PARAMETER",
    "LETTER",
    "Symbol",
    "register",
    "symbol",
    "symbols",
    "letters",
    "var",
    "ExactPoly",
    "RatFunc",
    "ExactDivisionError",
    "as_ratfunc",
    "poly_arith",
    "ratfunc_normalize",
    "substitute",
    "qpoch_finite",
    "qpoch_inf_series",
    "series_arith",
    "parse",
    "TruncSeries",
    "taylor",
    "rsum",
]

BASE_Q = "base-q"
BASE_T = "base-t"
PARAMETER = "parameter"
LETTER = "alphabet-letter"

_KINDS = (BASE_Q, BASE_T, PARAMETER, LETTER)
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")
_LETTER_RE = re.compile(r"[xyu][0-9]*\Z")


class ExactDivisionError(ArithmeticError):
    """An exact division left a nonzero remainder."""


class Symbol:
    __slots__ = ("name", "kind", "index")

    def __init__(self, name: str, kind: str, index: int):
        self.name = name
        self.kind = kind
        self.index = index

    def __repr__(self):
        return f"Symbol({self.name!r}, {self.kind!r})"


class _Registry:
    def __init__(self):
        self._lock = threading.Lock()
        self._symbols: dict[str, Symbol] = {}
        self._order: list[str] = []
        self._ctx = None

    def register(self, name: str, kind: str | None = None) -> Symbol:
        if not _NAME_RE.match(name):
            raise ValueError(f"invalid symbol name {name!r}")
        if kind is None:
            kind = _default_kind(name)
        if kind not in _KINDS:
            raise ValueError(f"unknown symbol kind {kind!r}")
        with self._lock:
            sym = self._symbols.get(name)
            if sym is not None:
                if sym.kind != kind:
                    raise ValueError(
                        f"symbol {name!r} already registered as {sym.kind}, not {kind}"
                    )
                return sym
            sym = Symbol(name, kind, len(self._order))
            self._symbols[name] = sym
            self._order.append(name)
            self._ctx = None
            return sym

    def get(self, name: str) -> Symbol | None:
        return self._symbols.get(name)

    @property
    def ctx(self):
        ctx = self._ctx
        if ctx is None:
            with self._lock:
                ctx = self._ctx = flint.fmpz_mpoly_ctx.get(
                    tuple(self._order), "degrevlex"
                )
        return ctx


def _default_kind(name: str) -> str:
    if name == "q":
        return BASE_Q
    if name == "t":
        return BASE_T
    if _LETTER_RE.match(name):
        return LETTER
    return PARAMETER


_REGISTRY = _Registry()
_REGISTRY.register("q", BASE_Q)
_REGISTRY.register("t", BASE_T)
for _name in "abcdefz":
    _REGISTRY.register(_name, PARAMETER)
_REGISTRY.register("u", LETTER)
for _i in range(1, 7):
    _REGISTRY.register(f"x{_i}", LETTER)
for _i in range(1, 7):
    _REGISTRY.register(f"y{_i}", LETTER)


def register(name: str, kind: str | None = None) -> Symbol:
    """Register ``name`` (idempotent).  The kind defaults from the name."""
    return _REGISTRY.register(name, kind)


def symbol(name: str) -> Symbol:
    sym = _REGISTRY.get(name)
    if sym is None:
        sym = _REGISTRY.register(name)
    return sym


def symbols() -> tuple[Symbol, ...]:
    """All registered symbols in canonical order."""
    return tuple(_REGISTRY.get(n) for n in _REGISTRY._order)


def _ctx():
    return _REGISTRY.ctx


def _lift(p, ctx):
    if p.context() is ctx:
        return p
    return p.project_to_context(ctx)


def _same_ctx(p1, p2):
    c1, c2 = p1.context(), p2.context()
    if c1 is c2:
        return p1, p2
    ctx = _ctx()
    return _lift(p1, ctx), _lift(p2, ctx)


# ---------------------------------------------------------------------------
# ExactPoly


class ExactPoly:
    """Sparse integer polynomial, Laurent in ``q`` and ``t``.

    Stored as ``poly * q**sq * t**st`` with ``sq, st <= 0`` and ``poly`` not
    divisible by ``q`` (resp. ``t``) whenever the shift is negative.
    """

    __slots__ = ("_p", "_sq", "_st")

    def __init__(self, value=0, *, _shift=(0, 0)):
        if isinstance(value, ExactPoly):
            self._p, self._sq, self._st = value._p, value._sq, value._st
            return
        if isinstance(value, int):
            value = _ctx().constant(value)
        elif isinstance(value, dict):
            value, _shift = _poly_from_exponents(value)
        self._p = value
        self._sq, self._st = _shift
        if self._sq or self._st:
            self._canonicalize()

    @classmethod
    def _raw(cls, p, sq=0, st=0):
        obj = object.__new__(cls)
        obj._p, obj._sq, obj._st = p, sq, st
        if sq or st:
            obj._canonicalize()
        return obj

    def _canonicalize(self):
        p = self._p
        if p.is_zero():
            self._sq = self._st = 0
            return
        if self._sq > 0 or self._st > 0:
            ctx = p.context()
            gens = ctx.gens()
            if self._sq > 0:
                p = p * gens[0] ** self._sq
                self._sq = 0
            if self._st > 0:
                p = p * gens[1] ** self._st
                self._st = 0
        if self._sq < 0 or self._st < 0:
            content = p.term_content().degrees()
            kq = min(content[0], -self._sq)
            kt = min(content[1], -self._st)
            if kq or kt:
                gens = p.context().gens()
                p = p / (gens[0] ** kq * gens[1] ** kt)
                self._sq += kq
                self._st += kt
        self._p = p

    # -- inspection
    @property
    def is_laurent(self) -> bool:
        return bool(self._sq or self._st)

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def terms(self):
        """``(exponent vector, coefficient)`` pairs in canonical order."""
        names_n = self._p.context().nvars()
        for exps, coeff in self._p.terms():
            exps = list(exps)
            exps[0] += self._sq
            exps[1] += self._st
            yield tuple(exps) + (0,) * (len(_REGISTRY._order) - names_n), int(coeff)

    def __iter__(self):
        return self.terms()

    def __len__(self):
        return len(self._p)

    def split_laurent(self):
        """Return ``(poly, q_shift, t_shift)`` with the raw FLINT polynomial."""
        return self._p, self._sq, self._st

    # -- arithmetic
    def _coerce(self, other):
        if isinstance(other, ExactPoly):
            return other
        if isinstance(other, int):
            return ExactPoly._raw(self._p.context().constant(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = _same_ctx(self._p, other._p)
        sq = min(self._sq, other._sq)
        st = min(self._st, other._st)
        gens = a.context().gens()
        if self._sq != sq or self._st != st:
            a = a * gens[0] ** (self._sq - sq) * gens[1] ** (self._st - st)
        if other._sq != sq or other._st != st:
            b = b * gens[0] ** (other._sq - sq) * gens[1] ** (other._st - st)
        return ExactPoly._raw(a + b, sq, st)

    __radd__ = __add__

    def __neg__(self):
        return ExactPoly._raw(-self._p, self._sq, self._st)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = _same_ctx(self._p, other._p)
        return ExactPoly._raw(a * b, self._sq + other._sq, self._st + other._st)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial; use RatFunc")
        return ExactPoly._raw(self._p**k, self._sq * k, self._st * k)

    def exact_divide(self, other: ExactPoly) -> ExactPoly:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        a, b = _same_ctx(self._p, other._p)
        quo, rem = divmod(a, b)
        if not rem.is_zero():
            raise ExactDivisionError(f"{other} does not divide {self}")
        return ExactPoly._raw(quo, self._sq - other._sq, self._st - other._st)

    def gcd(self, other: ExactPoly) -> ExactPoly:
        a, b = _same_ctx(self._p, other._p)
        return ExactPoly._raw(a.gcd(b))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if (self._sq, self._st) != (other._sq, other._st):
            return False
        a, b = _same_ctx(self._p, other._p)
        return a == b

    def __hash__(self):
        return hash(self.to_text())

    def to_text(self) -> str:
        return _poly_text(self)

    def __str__(self):
        s = self.to_text()
        return s[1:] if s.startswith("+") else s

    def __repr__(self):
        return f"ExactPoly({str(self)!r})"


def _poly_from_exponents(mapping):
    """Dict ``{exponent tuple: int}`` (possibly negative in q, t) to poly + shift."""
    n = len(_REGISTRY._order)
    sq = min([0] + [e[0] for e in mapping])
    st = min([0] + [e[1] for e in mapping])
    data = {}
    for exps, coeff in mapping.items():
        exps = tuple(exps) + (0,) * (n - len(exps))
        if any(x < 0 for x in exps[2:]):
            raise ValueError("only q and t may carry negative exponents")
        shifted = (exps[0] - sq, exps[1] - st) + exps[2:]
        if coeff:
            data[shifted] = data.get(shifted, 0) + coeff
    return _ctx().from_dict(data), (sq, st)


def _monomial_text(exps, names):
    parts = []
    for e, name in zip(exps, names):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _poly_text(poly: ExactPoly) -> str:
    if poly.is_zero():
        return "0"
    names = _REGISTRY._order
    out = []
    for exps, coeff in poly.terms():
        mono = _monomial_text(exps, names)
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        if not mono:
            out.append(f"{sign}{mag}")
        elif mag == 1:
            out.append(f"{sign}{mono}")
        else:
            out.append(f"{sign}{mag}*{mono}")
    return "".join(out)


def poly_arith(lhs: ExactPoly, rhs: ExactPoly, op: str) -> ExactPoly:
    """``op`` is one of ``add``, ``mul``, ``exact-divide``."""
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    if op == "exact-divide":
        return lhs.exact_divide(rhs)
    raise ValueError(f"unknown polynomial operation {op!r}")


# ---------------------------------------------------------------------------
# RatFunc


def _normalize(num, den):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    num, den = _same_ctx(num, den)
    if num.is_zero():
        return num, den.context().constant(1)
    g = num.gcd(den)
    if not g.is_one():
        num = num / g
        den = den / g
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return num, den


class RatFunc:
    """Reduced quotient ``num/den`` of integer polynomials.

    ``gcd(num, den) == 1`` and the leading coefficient of ``den`` (in the
    canonical order) is positive, so equal functions have identical fields.
    """

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, num=0, den=1):
        if isinstance(num, RatFunc) and den == 1:
            self._n, self._d, self._hash = num._n, num._d, num._hash
            return
        n_poly, d_poly = _to_fraction_polys(num)
        if den != 1:
            dn, dd = _to_fraction_polys(den)
            n_poly, dd = _same_ctx(n_poly, dd)
            d_poly, dn = _same_ctx(d_poly, dn)
            n_poly, d_poly = n_poly * dd, d_poly * dn
        self._n, self._d = _normalize(n_poly, d_poly)
        self._hash = None

    @classmethod
    def _raw(cls, n, d):
        obj = object.__new__(cls)
        obj._n, obj._d, obj._hash = n, d, None
        return obj

    @classmethod
    def _make(cls, n, d):
        n, d = _normalize(n, d)
        return cls._raw(n, d)

    # -- fields
    @property
    def num(self) -> ExactPoly:
        return ExactPoly._raw(self._n)

    @property
    def den(self) -> ExactPoly:
        return ExactPoly._raw(self._d)

    @property
    def numerator_poly(self):
        return self._n

    @property
    def denominator_poly(self):
        return self._d

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def is_one(self) -> bool:
        return self._n.is_one() and self._d.is_one()

    def is_polynomial(self) -> bool:
        return self._d.is_one()

    def free_symbols(self) -> set[str]:
        names = self._n.context().names()
        used = set()
        for poly in (self._n, self._d):
            for i, deg in enumerate(poly.degrees()):
                if deg > 0:
                    used.add(names[i])
        return used

    # -- arithmetic
    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, ExactPoly)):
            return RatFunc(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other._n.is_zero():
            return self
        if self._n.is_zero():
            return other
        an, ad = self._n, self._d
        bn, bd = other._n, other._d
        if ad.context() is not bd.context():
            an, bn = _same_ctx(an, bn)
            ad, bd = _same_ctx(ad, bd)
        if ad == bd:
            n = an + bn
            if n.is_zero():
                return RatFunc._raw(n, ad.context().constant(1))
            g = n.gcd(ad)
            if g.is_one():
                return RatFunc._raw(n, ad)
            return RatFunc._make(n / g, ad / g)
        g = ad.gcd(bd)
        if g.is_one():
            n = an * bd + bn * ad
            d = ad * bd
            if n.is_zero():
                return RatFunc._raw(n, d.context().constant(1))
            return RatFunc._raw(n, d) if d.leading_coefficient() > 0 else RatFunc._make(n, d)
        ad_g = ad / g
        bd_g = bd / g
        n = an * bd_g + bn * ad_g
        if n.is_zero():
            return RatFunc._raw(n, ad.context().constant(1))
        g2 = n.gcd(g)
        if not g2.is_one():
            n = n / g2
            d = ad_g * (bd / g2)
        else:
            d = ad_g * bd
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return RatFunc._raw(n, d)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self._n, self._d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return RatFunc._raw(self._n.context().constant(0), self._n.context().constant(1))
            if other == 1:
                return self
            return RatFunc._make(self._n * other, self._d)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        an, ad = self._n, self._d
        bn, bd = other._n, other._d
        if an.context() is not bn.context():
            an, bn = _same_ctx(an, bn)
            ad, bd = _same_ctx(ad, bd)
            an, bd = _same_ctx(an, bd)
        if an.is_zero() or bn.is_zero():
            return RatFunc._raw(an.context().constant(0), an.context().constant(1))
        g1 = an.gcd(bd)
        g2 = bn.gcd(ad)
        if not g1.is_one():
            an, bd = an / g1, bd / g1
        if not g2.is_one():
            bn, ad = bn / g2, ad / g2
        n = an * bn
        d = ad * bd
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return RatFunc._raw(n, d)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self._n.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n, d = self._d, self._n
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return RatFunc._raw(n, d)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return RatFunc(1)
        return RatFunc._raw(self._n**k, self._d**k)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = _same_ctx(self._n, other._n)
        if a != b:
            return False
        a, b = _same_ctx(self._d, other._d)
        return a == b

    def cross_equal(self, other) -> bool:
        """Equality by cross-multiplication (independent of normal form)."""
        other = self._coerce(other)
        a, b = _same_ctx(self._n * other._d, other._n * self._d)
        return a == b

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash(self.to_text())
        return h

    def __bool__(self):
        return not self._n.is_zero()

    # -- substitution and inspection
    def subs(self, bindings) -> RatFunc:
        return substitute(self, bindings)

    def degree_in(self, name: str) -> int:
        """Degree of numerator minus degree of denominator in ``name``."""
        idx = symbol(name).index
        return _deg(self._n, idx) - _deg(self._d, idx)

    def leading_in(self, name: str) -> tuple[int, RatFunc]:
        """``(k, c)`` such that ``self ~ c * name**k`` as ``name`` -> infinity."""
        idx = symbol(name).index
        dn, ln = _leading(self._n, idx)
        dd, ld = _leading(self._d, idx)
        return dn - dd, RatFunc._make(ln, ld)

    def to_text(self) -> str:
        return f"({_poly_text(self.num)})/({_poly_text(self.den)})"

    def __str__(self):
        n = str(self.num)
        if self._d.is_one():
            return n
        return f"({n})/({self.den})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def _deg(poly, idx):
    degs = poly.degrees()
    if idx >= len(degs):
        return 0
    return max(degs[idx], 0) if not poly.is_zero() else 0


def _leading(poly, idx):
    ctx = poly.context()
    if idx >= ctx.nvars():
        return 0, poly
    deg = poly.degrees()[idx]
    data = {}
    for exps, coeff in poly.terms():
        if exps[idx] == deg:
            exps = list(exps)
            exps[idx] = 0
            data[tuple(exps)] = coeff
    return deg, ctx.from_dict(data)


def _to_fraction_polys(value):
    ctx = _ctx()
    if isinstance(value, RatFunc):
        return value._n, value._d
    if isinstance(value, ExactPoly):
        p, sq, st = value.split_laurent()
        den = ctx.constant(1)
        p = _lift(p, ctx)
        gens = ctx.gens()
        if sq < 0 or st < 0:
            den = gens[0] ** (-sq) * gens[1] ** (-st)
        return p, den
    if isinstance(value, bool):
        raise TypeError("bool is not a ring element")
    if isinstance(value, int):
        return ctx.constant(value), ctx.constant(1)
    if isinstance(value, Fraction):
        return ctx.constant(value.numerator), ctx.constant(value.denominator)
    if isinstance(value, str):
        r = parse(value)
        return r._n, r._d
    if isinstance(value, flint.fmpz_mpoly):
        return value, value.context().constant(1)
    raise TypeError(f"cannot convert {type(value).__name__} to RatFunc")


def as_ratfunc(value) -> RatFunc:
    """Coerce ints, fractions, polynomials, symbol names or text to RatFunc."""
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, Symbol):
        return var(value.name)
    return RatFunc(value)


def ratfunc_normalize(num: ExactPoly, den: ExactPoly) -> RatFunc:
    if ExactPoly(den).is_zero():
        raise ZeroDivisionError("zero denominator")
    return RatFunc(num, den)


_VAR_CACHE: dict[tuple[str, int], RatFunc] = {}


def var(name: str) -> RatFunc:
    """The generator ``name`` as a RatFunc (registers it on first use)."""
    sym = symbol(name)
    ctx = _ctx()
    key = (name, ctx.nvars())
    r = _VAR_CACHE.get(key)
    if r is None:
        r = RatFunc._raw(ctx.gens()[sym.index], ctx.constant(1))
        _VAR_CACHE[key] = r
    return r


def letters(prefix: str, n: int) -> tuple[RatFunc, ...]:
    """Alphabet ``prefix1, ..., prefix{n}`` registered as letters."""
    out = []
    for i in range(1, n + 1):
        register(f"{prefix}{i}", LETTER)
        out.append(var(f"{prefix}{i}"))
    return tuple(out)


# ---------------------------------------------------------------------------
# substitution


def _binding_index(key):
    if isinstance(key, Symbol):
        return key.index
    if isinstance(key, str):
        return symbol(key).index
    if isinstance(key, RatFunc):
        n, d = key._n, key._d
        if d.is_one() and len(n) == 1:
            (exps, coeff), = list(n.terms())
            if coeff == 1 and sum(exps) == 1:
                return list(exps).index(1)
    raise TypeError(f"cannot bind {key!r}")


def _subs_poly(poly, images):
    """Simultaneously substitute ``{index: RatFunc}`` into a FLINT poly."""
    ctx = _ctx()
    poly = _lift(poly, ctx)
    idxs = [i for i in images if poly.degrees()[i] > 0]
    if not idxs:
        return RatFunc._make(poly, ctx.constant(1))
    if all(images[i]._d.is_one() for i in idxs):
        gens = list(ctx.gens())
        for i in idxs:
            gens[i] = _lift(images[i]._n, ctx)
        return RatFunc._make(poly.compose(*gens), ctx.constant(1))
    degs = poly.degrees()
    nums = {i: _lift(images[i]._n, ctx) for i in idxs}
    dens = {i: _lift(images[i]._d, ctx) for i in idxs}
    groups: dict[tuple, dict] = {}
    for exps, coeff in poly.terms():
        key = tuple(exps[i] for i in idxs)
        rest = list(exps)
        for i in idxs:
            rest[i] = 0
        groups.setdefault(key, {})[tuple(rest)] = coeff
    npow: dict[tuple[int, int], object] = {}
    dpow: dict[tuple[int, int], object] = {}

    def power(cache, base, i, k):
        val = cache.get((i, k))
        if val is None:
            val = cache[(i, k)] = base[i] ** k
        return val

    total = ctx.constant(0)
    for key, data in groups.items():
        term = ctx.from_dict(data)
        for i, e in zip(idxs, key):
            term = term * power(npow, nums, i, e) * power(dpow, dens, i, degs[i] - e)
        total = total + term
    den = ctx.constant(1)
    for i in idxs:
        den = den * power(dpow, dens, i, degs[i])
    return RatFunc._make(total, den)


def substitute(expr, bindings) -> RatFunc:
    """Simultaneous substitution ``{symbol: value}`` into a rational function."""
    expr = as_ratfunc(expr)
    images = {_binding_index(k): as_ratfunc(v) for k, v in bindings.items()}
    if not images:
        return expr
    num = _subs_poly(expr._n, images)
    den = _subs_poly(expr._d, images)
    if den.is_zero():
        raise ZeroDivisionError(
            "substitution makes the denominator vanish: "
            + ", ".join(f"{_REGISTRY._order[i]}={v}" for i, v in images.items())
        )
    return num / den


# ---------------------------------------------------------------------------
# q-Pochhammer symbols


def qpoch_finite(base, k: int) -> RatFunc:
    """``(base; q)_k = prod_{i<k} (1 - base q^i)``.

    Negative ``k`` follows ``(b)_k = (b)_inf / (b q^k)_inf``, that is
    ``(b)_{-k} = 1 / (b q^-k)_k``.
    """
    base = as_ratfunc(base)
    q = var("q")
    if k < 0:
        return qpoch_finite(base * q**k, -k).inverse()
    out = RatFunc(1)
    for i in range(k):
        out = out * (1 - base * q**i)
    return out


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            out.append(("int", int(m.group(1))))
        elif m.group(2) is not None:
            out.append(("name", m.group(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ValueError(f"unexpected character {ch!r} in {text!r}")
            out.append(("op", ch))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ValueError(f"parse error in {self.text!r} at token {self.i}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ValueError("empty expression")
        val = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input in {self.text!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.unary()
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            exp = self.exponent()
            return base**exp
        return base

    def exponent(self):
        sign = 1
        while self.peek() in (("op", "-"), ("op", "+")):
            if self.take()[1] == "-":
                sign = -sign
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return sign * tok[1]
        if tok == ("op", "("):
            self.take()
            val = self.expr()
            self.take("op", ")")
            if not (val.is_polynomial() and not val.free_symbols()):
                raise ValueError(f"exponent must be an integer in {self.text!r}")
            return sign * int(val._n.leading_coefficient()) if not val.is_zero() else 0
        raise ValueError(f"bad exponent in {self.text!r}")

    def atom(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return RatFunc(tok[1])
        if tok[0] == "name":
            self.take()
            return var(tok[1])
        if tok == ("op", "("):
            self.take()
            val = self.expr()
            self.take("op", ")")
            return val
        raise ValueError(f"parse error in {self.text!r}")


def parse(text: str) -> RatFunc:
    """Parse integers, symbols, ``+ - * / ^`` and parentheses to a RatFunc.

    Accepts the canonical text form emitted by :meth:`RatFunc.to_text`.
    """
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# truncated power series


def _letter_indices(names):
    idx = []
    for name in names:
        sym = symbol(name)
        if sym.kind != LETTER:
            raise ValueError(f"{name!r} is not an alphabet letter")
        idx.append(sym.index)
    return idx


def _split_by_letters(poly, idxs):
    """``{letter exponent: poly in the remaining symbols}``."""
    ctx = poly.context()
    groups: dict[tuple, dict] = {}
    for exps, coeff in poly.terms():
        key = tuple(exps[i] if i < len(exps) else 0 for i in idxs)
        rest = list(exps)
        for i in idxs:
            if i < len(rest):
                rest[i] = 0
        groups.setdefault(key, {})[tuple(rest)] = coeff
    return {k: ctx.from_dict(v) for k, v in groups.items()}


def _exponents_upto(nvars, degree):
    """All exponent vectors of total degree <= ``degree``, graded."""
    out = []
    for d in range(degree + 1):
        out.extend(_exponents_of(nvars, d))
    return out


def _exponents_of(nvars, d):
    if nvars == 0:
        return [()] if d == 0 else []
    if nvars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in _exponents_of(nvars - 1, d - first):
            out.append((first,) + rest)
    return out


def _expand(expr: RatFunc, idxs, cutoff):
    """Coefficients of the expansion of ``expr`` about 0 in the given
    variables, up to total degree ``cutoff``."""
    num = _split_by_letters(_lift(expr._n, _ctx()), idxs)
    den = _split_by_letters(_lift(expr._d, _ctx()), idxs)
    zero = (0,) * len(idxs)
    d0 = den.get(zero)
    if d0 is None or d0.is_zero():
        raise ZeroDivisionError("denominator vanishes at the expansion point")
    # scaled[a] = coefficient[a] * d0^(|a|+1) stays polynomial
    dterms = [(e, p) for e, p in den.items() if e != zero and sum(e) <= cutoff]
    ctx = _ctx()
    d0_pows = [ctx.constant(1)]
    for _ in range(cutoff + 1):
        d0_pows.append(d0_pows[-1] * d0)
    scaled = {}
    out = {}
    for exps in _exponents_upto(len(idxs), cutoff):
        deg = sum(exps)
        acc = num.get(exps)
        acc = acc * d0_pows[deg] if acc is not None else ctx.constant(0)
        for e, p in dterms:
            diff = tuple(a - b for a, b in zip(exps, e))
            if min(diff) < 0:
                continue
            prev = scaled.get(diff)
            if prev is not None:
                acc = acc - p * prev * d0_pows[sum(e) - 1]
        if not acc.is_zero():
            scaled[exps] = acc
            out[exps] = RatFunc._make(acc, d0_pows[deg + 1])
    return out


def taylor(expr, name: str, order: int) -> list[RatFunc]:
    """Taylor coefficients ``[c_0, .., c_order]`` of ``expr`` in ``name`` at 0."""
    coeffs = _expand(as_ratfunc(expr), [symbol(name).index], order)
    return [coeffs.get((k,), RatFunc(0)) for k in range(order + 1)]


class TruncSeries:
    """Power series in ``letters`` with RatFunc coefficients, kept to total
    degree ``cutoff``."""

    __slots__ = ("letters", "cutoff", "terms")

    def __init__(self, letters, cutoff: int, terms=None):
        self.letters = (letters,) if isinstance(letters, str) else tuple(letters)
        self.cutoff = int(cutoff)
        if self.cutoff < 0:
            raise ValueError("negative cutoff")
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(self.letters):
                raise ValueError("exponent vector has wrong width")
            if sum(exps) > self.cutoff:
                continue
            coeff = as_ratfunc(coeff)
            if not coeff.is_zero():
                clean[exps] = coeff
        self.terms = clean

    @classmethod
    def one(cls, letters, cutoff):
        return cls.constant(1, letters, cutoff)

    @classmethod
    def constant(cls, value, letters, cutoff):
        width = 1 if isinstance(letters, str) else len(tuple(letters))
        return cls(letters, cutoff, {(0,) * width: as_ratfunc(value)})

    @classmethod
    def from_ratfunc(cls, expr, letters, cutoff: int) -> TruncSeries:
        """Expand a rational function whose denominator is a unit at 0."""
        letters = (letters,) if isinstance(letters, str) else tuple(letters)
        idxs = _letter_indices(letters)
        return cls(letters, cutoff, _expand(as_ratfunc(expr), idxs, cutoff))

    def _check(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries.constant(other, self.letters, self.cutoff)
        if other.letters != self.letters:
            raise ValueError("series over different alphabets")
        return other

    def __add__(self, other):
        other = self._check(other)
        cutoff = min(self.cutoff, other.cutoff)
        terms = {e: c for e, c in self.terms.items() if sum(e) <= cutoff}
        for e, c in other.terms.items():
            if sum(e) > cutoff:
                continue
            terms[e] = terms[e] + c if e in terms else c
        return TruncSeries(self.letters, cutoff, terms)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.letters, self.cutoff, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> TruncSeries:
        factor = as_ratfunc(factor)
        return TruncSeries(self.letters, self.cutoff, {e: c * factor for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        other = self._check(other)
        cutoff = min(self.cutoff, other.cutoff)
        buckets: dict[tuple, list] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            if d1 > cutoff:
                continue
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > cutoff:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                buckets.setdefault(e, []).append(c1 * c2)
        terms = {e: _sum(vals) for e, vals in buckets.items()}
        return TruncSeries(self.letters, cutoff, terms)

    __rmul__ = __mul__

    def invert(self) -> TruncSeries:
        zero = (0,) * len(self.letters)
        c0 = self.terms.get(zero)
        if c0 is None or c0.is_zero():
            raise ZeroDivisionError("series has zero constant term")
        inv0 = c0.inverse()
        out = {zero: inv0}
        rest = [(e, c) for e, c in self.terms.items() if e != zero]
        for exps in _exponents_upto(len(self.letters), self.cutoff)[1:]:
            acc = []
            for e, c in rest:
                diff = tuple(a - b for a, b in zip(exps, e))
                if min(diff) < 0:
                    continue
                prev = out.get(diff)
                if prev is not None:
                    acc.append(c * prev)
            if acc:
                val = -_sum(acc) * inv0
                if not val.is_zero():
                    out[exps] = val
        return TruncSeries(self.letters, self.cutoff, out)

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * other.invert()
        return self.scale(as_ratfunc(other).inverse())

    def truncate(self, cutoff: int) -> TruncSeries:
        return TruncSeries(self.letters, min(cutoff, self.cutoff), self.terms)

    def coefficient(self, exps) -> RatFunc:
        return self.terms.get(tuple(exps), RatFunc(0))

    def first_mismatch(self, other):
        """First ``(exponent, mine, theirs)`` where coefficients differ, or None."""
        other = self._check(other)
        cutoff = min(self.cutoff, other.cutoff)
        for exps in _exponents_upto(len(self.letters), cutoff):
            a = self.terms.get(exps, RatFunc(0))
            b = other.terms.get(exps, RatFunc(0))
            if a != b:
                return exps, a, b
        return None

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.first_mismatch(other) is None

    __hash__ = None

    def map_coefficients(self, fn) -> TruncSeries:
        return TruncSeries(self.letters, self.cutoff, {e: fn(c) for e, c in self.terms.items()})

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), [-x for x in kv[0]]))
        body = ", ".join(f"{e}: {c}" for e, c in items)
        return f"TruncSeries({self.letters}, D={self.cutoff}, {{{body}}})"


def _sum(values):
    """Sum RatFuncs over a shared denominator where possible."""
    values = [v for v in values if not v.is_zero()]
    if not values:
        return RatFunc(0)
    if len(values) == 1:
        return values[0]
    groups: dict[str, list] = {}
    dens = {}
    for v in values:
        key = str(v._d)
        groups.setdefault(key, []).append(v._n)
        dens[key] = v._d
    partial = []
    for key, nums in groups.items():
        n = nums[0]
        for extra in nums[1:]:
            n = n + extra
        partial.append(RatFunc._make(n, dens[key]))
    out = partial[0]
    for v in partial[1:]:
        out = out + v
    return out


def rsum(values) -> RatFunc:
    """Sum an iterable of RatFuncs."""
    return _sum([as_ratfunc(v) for v in values])


def qpoch_inf_series(base, letters, cutoff: int, *, inverse: bool = False) -> TruncSeries:
    """Truncated ``(base; q)_infinity`` (or its reciprocal).

    ``base`` must be a scalar times a monomial of positive degree in the
    alphabet.  Uses Euler's expansions
    ``(z)_inf = sum (-1)^k q^C(k,2) z^k/(q)_k`` and ``1/(z)_inf = sum z^k/(q)_k``.
    """
    base = as_ratfunc(base)
    letters = (letters,) if isinstance(letters, str) else tuple(letters)
    if base.is_zero():
        return TruncSeries.one(letters, cutoff)
    idxs = _letter_indices(letters)
    scalar, mono = _split_monomial(base, idxs)
    degree = sum(mono)
    if degree == 0:
        raise ValueError("base of an infinite product must involve an alphabet letter")
    q = var("q")
    terms = {}
    qfact = RatFunc(1)
    k = 0
    while k * degree <= cutoff:
        if k:
            qfact = qfact * (1 - q**k)
        coeff = scalar**k / qfact
        if not inverse:
            coeff = coeff * ((-1) ** k) * q ** comb(k, 2)
        terms[tuple(k * m for m in mono)] = coeff
        k += 1
    return TruncSeries(letters, cutoff, terms)


def _split_monomial(expr, idxs):
    ctx = _ctx()
    n = _lift(expr._n, ctx)
    d = _lift(expr._d, ctx)
    if any(d.degrees()[i] for i in idxs):
        raise ValueError("alphabet letters in the denominator of a Pochhammer base")
    content = n.term_content().degrees()
    mono = tuple(content[i] for i in idxs)
    gens = ctx.gens()
    m = ctx.constant(1)
    for i, e in zip(idxs, mono):
        m = m * gens[i] ** e
    rest = n / m
    if any(rest.degrees()[i] for i in idxs):
        raise ValueError("Pochhammer base is not a monomial in the alphabet")
    return RatFunc._make(rest, d), mono


def series_arith(lhs: TruncSeries, rhs, op: str):
    """``op`` is one of ``add``, ``mul``, ``invert-unit``, ``equals``."""
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    if op == "invert-unit":
        return lhs.invert()
    if op == "equals":
        return lhs == rhs
    raise ValueError(f"unknown series operation {op!r}")
