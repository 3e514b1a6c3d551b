"""Integer partitions and the partition-indexed scalar factors."""

from __future__ import annotations

import enum
from collections import namedtuple
from functools import lru_cache
from itertools import permutations

from .ring import RatFunc, as_ratfunc, qpoch_finite, var

__all__ = [
    "Partition",
    "StripRelation",
    "strip_relation",
    "is_horizontal_strip",
    "is_vertical_strip",
    "hook_stats",
    "gen_poch",
    "gen_poch_skew",
    "CFactors",
    "c_factors",
    "omega",
    "one_poch_skew",
    "partitions_of",
    "partitions_upto",
    "hstrip_predecessors",
    "hstrip_successors",
    "vstrip_successors",
    "contained_in",
    "orbit",
]


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are dropped on construction.  Partitions sort first by
    weight and then reverse-lexicographically, so ``(2)`` precedes ``(1,1)``.
    """

    def __new__(cls, parts=()):
        if isinstance(parts, Partition):
            return parts
        if isinstance(parts, int):
            parts = (parts,)
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts of {parts} are not weakly decreasing")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Read ``"2,1"``; the empty string and ``"0"`` give the zero partition."""
        text = text.strip()
        if text in ("", "0"):
            return cls(())
        try:
            return cls(int(p) for p in text.split(","))
        except ValueError as exc:
            raise ValueError(f"invalid partition {text!r}: {exc}") from None

    def __str__(self):
        return ",".join(map(str, self)) if self else "0"

    def __repr__(self):
        return f"Partition({tuple(self)})"

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """``lambda_i`` with 1-based ``i``; zero beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def conjugate(self) -> Partition:
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def n(self) -> int:
        """``n(lambda) = sum (i-1) lambda_i``."""
        return sum(i * p for i, p in enumerate(self))

    def contains(self, other) -> bool:
        """True when the diagram of ``other`` sits inside this one."""
        other = Partition(other)
        if len(other) > len(self):
            return False
        return all(a >= b for a, b in zip(self, other))

    def squares(self):
        """Diagram squares ``(i, j)``, 1-based, row by row."""
        for i, p in enumerate(self, 1):
            for j in range(1, p + 1):
                yield i, j

    def skew_squares(self, mu):
        mu = Partition(mu)
        for i, p in enumerate(self, 1):
            for j in range(mu.part(i) + 1, p + 1):
                yield i, j

    def decrement(self, i: int) -> Partition | None:
        """``lambda_(i)``: part ``i`` lowered by one, or None if invalid."""
        if not 1 <= i <= len(self) or self.part(i + 1) > self[i - 1] - 1:
            return None
        parts = list(self)
        parts[i - 1] -= 1
        return Partition(parts)

    def increment(self, i: int) -> Partition | None:
        """``lambda^(i)``: part ``i`` raised by one, or None if invalid."""
        if i < 1 or i > len(self) + 1:
            return None
        if i > 1 and self.part(i - 1) < self.part(i) + 1:
            return None
        parts = list(self) + [0]
        parts[i - 1] += 1
        return Partition(parts)

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self) > n:
            raise ValueError(f"{self} has more than {n} parts")
        return tuple(self) + (0,) * (n - len(self))

    def _key(self):
        return (sum(self), tuple(-p for p in self) + (0,))

    def __lt__(self, other):
        return self._key() < Partition(other)._key()

    def __le__(self, other):
        return self._key() <= Partition(other)._key()

    def __gt__(self, other):
        return self._key() > Partition(other)._key()

    def __ge__(self, other):
        return self._key() >= Partition(other)._key()

    def __eq__(self, other):
        return tuple.__eq__(self, other)

    def __ne__(self, other):
        return tuple.__ne__(self, other)

    __hash__ = tuple.__hash__

    def dominates(self, other) -> bool:
        other = Partition(other)
        if self.weight != other.weight:
            return False
        a = b = 0
        for i in range(max(len(self), len(other))):
            a += self.part(i + 1)
            b += other.part(i + 1)
            if a < b:
                return False
        return True


class StripRelation(enum.Enum):
    NOT_CONTAINED = "not-contained"
    CONTAINED = "contained"
    HORIZONTAL_STRIP = "horizontal-strip"
    VERTICAL_STRIP = "vertical-strip"


def is_horizontal_strip(lam, mu) -> bool:
    """``mu <= lam`` interlace: ``lam_{i+1} <= mu_i <= lam_i`` for all i."""
    lam, mu = Partition(lam), Partition(mu)
    if len(mu) > len(lam):
        return False
    return all(lam.part(i + 1) <= mu.part(i) <= lam.part(i) for i in range(1, len(lam) + 1))


def is_vertical_strip(lam, mu) -> bool:
    lam, mu = Partition(lam), Partition(mu)
    if not lam.contains(mu):
        return False
    return all(a - b <= 1 for a, b in zip(lam, mu.padded(len(lam))))


def strip_relation(lam, mu) -> StripRelation:
    """Classify ``lam/mu``; a strip that is both vertical and horizontal
    reports as vertical."""
    lam, mu = Partition(lam), Partition(mu)
    if not lam.contains(mu):
        return StripRelation.NOT_CONTAINED
    if is_vertical_strip(lam, mu):
        return StripRelation.VERTICAL_STRIP
    if is_horizontal_strip(lam, mu):
        return StripRelation.HORIZONTAL_STRIP
    return StripRelation.CONTAINED


def hook_stats(lam, s) -> tuple[int, int, int, int]:
    """``(arm, arm-colength, leg, leg-colength)`` of square ``s = (i, j)``."""
    lam = Partition(lam)
    i, j = s
    if not (1 <= i <= len(lam) and 1 <= j <= lam[i - 1]):
        raise ValueError(f"square {s} is not in the diagram of {lam}")
    return lam[i - 1] - j, j - 1, lam.conjugate().part(j) - i, i - 1


def gen_poch(b, lam) -> RatFunc:
    """``(b)_lam = prod_i (b t^(1-i))_{lam_i}``."""
    b = as_ratfunc(b)
    t = var("t")
    out = RatFunc(1)
    for i, p in enumerate(Partition(lam)):
        out = out * qpoch_finite(b * t ** (-i), p)
    return out


def gen_poch_skew(b, lam, mu=()) -> RatFunc:
    """Product of ``1 - b q^a' t^-l'`` over the squares of ``lam/mu``."""
    lam, mu = Partition(lam), Partition(mu)
    if not lam.contains(mu):
        raise ValueError(f"{mu} is not contained in {lam}")
    b = as_ratfunc(b)
    q, t = var("q"), var("t")
    out = RatFunc(1)
    for i, j in lam.skew_squares(mu):
        out = out * (1 - b * q ** (j - 1) * t ** (1 - i))
    return out


CFactors = namedtuple("CFactors", "c c_prime b n n_conj")


@lru_cache(maxsize=None)
def c_factors(lam) -> CFactors:
    """``(c_lam, c'_lam, b_lam, n(lam), n(lam'))``."""
    lam = Partition(lam)
    q, t = var("q"), var("t")
    conj = lam.conjugate()
    c = cp = RatFunc(1)
    for i, j in lam.squares():
        arm = lam[i - 1] - j
        leg = conj[j - 1] - i
        cp = cp * (1 - q ** (arm + 1) * t**leg)
        c = c * (1 - q**arm * t ** (leg + 1))
    return CFactors(c, cp, c / cp, lam.n(), conj.n())


def omega(lam, n: int) -> RatFunc:
    """``sum_{i<=n} q^(-lam_i) t^(i-n)``."""
    lam = Partition(lam)
    if n < len(lam):
        raise ValueError(f"n={n} is smaller than the length of {lam}")
    q, t = var("q"), var("t")
    out = RatFunc(0)
    for i in range(1, n + 1):
        out = out + q ** (-lam.part(i)) * t ** (i - n)
    return out


def one_poch_skew(lam, mu) -> RatFunc:
    """``(1)_{lam/mu}``."""
    return gen_poch_skew(1, lam, mu)


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def _partitions_of(weight: int, max_part: int, max_len: int):
    if weight == 0:
        return ((),)
    if max_len == 0:
        return ()
    out = []
    for first in range(min(weight, max_part), 0, -1):
        for rest in _partitions_of(weight - first, first, max_len - 1):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(weight: int, max_len: int | None = None) -> list[Partition]:
    """Partitions of ``weight`` with at most ``max_len`` parts, reverse-lex."""
    if weight < 0:
        return []
    max_len = weight if max_len is None else max_len
    return [Partition(p) for p in _partitions_of(weight, weight, max_len)]


def partitions_upto(max_weight: int, max_len: int | None = None) -> list[Partition]:
    """Partitions of weight ``<= max_weight`` (and length ``<= max_len``)."""
    out = []
    for w in range(max_weight + 1):
        out.extend(partitions_of(w, max_len))
    return out


def hstrip_predecessors(lam) -> list[Partition]:
    """All ``mu`` with ``lam/mu`` a horizontal strip, in partition order."""
    lam = Partition(lam)
    ranges = [range(lam.part(i + 1), lam.part(i) + 1) for i in range(1, len(lam) + 1)]
    out = [Partition(parts) for parts in _product(ranges)]
    return sorted(out)


def hstrip_successors(mu, size: int, max_len: int | None = None) -> list[Partition]:
    """``lam`` with ``lam/mu`` a horizontal strip of ``size`` squares."""
    mu = Partition(mu)
    max_len = len(mu) + 1 if max_len is None else min(max_len, len(mu) + 1)
    out = []
    for lam in partitions_of(mu.weight + size, max_len):
        if is_horizontal_strip(lam, mu):
            out.append(lam)
    return sorted(out)


def vstrip_successors(mu, size: int, max_len: int | None = None) -> list[Partition]:
    """``lam`` with ``lam/mu`` a vertical strip of ``size`` squares."""
    mu = Partition(mu)
    out = []
    for lam in partitions_of(mu.weight + size, max_len):
        if is_vertical_strip(lam, mu):
            out.append(lam)
    return sorted(out)


def contained_in(lam) -> list[Partition]:
    """All ``mu`` contained in ``lam``, in partition order."""
    lam = Partition(lam)
    ranges = [range(0, p + 1) for p in lam]
    out = set()
    for parts in _product(ranges):
        if all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1)):
            out.add(Partition(parts))
    return sorted(out)


def orbit(mu, n: int) -> list[tuple[int, ...]]:
    """Distinct rearrangements of ``mu`` padded to ``n`` parts, lex-descending."""
    mu = Partition(mu)
    return sorted(set(permutations(mu.padded(n))), reverse=True)


def _product(ranges):
    out = [()]
    for r in ranges:
        out = [prev + (x,) for prev in out for x in r]
    return out
