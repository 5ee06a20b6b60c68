"""Ratio sets over prime intervals and numerically stable power means.

Ratio elements are kept as exact integer pairs; every comparison between
them is an integer cross-multiplication, never a float compare.  The float
reductions (power means, geometric mean) all go through math.fsum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import EmptySetError
from .sieve import IntervalPrimes


class MeanLimit(Enum):
    ZERO = "zero"
    PLUS_INF = "plus_inf"
    MINUS_INF = "minus_inf"


@dataclass(slots=True, eq=False)
class RatioElement:
    """Exact ratio p/(q-2) for consecutive primes p < q, as an integer pair.

    For primes above 2 the gap is at least 2, so num <= den and the value
    sits in (0, 1]; it equals 1 exactly when (p, p+2) is a twin pair.
    """

    num: int
    den: int

    def __post_init__(self):
        if self.num < 2 or self.den < self.num:
            raise ValueError(f"invalid ratio pair ({self.num}, {self.den})")

    @property
    def value(self) -> float:
        return self.num / self.den

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def is_one(self) -> bool:
        return self.num == self.den

    def __eq__(self, other):
        if not isinstance(other, RatioElement):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __lt__(self, other):
        if not isinstance(other, RatioElement):
            return NotImplemented
        return self.num * other.den < other.num * self.den

    def __le__(self, other):
        if not isinstance(other, RatioElement):
            return NotImplemented
        return self.num * other.den <= other.num * self.den

    def __gt__(self, other):
        if not isinstance(other, RatioElement):
            return NotImplemented
        return self.num * other.den > other.num * self.den

    def __ge__(self, other):
        if not isinstance(other, RatioElement):
            return NotImplemented
        return self.num * other.den >= other.num * self.den

    __hash__ = None  # mutable dataclass with value equality; keep it unhashable


@dataclass(eq=False)
class RatioSet:
    """Ratio elements of a prime interval (x, y], one per interval prime."""

    x: int
    y: int
    elements: list[RatioElement]


@dataclass(frozen=True)
class MeanValue:
    """A computed mean: alpha is +-inf for the sup/inf limits and 0.0 for
    the geometric-mean limit."""

    alpha: float
    value: float
    count: int


def build_ratio_set(ip: IntervalPrimes) -> RatioSet:
    """One element p_n/(p_{n+1}-2) per prime in (x, y]; the last uses p_e."""
    ps = ip.primes
    if ps.size == 0:
        raise EmptySetError(f"no primes in ({ip.x}, {ip.y}]; ratio set undefined")
    if int(ps[0]) <= 2:
        raise ValueError("ratio sets need interval primes above 2 (x >= 2)")
    seq = [int(p) for p in ps] + [ip.p_e]
    elems = [RatioElement(a, b - 2) for a, b in zip(seq, seq[1:])]
    return RatioSet(x=ip.x, y=ip.y, elements=elems)


def max_element(elements: Iterable[RatioElement]) -> RatioElement:
    """Exact maximum; short-circuits on a twin ratio since values cap at 1."""
    it = iter(elements)
    try:
        best = next(it)
    except StopIteration:
        raise EmptySetError("max of an empty ratio collection") from None
    for e in it:
        if best.is_one():
            return best
        if e > best:
            best = e
    return best


def min_element(elements: Iterable[RatioElement]) -> RatioElement:
    it = iter(elements)
    try:
        best = next(it)
    except StopIteration:
        raise EmptySetError("min of an empty ratio collection") from None
    for e in it:
        if e < best:
            best = e
    return best


Values = Union[Sequence[float], Sequence[RatioElement]]


def _checked_floats(elems: list) -> list[float]:
    vals = [float(v) for v in elems]
    for v in vals:
        if not math.isfinite(v) or v <= 0.0:
            raise ValueError("power means need strictly positive finite values")
    return vals


def power_mean(values: Values, alpha: float) -> MeanValue:
    """Power mean ((1/N) sum v_i^alpha)^(1/alpha), alpha finite and nonzero.

    Evaluated in the factored form m * ((1/N) sum (v_i/m)^alpha)^(1/alpha)
    with m the max (alpha > 0) or min (alpha < 0), so every scaled term lies
    in (0, 1] and no intermediate can overflow.  The scaled-term sum is
    compensated, which keeps the result within a few ulps of exact.
    Use mean_limit for alpha -> 0 and +-inf.
    """
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha == 0.0:
        raise ValueError("alpha must be finite and nonzero; use mean_limit for limits")
    elems = list(values)
    n = len(elems)
    if n == 0:
        raise EmptySetError("power mean of an empty set")
    if isinstance(elems[0], RatioElement):
        ref = max_element(elems) if alpha > 0 else min_element(elems)
        # one correctly-rounded division per element from exact integer products
        scaled = [(e.num * ref.den) / (e.den * ref.num) for e in elems]
        m = ref.value
    else:
        vals = _checked_floats(elems)
        m = max(vals) if alpha > 0 else min(vals)
        scaled = [v / m for v in vals]
    s = math.fsum(t**alpha for t in scaled) / n
    return MeanValue(alpha=alpha, value=m * s ** (1.0 / alpha), count=n)


def mean_limit(values: Values, which: MeanLimit) -> MeanValue:
    """The alpha -> 0 (geometric) and alpha -> +-inf (max/min) mean limits.

    On RatioElements the sup/inf are chosen by exact integer comparison and
    the geometric mean runs on log1p of the exact pair differences.
    """
    if not isinstance(which, MeanLimit):
        raise ValueError(f"unknown mean limit {which!r}")
    elems = list(values)
    n = len(elems)
    if n == 0:
        raise EmptySetError("mean limit of an empty set")
    ratio = isinstance(elems[0], RatioElement)
    if which is MeanLimit.PLUS_INF:
        v = max_element(elems).value if ratio else max(_checked_floats(elems))
        return MeanValue(alpha=math.inf, value=v, count=n)
    if which is MeanLimit.MINUS_INF:
        v = min_element(elems).value if ratio else min(_checked_floats(elems))
        return MeanValue(alpha=-math.inf, value=v, count=n)
    if ratio:
        logs = (math.log1p((e.num - e.den) / e.den) for e in elems)
    else:
        logs = (math.log(v) for v in _checked_floats(elems))
    return MeanValue(alpha=0.0, value=math.exp(math.fsum(logs) / n), count=n)
