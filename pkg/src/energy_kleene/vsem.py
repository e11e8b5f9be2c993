"""Threshold tests: the top-continuous, finitely additive maps L -> {bottom, top}.

On the chain L such a map is either constantly bottom or sends exactly an
up-set ``{x > t}`` / ``{x >= t}`` (plus TOP) to top.  Tests are acted on from
the left by energy functions (precomposition) and receive the infinite
product of ultimately periodic sequences of energy functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .efun import (
    BOTTOM,
    TOP,
    EnergyFunction,
    as_energy,
    compose_all,
    render_rational,
    upset_boundary,
)

__all__ = [
    "ThresholdTest",
    "NEVER",
    "above",
    "from_",
    "apply",
    "join",
    "join_all",
    "act",
    "omega",
    "infinite_product_up",
    "render",
]


@dataclass(frozen=True)
class ThresholdTest:
    """``threshold is None`` encodes the bottom test."""

    threshold: Optional[Fraction] = None
    strict: bool = False

    @property
    def is_bottom(self) -> bool:
        return self.threshold is None

    def _key(self) -> tuple:
        return (self.threshold, 1 if self.strict else 0)

    def __call__(self, x) -> bool:
        return apply(self, x)

    def __or__(self, other: "ThresholdTest") -> "ThresholdTest":
        return join(self, other)

    def __str__(self) -> str:
        return render(self)


NEVER = ThresholdTest()


def above(t) -> ThresholdTest:
    return ThresholdTest(as_energy(t), True)


def from_(t) -> ThresholdTest:
    return ThresholdTest(as_energy(t), False)


def _from_boundary(b) -> ThresholdTest:
    if b is None:
        return NEVER
    return ThresholdTest(b[0], not b[1])


def apply(v: ThresholdTest, x) -> bool:
    """True stands for top, False for bottom."""
    x = as_energy(x)
    if v.is_bottom or x is BOTTOM:
        return False
    if x is TOP:
        return True
    return x > v.threshold if v.strict else x >= v.threshold


def join(v: ThresholdTest, w: ThresholdTest) -> ThresholdTest:
    if v.is_bottom:
        return w
    if w.is_bottom:
        return v
    return v if v._key() <= w._key() else w


def join_all(vs) -> ThresholdTest:
    out = NEVER
    for v in vs:
        out = join(out, v)
    return out


def act(f: EnergyFunction, v: ThresholdTest) -> ThresholdTest:
    """The test ``x -> v(x f)``."""
    if f.is_bottom or v.is_bottom:
        return NEVER
    return _from_boundary(upset_boundary(f, 0, v.threshold, strict=v.strict))


def omega(f: EnergyFunction) -> ThresholdTest:
    """Infinite power of ``f``: top exactly where the orbit of x never dies.

    Where ``x f >= x`` the orbit is nondecreasing and stays defined; where
    ``x f < x`` each step loses at least ``x - x f`` and the orbit leaves the
    domain after finitely many steps.
    """
    return _from_boundary(upset_boundary(f, 1, Fraction(0), strict=False))


def infinite_product_up(
    stem: Sequence[EnergyFunction], cycle: Sequence[EnergyFunction]
) -> ThresholdTest:
    """Infinite product of the sequence ``stem + cycle + cycle + ...``."""
    if not cycle:
        raise ValueError("cycle of an ultimately periodic sequence must be nonempty")
    return act(compose_all(stem), omega(compose_all(cycle)))


def render(v: ThresholdTest) -> str:
    if v.is_bottom:
        return "never"
    word = "above" if v.strict else "from"
    return f"{word}({render_rational(v.threshold)})"
