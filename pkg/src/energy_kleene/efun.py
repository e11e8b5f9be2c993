"""Extended energy functions as exact piecewise-affine maps on L = [0, top] + bottom.

Functions are written and composed in diagrammatic order: ``compose(f, g)``
applies ``f`` first.  Every value returned by a public operation is in
canonical form, so dataclass equality coincides with pointwise equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

__all__ = [
    "BOTTOM",
    "TOP",
    "EnergyValue",
    "Piece",
    "EnergyFunction",
    "ValidationError",
    "SlopeTooSmall",
    "NegativeJump",
    "UnsortedPieces",
    "NegativeValue",
    "as_energy",
    "parse_rational",
    "render_rational",
    "render_energy",
    "evaluate",
    "validate",
    "affine",
    "bottom_function",
    "identity",
    "join",
    "join_all",
    "compose",
    "compose_all",
    "power",
    "star",
    "canonicalize",
    "equals",
    "breakpoints",
    "sample_points",
    "render",
]


class _Extreme:
    """The two non-finite elements of L."""

    __slots__ = ("_rank", "_name")

    def __init__(self, rank: int, name: str):
        self._rank = rank
        self._name = name

    def __repr__(self) -> str:
        return self._name

    def __reduce__(self):
        return self._name

    def __hash__(self) -> int:
        return hash(self._name)

    def __eq__(self, other) -> bool:
        return self is other

    def __lt__(self, other) -> bool:
        return _order(self) < _order(other)

    def __le__(self, other) -> bool:
        return _order(self) <= _order(other)

    def __gt__(self, other) -> bool:
        return _order(self) > _order(other)

    def __ge__(self, other) -> bool:
        return _order(self) >= _order(other)


BOTTOM = _Extreme(-1, "BOTTOM")
TOP = _Extreme(1, "TOP")

EnergyValue = Union[Fraction, _Extreme]


def _order(v) -> tuple:
    if isinstance(v, _Extreme):
        return (v._rank, 0)
    return (0, v)


def as_energy(x) -> EnergyValue:
    """Coerce ints, strings ``"p/q"`` and Fractions to an EnergyValue."""
    if isinstance(x, _Extreme):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise TypeError(f"not an exact energy value: {x!r}")
    return Fraction(x)


_RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; decimals are rejected on purpose."""
    m = _RATIONAL.match(text)
    if not m:
        raise ValueError(f"expected a rational 'p' or 'p/q', got {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def render_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def render_energy(v: EnergyValue) -> str:
    if v is BOTTOM:
        return "bottom"
    if v is TOP:
        return "top"
    return render_rational(v)


# -- errors -----------------------------------------------------------------


class ValidationError(ValueError):
    """A raw piece list violates the energy-function constraints."""

    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"piece {index}: {message}")


class SlopeTooSmall(ValidationError):
    pass


class NegativeJump(ValidationError):
    pass


class UnsortedPieces(ValidationError):
    pass


class NegativeValue(ValidationError):
    pass


# -- representation ---------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    """Affine piece ``x -> value + slope * (x - start)``.

    The piece covers points from its start boundary up to the next piece's
    start boundary (or the top boundary).  For an excluded start, ``value``
    is the right limit at ``start``.
    """

    start: Fraction
    start_included: bool
    value: Fraction
    slope: Fraction

    def at(self, x: Fraction) -> Fraction:
        return self.value + self.slope * (x - self.start)


# A boundary (s, included) sorts before (s, excluded): an included start at s
# owns the point s, an excluded one only the points strictly above s.
def _key(point: Fraction, included: bool) -> tuple:
    return (point, 0 if included else 1)


@dataclass(frozen=True)
class EnergyFunction:
    """A canonical extended energy function.

    ``top`` is the boundary ``(start, included)`` of the region mapped to TOP.
    The bottom function has no pieces and no top region.
    """

    pieces: tuple = ()
    top: Optional[tuple] = None

    @property
    def is_bottom(self) -> bool:
        return not self.pieces and self.top is None

    @property
    def lower_bound(self) -> Optional[tuple]:
        """Domain lower bound ``(l_f, included)``; None for the bottom function."""
        if self.pieces:
            p = self.pieces[0]
            return (p.start, p.start_included)
        return self.top

    def __call__(self, x) -> EnergyValue:
        return evaluate(self, x)

    def __or__(self, other: "EnergyFunction") -> "EnergyFunction":
        return join(self, other)

    def __mul__(self, other: "EnergyFunction") -> "EnergyFunction":
        return compose(self, other)

    def __str__(self) -> str:
        return render(self)


# -- local structure --------------------------------------------------------


def _covers(boundary: Optional[tuple], key: tuple) -> bool:
    return boundary is not None and _key(*boundary) <= key


def _locate(f: EnergyFunction, key: tuple):
    """Region of ``f`` owning the position ``key``: TOP, BOTTOM or a Piece."""
    if _covers(f.top, key):
        return TOP
    found = BOTTOM
    for p in f.pieces:
        if _key(p.start, p.start_included) <= key:
            found = p
        else:
            break
    return found


def evaluate(f: EnergyFunction, x) -> EnergyValue:
    """Apply ``f`` to an element of L."""
    x = as_energy(x)
    if x is BOTTOM or f.is_bottom:
        return BOTTOM
    if x is TOP:
        return TOP
    region = _locate(f, (x, 0))
    if isinstance(region, Piece):
        return region.at(x)
    return region


def _form_right(f: EnergyFunction, a: Fraction):
    """Behaviour of ``f`` on points just above ``a``.

    Returns TOP, BOTTOM or ``(right_limit, slope)``.
    """
    region = _locate(f, (a, 1))
    if isinstance(region, Piece):
        return (region.at(a), region.slope)
    return region


def breakpoints(f: EnergyFunction) -> set:
    pts = {p.start for p in f.pieces}
    if f.top is not None:
        pts.add(f.top[0])
    return pts


# An atom is either a single point (lo, None) or the open interval (lo, hi),
# hi None meaning unbounded.  Over a breakpoint-closed grid every function is
# uniform on each open atom.
def _grid(points: Iterable[Fraction]) -> list:
    return sorted({Fraction(0)} | {Fraction(p) for p in points if p >= 0})


def _atoms(points: Sequence[Fraction]):
    for i, p in enumerate(points):
        yield ("point", p, None)
        yield ("open", p, points[i + 1] if i + 1 < len(points) else None)


def _tabulate(points, point_value: Callable, open_form: Callable) -> list:
    out = []
    for kind, lo, hi in _atoms(points):
        form = point_value(lo) if kind == "point" else open_form(lo, hi)
        out.append((kind, lo, form))
    return out


def _build(table: list) -> EnergyFunction:
    """Greedily merge tabulated atoms into maximal affine segments."""
    segs: list = []  # [start, included, value, slope or None]
    top = None

    def on_line(seg, x, v):
        return seg[3] is not None and seg[2] + seg[3] * (x - seg[0]) == v

    for kind, lo, form in table:
        if top is not None:
            if form is not TOP:
                raise AssertionError("finite value above the top region")
            continue
        if form is BOTTOM:
            if segs:
                raise AssertionError("domain is not an up-closed interval")
            continue
        if form is TOP:
            top = (lo, kind == "point")
            continue
        if kind == "point":
            if segs and on_line(segs[-1], lo, form):
                continue
            segs.append([lo, True, form, None])
            continue
        v, m = form
        cur = segs[-1] if segs else None
        if cur is not None and cur[3] is None and cur[0] == lo:
            if cur[2] == v:
                cur[3] = m
                continue
        elif cur is not None and cur[3] == m and on_line(cur, lo, v):
            continue
        segs.append([lo, False, v, m])

    pieces = []
    for i, (s, inc, v, m) in enumerate(segs):
        if m is None:
            m = Fraction(1)
        # Continuous breakpoint: the later piece owns the point.
        if not inc and pieces:
            prev = pieces[-1]
            if prev.start != s and prev.at(s) == v:
                inc = True
        pieces.append(Piece(s, inc, v, m))
    return EnergyFunction(tuple(pieces), top)


def _table_of(f: EnergyFunction, extra: Iterable[Fraction] = ()) -> list:
    points = _grid(breakpoints(f) | set(extra))
    return _tabulate(points, lambda x: evaluate(f, x), lambda a, b: _form_right(f, a))


def canonicalize(f: EnergyFunction) -> EnergyFunction:
    return _build(_table_of(f))


def equals(f: EnergyFunction, g: EnergyFunction) -> bool:
    return canonicalize(f) == canonicalize(g)


# -- construction -----------------------------------------------------------


def _coerce_piece(raw) -> Piece:
    if isinstance(raw, Piece):
        return raw
    if isinstance(raw, dict):
        start, inc = raw["start"], raw["start_included"]
        value, slope = raw["value"], raw["slope"]
    else:
        start, inc, value, slope = raw
    return Piece(as_energy(start), bool(inc), as_energy(value), as_energy(slope))


def validate(pieces: Iterable, top: Optional[tuple] = None) -> EnergyFunction:
    """Check a raw piece list and return the canonical function.

    Pieces are ``Piece`` objects, ``(start, included, value, slope)`` tuples
    or dicts with those keys.  ``top`` is an optional ``(start, included)``.
    """
    ps = [_coerce_piece(p) for p in pieces]
    for i, p in enumerate(ps):
        if p.start < 0:
            raise NegativeValue(i, f"start {render_rational(p.start)} is negative")
        if p.value < 0:
            raise NegativeValue(i, f"value {render_rational(p.value)} is negative")
        if p.slope < 1:
            raise SlopeTooSmall(i, f"slope {render_rational(p.slope)} is below 1")
        if i:
            prev = ps[i - 1]
            if _key(p.start, p.start_included) <= _key(prev.start, prev.start_included):
                raise UnsortedPieces(i, "start does not follow the previous piece")
            limit = prev.at(p.start)
            if p.value < limit:
                raise NegativeJump(
                    i,
                    f"restarts at {render_rational(p.value)} below the limit "
                    f"{render_rational(limit)} of piece {i - 1}",
                )
    if top is not None:
        t, inc = top
        t = as_energy(t)
        if t < 0:
            raise NegativeValue(len(ps), "top region starts below 0")
        top = (t, bool(inc))
    return canonicalize(EnergyFunction(tuple(ps), top))


def affine(offset, slope=1, lower=0, included: bool = True) -> EnergyFunction:
    """``x -> slope*x + offset`` on the domain starting at ``lower``."""
    lower, slope, offset = as_energy(lower), as_energy(slope), as_energy(offset)
    return validate([(lower, included, slope * lower + offset, slope)])


def bottom_function() -> EnergyFunction:
    return EnergyFunction()


def identity() -> EnergyFunction:
    return EnergyFunction((Piece(Fraction(0), True, Fraction(0), Fraction(1)),))


# -- semiring operations ----------------------------------------------------


def _max_value(u, v):
    return u if u >= v else v


def _max_form(u, w):
    if u is TOP or w is TOP:
        return TOP
    if u is BOTTOM:
        return w
    if w is BOTTOM:
        return u
    return max(u, w)  # tuples: larger right limit, ties broken by slope


def _crossing(u, w, a, b) -> Optional[Fraction]:
    if not (isinstance(u, tuple) and isinstance(w, tuple)) or u[1] == w[1]:
        return None
    x = a - (u[0] - w[0]) / (u[1] - w[1])
    if x > a and (b is None or x < b):
        return x
    return None


def join(f: EnergyFunction, g: EnergyFunction) -> EnergyFunction:
    """Pointwise maximum."""
    if f.is_bottom:
        return g
    if g.is_bottom:
        return f
    points = _grid(breakpoints(f) | breakpoints(g))
    extra = []
    for kind, a, b in _atoms(points):
        if kind == "open":
            x = _crossing(_form_right(f, a), _form_right(g, a), a, b)
            if x is not None:
                extra.append(x)
    points = _grid(set(points) | set(extra))
    return _build(
        _tabulate(
            points,
            lambda x: _max_value(evaluate(f, x), evaluate(g, x)),
            lambda a, b: _max_form(_form_right(f, a), _form_right(g, a)),
        )
    )


def join_all(fs: Iterable[EnergyFunction]) -> EnergyFunction:
    out = bottom_function()
    for f in fs:
        out = join(out, f)
    return out


def compose(f: EnergyFunction, g: EnergyFunction) -> EnergyFunction:
    """Diagrammatic composition: ``x (f g) = (x f) g``."""
    if f.is_bottom or g.is_bottom:
        return bottom_function()
    points = _grid(breakpoints(f))
    targets = sorted(breakpoints(g))
    extra = []
    for kind, a, b in _atoms(points):
        if kind != "open":
            continue
        form = _form_right(f, a)
        if not isinstance(form, tuple):
            continue
        v, m = form
        for c in targets:
            if c > v and (b is None or c < v + m * (b - a)):
                extra.append(a + (c - v) / m)
    points = _grid(set(points) | set(extra))

    def open_form(a, b):
        form = _form_right(f, a)
        if form is BOTTOM:
            return BOTTOM
        if form is TOP:
            return TOP
        v, m = form
        outer = _form_right(g, v)
        if isinstance(outer, tuple):
            return (outer[0], outer[1] * m)
        return outer

    return _build(_tabulate(points, lambda x: evaluate(g, evaluate(f, x)), open_form))


def compose_all(fs: Iterable[EnergyFunction]) -> EnergyFunction:
    out = identity()
    for f in fs:
        out = compose(out, f)
    return out


def power(f: EnergyFunction, n: int) -> EnergyFunction:
    out = identity()
    for _ in range(n):
        out = compose(out, f)
    return out


def upset_boundary(f: EnergyFunction, slope: int, offset: Fraction, strict: bool):
    """First boundary of ``{x >= 0 : x f (> or >=) slope*x + offset}``.

    ``slope`` is 0 or 1.  Because ``x f - x`` is nondecreasing on the domain,
    the set is up-closed and is described by one boundary ``(t, included)``;
    returns None when the set contains no finite point.
    """
    offset = Fraction(offset)

    def holds(y, x):
        if y is TOP:
            return True
        if y is BOTTOM:
            return False
        d = y - slope * x - offset
        return d > 0 if strict else d >= 0

    for kind, a, b in _atoms(_grid(breakpoints(f))):
        if kind == "point":
            if holds(evaluate(f, a), a):
                return (a, True)
            continue
        form = _form_right(f, a)
        if form is TOP:
            return (a, False)
        if form is BOTTOM:
            continue
        v, m = form
        h0, rate = v - slope * a - offset, m - slope
        if (h0 > 0) or (not strict and h0 == 0):
            return (a, False)
        if rate > 0:
            r = a - h0 / rate
            if b is None or r < b:
                return (r, not strict)
    return None


def star(f: EnergyFunction) -> EnergyFunction:
    """Kleene star: identity where ``x f <= x``, TOP where ``x f > x``."""
    t = upset_boundary(f, 1, Fraction(0), strict=True)
    if t is None:
        return identity()
    table = _tabulate(
        _grid([t[0]]),
        lambda x: TOP if _covers(t, (x, 0)) else x,
        lambda a, b: TOP if _covers(t, (a, 1)) else (a, Fraction(1)),
    )
    return _build(table)


# -- sampling and rendering -------------------------------------------------


def sample_points(*fs: EnergyFunction) -> list:
    """Breakpoints, midpoints between them, breakpoints +-1, and 0."""
    pts = set()
    for f in fs:
        pts |= breakpoints(f)
    base = sorted(pts | {Fraction(0)})
    grid = set(base)
    for p in base:
        grid.add(p + 1)
        if p >= 1:
            grid.add(p - 1)
    for p, q in zip(base, base[1:]):
        grid.add((p + q) / 2)
    return sorted(grid)


def render(f: EnergyFunction) -> str:
    if f.is_bottom:
        return "bottom"
    parts = [
        f"piece(start={render_rational(p.start)}, included={str(p.start_included).lower()}, "
        f"value={render_rational(p.value)}, slope={render_rational(p.slope)})"
        for p in f.pieces
    ]
    if f.top is not None:
        parts.append(
            f"top(start={render_rational(f.top[0])}, included={str(f.top[1]).lower()})"
        )
    return "; ".join(parts)
