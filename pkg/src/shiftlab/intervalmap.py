"""Piecewise-linear interval maps with exact rational arithmetic.

All evaluation is over fractions.Fraction, so orbit statements made here
are exact, not floating-point approximations. The one guard is a cap on
denominator bit size, since slopes like 10/3 triple the denominator each
step; hitting the cap raises instead of silently losing precision. Output
for plotting is the only place values are rounded, and that is labeled.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction

DEFAULT_DENOMINATOR_BITS = 4096


class MapError(Exception):
    pass


class DomainError(MapError):
    """Point outside the map's interval of definition."""


class PrecisionCap(MapError):
    """Orbit denominator outgrew the configured bit budget."""


@dataclass(frozen=True)
class Piece:
    lo: Rat
    hi: Rat
    slope: Rat
    intercept: Rat

    def value(self, x: Rat) -> Rat:
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class PiecewiseLinearMap:
    """A continuous piecewise-linear self-map of [lo, hi].

    Pieces must tile the interval in order, agree at the shared breakpoints,
    and stay inside the interval, all checked exactly at construction.
    """

    pieces: tuple[Piece, ...]

    def __post_init__(self) -> None:
        ps = self.pieces
        if not ps:
            raise MapError("need at least one piece")
        for a, b in zip(ps, ps[1:]):
            if a.hi != b.lo:
                raise MapError(f"pieces not contiguous at {a.hi} vs {b.lo}")
            if a.value(a.hi) != b.value(b.lo):
                raise MapError(f"discontinuity at {a.hi}")
        lo, hi = ps[0].lo, ps[-1].hi
        for p in ps:
            if p.lo >= p.hi:
                raise MapError("empty piece")
            for end in (p.value(p.lo), p.value(p.hi)):
                if not (lo <= end <= hi):
                    raise MapError(f"range escapes [{lo}, {hi}]: {end}")

    @property
    def lo(self) -> Rat:
        return self.pieces[0].lo

    @property
    def hi(self) -> Rat:
        return self.pieces[-1].hi

    def breakpoints(self) -> list[Rat]:
        return [p.lo for p in self.pieces] + [self.hi]

    def piece_at(self, x: Rat) -> Piece:
        x = Fraction(x)
        if not (self.lo <= x <= self.hi):
            raise DomainError(f"{x} outside [{self.lo}, {self.hi}]")
        for p in self.pieces:
            if x < p.hi:
                return p
        return self.pieces[-1]

    def __call__(self, x: Rat) -> Rat:
        return self.piece_at(x).value(Fraction(x))

    def orbit(
        self,
        x: Rat,
        steps: int,
        max_denominator_bits: int = DEFAULT_DENOMINATOR_BITS,
    ) -> list[Rat]:
        """[x, f(x), ..., f^steps(x)], exact. Raises PrecisionCap when a
        denominator needs more than max_denominator_bits bits."""
        x = Fraction(x)
        out = [x]
        for _ in range(steps):
            x = self(x)
            if x.denominator.bit_length() > max_denominator_bits:
                raise PrecisionCap(
                    f"denominator needs {x.denominator.bit_length()} bits"
                )
            out.append(x)
        return out


def piecewise_from_rows(
    rows: Iterable[tuple[Rat, Rat, Rat, Rat]]
) -> PiecewiseLinearMap:
    """Rows of (lo, hi, slope, intercept), any Fraction-convertible values."""
    return PiecewiseLinearMap(
        tuple(
            Piece(Fraction(a), Fraction(b), Fraction(s), Fraction(c))
            for a, b, s, c in rows
        )
    )


def example_es_map() -> PiecewiseLinearMap:
    """The five-piece map on [0, 1] used throughout: tent-shaped on the left
    half, a steep rise, a flat shelf at height 1/3, and a final steep rise
    ending at the fixed point 1."""
    f = Fraction
    return piecewise_from_rows(
        [
            (f(0), f(1, 4), f(2), f(0)),
            (f(1, 4), f(1, 2), f(-2), f(1)),
            (f(1, 2), f(3, 5), f(10, 3), f(-5, 3)),
            (f(3, 5), f(4, 5), f(0), f(1, 3)),
            (f(4, 5), f(1), f(10, 3), f(-7, 3)),
        ]
    )


def constant_value_on(m: PiecewiseLinearMap, lo: Rat, hi: Rat) -> Rat | None:
    """The single constant m takes on [lo, hi], or None when any overlapping
    piece has nonzero slope or a different height. Exact."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not (m.lo <= lo < hi <= m.hi):
        raise DomainError(f"[{lo}, {hi}] not inside [{m.lo}, {m.hi}]")
    value: Rat | None = None
    for p in m.pieces:
        if p.hi <= lo or p.lo >= hi:
            continue
        if p.slope != 0:
            return None
        if value is None:
            value = p.intercept
        elif p.intercept != value:
            return None
    return value


def verify_constant_on(m: PiecewiseLinearMap, lo: Rat, hi: Rat) -> bool:
    return constant_value_on(m, lo, hi) is not None


def verify_invariant_interval(m: PiecewiseLinearMap, lo: Rat, hi: Rat) -> bool:
    """Does m map [lo, hi] into itself? Checks the endpoint values of every
    piece clipped to the interval, which is exact for affine pieces."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not (m.lo <= lo < hi <= m.hi):
        raise DomainError(f"[{lo}, {hi}] not inside [{m.lo}, {m.hi}]")
    for p in m.pieces:
        a, b = max(p.lo, lo), min(p.hi, hi)
        if a >= b:
            continue
        for x in (a, b):
            if not (lo <= p.value(x) <= hi):
                return False
    return True


@dataclass(frozen=True)
class EventualSensitivityWitness:
    """A grid point y near f^n(x) whose orbit separates from x's by delta
    after k more steps. All values exact."""

    x: Rat
    eps: Rat
    n: int
    k: int
    y: Rat
    separation: Rat
    delta: Rat
    fn_x: Rat

    def to_obj(self) -> dict:
        return {
            "x": str(self.x),
            "eps": str(self.eps),
            "n": self.n,
            "k": self.k,
            "y": str(self.y),
            "separation": str(self.separation),
            "delta": str(self.delta),
            "fn_x": str(self.fn_x),
        }


def eventual_sensitivity_witness(
    m: PiecewiseLinearMap,
    x: Rat,
    eps: Rat,
    delta: Rat = Fraction(1, 4),
    n_max: int = 5,
    k_max: int = 64,
    grid_denominator: int = 2**20,
    max_denominator_bits: int = DEFAULT_DENOMINATOR_BITS,
) -> EventualSensitivityWitness | None:
    """First (n, y, k) in lexicographic order with |f^{n+k}(x) - f^k(y)|
    >= delta, where n <= n_max, y ranges over multiples of
    1/grid_denominator in the open ball of radius eps around f^n(x)
    intersected with the domain (ascending), and 1 <= k <= k_max.

    Returns None when no candidate separates: a statement about this grid
    and budget, not about the map. Exact arithmetic throughout.
    """
    x = Fraction(x)
    eps = Fraction(eps)
    delta = Fraction(delta)
    if eps <= 0 or delta <= 0:
        raise ValueError("eps and delta must be positive")
    if not (m.lo <= x <= m.hi):
        raise DomainError(f"{x} outside [{m.lo}, {m.hi}]")
    xs = m.orbit(x, n_max + k_max, max_denominator_bits)
    g = Fraction(1, grid_denominator)
    for n in range(n_max + 1):
        center = xs[n]
        k0 = ((center - eps) / g).__floor__() + 1
        idx = k0
        while idx * g < center + eps:
            y = idx * g
            idx += 1
            if not (m.lo <= y <= m.hi):
                continue
            ys = m.orbit(y, k_max, max_denominator_bits)
            for k in range(1, k_max + 1):
                if abs(xs[n + k] - ys[k]) >= delta:
                    return EventualSensitivityWitness(
                        x, eps, n, k, y, abs(xs[n + k] - ys[k]), delta, center
                    )
    return None


def plot_samples(
    m: PiecewiseLinearMap, count: int = 201
) -> list[tuple[Fraction, Fraction]]:
    """Graph samples: `count` equally spaced abscissas plus every breakpoint,
    deduplicated and sorted. Exact values; rounding happens at CSV time."""
    if count < 2:
        raise ValueError("need at least two samples")
    span = m.hi - m.lo
    grid = {m.lo + span * Fraction(i, count - 1) for i in range(count)}
    grid.update(m.breakpoints())
    xs = sorted(grid)
    return [(x, m(x)) for x in xs]


def samples_to_csv(samples: Sequence[tuple[Fraction, Fraction]]) -> str:
    """CSV rendering with 12-digit decimal columns; lossy by design."""
    lines = ["x,fx"]
    for x, fx in samples:
        lines.append(f"{float(x):.12f},{float(fx):.12f}")
    return "\n".join(lines) + "\n"
