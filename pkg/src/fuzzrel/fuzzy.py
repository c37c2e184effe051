"""Piecewise-linear fuzzy numbers and alpha-cut machinery.

A fuzzy parameter here is a normal, quasi-concave piecewise-linear
membership function on a bounded support: it rises from 0 to a plateau at
1 and falls back to 0. Every alpha-cut of such a shape is a closed
interval, and the cuts shrink as alpha grows, which is exactly what the
interval optimizers downstream consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ValidationError

# Consecutive membership-curve rows may escape nesting by at most this
# much before construction fails; anything smaller is float noise.
NESTING_TOL = 1e-9


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not np.isfinite(v):
            raise ValidationError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] on the real line."""

    lo: float
    hi: float

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        _require_finite("interval endpoint", self.lo, self.hi)
        if self.lo > self.hi:
            raise ValidationError(
                f"interval lower bound {self.lo} exceeds upper bound {self.hi}"
            )

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, z: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= z <= self.hi + tol

    def encloses(self, other: "Interval", tol: float = 0.0) -> bool:
        return self.lo - tol <= other.lo and other.hi <= self.hi + tol


def _interp_level(x0: float, m0: float, x1: float, m1: float, alpha: float) -> float:
    # invariant from the callers: m0 != m1 on the crossing segment
    return x0 + (alpha - m0) * (x1 - x0) / (m1 - m0)


@dataclass(frozen=True)
class FuzzyNumber:
    """Normal quasi-concave piecewise-linear membership function.

    Stored as breakpoints (values[i], memberships[i]) with strictly
    increasing values. Membership is linearly interpolated between
    breakpoints and 0 outside the support. At least one breakpoint must
    carry membership exactly 1, the peaks must be contiguous, and the
    profile must be nondecreasing before the peak and nonincreasing after
    it.
    """

    values: tuple[float, ...]
    memberships: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        memberships = tuple(float(m) for m in self.memberships)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "memberships", memberships)

        if len(values) == 0:
            raise ValidationError("fuzzy number needs at least one breakpoint")
        if len(values) != len(memberships):
            raise ValidationError(
                f"{len(values)} values but {len(memberships)} memberships"
            )
        _require_finite("breakpoint value", *values)
        _require_finite("membership", *memberships)
        for a, b in zip(values, values[1:]):
            if not a < b:
                raise ValidationError(
                    f"breakpoint values must strictly increase, got {a} then {b}"
                )
        for m in memberships:
            if not 0.0 <= m <= 1.0:
                raise ValidationError(f"membership {m} outside [0, 1]")
        if 1.0 not in memberships:
            raise ValidationError("membership must reach 1 somewhere (normality)")

        first = memberships.index(1.0)
        last = len(memberships) - 1 - memberships[::-1].index(1.0)
        if any(m != 1.0 for m in memberships[first : last + 1]):
            raise ValidationError("peak breakpoints must be contiguous")
        rising = memberships[: first + 1]
        if any(a > b for a, b in zip(rising, rising[1:])):
            raise ValidationError("membership must be nondecreasing before the peak")
        falling = memberships[last:]
        if any(a < b for a, b in zip(falling, falling[1:])):
            raise ValidationError("membership must be nonincreasing after the peak")

        object.__setattr__(self, "_peak_first", first)
        object.__setattr__(self, "_peak_last", last)

    # -- constructors ----------------------------------------------------

    @classmethod
    def trapezoidal(cls, a: float, b: float, c: float, d: float) -> "FuzzyNumber":
        """Trapezoid with support [a, d] and plateau [b, c]."""
        a, b, c, d = float(a), float(b), float(c), float(d)
        _require_finite("trapezoid node", a, b, c, d)
        if not a <= b <= c <= d:
            raise ValidationError(
                f"trapezoid nodes must be ordered a <= b <= c <= d, got "
                f"({a}, {b}, {c}, {d})"
            )
        points = [(a, 0.0), (b, 1.0), (c, 1.0), (d, 0.0)]
        merged: list[tuple[float, float]] = []
        for x, m in points:
            if merged and merged[-1][0] == x:
                merged[-1] = (x, max(merged[-1][1], m))
            else:
                merged.append((x, m))
        return cls(tuple(x for x, _ in merged), tuple(m for _, m in merged))

    @classmethod
    def triangular(cls, a: float, b: float, c: float) -> "FuzzyNumber":
        """Triangle with support [a, c] and peak at b."""
        return cls.trapezoidal(a, b, b, c)

    @classmethod
    def crisp(cls, value: float) -> "FuzzyNumber":
        """Degenerate fuzzy number concentrated on a single value."""
        return cls((float(value),), (1.0,))

    @classmethod
    def from_breakpoints(cls, points: Iterable[tuple[float, float]]) -> "FuzzyNumber":
        pts = list(points)
        return cls(tuple(x for x, _ in pts), tuple(m for _, m in pts))

    # -- queries ----------------------------------------------------------

    @property
    def support(self) -> Interval:
        return Interval(self.values[0], self.values[-1])

    @property
    def modal_interval(self) -> Interval:
        return Interval(self.values[self._peak_first], self.values[self._peak_last])

    @property
    def is_crisp(self) -> bool:
        return len(self.values) == 1

    def membership(self, x: float) -> float:
        """Membership grade at x, 0 outside the support."""
        x = float(x)
        if self.is_crisp:
            return 1.0 if x == self.values[0] else 0.0
        if x < self.values[0] or x > self.values[-1]:
            return 0.0
        return float(np.interp(x, self.values, self.memberships))

    def alpha_cut(self, alpha: float) -> Interval:
        """Closed interval of points with membership >= alpha.

        alpha = 0 returns the support closure rather than the whole line.
        """
        alpha = float(alpha)
        if not 0.0 <= alpha <= 1.0:
            raise ValidationError(f"alpha must lie in [0, 1], got {alpha}")
        if alpha == 0.0 or self.is_crisp:
            return self.support
        if alpha == 1.0:
            return self.modal_interval

        vs = self.values
        ms = self.memberships
        first, last = self._peak_first, self._peak_last

        if ms[0] >= alpha:
            lo = vs[0]
        else:
            rising = ms[: first + 1]
            i = int(np.searchsorted(rising, alpha, side="left"))
            lo = _interp_level(vs[i - 1], ms[i - 1], vs[i], ms[i], alpha)

        if ms[-1] >= alpha:
            hi = vs[-1]
        else:
            falling = ms[last:]
            # first index from the right whose membership is >= alpha
            j = int(np.searchsorted(falling[::-1], alpha, side="left"))
            i = len(ms) - 1 - j
            hi = _interp_level(vs[i], ms[i], vs[i + 1], ms[i + 1], alpha)

        # every cut contains the modal interval; interpolation rounding
        # must not be allowed to break that
        lo = min(lo, vs[first])
        hi = max(hi, vs[last])
        return Interval(lo, hi)


def alpha_cut(fz: FuzzyNumber, alpha: float) -> Interval:
    """Alpha-cut of a fuzzy number as a closed interval."""
    return fz.alpha_cut(alpha)


def crisp(value: float) -> FuzzyNumber:
    """Fuzzy number concentrated on a single crisp value."""
    return FuzzyNumber.crisp(value)


@dataclass(frozen=True)
class MembershipCurve:
    """Interval bounds of a derived quantity indexed by alpha level.

    Rows are (alpha, [lower, upper]) with strictly increasing alphas and
    nested intervals. The curve is itself the sampled membership function
    of the derived quantity: linear interpolation between rows on each
    branch.
    """

    alphas: tuple[float, ...]
    intervals: tuple[Interval, ...]

    def __post_init__(self):
        alphas = tuple(float(a) for a in self.alphas)
        intervals = tuple(self.intervals)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "intervals", intervals)

        if len(alphas) == 0:
            raise ValidationError("membership curve needs at least one row")
        if len(alphas) != len(intervals):
            raise ValidationError(
                f"{len(alphas)} alphas but {len(intervals)} intervals"
            )
        for a in alphas:
            if not 0.0 <= a <= 1.0:
                raise ValidationError(f"alpha {a} outside [0, 1]")
        for a, b in zip(alphas, alphas[1:]):
            if not a < b:
                raise ValidationError(
                    f"alpha levels must strictly increase, got {a} then {b}"
                )
        for (a0, iv0), (a1, iv1) in zip(
            zip(alphas, intervals), zip(alphas[1:], intervals[1:])
        ):
            if iv1.lo < iv0.lo - NESTING_TOL or iv1.hi > iv0.hi + NESTING_TOL:
                raise ValidationError(
                    f"interval at alpha={a1} escapes interval at alpha={a0}: "
                    f"[{iv1.lo}, {iv1.hi}] vs [{iv0.lo}, {iv0.hi}]"
                )

    @classmethod
    def from_rows(cls, rows: Iterable[tuple[float, Interval]]) -> "MembershipCurve":
        rows = list(rows)
        return cls(tuple(a for a, _ in rows), tuple(iv for _, iv in rows))

    @property
    def rows(self) -> tuple[tuple[float, Interval], ...]:
        return tuple(zip(self.alphas, self.intervals))

    @property
    def support(self) -> Interval:
        return self.intervals[0]

    def interval_at(self, alpha: float) -> Interval:
        """Interval at an alpha level, interpolated between stored rows."""
        alpha = float(alpha)
        if not self.alphas[0] <= alpha <= self.alphas[-1]:
            raise ValidationError(
                f"alpha {alpha} outside tabulated range "
                f"[{self.alphas[0]}, {self.alphas[-1]}]"
            )
        alphas = np.asarray(self.alphas)
        lows = np.asarray([iv.lo for iv in self.intervals])
        highs = np.asarray([iv.hi for iv in self.intervals])
        return Interval(
            float(np.interp(alpha, alphas, lows)),
            float(np.interp(alpha, alphas, highs)),
        )

    def membership_at(self, z: float) -> float:
        """Membership grade of z under the curve's piecewise-linear shape.

        Computed as the largest alpha whose interval contains z, which for
        nested rows equals linear interpolation on the branch z falls on.
        Points outside the lowest-alpha interval get 0, points inside the
        highest-alpha interval get that alpha (1 for a complete curve).
        """
        z = float(z)
        _require_finite("query point", z)
        lows = np.asarray([iv.lo for iv in self.intervals])
        highs = np.asarray([iv.hi for iv in self.intervals])
        alphas = np.asarray(self.alphas)

        if z < lows[0] or z > highs[0]:
            return 0.0
        if lows[-1] <= z <= highs[-1]:
            return float(alphas[-1])

        if z < lows[-1]:
            # lower branch: lows is nondecreasing; find the last row whose
            # lower endpoint is still <= z, i.e. the highest alpha reached
            k = int(np.searchsorted(lows, z, side="right")) - 1
            if lows[k] == z:
                return float(alphas[k])
            x0, x1 = lows[k], lows[k + 1]
            a0, a1 = alphas[k], alphas[k + 1]
            return float(a0 + (z - x0) * (a1 - a0) / (x1 - x0))

        # upper branch: highs is nonincreasing
        neg = -highs
        k = int(np.searchsorted(neg, -z, side="right")) - 1
        if highs[k] == z:
            return float(alphas[k])
        x0, x1 = highs[k], highs[k + 1]
        a0, a1 = alphas[k], alphas[k + 1]
        return float(a0 + (x0 - z) * (a1 - a0) / (x0 - x1))


def membership_at(curve: MembershipCurve, z: float) -> float:
    """Membership grade of z under a sampled membership curve."""
    return curve.membership_at(z)
