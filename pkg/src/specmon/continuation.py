"""Analytic continuation of the eigenvalue multifunctions along paths.

The multifunctions are closed-form root sets, so tracking is plain
nearest-root matching: march along the path, recompute the root set, and
accept a step only while the nearest root is unambiguous (closer than half
the distance to the runner-up).  Steps halve adaptively near trouble and
the walk refuses paths that come within clearance of a branch point, so a
silent sheet swap is turned into a reported error.  Counterclockwise is
the positive loop orientation (increasing phase of omega).
"""

from __future__ import annotations

import cmath
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .spectrum import OscillatorParams, SpectralFamily, branch_points, sheet_values

STEPS_PER_SEGMENT = 256
AMBIGUITY_RATIO = 0.5
MIN_RELATIVE_STEP = 1e-12
CLEARANCE_FACTOR = 1e-6
CONNECT_TOL = 1e-12


class InvalidPath(ValueError):
    """Path is disconnected or passes too close to a branch point."""


class AmbiguousTracking(RuntimeError):
    """Root assignment stayed ambiguous down to the minimum step size."""


@dataclass(frozen=True)
class Line:
    start: complex
    end: complex

    def point(self, t: float) -> complex:
        return self.start + t * (self.end - self.start)

    def min_distance(self, p: complex) -> float:
        d = self.end - self.start
        den = abs(d) ** 2
        if den == 0.0:
            return abs(p - self.start)
        t = ((p - self.start).real * d.real + (p - self.start).imag * d.imag) / den
        t = min(1.0, max(0.0, t))
        return abs(p - self.point(t))

    def reversed(self) -> "Line":
        return Line(self.end, self.start)

    def to_dict(self) -> dict:
        return {
            "type": "line",
            "from": [self.start.real, self.start.imag],
            "to": [self.end.real, self.end.imag],
        }


@dataclass(frozen=True)
class Arc:
    """Circular arc from theta0 to theta1 (radians, may span many turns)."""

    center: complex
    radius: float
    theta0: float
    theta1: float

    def __post_init__(self):
        if not (self.radius > 0):
            raise ValueError(f"arc radius must be positive, got {self.radius}")

    @property
    def start(self) -> complex:
        return self.point(0.0)

    @property
    def end(self) -> complex:
        return self.point(1.0)

    def point(self, t: float) -> complex:
        theta = self.theta0 + t * (self.theta1 - self.theta0)
        return self.center + self.radius * cmath.exp(1j * theta)

    def min_distance(self, p: complex) -> float:
        rel = p - self.center
        span = self.theta1 - self.theta0
        if abs(span) >= 2.0 * math.pi or rel == 0:
            return abs(abs(rel) - self.radius)
        ang = cmath.phase(rel)
        lo, hi = min(self.theta0, self.theta1), max(self.theta0, self.theta1)
        # fold ang into [lo, lo + 2pi) and test membership in the swept span
        k = math.floor((ang - lo) / (2.0 * math.pi))
        ang -= 2.0 * math.pi * k
        if lo <= ang <= hi:
            return abs(abs(rel) - self.radius)
        return min(abs(p - self.start), abs(p - self.end))

    def reversed(self) -> "Arc":
        return Arc(self.center, self.radius, self.theta1, self.theta0)

    def to_dict(self) -> dict:
        return {
            "type": "arc",
            "center": [self.center.real, self.center.imag],
            "radius": self.radius,
            "theta0": self.theta0,
            "theta1": self.theta1,
        }


Segment = Line | Arc


@dataclass(frozen=True)
class PathSpec:
    """Connected piecewise path of lines and circular arcs in the omega plane."""

    segments: tuple[Segment, ...]

    def __post_init__(self):
        if not self.segments:
            raise InvalidPath("path has no segments")
        for a, b in zip(self.segments, self.segments[1:]):
            gap = abs(a.end - b.start)
            scale = max(1.0, abs(a.end), abs(b.start))
            if gap > CONNECT_TOL * scale:
                raise InvalidPath(
                    f"segments are disconnected: {a.end} -> {b.start} (gap {gap:.3e})"
                )

    @property
    def start(self) -> complex:
        return self.segments[0].start

    @property
    def end(self) -> complex:
        return self.segments[-1].end

    def reversed(self) -> "PathSpec":
        return PathSpec(tuple(seg.reversed() for seg in reversed(self.segments)))

    def scale(self) -> float:
        pts = [abs(self.start)]
        for seg in self.segments:
            pts.append(abs(seg.end))
            if isinstance(seg, Arc):
                pts.append(abs(seg.center) + seg.radius)
        return max(pts)

    @classmethod
    def circle(cls, center: complex, radius: float, turns: int = 1, theta0: float = 0.0) -> "PathSpec":
        """Counterclockwise circle(s); one segment per turn."""
        if turns < 1 or turns != int(turns):
            raise ValueError(f"turns must be a positive integer, got {turns}")
        two_pi = 2.0 * math.pi
        segs = [
            Arc(complex(center), float(radius), theta0 + k * two_pi, theta0 + (k + 1) * two_pi)
            for k in range(int(turns))
        ]
        return cls(tuple(segs))

    def to_dict(self) -> dict:
        return {"segments": [seg.to_dict() for seg in self.segments]}

    @classmethod
    def from_dict(cls, doc: dict) -> "PathSpec":
        try:
            raw = doc["segments"]
        except (TypeError, KeyError):
            raise InvalidPath("path document must have a top-level 'segments' list") from None
        segs: list[Segment] = []
        for i, item in enumerate(raw):
            kind = item.get("type")
            if kind == "line":
                segs.append(Line(complex(*item["from"]), complex(*item["to"])))
            elif kind == "arc":
                segs.append(
                    Arc(
                        complex(*item["center"]),
                        float(item["radius"]),
                        float(item["theta0"]),
                        float(item["theta1"]),
                    )
                )
            else:
                raise InvalidPath(f"segment {i}: unknown type {kind!r}")
        return cls(tuple(segs))

    @classmethod
    def from_json(cls, text: str) -> "PathSpec":
        return cls.from_dict(json.loads(text))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass(frozen=True)
class ContinuationResult:
    samples: tuple[tuple[complex, complex], ...]
    final_value: complex
    start_sheet: int
    end_sheet: int
    steps_taken: int
    min_step_hit: bool


@dataclass(frozen=True)
class SheetPermutation:
    """mapping[start_sheet] = end_sheet after one traversal of the loop."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError(f"not a permutation: {self.mapping}")

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))

    def order(self) -> int:
        k, perm = 1, list(self.mapping)
        while not all(i == j for i, j in enumerate(perm)):
            perm = [self.mapping[i] for i in perm]
            k += 1
        return k

    def cycles(self) -> str:
        seen, parts = set(), []
        for i in range(len(self.mapping)):
            if i in seen:
                continue
            cyc, j = [i], self.mapping[i]
            seen.add(i)
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.mapping[j]
            if len(cyc) > 1:
                parts.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(parts) if parts else "identity"


def _check_sheet(family: SpectralFamily, sheet: int) -> int:
    if sheet not in range(family.sheet_count):
        raise ValueError(
            f"sheet {sheet} out of range for {family.value} ({family.sheet_count} sheets)"
        )
    return sheet


def _clearance(family, params, path: PathSpec) -> float:
    return CLEARANCE_FACTOR * max(params.m, path.scale())


def _validate_clearance(family, params, path: PathSpec) -> None:
    clear = _clearance(family, params, path)
    for bp in branch_points(family, params):
        for seg in path.segments:
            d = seg.min_distance(bp.location)
            if d < clear:
                raise InvalidPath(
                    f"path passes within {d:.3e} of branch point {bp.location} "
                    f"(clearance {clear:.3e})"
                )


def continue_path(
    family: SpectralFamily,
    params: OscillatorParams,
    path: PathSpec,
    start_sheet: int,
) -> ContinuationResult:
    """Track one eigenvalue branch along the path by nearest-root matching.

    Each accepted step snaps the value onto the closed-form root nearest
    the previous one, provided it is closer than AMBIGUITY_RATIO times the
    runner-up distance; otherwise the step halves, down to
    MIN_RELATIVE_STEP of a segment, then AmbiguousTracking is raised.
    """
    _check_sheet(family, start_sheet)
    _validate_clearance(family, params, path)

    value = sheet_values(family, params, path.start)[start_sheet]
    samples: list[tuple[complex, complex]] = [(path.start, value)]
    steps = 0
    min_step_hit = False

    for seg in path.segments:
        t = 0.0
        dt0 = 1.0 / STEPS_PER_SEGMENT
        dt = dt0
        while t < 1.0:
            dt = min(dt, 1.0 - t)
            omega = seg.point(t + dt)
            roots = sheet_values(family, params, omega)
            dists = sorted(range(len(roots)), key=lambda i: abs(roots[i] - value))
            d1 = abs(roots[dists[0]] - value)
            d2 = abs(roots[dists[1]] - value)
            if d1 == 0.0 or d1 < AMBIGUITY_RATIO * d2:
                t += dt
                value = roots[dists[0]]
                samples.append((omega, value))
                steps += 1
                dt = min(dt * 2.0, dt0)
            else:
                dt /= 2.0
                if dt < MIN_RELATIVE_STEP:
                    raise AmbiguousTracking(
                        f"root assignment ambiguous at omega = {omega} "
                        f"(d1 = {d1:.3e}, d2 = {d2:.3e}); path too close to a branch point"
                    )
                if dt <= 2.0 * MIN_RELATIVE_STEP:
                    min_step_hit = True

    end_roots = sheet_values(family, params, path.end)
    end_sheet = min(range(len(end_roots)), key=lambda i: abs(end_roots[i] - value))
    return ContinuationResult(
        samples=tuple(samples),
        final_value=value,
        start_sheet=start_sheet,
        end_sheet=end_sheet,
        steps_taken=steps,
        min_step_hit=min_step_hit,
    )


def _thread_cap() -> int:
    raw = os.environ.get("SPECMON_THREADS", "")
    try:
        cap = int(raw)
    except ValueError:
        return 1
    return max(1, cap)


def monodromy(
    family: SpectralFamily,
    params: OscillatorParams,
    center: complex,
    radius: float,
    turns: int = 1,
) -> SheetPermutation:
    """Sheet permutation induced by `turns` counterclockwise circles.

    Every sheet is tracked around the loop; endpoints are matched to the
    canonical sheets jointly (stable greedy assignment) so exactly
    degenerate families still produce a bijection.  Per-sheet tracks are
    independent and run in a thread pool when SPECMON_THREADS > 1.
    """
    path = PathSpec.circle(complex(center), float(radius), turns)
    sheet_values(family, params, path.start)  # rejects a branch-point start
    _validate_clearance(family, params, path)

    def track(sheet: int):
        return continue_path(family, params, path, sheet)

    cap = min(_thread_cap(), family.sheet_count)
    if cap > 1:
        with ThreadPoolExecutor(max_workers=cap) as pool:
            results = list(pool.map(track, range(family.sheet_count)))
    else:
        results = [track(s) for s in range(family.sheet_count)]

    end_values = sheet_values(family, params, path.end)
    mapping = [-1] * family.sheet_count
    claimed: set[int] = set()
    for sheet, res in enumerate(results):
        order = sorted(range(len(end_values)), key=lambda i: abs(end_values[i] - res.final_value))
        target = next(i for i in order if i not in claimed)
        claimed.add(target)
        mapping[sheet] = target
    return SheetPermutation(tuple(mapping))


def enclosed_branch_points(
    family: SpectralFamily,
    params: OscillatorParams,
    center: complex,
    radius: float,
) -> list[complex]:
    """Branch points strictly inside the circle, repeated per multiplicity."""
    center = complex(center)
    radius = float(radius)
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    clear = CLEARANCE_FACTOR * max(params.m, abs(center) + radius)
    out: list[complex] = []
    for bp in branch_points(family, params):
        d = abs(bp.location - center)
        if abs(d - radius) < clear:
            raise ValueError(
                f"branch point {bp.location} lies on the circle (within clearance {clear:.3e})"
            )
        if d < radius:
            out.extend([bp.location] * bp.multiplicity)
    return out
