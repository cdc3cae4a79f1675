"""
Damping coefficient profiles D1, D2, D3
Piecewise polynomials on [0, L]; each piece stores coefficients in the local
offset (x - x_start), lowest degree first
"""
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from config.settings import LAB_CONFIG

_ZERO_TOL = 1e-14


class Smoothness(Enum):
    NON_SMOOTH = "non_smooth"   # jump at the interface, L-infinity only
    LIPSCHITZ = "lipschitz"     # W^{1,inf} transition


class DampingModel(Enum):
    KELVIN_VOIGT = "kelvin_voigt"   # damping on strain rates
    VISCOUS = "viscous"             # damping on velocities


@dataclass(frozen=True)
class Piece:
    x_start: float
    x_end: float
    coeffs: Tuple[float, ...]

    def evaluate(self, x):
        return P.polyval(np.asarray(x, dtype=float) - self.x_start, self.coeffs)

    @property
    def degree(self) -> int:
        return max(len(self.coeffs) - 1, 0)

    @property
    def is_zero(self) -> bool:
        return all(c == 0.0 for c in self.coeffs)


@dataclass(frozen=True)
class DampingProfile:
    """A nonnegative piecewise-polynomial coefficient with declared interface smoothness"""

    pieces: Tuple[Piece, ...]
    smoothness: Smoothness = Smoothness.NON_SMOOTH
    label: str = "custom"

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, length: float) -> "DampingProfile":
        return cls((Piece(0.0, length, (0.0,)),), Smoothness.LIPSCHITZ, "zero")

    @classmethod
    def global_(cls, length: float, d0: float) -> "DampingProfile":
        return cls((Piece(0.0, length, (float(d0),)),), Smoothness.LIPSCHITZ, "global")

    @classmethod
    def indicator(cls, length: float, alpha: float, beta: float, d0: float) -> "DampingProfile":
        """d0 on (alpha, beta), zero elsewhere; a jump at each interior interface"""
        pieces = _drop_empty([
            Piece(0.0, alpha, (0.0,)),
            Piece(alpha, beta, (float(d0),)),
            Piece(beta, length, (0.0,)),
        ])
        smooth = Smoothness.LIPSCHITZ if alpha <= 0.0 and beta >= length else Smoothness.NON_SMOOTH
        return cls(tuple(pieces), smooth, "indicator")

    @classmethod
    def smoothstep(cls, length: float, alpha: float, beta: float, d0: float, ramp: float) -> "DampingProfile":
        """Cubic smoothstep up on [alpha, alpha+ramp], plateau d0, down on [beta-ramp, beta]"""
        r = float(ramp)
        d0 = float(d0)
        rise = (0.0, 0.0, 3.0 * d0 / r ** 2, -2.0 * d0 / r ** 3)
        fall = (d0, 0.0, -3.0 * d0 / r ** 2, 2.0 * d0 / r ** 3)
        pieces = _drop_empty([
            Piece(0.0, alpha, (0.0,)),
            Piece(alpha, alpha + r, rise),
            Piece(alpha + r, beta - r, (d0,)),
            Piece(beta - r, beta, fall),
            Piece(beta, length, (0.0,)),
        ])
        return cls(tuple(pieces), Smoothness.LIPSCHITZ, "smoothstep")

    # ---- queries ------------------------------------------------------

    @property
    def length(self) -> float:
        return self.pieces[-1].x_end

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for p in self.pieces)

    @property
    def max_degree(self) -> int:
        return max(p.degree for p in self.pieces)

    def breakpoints(self) -> List[float]:
        """Interior piece boundaries"""
        return [p.x_end for p in self.pieces[:-1]]

    def piece_index(self, x) -> np.ndarray:
        """Index of the covering piece; at an interior breakpoint the left piece wins"""
        ends = np.array([p.x_end for p in self.pieces])
        idx = np.searchsorted(ends, np.asarray(x, dtype=float), side='left')
        return np.minimum(idx, len(self.pieces) - 1)

    def values(self, xs) -> np.ndarray:
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        out = np.empty_like(xs)
        idx = self.piece_index(xs)
        for i, piece in enumerate(self.pieces):
            mask = idx == i
            if mask.any():
                out[mask] = piece.evaluate(xs[mask])
        return out

    def support(self) -> List[Tuple[float, float]]:
        """Closure of {x : D(x) > 0} as sorted, merged closed intervals"""
        intervals: List[Tuple[float, float]] = []
        for piece in self.pieces:
            a, b = piece.x_start, piece.x_end
            cuts = [a]
            if piece.degree > 0:
                for root in P.polyroots(piece.coeffs):
                    if abs(root.imag) < 1e-12 and 0.0 < root.real < b - a:
                        cuts.append(a + root.real)
            cuts = sorted(cuts) + [b]
            for lo, hi in zip(cuts[:-1], cuts[1:]):
                if hi - lo <= 0.0:
                    continue
                if piece.evaluate(0.5 * (lo + hi)) > _ZERO_TOL:
                    if intervals and abs(intervals[-1][1] - lo) <= 1e-12 * max(1.0, b):
                        intervals[-1] = (intervals[-1][0], hi)
                    else:
                        intervals.append((lo, hi))
        return intervals

    def positive_everywhere(self) -> bool:
        """True when the profile is bounded below by some d0 > 0 on all of [0, L]"""
        return self.lower_bound_on(0.0, self.length) > 0.0

    def lower_bound_on(self, a: float, b: float) -> float:
        """Minimum of the profile over [a, b] (exact on pieces: endpoints and critical points)"""
        lowest = np.inf
        for piece in self.pieces:
            lo, hi = max(a, piece.x_start), min(b, piece.x_end)
            if hi < lo:
                continue
            candidates = [lo, hi]
            if piece.degree > 1:
                for root in P.polyroots(P.polyder(piece.coeffs)):
                    x = piece.x_start + root.real
                    if abs(root.imag) < 1e-12 and lo < x < hi:
                        candidates.append(x)
            lowest = min(lowest, float(np.min(piece.evaluate(np.array(candidates)))))
        return float(lowest)

    def violations(self, length: float, name: str = "profile") -> List[str]:
        """Partition and nonnegativity checks against the beam length"""
        problems = []
        if not self.pieces:
            return [f"{name}: no pieces"]
        tol = 1e-12 * max(1.0, length)
        if abs(self.pieces[0].x_start) > tol:
            problems.append(f"{name}: first piece starts at {self.pieces[0].x_start}, expected 0")
        if abs(self.pieces[-1].x_end - length) > tol:
            problems.append(f"{name}: last piece ends at {self.pieces[-1].x_end}, expected L={length}")
        for left, right in zip(self.pieces[:-1], self.pieces[1:]):
            if right.x_start - left.x_end > tol:
                problems.append(f"{name}: gap ({left.x_end:g},{right.x_start:g})")
            elif left.x_end - right.x_start > tol:
                problems.append(f"{name}: overlap ({right.x_start:g},{left.x_end:g})")
        n_check = LAB_CONFIG["profile_check_points"]
        for piece in self.pieces:
            if piece.x_end <= piece.x_start:
                problems.append(f"{name}: empty piece [{piece.x_start:g},{piece.x_end:g}]")
                continue
            xs = np.linspace(piece.x_start, piece.x_end, n_check)
            low = float(np.min(piece.evaluate(xs)))
            if low < -_ZERO_TOL:
                problems.append(
                    f"{name}: negative coefficient {low:.3g} on [{piece.x_start:g},{piece.x_end:g}]"
                )
        return problems


def eval_damping(profile: DampingProfile, x: float) -> float:
    """Value of the profile at x in [0, L]"""
    if x < 0.0 or x > profile.length:
        raise ValueError(f"x={x} outside [0, {profile.length}]")
    return float(profile.values(x)[0])


@dataclass(frozen=True)
class DampingSpec:
    d1: DampingProfile
    d2: DampingProfile
    d3: DampingProfile
    model: DampingModel = DampingModel.KELVIN_VOIGT

    @property
    def profiles(self) -> Tuple[DampingProfile, DampingProfile, DampingProfile]:
        return (self.d1, self.d2, self.d3)

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for p in self.profiles)

    @property
    def declared_smoothness(self) -> Smoothness:
        if all(p.smoothness is Smoothness.LIPSCHITZ for p in self.profiles):
            return Smoothness.LIPSCHITZ
        return Smoothness.NON_SMOOTH

    def breakpoints(self) -> List[float]:
        points = set()
        for p in self.profiles:
            points.update(p.breakpoints())
        return sorted(points)

    @classmethod
    def undamped(cls, length: float) -> "DampingSpec":
        z = DampingProfile.zero(length)
        return cls(z, z, z)


def intersect_intervals(a: Sequence[Tuple[float, float]], b: Sequence[Tuple[float, float]]) -> List[Tuple[float, float]]:
    """Intersection of two sorted interval lists, keeping only pieces of positive length"""
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        lo = max(a[i][0], b[j][0])
        hi = min(a[i][1], b[j][1])
        if hi > lo:
            out.append((lo, hi))
        if a[i][1] < b[j][1]:
            i += 1
        else:
            j += 1
    return out


def _drop_empty(pieces: List[Piece]) -> List[Piece]:
    return [p for p in pieces if p.x_end > p.x_start]
