"""Safety constants and BM-configuration predicates over numeric arcs.

A BM-configuration is a bubble together with an embedded twin pair based at
one of its two branch points.  Everything here works on developed samples;
the infinite orbit minimum K is replaced by a word-ball minimum, which can
only overestimate it, so derived bounds are to be used with a margin
(``is_safe``).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .devmap import (
    CHORDAL_TOL,
    SYSTOLE_MARGIN,
    Bubbled,
    DevelopedArc,
    Uniformizing,
    _ball_cached,
    _cross_min,
    geodesic_points,
    to_sphere,
    apply_matrix,
)
from .fuchsian import FuchsianRepresentation, SurfaceGroupWord, systole_estimate, word_ball as _word_ball
from .moebius import ProjectivePoint, as_point, chordal_distance


@functools.lru_cache(maxsize=16)
def _orbit_ball(rep: FuchsianRepresentation, L: int):
    return _word_ball(rep, L, include_identity=True)


class NotSimplyDeveloped(ValueError):
    """The two branch points are avatars of each other (K = 0)."""


class ConfigurationError(ValueError):
    pass


def _point_to_polyline(P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """For each point of P (on the sphere), the distance to the polyline Q."""
    if len(Q) == 1:
        return np.linalg.norm(P - Q[0], axis=1)
    a, d = Q[:-1], np.diff(Q, axis=0)
    dd = np.maximum(np.sum(d * d, 1), 1e-300)
    t = np.clip(((P[:, None, :] - a[None]) * d[None]).sum(-1) / dd, 0, 1)
    proj = a[None] + t[..., None] * d[None]
    return np.linalg.norm(P[:, None, :] - proj, axis=-1).min(axis=1)


@dataclass(frozen=True)
class BMConfiguration:
    bubble_boundary: DevelopedArc
    twin_pair: Tuple[DevelopedArc, DevelopedArc]
    base: ProjectivePoint
    tol: float = CHORDAL_TOL

    def __post_init__(self):
        if len(self.twin_pair) != 2:
            raise ConfigurationError("a twin pair has exactly two arcs")
        m1, m2 = self.twin_pair
        for k, mu in enumerate(self.twin_pair):
            if chordal_distance(ProjectivePoint(*mu.coords[0]), self.base) > self.tol:
                raise ConfigurationError(f"twin arc {k} does not start at the base point")
        P, Q = m1.sphere(), m2.sphere()
        gap = max(_point_to_polyline(P, Q).max(), _point_to_polyline(Q, P).max())
        if gap > self.tol:
            raise ConfigurationError(f"twin arcs do not share a developed image (gap {gap:.3g})")

    @property
    def twin_length(self) -> float:
        return max(mu.arclength for mu in self.twin_pair)

    @classmethod
    def from_arc(cls, bubble_boundary: DevelopedArc, twin: DevelopedArc, tol: float = CHORDAL_TOL) -> "BMConfiguration":
        """Twin pair whose two arcs are the two lifts of one developed arc."""
        return cls(bubble_boundary, (twin, twin), ProjectivePoint(*twin.coords[0]), tol)


# ---------------------------------------------------------------------------
# safety constants


@dataclass(frozen=True)
class SafetyConstants:
    sys: float
    K: float
    A: float
    witness: Optional[str] = None  # word realising the orbit minimum
    word_ball: int = 0
    estimate: str = "upper-bound"

    @property
    def simply_developed(self) -> bool:
        return self.K > 0


def _orbit_distances(x: complex, y: complex, mats: np.ndarray) -> np.ndarray:
    a, b, c, d = mats[:, 0, 0], mats[:, 0, 1], mats[:, 1, 0], mats[:, 1, 1]
    if math.isinf(abs(y)):
        w = a / c
    else:
        w = (a * y + b) / (c * y + d)
    same = np.sign(w.imag) == np.sign(x.imag)
    out = np.full(len(w), np.inf)
    with np.errstate(divide="ignore", invalid="ignore"):
        dist = 2.0 * np.arcsinh(np.abs(x - w[same]) / (2.0 * np.sqrt(np.abs(x.imag * w[same].imag))))
    out[same] = np.where(np.isfinite(dist), dist, np.inf)
    # exact coincidences may come out as nan from 0/0 above; they are 0
    out[same] = np.where(np.isclose(w[same], x, rtol=0, atol=1e-12), 0.0, out[same])
    return out


def safety_constants(rep: FuchsianRepresentation, x, y, word_ball: int = 6) -> SafetyConstants:
    """sys, K and A = min(sys, K/3) from a word ball of radius ``word_ball``."""
    if word_ball < 1:
        raise ValueError("word_ball must be >= 1")
    x = as_point(x).affine() if not isinstance(x, complex) else x
    y = as_point(y).affine() if not isinstance(y, complex) else y
    if not math.isfinite(abs(x)) or abs(x.imag) < 1e-12:
        raise ValueError("x must lie off the real circle")
    words, mats = _orbit_ball(rep, word_ball)
    d = _orbit_distances(x, y, mats)
    k = int(np.argmin(d))
    K = float(d[k])
    if K < 1e-9:
        K = 0.0
    sys = systole_estimate(rep, word_ball)
    wit = None if math.isinf(K) else (words[k].format(rep.names) or "1")
    return SafetyConstants(sys, K, min(sys, K / 3), wit, word_ball)


def safe_move_bound(cfg: Optional[BMConfiguration], consts: SafetyConstants, moves: int = 1) -> float:
    """Length bound for moving branch points: min(sys, K) for one movement
    at one vertex, A = min(sys, K/3) for two successive movements."""
    if not consts.K > 0:
        raise NotSimplyDeveloped("K = 0: the branch points are avatars")
    if moves == 1:
        return min(consts.sys, consts.K)
    if moves == 2:
        return consts.A
    raise ValueError("moves must be 1 or 2")


def is_safe(length: float, bound: float, margin: float = SYSTOLE_MARGIN) -> bool:
    """Bounds are word-ball estimates, so they are used strictly."""
    return length < bound - margin


def chain_check(
    rep: FuchsianRepresentation,
    x: complex,
    y: complex,
    consts: SafetyConstants,
    L: float,
    n_directions: int = 8,
) -> Tuple[bool, float]:
    """Move x and y by hyperbolic distance L in several directions and
    check d(x', rho(g) y') >= K - 2L > L over the word ball of ``consts``.
    Returns (holds, smallest distance seen)."""
    _, mats = _orbit_ball(rep, consts.word_ball)
    dirs = np.linspace(0.0, 2 * math.pi, n_directions, endpoint=False)
    t = np.array([L])
    worst = math.inf
    for phi in dirs:
        xs = complex(geodesic_points(x, phi, t)[0])
        for psi in dirs:
            ys = complex(geodesic_points(y, psi, t)[0])
            worst = min(worst, float(_orbit_distances(xs, ys, mats).min()))
    lower = consts.K - 2 * L
    return bool(worst >= lower - 1e-9 and lower > L), worst


# ---------------------------------------------------------------------------
# standard and visible


@dataclass(frozen=True)
class StandardCheck:
    standard: bool
    clause: Optional[str]  # "disjoint" (i) or "contained" (ii)
    witness: Optional[Tuple[int, int, int, str]] = None  # (twin, twin chord, boundary chord, word)
    margin: float = 0.0

    def __bool__(self):
        return self.standard


def _twin_tail(mu: DevelopedArc, base: np.ndarray, tol: float) -> Tuple[np.ndarray, int]:
    """Samples of mu after it has left a small neighbourhood of the base."""
    P = mu.sphere()
    h = float(np.linalg.norm(np.diff(P, axis=0), axis=1).max()) if len(P) > 1 else 0.0
    r = max(10 * tol, 2 * h)
    far = np.linalg.norm(P - base, axis=1) >= r
    if not far.any():
        return P[:0], len(P)
    i0 = int(np.argmax(far))
    return P[i0:], i0


def check_standard(cfg: BMConfiguration, rep: FuchsianRepresentation, word_ball: int = 2, tol: Optional[float] = None) -> StandardCheck:
    """Standard means the twin pair meets the bubble boundary only at the
    base point, also after developing (word-ball translates), or lies
    entirely inside the bubble boundary."""
    tol = cfg.tol if tol is None else tol
    B = cfg.bubble_boundary.sphere()
    # clause (ii): contained in the boundary
    if all(_point_to_polyline(mu.sphere(), B).max() <= tol for mu in cfg.twin_pair):
        return StandardCheck(True, "contained", None, 0.0)
    base = cfg.base.to_sphere()
    hB = float(np.linalg.norm(np.diff(B, axis=0), axis=1).max()) if len(B) > 1 else 0.0
    translates = [("1", B)]
    if word_ball >= 1:
        words, mats = _ball_cached(rep, word_ball)
        for w, M in zip(words, mats):
            translates.append((w.format(rep.names), to_sphere(apply_matrix(M, cfg.bubble_boundary.coords))))
    best, wit = math.inf, None
    for k, mu in enumerate(cfg.twin_pair):
        T, i0 = _twin_tail(mu, base, tol)
        if len(T) < 2:
            continue
        hT = float(np.linalg.norm(np.diff(T, axis=0), axis=1).max())
        for word, Q in translates:
            if len(Q) < 2:
                continue
            d, (i, j) = _cross_min(T, Q, max(hT, hB))
            if d < best:
                best, wit = d, (k, i + i0, j, word)
    if best > tol:
        return StandardCheck(True, "disjoint", None, float(best))
    return StandardCheck(False, None, wit, float(best))


VERDICTS = ("visible_certified", "visible_by_injectivity", "not_visible", "unknown")


def _crosses_real_line(mu: DevelopedArc) -> bool:
    with np.errstate(divide="ignore", invalid="ignore"):
        z = mu.coords[:, 0] / mu.coords[:, 1]
    im = np.where(np.isfinite(z), z.imag, 0.0)
    return bool(np.any(im > 1e-12) and np.any(im < -1e-12))


def check_visible(cfg: BMConfiguration, model, margin: float = SYSTOLE_MARGIN, word_ball: int = 2) -> str:
    """Four-valued visibility verdict for a twin pair on a bubbled structure."""
    if not isinstance(model, Bubbled):
        raise TypeError(f"check_visible needs a Bubbled model, got {type(model).__name__}")
    if isinstance(model.inner, Uniformizing) and any(_crosses_real_line(mu) for mu in cfg.twin_pair):
        return "not_visible"
    L = cfg.twin_length
    if L > 0 and L < systole_estimate(model.rep, max(word_ball, 1)) - margin:
        return "visible_certified"
    if isinstance(model.inner, Uniformizing):
        return "visible_by_injectivity"
    return "unknown"
