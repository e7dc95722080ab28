"""Numeric developing maps for Fuchsian examples.

Arcs are sampled polylines in CP^1; all separation tests use the chordal
metric (the sphere's round embedding in R^3) and exact segment-to-segment
distances between chords, so that a crossing between two samples is still
seen.  For a Fuchsian group the limit set is RP^1 and the two domains of
discontinuity are the half-planes.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .fuchsian import (
    FuchsianRepresentation,
    SurfaceGroupWord,
    cyclic_representation,
    evaluate_word,
    systole_estimate,
    word_ball,
)
from .moebius import (
    IDENTITY,
    MoebiusMap,
    ProjectivePoint,
    analyze,
    chordal_distance,
    fixed_points,
)

CHORDAL_TOL = 1e-6
INDEX_TOL = 1e-4
SYSTOLE_MARGIN = 1e-3


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# homogeneous coordinate arrays


def _normalize(coords: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(coords, axis=-1, keepdims=True)
    return coords / n


def coords_from_complex(z: Sequence[complex]) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    c = np.stack([z, np.ones_like(z)], axis=-1)
    inf = ~np.isfinite(z)
    c[inf] = (1.0, 0.0)
    return _normalize(c)


def to_sphere(coords: np.ndarray) -> np.ndarray:
    """(N, 2) homogeneous coordinates -> (N, 3) points on the unit sphere."""
    z0, z1 = coords[..., 0], coords[..., 1]
    w = z0 * np.conj(z1)
    s = np.abs(z0) ** 2 + np.abs(z1) ** 2
    return np.stack([2 * w.real / s, 2 * w.imag / s, (np.abs(z0) ** 2 - np.abs(z1) ** 2) / s], axis=-1)


def apply_matrix(M: np.ndarray, coords: np.ndarray) -> np.ndarray:
    return _normalize(coords @ np.asarray(M).T)


@dataclass(frozen=True, eq=False)
class DevelopedArc:
    """Samples of a developed path, in homogeneous coordinates, plus the
    chart (group word) they are expressed in."""

    coords: np.ndarray
    base_word: SurfaceGroupWord = SurfaceGroupWord()
    arclength: float = 0.0
    degenerate: bool = False

    def __post_init__(self):
        c = _normalize(np.asarray(self.coords, dtype=complex).reshape(-1, 2))
        object.__setattr__(self, "coords", c)
        if len(c) < 2:
            raise ValueError("an arc needs at least two samples")
        gaps = chordal_gaps(c)
        if not self.degenerate and np.any(gaps <= 1e-12):
            raise ValueError("consecutive samples coincide")

    @property
    def samples(self) -> List[ProjectivePoint]:
        return [ProjectivePoint(a, b) for a, b in self.coords]

    def affine(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.coords[:, 0] / self.coords[:, 1]

    def sphere(self) -> np.ndarray:
        return to_sphere(self.coords)

    def transformed(self, M: MoebiusMap, word: Optional[SurfaceGroupWord] = None) -> "DevelopedArc":
        return DevelopedArc(apply_matrix(M.matrix, self.coords), word or self.base_word, self.arclength, self.degenerate)

    def __len__(self):
        return len(self.coords)


def chordal_gaps(coords: np.ndarray) -> np.ndarray:
    P = to_sphere(coords)
    return np.linalg.norm(np.diff(P, axis=0), axis=1)


def arc_from_complex(z: Sequence[complex], word: SurfaceGroupWord = SurfaceGroupWord(), arclength: float = 0.0) -> DevelopedArc:
    return DevelopedArc(coords_from_complex(z), word, arclength)


# ---------------------------------------------------------------------------
# geodesic development


def geodesic_points(start: complex, direction: float, t: np.ndarray) -> np.ndarray:
    """Unit-speed geodesic in the upper half-plane leaving ``start`` with
    tangent angle ``direction`` (0 = positive real direction)."""
    x0, y0 = start.real, start.imag
    phi = direction - math.pi / 2
    c, s = math.cos(phi / 2), math.sin(phi / 2)
    w = 1j * np.exp(t)
    return x0 + y0 * (c * w + s) / (-s * w + c)


def develop_geodesic_arc(
    rep: FuchsianRepresentation,
    start: complex,
    direction: float,
    length: float,
    n_samples: int = 64,
    word: SurfaceGroupWord = SurfaceGroupWord(),
) -> DevelopedArc:
    """Develop the geodesic of the given length from ``start``; ``word``
    selects the chart, i.e. the arc is translated by rho(word)."""
    start = complex(start)
    if start.imag <= 0:
        raise ValueError("start must lie in the upper half-plane")
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    if length < 0:
        raise ValueError("length must be non-negative")
    t = np.linspace(0.0, length, n_samples)
    coords = coords_from_complex(geodesic_points(start, direction, t))
    if len(word):
        coords = apply_matrix(evaluate_word(rep, word).matrix, coords)
    if length == 0:
        return DevelopedArc(coords[:2], word, 0.0, degenerate=True)
    return DevelopedArc(coords, word, float(length))


# ---------------------------------------------------------------------------
# segment distances


def segment_distances(p1, q1, p2, q2) -> np.ndarray:
    """Distances between segments [p1, q1] and [p2, q2] in R^3 (broadcasting)."""
    d1 = q1 - p1
    d2 = q2 - p2
    r = p1 - p2
    a = np.sum(d1 * d1, -1)
    e = np.sum(d2 * d2, -1)
    f = np.sum(d2 * r, -1)
    c = np.sum(d1 * r, -1)
    b = np.sum(d1 * d2, -1)
    eps = 1e-300
    denom = a * e - b * b
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(denom > 1e-30, np.clip((b * f - c * e) / np.maximum(denom, eps), 0, 1), 0.0)
        t = np.where(e > eps, (b * s + f) / np.maximum(e, eps), 0.0)
        s = np.where(t < 0, np.where(a > eps, np.clip(-c / np.maximum(a, eps), 0, 1), 0.0), s)
        s = np.where(t > 1, np.where(a > eps, np.clip((b - c) / np.maximum(a, eps), 0, 1), 0.0), s)
        t = np.clip(t, 0, 1)
    c1 = p1 + d1 * s[..., None]
    c2 = p2 + d2 * t[..., None]
    return np.linalg.norm(c1 - c2, axis=-1)


def _self_min(P: np.ndarray, tol: float):
    """Minimal distance between non-adjacent chords of one polyline."""
    n = len(P) - 1
    if n < 3:
        return math.inf, None
    A0, A1 = P[:-1], P[1:]
    i, j = np.triu_indices(n, k=2)
    d = segment_distances(A0[i], A1[i], A0[j], A1[j])
    k = int(np.argmin(d))
    return float(d[k]), (int(i[k]), int(j[k]))


def _cross_min(P: np.ndarray, Q: np.ndarray, hmax: float):
    """Minimal distance between chords of P and chords of Q, with pruning."""
    # points lie on the unit sphere: |p - q|^2 = 2 - 2 p.q
    G = np.clip(2.0 - 2.0 * (P @ Q.T), 0.0, None)
    pd = np.sqrt(G)
    lo = pd.min()
    close = pd <= lo + 2 * hmax + 1e-12
    ii, jj = np.nonzero(close)
    nP, nQ = len(P) - 1, len(Q) - 1
    # chords incident to each close sample pair
    si = np.concatenate([ii - 1, ii - 1, ii, ii])
    sj = np.concatenate([jj - 1, jj, jj - 1, jj])
    si, sj = np.clip(si, 0, nP - 1), np.clip(sj, 0, nQ - 1)
    pairs = np.unique(np.stack([si, sj], 1), axis=0)
    d = segment_distances(P[pairs[:, 0]], P[pairs[:, 0] + 1], Q[pairs[:, 1]], Q[pairs[:, 1] + 1])
    k = int(np.argmin(d))
    return float(d[k]), (int(pairs[k, 0]), int(pairs[k, 1]))


@dataclass(frozen=True)
class InjectivityCertificate:
    injective: bool
    margin: float
    witness: Optional[Tuple[int, int, str]] = None  # (sample i, sample j, group word)
    small: bool = False
    status: str = "empirical"  # certified | empirical | refuted
    basis: str = "sampling"


@functools.lru_cache(maxsize=64)
def _systole_cached(rep: FuchsianRepresentation, L: int) -> float:
    return systole_estimate(rep, L)


@functools.lru_cache(maxsize=64)
def _ball_cached(rep: FuchsianRepresentation, L: int):
    return word_ball(rep, L, include_identity=False)


def is_injectively_developed(
    arc: DevelopedArc,
    rep: FuchsianRepresentation,
    word_ball: int = 2,
    tol: float = CHORDAL_TOL,
) -> InjectivityCertificate:
    """Sampling test for injectivity of the developed arc and disjointness
    from its rho(g)-translates, g non-trivial with |g| <= word_ball."""
    if arc.degenerate:
        return InjectivityCertificate(False, 0.0, (0, 1, "1"), False, "refuted")
    P = arc.sphere()
    hmax = float(np.linalg.norm(np.diff(P, axis=0), axis=1).max())
    best, wit = _self_min(P, tol)
    wit = None if wit is None else (wit[0], wit[1], "1")
    if word_ball >= 1:
        words, mats = _ball_cached(rep, word_ball)
        for w, M in zip(words, mats):
            Q = to_sphere(apply_matrix(M, arc.coords))
            # quick reject
            G = np.sqrt(np.clip(2.0 - 2.0 * (P @ Q.T), 0.0, None)).min()
            if G - 2 * hmax > best:
                continue
            d, pair = _cross_min(P, Q, hmax)
            if d < best:
                best, wit = d, (pair[0], pair[1], w.format(rep.names))
    injective = best > tol
    small = False
    if rep.real_entries and rep.genus is not None:
        small = arc.arclength < _systole_cached(rep, max(word_ball, 1)) - SYSTOLE_MARGIN
    status = "refuted" if not injective else ("certified" if small else "empirical")
    return InjectivityCertificate(
        injective,
        float(best) if injective else float(max(best, 0.0)),
        None if injective else wit,
        small,
        status,
        "systole" if status == "certified" else "sampling",
    )


# ---------------------------------------------------------------------------
# index of real curves


def index_of_real_curve(
    curve: DevelopedArc,
    holonomy: MoebiusMap,
    fixed_point: ProjectivePoint,
    tol: float = INDEX_TOL,
    closure_tol: float = 1e-6,
) -> int:
    """Number of passes of one fundamental segment of the curve through a
    tol-disk around the fixed point (runs of consecutive close chords)."""
    first, last = ProjectivePoint(*curve.coords[0]), ProjectivePoint(*curve.coords[-1])
    if chordal_distance(holonomy(first), last) > closure_tol:
        raise PreconditionError("curve does not close up under the holonomy")
    if chordal_distance(holonomy(fixed_point), fixed_point) > closure_tol:
        raise PreconditionError("point is not fixed by the holonomy")
    P = curve.sphere()
    f = fixed_point.to_sphere()
    a, b = P[:-1], P[1:]
    d = b - a
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.clip(np.sum((f - a) * d, 1) / np.maximum(np.sum(d * d, 1), 1e-300), 0, 1)
    q = a + d * t[:, None]
    q = q / np.linalg.norm(q, axis=1, keepdims=True)  # back onto the sphere
    near = np.linalg.norm(q - f, axis=1) < tol
    runs = int(np.sum(near[1:] & ~near[:-1])) + int(near[0])
    if runs and near[0] and near[-1]:
        runs -= 1  # start and end are one orbit point
    return runs


# ---------------------------------------------------------------------------
# structure models


def axis_chart(m: MoebiusMap) -> MoebiusMap:
    """A real map sending the repelling fixed point of ``m`` to 0 and the
    attracting one to infinity, so that the conjugate is z -> lambda z."""
    rep_fp, att_fp = fixed_points(m)
    p, q = rep_fp.affine().real, att_fp.affine().real
    if not math.isfinite(q):
        h = MoebiusMap(1, -p, 0, 1)
    elif not math.isfinite(p):
        h = MoebiusMap(0, 1, -1, q)
    else:
        h = MoebiusMap(1, -p, 1, -q)  # z -> (z - p)/(z - q)
    # choose the sign so that the upper half-plane is preserved
    if (h.a * h.d - h.b * h.c).real < 0:
        h = MoebiusMap(-h.a, -h.b, h.c, h.d)
    return MoebiusMap(h.a.real, h.b.real, h.c.real, h.d.real) if h.is_real(1e-9) else h


@dataclass(frozen=True)
class Uniformizing:
    rep: FuchsianRepresentation
    variant: str = field(default="Uniformizing", init=False)


@dataclass(frozen=True)
class Grafted:
    """Grafting of the uniformizing structure along the geodesic of ``word``."""

    rep: FuchsianRepresentation
    word: SurfaceGroupWord
    variant: str = field(default="Grafted", init=False)

    def __post_init__(self):
        a = analyze(self.holonomy)
        if not a.is_loxodromic or not all(abs(p.affine().imag) < 1e-9 or p.is_infinity for p in a.fixed_points):
            raise ValueError("grafting needs a loxodromic element with real axis")

    @property
    def holonomy(self) -> MoebiusMap:
        return evaluate_word(self.rep, self.word)

    def axis(self) -> Tuple[ProjectivePoint, ProjectivePoint]:
        return fixed_points(self.holonomy)

    def annulus_boundary(self, side: int = 1, n_samples: int = 200) -> DevelopedArc:
        """One fundamental segment of a boundary curve of the grafting annulus.

        It develops onto one of the two arcs of RP^1 between the fixed points
        (``side`` +1 or -1 picks which)."""
        g = self.holonomy
        h = axis_chart(g)
        lam = abs((h @ g @ h.inverse()).a) ** 2
        t = np.linspace(0.0, 1.0, n_samples)
        x = side * lam ** t
        coords = apply_matrix(h.inverse().matrix, coords_from_complex(x.astype(complex)))
        return DevelopedArc(coords, self.word, 0.0)


@dataclass(frozen=True)
class Bubbled:
    """Bubbling of ``inner`` along a developed arc, certified at construction."""

    inner: object
    arc: DevelopedArc
    word_ball: int = 2
    variant: str = field(default="Bubbled", init=False)

    def __post_init__(self):
        cert = is_injectively_developed(self.arc, self.inner.rep, self.word_ball)
        if not cert.injective:
            raise ValueError("bubbling arc is not injectively developed")
        object.__setattr__(self, "certificate", cert)

    @property
    def rep(self) -> FuchsianRepresentation:
        return self.inner.rep

    def real_curve(self, n_samples: int = 400) -> DevelopedArc:
        """The boundary of the bubble's disk of opposite sign: it runs once
        around RP^1 and has trivial holonomy."""
        t = np.linspace(0.0, math.pi, n_samples)
        coords = np.stack([np.cos(t), np.sin(t)], axis=1).astype(complex)
        return DevelopedArc(coords, SurfaceGroupWord(), 0.0)


StructureModel = Union[Uniformizing, Grafted, Bubbled]


def winding_curve(k: int, lam: float = 2.0, n_samples: int = 2000) -> Tuple[DevelopedArc, MoebiusMap]:
    """A synthetic curve on RP^1 closing up under z -> lam z after winding
    k extra times; returns (curve, holonomy).  RP^1 is parametrized by
    psi -> [cos psi : sin psi], i.e. z = cot psi."""
    psi0 = math.atan2(1.0, 1.0)  # z = 1
    psi1 = math.atan2(1.0, lam)  # z = lam
    psi = np.linspace(psi0, psi1 + k * math.pi, n_samples)
    coords = np.stack([np.cos(psi), np.sin(psi)], axis=1).astype(complex)
    s = math.sqrt(lam)
    return DevelopedArc(coords), MoebiusMap(s, 0, 0, 1 / s)


# ---------------------------------------------------------------------------
# the non-isotopic bubbling scenario


@dataclass(frozen=True)
class ScenarioArc:
    theta: float
    arc: DevelopedArc
    certificate: InjectivityCertificate
    orientation: int  # +1: arc leaves x on the left of eta, -1: right, 0: along it
    u_range: float
    construction_ok: bool


@dataclass(frozen=True)
class NonIsoBubReport:
    lam: float
    eta_length: float
    plus: ScenarioArc
    minus: ScenarioArc
    zero: ScenarioArc
    chart: MoebiusMap  # scenario chart -> upper half-plane chart of rep


def scenario_arc(theta: float, lam: float, s: float, n_samples: int = 800):
    """The developed arc alpha_theta in the chart where rho(gamma) = z -> lam z,
    gamma-hat is the imaginary axis, eta-hat the unit circle and x-hat = i.

    In log-polar coordinates z = exp(u + i(pi/2 - tau)), tau in [0, 2 pi + s],
    u(tau) = A tau (tau - tau_c)(tau - Phi) with A = tan(theta)/(tau_c Phi).
    """
    Phi = 2 * math.pi + s
    tc = Phi / 2
    A = math.tan(theta) / (tc * Phi)
    tau = np.linspace(0.0, Phi, n_samples)
    u = A * tau * (tau - tc) * (tau - Phi)
    z = np.exp(u + 1j * (math.pi / 2 - tau))
    return z, u, tau


def scenario_nonisobub(
    rep: Optional[FuchsianRepresentation] = None,
    gamma: Union[str, SurfaceGroupWord] = "a1 b1 A1 B1",
    eta_length: Optional[float] = None,
    theta: float = 0.2,
    eps: float = math.pi / 8,
    n_samples: int = 800,
    word_ball: int = 2,
    tol: float = CHORDAL_TOL,
) -> NonIsoBubReport:
    """Arcs alpha_{+theta}, alpha_{-theta} and alpha_0 on the grafting of
    ``rep`` along the separating geodesic ``gamma``."""
    from .fuchsian import standard_genus2

    rep = standard_genus2() if rep is None else rep
    w = rep.word(gamma) if isinstance(gamma, str) else gamma
    g = evaluate_word(rep, w)
    ga = analyze(g)
    if not ga.is_loxodromic:
        raise ValueError("gamma must be loxodromic")
    lam = math.exp(ga.translation_length)
    sys = _systole_cached(rep, 2)
    if eta_length is None:
        eta_length = sys / 4
    if not 0 < eta_length < sys / 2:
        raise ValueError("eta must be shorter than half the systole")
    if abs(theta) >= eps:
        raise ValueError(f"|theta| must be below {eps}")
    # eta-hat is the unit circle; hyperbolic length L from i reaches angle pi/2 - s
    s = math.pi / 2 - 2 * math.atan(math.exp(-eta_length))
    cyc = cyclic_representation(MoebiusMap(math.sqrt(lam), 0, 0, 1 / math.sqrt(lam)))
    chart = axis_chart(g).inverse()

    def build(th):
        z, u, tau = scenario_arc(th, lam, s, n_samples)
        arc = arc_from_complex(z, w, 0.0)
        cert = is_injectively_developed(arc, cyc, word_ball, tol)
        # at x-hat: eta-hat' = 1 and alpha' = i (u'(0) - i), so the cross
        # product of the two tangents is u'(0) = A tau_c Phi = tan(theta)
        orient = int(np.sign(math.tan(th)))
        u_range = float(u.max() - u.min())
        # the two sheets over the overlapping angles [pi/2 - s, pi/2] carry
        # opposite signs of u, and the curve fits in a fundamental annulus
        early = u[(tau > 0) & (tau <= s)]
        late = u[(tau >= 2 * math.pi) & (tau < tau[-1])]
        sheets = bool(early.size and late.size and (np.all(early * math.copysign(1, th) > 0)) and np.all(late * math.copysign(1, th) < 0)) if th != 0 else False
        ok = sheets and u_range < math.log(lam)
        if cert.injective and ok:
            cert = InjectivityCertificate(True, cert.margin, None, cert.small, "certified", "construction")
        return ScenarioArc(th, arc, cert, orient, u_range, ok)

    return NonIsoBubReport(lam, eta_length, build(theta), build(-theta), build(0.0), chart)


# ---------------------------------------------------------------------------
# arc dumps


def dump_arc(arc: DevelopedArc, path: Union[str, Path], names: Optional[Sequence[str]] = None) -> None:
    word = "".join(arc.base_word.format(names).split()) if len(arc.base_word) else "1"
    lines = [f"# arclength={float(arc.arclength)!r} word={word}"]
    for a, b in arc.coords:
        lines.append(" ".join(repr(float(x)) for x in (a.real, a.imag, b.real, b.imag)))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_arc(path: Union[str, Path]) -> Tuple[np.ndarray, float, str]:
    text = Path(path).read_text(encoding="utf-8").splitlines()
    head = dict(kv.split("=", 1) for kv in text[0].lstrip("# ").split())
    rows = np.array([[float(x) for x in ln.split()] for ln in text[1:] if ln.strip()])
    coords = np.stack([rows[:, 0] + 1j * rows[:, 1], rows[:, 2] + 1j * rows[:, 3]], axis=1)
    return coords, float(head["arclength"]), head["word"]
