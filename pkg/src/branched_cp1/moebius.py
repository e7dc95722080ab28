"""Projective points on CP^1 and Moebius maps in PSL(2, C).

Points are stored in homogeneous coordinates ``[z0 : z1]`` so that infinity
is an ordinary point ``[1 : 0]``.  Maps are stored as unit-determinant
matrices with a canonical sign, which makes equality in PSL(2, C) a matter of
comparing entries up to a tolerance.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

import numpy as np

#: Global tolerance for projective equality of points and maps.
PROJECTIVE_TOL = 1e-9

Number = Union[complex, float, int]


def _tol(tol: Optional[float]) -> float:
    return PROJECTIVE_TOL if tol is None else tol


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    """A point ``[z0 : z1]`` of CP^1.  Not both coordinates may vanish."""

    z0: complex
    z1: complex

    def __post_init__(self):
        z0, z1 = complex(self.z0), complex(self.z1)
        n = math.hypot(abs(z0), abs(z1))
        if n == 0.0 or not math.isfinite(n):
            raise ValueError("degenerate homogeneous coordinates")
        object.__setattr__(self, "z0", z0 / n)
        object.__setattr__(self, "z1", z1 / n)

    @classmethod
    def from_complex(cls, z: Number) -> "ProjectivePoint":
        z = complex(z)
        if cmath.isinf(z):
            return cls(1.0, 0.0)
        return cls(z, 1.0)

    @property
    def is_infinity(self) -> bool:
        return abs(self.z1) < PROJECTIVE_TOL * abs(self.z0)

    def affine(self) -> complex:
        """Affine coordinate ``z0/z1``; ``complex(inf)`` at infinity."""
        if self.z1 == 0:
            return complex(math.inf, 0.0)
        return self.z0 / self.z1

    def to_sphere(self) -> np.ndarray:
        """Embed into the unit sphere of R^3 (inverse stereographic projection)."""
        z0, z1 = self.z0, self.z1
        w = z0 * z1.conjugate()
        s = abs(z0) ** 2 + abs(z1) ** 2
        return np.array([2 * w.real / s, 2 * w.imag / s, (abs(z0) ** 2 - abs(z1) ** 2) / s])

    def isclose(self, other: "ProjectivePoint", tol: Optional[float] = None) -> bool:
        return chordal_distance(self, other) <= _tol(tol)

    def __repr__(self):
        if self.is_infinity:
            return "ProjectivePoint(inf)"
        return f"ProjectivePoint({self.affine():.6g})"


INFINITY = ProjectivePoint(1.0, 0.0)


def as_point(p) -> ProjectivePoint:
    return p if isinstance(p, ProjectivePoint) else ProjectivePoint.from_complex(p)


def chordal_distance(p, q) -> float:
    """Euclidean distance of the images on the unit sphere (at most 2)."""
    p, q = as_point(p), as_point(q)
    # coordinates are already unit vectors in C^2
    return 2.0 * abs(p.z0 * q.z1 - p.z1 * q.z0)


def _canonical_sign(entries):
    for x in entries:
        if abs(x) > 1e-14:
            if x.real < -1e-14 or (abs(x.real) <= 1e-14 and x.imag < 0):
                return tuple(-e for e in entries)
            return tuple(entries)
    return tuple(entries)


@dataclass(frozen=True, eq=False)
class MoebiusMap:
    """``z -> (a z + b) / (c z + d)``, normalized to ``ad - bc = 1``.

    The sign ambiguity of PSL(2, C) is fixed by requiring that the first
    non-zero entry (in the order a, b, c, d) has non-negative real part.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = (complex(x) for x in (self.a, self.b, self.c, self.d))
        det = a * d - b * c
        if abs(det) < 1e-300:
            raise ValueError("singular matrix")
        s = cmath.sqrt(det)
        a, b, c, d = _canonical_sign((a / s, b / s, c / s, d / s))
        for name, v in zip("abcd", (a, b, c, d)):
            object.__setattr__(self, name, v)

    @classmethod
    def from_matrix(cls, m) -> "MoebiusMap":
        m = np.asarray(m)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def from_sl2(cls, a, b, c, d) -> "MoebiusMap":
        """Entries known to have determinant one (products and inverses of
        normalized maps); only the sign is fixed.  For long words ``ad - bc``
        is dominated by cancellation error, so renormalizing by it would
        destroy the product."""
        obj = object.__new__(cls)
        for name, v in zip("abcd", _canonical_sign(tuple(complex(x) for x in (a, b, c, d)))):
            object.__setattr__(obj, name, v)
        return obj

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1, 0, 0, 1)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def trace(self) -> complex:
        return self.a + self.d

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return compose(self, other)

    def __call__(self, p):
        return apply(self, p)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap.from_sl2(self.d, -self.b, -self.c, self.a)

    def conjugate_by(self, g: "MoebiusMap") -> "MoebiusMap":
        """Return ``g self g^-1``."""
        return g @ self @ g.inverse()

    def is_real(self, tol: Optional[float] = None) -> bool:
        return all(abs(x.imag) <= _tol(tol) for x in (self.a, self.b, self.c, self.d))

    def isclose(self, other: "MoebiusMap", tol: Optional[float] = None) -> bool:
        m, n = self.matrix, other.matrix
        return min(np.abs(m - n).max(), np.abs(m + n).max()) <= _tol(tol)

    def is_identity(self, tol: Optional[float] = None) -> bool:
        return self.isclose(IDENTITY, tol)

    def __repr__(self):
        f = lambda x: f"{x.real:.6g}" if abs(x.imag) < 1e-12 else f"{x:.6g}"
        return f"MoebiusMap([[{f(self.a)}, {f(self.b)}], [{f(self.c)}, {f(self.d)}]])"


IDENTITY = MoebiusMap(1, 0, 0, 1)


def compose(f: MoebiusMap, g: MoebiusMap) -> MoebiusMap:
    """``f o g``."""
    return MoebiusMap.from_sl2(
        f.a * g.a + f.b * g.c,
        f.a * g.b + f.b * g.d,
        f.c * g.a + f.d * g.c,
        f.c * g.b + f.d * g.d,
    )


def apply(m: MoebiusMap, p):
    """Apply ``m`` to a ProjectivePoint (returns a point) or to a complex number
    (returns a complex number, possibly ``inf``)."""
    if isinstance(p, ProjectivePoint):
        return ProjectivePoint(m.a * p.z0 + m.b * p.z1, m.c * p.z0 + m.d * p.z1)
    return apply(m, ProjectivePoint.from_complex(p)).affine()


class MapKind(str, Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    LOXODROMIC = "loxodromic"


@dataclass(frozen=True)
class MapAnalysis:
    kind: MapKind
    trace_squared: complex
    translation_length: float
    fixed_points: Tuple[ProjectivePoint, ...]  # (repelling, attracting) if loxodromic

    @property
    def is_loxodromic(self) -> bool:
        return self.kind is MapKind.LOXODROMIC


def translation_length(m: MoebiusMap) -> float:
    """Real translation length ``2 Re arccosh(tr/2)``.

    For real traces this is ``2 arccosh(|tr|/2)`` (zero when ``|tr| <= 2``).
    """
    return 2.0 * cmath.acosh(m.trace / 2).real if abs(m.trace) > 0 else 0.0


def _eigvec(m: MoebiusMap, lam: complex) -> ProjectivePoint:
    v1 = (m.b, lam - m.a)
    v2 = (lam - m.d, m.c)
    n1 = abs(v1[0]) + abs(v1[1])
    n2 = abs(v2[0]) + abs(v2[1])
    v = v1 if n1 >= n2 else v2
    return ProjectivePoint(*v)


def fixed_points(m: MoebiusMap, tol: Optional[float] = None) -> Tuple[ProjectivePoint, ...]:
    """Fixed points of ``m``.  Loxodromic/elliptic maps give two points ordered
    (repelling, attracting) by eigenvalue modulus; parabolic maps give one;
    the identity gives an empty tuple."""
    if m.is_identity(tol):
        return ()
    tr = m.trace
    disc = cmath.sqrt(tr * tr - 4)
    if abs(disc) <= math.sqrt(_tol(tol)):
        return (_eigvec(m, tr / 2),)
    l1, l2 = (tr + disc) / 2, (tr - disc) / 2
    if abs(l1) < abs(l2):
        l1, l2 = l2, l1
    # l2 small eigenvalue -> repelling fixed point of the map on CP^1
    return (_eigvec(m, l2), _eigvec(m, l1))


def analyze(m: MoebiusMap, tol: Optional[float] = None) -> MapAnalysis:
    """Classify by ``tr^2``: [0, 4) elliptic, 4 parabolic/identity, else loxodromic."""
    t = _tol(tol)
    tr2 = m.trace ** 2
    fps = fixed_points(m, tol)
    if m.is_identity(tol):
        kind = MapKind.IDENTITY
    elif abs(tr2 - 4) <= max(t, 1e-7):
        kind = MapKind.PARABOLIC
    elif abs(tr2.imag) <= t and -t <= tr2.real < 4:
        kind = MapKind.ELLIPTIC
    else:
        kind = MapKind.LOXODROMIC
    ell = translation_length(m) if kind is MapKind.LOXODROMIC else 0.0
    return MapAnalysis(kind, tr2, ell, fps)


def hyperbolic_distance(z: complex, w: complex) -> float:
    """Distance in the upper half-plane, ``cosh d = 1 + |z-w|^2 / (2 Im z Im w)``.

    Evaluated in the algebraically equivalent asinh form, which keeps full
    relative precision for nearby points.
    """
    if z.imag <= 0 or w.imag <= 0:
        raise ValueError("points must lie in the upper half-plane")
    return 2.0 * math.asinh(abs(z - w) / (2.0 * math.sqrt(z.imag * w.imag)))


def half_plane_distance(z: complex, w: complex) -> float:
    """Path-metric distance in CP^1 minus RP^1: the hyperbolic metric on each
    half-plane and ``+inf`` between them (or onto the real line)."""
    if z.imag == 0 or w.imag == 0 or (z.imag > 0) != (w.imag > 0):
        return math.inf
    return 2.0 * math.asinh(abs(z - w) / (2.0 * math.sqrt(abs(z.imag * w.imag))))


def cayley() -> MoebiusMap:
    """Disk -> upper half-plane, sending 0 to i."""
    return MoebiusMap(1j, 1j, -1, 1)


def random_psl2c(rng: np.random.Generator, scale: float = 1.0) -> MoebiusMap:
    a, b, c, d = rng.normal(size=4, scale=scale) + 1j * rng.normal(size=4, scale=scale)
    return MoebiusMap(a, b, c, d)
