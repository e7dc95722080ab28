"""Surface-group representations into PSL(2, R) and systole enumeration.

Words are stored as tuples of signed integers: ``+k`` is the k-th generator
(1-based) and ``-k`` its inverse.  For array work the letters are re-encoded
as ``0..n-1`` (generators) and ``n..2n-1`` (inverses).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .moebius import IDENTITY, MoebiusMap, cayley, compose

RELATOR_TOL = 1e-8
REAL_TOL = 1e-12


@dataclass(frozen=True)
class SurfaceGroupWord:
    """A freely reduced word; letters are nonzero signed generator indices."""

    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        ls = tuple(int(x) for x in self.letters)
        if any(x == 0 for x in ls):
            raise ValueError("letter 0 is not a generator")
        for x, y in zip(ls, ls[1:]):
            if x == -y:
                raise ValueError(f"word not freely reduced: {ls}")
        object.__setattr__(self, "letters", ls)

    @classmethod
    def reduce(cls, letters: Sequence[int]) -> "SurfaceGroupWord":
        out: List[int] = []
        for x in letters:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(int(x))
        return cls(tuple(out))

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "SurfaceGroupWord") -> "SurfaceGroupWord":
        return SurfaceGroupWord.reduce(self.letters + other.letters)

    def inverse(self) -> "SurfaceGroupWord":
        return SurfaceGroupWord(tuple(-x for x in reversed(self.letters)))

    def is_cyclically_reduced(self) -> bool:
        return len(self.letters) < 2 or self.letters[0] != -self.letters[-1]

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        if not self.letters:
            return "1"
        out = []
        for x in self.letters:
            k = abs(x) - 1
            nm = names[k] if names else f"g{k + 1}"
            out.append(nm if x > 0 else nm.upper() if nm.lower() == nm else nm + "^-1")
        return " ".join(out)


def generator_names(genus: int) -> Tuple[str, ...]:
    return tuple(n for i in range(1, genus + 1) for n in (f"a{i}", f"b{i}"))


def parse_word(text: str, names: Sequence[str]) -> SurfaceGroupWord:
    """Parse ``"a1 B2 b1"`` (capital = inverse).  ``"1"`` or ``""`` is the empty word."""
    text = text.strip()
    if text in ("", "1"):
        return SurfaceGroupWord()
    letters = []
    for tok in re.split(r"[\s*.]+", text):
        if tok in names:
            letters.append(names.index(tok) + 1)
        elif tok.lower() in names and tok != tok.lower():
            letters.append(-(names.index(tok.lower()) + 1))
        else:
            raise ValueError(f"unknown letter {tok!r}")
    return SurfaceGroupWord.reduce(letters)


def commutator_relator(genus: int) -> SurfaceGroupWord:
    ls: List[int] = []
    for i in range(genus):
        a, b = 2 * i + 1, 2 * i + 2
        ls += [a, b, -a, -b]
    return SurfaceGroupWord(tuple(ls))


@dataclass(frozen=True)
class FuchsianRepresentation:
    """Images of the surface-group generators ``a1, b1, ..., ag, bg``.

    ``genus=None`` switches to free mode (any number of generators, no
    relator check), used for cyclic test groups.  ``real_entries=False``
    marks a quasi-Fuchsian representation: only word evaluation is supported.
    """

    images: Tuple[MoebiusMap, ...]
    genus: Optional[int] = 2
    real_entries: bool = True
    names: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        imgs = tuple(self.images)
        object.__setattr__(self, "images", imgs)
        if not self.names:
            nm = generator_names(self.genus) if self.genus else tuple(f"g{i + 1}" for i in range(len(imgs)))
            object.__setattr__(self, "names", nm)
        if self.genus is not None:
            if self.genus < 2:
                raise ValueError("genus must be >= 2")
            if len(imgs) != 2 * self.genus:
                raise ValueError(f"expected {2 * self.genus} generator images, got {len(imgs)}")
            r = evaluate_word(self, commutator_relator(self.genus))
            if not r.isclose(IDENTITY, RELATOR_TOL):
                raise ValueError("surface relator does not evaluate to the identity")
        if self.real_entries and not all(m.is_real(REAL_TOL) for m in imgs):
            raise ValueError("generator images must have real entries")

    @property
    def n_generators(self) -> int:
        return len(self.images)

    def word(self, text: str) -> SurfaceGroupWord:
        return parse_word(text, self.names)

    def __call__(self, w) -> MoebiusMap:
        if isinstance(w, str):
            w = self.word(w)
        return evaluate_word(self, w)

    def require_fuchsian(self):
        if not self.real_entries:
            raise NotImplementedError("numeric operations need a Fuchsian (real) representation")


def evaluate_word(rep: FuchsianRepresentation, w: SurfaceGroupWord) -> MoebiusMap:
    m = np.eye(2, dtype=complex)
    for x in w.letters:
        g = rep.images[abs(x) - 1]
        if x < 0:
            g = g.inverse()
        m = m @ g.matrix
    return MoebiusMap.from_sl2(m[0, 0], m[0, 1], m[1, 0], m[1, 1])


def cyclic_representation(m: MoebiusMap) -> FuchsianRepresentation:
    """The cyclic group generated by one map (free mode, genus ignored)."""
    return FuchsianRepresentation((m,), genus=None, real_entries=m.is_real(REAL_TOL))


# ---------------------------------------------------------------------------
# The regular octagon group

#: cosh of the inradius of the regular octagon with vertex angle pi/4
COSH_INRADIUS = 1.0 + math.sqrt(2.0)
#: translation length of every side pairing; equals the Bolza systole
BOLZA_SYSTOLE = 2.0 * math.acosh(COSH_INRADIUS)


def octagon_side_pairings() -> Tuple[MoebiusMap, ...]:
    """Hyperbolic translations ``x0..x3`` pairing opposite sides of the regular
    octagon, conjugated from the disk into the upper half-plane (center -> i).

    ``x_k`` translates by twice the inradius along the diameter at angle
    ``k pi/4``; the octagon relator is ``x0 X1 x2 X3 X0 x1 X2 x3``.
    """
    t = BOLZA_SYSTOLE
    ch, sh = math.cosh(t / 2), math.sinh(t / 2)
    C = cayley()
    out = []
    for k in range(4):
        e = complex(math.cos(k * math.pi / 4), math.sin(k * math.pi / 4))
        # disk translation along the direction e: z -> (ch z + sh e) / (sh conj(e) z + ch)
        T = MoebiusMap(ch, sh * e, sh * e.conjugate(), ch)
        m = C @ T @ C.inverse()
        # strip rounding noise in the imaginary parts
        out.append(MoebiusMap(m.a.real, m.b.real, m.c.real, m.d.real))
    return tuple(out)


def octagon_vertices_and_sides():
    """Side midpoints (UHP) of the regular octagon; side k and k+4 are paired by x_k."""
    r = math.acosh(COSH_INRADIUS)
    C = cayley()
    mids = []
    for k in range(8):
        e = complex(math.cos(k * math.pi / 4), math.sin(k * math.pi / 4))
        mids.append(C(math.tanh(r / 2) * e))
    return mids


def standard_genus2() -> FuchsianRepresentation:
    """The Bolza group in a symplectic generating set.

    With side pairings ``x_k`` (capitals for inverses) we take
    ``a1 = x3 x0``, ``b1 = X1 x2 x0``, ``a2 = X1``, ``b2 = x2``.  This is a
    Nielsen basis of the free group on the x's (x1 = A2, x2 = b2,
    x0 = X2 x1 b1, x3 = a1 X0) and ``[a1,b1][a2,b2]`` is a cyclic conjugate
    of the octagon relator.
    """
    x = octagon_side_pairings()
    X = [g.inverse() for g in x]
    a1 = x[3] @ x[0]
    b1 = X[1] @ x[2] @ x[0]
    a2 = X[1]
    b2 = x[2]
    return FuchsianRepresentation(tuple(_realify(g) for g in (a1, b1, a2, b2)), genus=2)


def _realify(m: MoebiusMap) -> MoebiusMap:
    return MoebiusMap(m.a.real, m.b.real, m.c.real, m.d.real)


# ---------------------------------------------------------------------------
# Vectorized word enumeration


def _gen_matrices(rep: FuchsianRepresentation) -> np.ndarray:
    n = rep.n_generators
    dtype = float if rep.real_entries else complex
    mats = np.empty((2 * n, 2, 2), dtype=dtype)
    for k, g in enumerate(rep.images):
        m = g.matrix
        mats[k] = m.real if dtype is float else m
        mi = g.inverse().matrix
        mats[k + n] = mi.real if dtype is float else mi
    return mats


def _inv_code(codes: np.ndarray, n: int) -> np.ndarray:
    return (codes + n) % (2 * n)


def reduced_word_levels(rep: FuchsianRepresentation, max_length: int):
    """Yield ``(letters, matrices)`` for each length 1..max_length.

    ``letters`` has shape (N, L) in array encoding, ``matrices`` (N, 2, 2).
    Words are freely reduced.
    """
    n = rep.n_generators
    G = _gen_matrices(rep)
    letters = np.arange(2 * n, dtype=np.int8)[:, None]
    mats = G.copy()
    for L in range(1, max_length + 1):
        yield letters, mats
        if L == max_length:
            break
        last = letters[:, -1]
        N = len(letters)
        nxt = np.tile(np.arange(2 * n, dtype=np.int8), N)
        src = np.repeat(np.arange(N), 2 * n)
        keep = nxt != _inv_code(last[src], n)
        src, nxt = src[keep], nxt[keep]
        letters = np.concatenate([letters[src], nxt[:, None]], axis=1)
        mats = np.einsum("nij,njk->nik", mats[src], G[nxt])


def word_ball(rep: FuchsianRepresentation, max_length: int, include_identity: bool = True):
    """All freely reduced words up to ``max_length``: returns (list of words, (N,2,2) matrices)."""
    words: List[SurfaceGroupWord] = []
    blocks = []
    n = rep.n_generators
    if include_identity:
        words.append(SurfaceGroupWord())
        blocks.append(np.eye(2)[None].astype(float if rep.real_entries else complex))
    if max_length >= 1:
        for letters, mats in reduced_word_levels(rep, max_length):
            words.extend(_decode(row, n) for row in letters)
            blocks.append(mats)
    return words, np.concatenate(blocks) if blocks else np.empty((0, 2, 2))


def _decode(row, n) -> SurfaceGroupWord:
    return SurfaceGroupWord(tuple(int(c) + 1 if c < n else -(int(c) - n + 1) for c in row))


def _canonical_mask(digits: np.ndarray, n: int) -> np.ndarray:
    """True for rows that are the minimal representative of their class
    under cyclic rotation and inversion."""
    N, L = digits.shape
    base = 2 * n
    powers = (base ** np.arange(L - 1, -1, -1)).astype(np.int64)
    d = digits.astype(np.int64)
    own = d @ powers
    best = own.copy()
    inv = _inv_code(d[:, ::-1], n)
    for variant in (d, inv):
        for r in range(L):
            best = np.minimum(best, np.roll(variant, -r, axis=1) @ powers)
    return own == best


def _floor_ok(words: np.ndarray, k: int, n: int) -> np.ndarray:
    return (words >= k).all(axis=1) & (_inv_code(words, n) >= k).all(axis=1)


def _identity_mask(mats: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    I = np.eye(2)
    dp = np.abs(mats - I).reshape(len(mats), -1).max(axis=1)
    dm = np.abs(mats + I).reshape(len(mats), -1).max(axis=1)
    return np.minimum(dp, dm) < tol


@dataclass(frozen=True)
class SystoleResult:
    length: float
    word: SurfaceGroupWord
    classes: int  # number of conjugacy-class representatives examined
    trivial_words: int  # cyclically reduced words evaluating to the identity (relators)
    non_loxodromic: int  # non-identity, non-loxodromic elements (faithfulness violations)


def systole_search(rep: FuchsianRepresentation, max_length: int) -> SystoleResult:
    """Exhaustive search over cyclically reduced words up to ``max_length``.

    A word of length L is split as u v with |u| = ceil(L/2); traces of
    products come from precomputed level matrices, so only one level
    product per pair is formed.  The word tree is partitioned by the first
    letter of u and the partial minima are reduced at the end.
    """
    if max_length < 1:
        raise ValueError("max_length must be >= 1")
    rep.require_fuchsian()
    n = rep.n_generators
    levels = list(reduced_word_levels(rep, math.ceil(max_length / 2)))
    best = (math.inf, None)
    classes = trivial = bad = 0
    for L in range(1, max_length + 1):
        p = math.ceil(L / 2)
        q = L - p
        Uw, Um = levels[p - 1]
        if q == 0:
            parts = [(Uw, Um)]
        else:
            Vw, Vm = levels[q - 1]
            parts = []
            for first in range(2 * n):  # partition by first letter
                # a minimal representative starts with the smallest letter
                # occurring in the word or in its inverse
                sel = (Uw[:, 0] == first) & _floor_ok(Uw, first, n)
                uw, um = Uw[sel], Um[sel]
                vsel = _floor_ok(Vw, first, n)
                vw, vm = Vw[vsel], Vm[vsel]
                ok = (vw[None, :, 0] != _inv_code(uw[:, -1], n)[:, None]) & (
                    vw[None, :, -1] != _inv_code(uw[:, 0], n)[:, None]
                )
                iu, iv = np.nonzero(ok)
                parts.append(
                    (np.concatenate([uw[iu], vw[iv]], axis=1), np.einsum("nij,njk->nik", um[iu], vm[iv]))
                )
        for words, mats in parts:
            if len(words) == 0:
                continue
            if q == 0:
                cyc = words[:, 0] != _inv_code(words[:, -1], n) if L > 1 else np.ones(len(words), bool)
                words, mats = words[cyc], mats[cyc]
            keep = _canonical_mask(words, n)
            words, mats = words[keep], mats[keep]
            if len(words) == 0:
                continue
            classes += len(words)
            ident = _identity_mask(mats)
            trivial += int(ident.sum())
            tr = np.abs(mats[:, 0, 0] + mats[:, 1, 1])
            lox = (tr > 2 + 1e-12) & ~ident
            bad += int((~lox & ~ident).sum())
            if lox.any():
                ell = 2 * np.arccosh(tr[lox] / 2)
                j = int(np.argmin(ell))
                if ell[j] < best[0] - 1e-9:
                    best = (float(ell[j]), _decode(words[lox][j], n))
    if best[1] is None:
        raise ValueError("no loxodromic word found")
    return SystoleResult(best[0], best[1], classes, trivial, bad)


def systole_estimate(rep: FuchsianRepresentation, max_length: int) -> float:
    """Upper bound for the systole: minimal translation length over all
    cyclically reduced, non-trivial words of length <= max_length."""
    return systole_search(rep, max_length).length
