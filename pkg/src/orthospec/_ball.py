"""Breadth-first enumeration of group elements by base-point displacement.

The holonomy group is free on the face-pairing generators, so reduced words
enumerate elements without repetition.  The search expands a reduced word
only while the displacement d(base, g.base) stays below a radius; levels are
processed as numpy arrays (one row per element) since balls routinely hold
millions of elements.  Balls are cached per developed domain and reused for
any smaller radius: a superset of elements never hurts the callers, which
all post-filter geometrically.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass

import numpy as np

from .errors import ResourceError
from .halfplane import Isometry


@dataclass
class GroupBall:
    """All reduced words whose prefixes stay within ``radius`` displacement.

    Row 0 is the identity.  ``parent``/``letter`` encode the word tree
    (letters are signed 1-based generator indices); ``disp`` the displacement
    of each element.  ``min_pruned`` is the smallest displacement that was
    cut off at the boundary of the search, useful for completeness
    certification.
    """

    radius: float
    mats: np.ndarray  # (N, 4) float64, rows (a, b, c, d)
    parent: np.ndarray  # (N,) int64
    letter: np.ndarray  # (N,) int16
    disp: np.ndarray  # (N,) float64
    min_pruned: float

    def __len__(self) -> int:
        return len(self.disp)

    def word(self, index: int) -> tuple[int, ...]:
        letters = []
        while index != 0:
            letters.append(int(self.letter[index]))
            index = int(self.parent[index])
        return tuple(reversed(letters))

    def isometry(self, index: int) -> Isometry:
        a, b, c, d = (float(v) for v in self.mats[index])
        det = a * d - b * c
        if det <= 0:
            raise ResourceError(f"degenerate matrix in ball at row {index}")
        s = 1.0 / np.sqrt(det)
        return Isometry(a * s, b * s, c * s, d * s)


def _letter_matrices(generators: list[Isometry]) -> list[np.ndarray]:
    mats = []
    for g in generators:
        mats.append(np.array([g.a, g.b, g.c, g.d], dtype=np.float64))
    for g in generators:
        inv = g.inverse()
        mats.append(np.array([inv.a, inv.b, inv.c, inv.d], dtype=np.float64))
    return mats


def _compose_rows(rows: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Right-multiply every (a, b, c, d) row by the single matrix g."""
    a, b, c, d = rows[:, 0], rows[:, 1], rows[:, 2], rows[:, 3]
    ga, gb, gc, gd = g
    out = np.empty_like(rows)
    out[:, 0] = a * ga + b * gc
    out[:, 1] = a * gb + b * gd
    out[:, 2] = c * ga + d * gc
    out[:, 3] = c * gb + d * gd
    return out


def _displacements(rows: np.ndarray, base: complex) -> np.ndarray:
    num = rows[:, 0] * base + rows[:, 1]
    den = rows[:, 2] * base + rows[:, 3]
    w = num / den
    arg = 1.0 + np.abs(w - base) ** 2 / (2.0 * w.imag * base.imag)
    return np.arccosh(np.maximum(arg, 1.0))


def compute_ball(
    generators: list[Isometry],
    base: complex,
    radius: float,
    max_nodes: int = 10_000_000,
) -> GroupBall:
    """BFS over reduced words, keeping elements with displacement <= radius."""
    n = len(generators)
    letter_mats = _letter_matrices(generators)
    letter_codes = [i + 1 for i in range(n)] + [-(i + 1) for i in range(n)]

    mats = [np.array([[1.0, 0.0, 0.0, 1.0]])]
    parents = [np.array([0], dtype=np.int64)]
    letters = [np.array([0], dtype=np.int16)]
    disps = [np.array([0.0])]

    total = 1
    min_pruned = np.inf
    level_rows = mats[0]
    level_letters = letters[0]
    level_offset = 0

    while len(level_rows):
        next_rows = []
        next_parents = []
        next_letters = []
        next_disps = []
        for code, gmat in zip(letter_codes, letter_mats):
            mask = level_letters != -code
            if not mask.any():
                continue
            rows = _compose_rows(level_rows[mask], gmat)
            # Renormalise determinant drift level by level.  A determinant
            # that has decayed below 0.25 means the entries are so large that
            # double precision lost it entirely; such elements sit far beyond
            # any radius in use and are dropped with the radius test.
            with np.errstate(invalid="ignore", divide="ignore"):
                det = rows[:, 0] * rows[:, 3] - rows[:, 1] * rows[:, 2]
                bad = ~np.isfinite(det) | (det < 0.25)
                det = np.where(bad, 1.0, det)
                rows /= np.sqrt(det)[:, None]
                disp = _displacements(rows, base)
                disp = np.where(bad | ~np.isfinite(disp), np.inf, disp)
            keep = disp <= radius
            if not keep.all():
                pruned = disp[~keep]
                if len(pruned):
                    min_pruned = min(min_pruned, float(pruned.min()))
            if keep.any():
                parent_idx = np.nonzero(mask)[0][keep] + level_offset
                next_rows.append(rows[keep])
                next_parents.append(parent_idx)
                next_letters.append(
                    np.full(int(keep.sum()), code, dtype=np.int16)
                )
                next_disps.append(disp[keep])
        if not next_rows:
            break
        level_rows = np.concatenate(next_rows)
        level_parents = np.concatenate(next_parents)
        level_letters = np.concatenate(next_letters)
        level_disps = np.concatenate(next_disps)
        level_offset = total
        total += len(level_rows)
        if total > max_nodes:
            raise ResourceError(
                f"group ball exceeded {max_nodes} elements at radius {radius}; "
                f"complete only below displacement {min_pruned}",
                certified_cutoff=float(min(min_pruned, radius)),
            )
        mats.append(level_rows)
        parents.append(level_parents)
        letters.append(level_letters)
        disps.append(level_disps)

    return GroupBall(
        radius=radius,
        mats=np.concatenate(mats),
        parent=np.concatenate(parents),
        letter=np.concatenate(letters),
        disp=np.concatenate(disps),
        min_pruned=float(min_pruned),
    )


_cache: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def get_ball(domain, radius: float, max_nodes: int = 10_000_000) -> GroupBall:
    """Cached ball for a developed domain, grown on demand."""
    cached = _cache.get(domain)
    if cached is not None and cached.radius >= radius:
        return cached
    ball = compute_ball(
        list(domain.generators), domain.base_point, radius, max_nodes
    )
    _cache[domain] = ball
    return ball
