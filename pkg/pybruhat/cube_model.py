# -*- coding: utf-8 -*-
"""
The cube model of B(n,d).

Each element e of B(n,d) gives one d-face F^e_X of the n-cube [-1,1]^n for
every d-subset X of [n]; together they form the complex K(e).  Under a
totally positive projection R^n -> R^d these faces tile the projected cube,
and covers in B(n,d) swap the lower facets of one (d+1)-face for its upper
facets.  All geometry here is exact: matrices hold fractions.Fraction values
in numpy object arrays.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import FrozenSet, Tuple

import numpy as np

from pybruhat.bruhat import bottom, top
from pybruhat.combinat_core import as_label_set, ground_set, subsets
from pybruhat.errors import InputError

logger = logging.getLogger(__name__)

STAR = 0
_SIGN_TEXT = {-1: '-', STAR: '*', 1: '+'}
_TEXT_SIGN = {text: sign for sign, text in _SIGN_TEXT.items()}


@dataclass(frozen=True)
class CubeFace:
    """
    A face of [-1,1]^n, given by the fixed sign of each coordinate or STAR
    for the free coordinates.  Coordinates are numbered from 1.
    """
    signs: Tuple[int, ...]

    @property
    def n(self):
        return len(self.signs)

    @property
    def stars(self):
        return tuple(i for i, sign in enumerate(self.signs, start=1)
                     if sign == STAR)

    @property
    def dimension(self):
        return len(self.stars)

    def fixed(self, coordinate, value):
        signs = list(self.signs)
        signs[coordinate - 1] = value
        return CubeFace(tuple(signs))

    def negated(self):
        return CubeFace(tuple(-sign for sign in self.signs))

    def vertices(self):
        stars = self.stars
        for choice in product((-1, 1), repeat=len(stars)):
            point = list(self.signs)
            for coordinate, value in zip(stars, choice):
                point[coordinate - 1] = value
            yield tuple(point)

    def __str__(self):
        return ''.join(_SIGN_TEXT[sign] for sign in self.signs)

    @classmethod
    def from_string(cls, text):
        try:
            return cls(tuple(_TEXT_SIGN[char] for char in text))
        except KeyError:
            msg = f"Cube faces are written over '-', '*', '+': got '{text}'"
            raise InputError(msg)


@dataclass(frozen=True)
class FaceComplex:
    """The faces of K(e), one per d-subset, in lex order of their stars."""
    n: int
    d: int
    faces: Tuple[CubeFace, ...]

    def face_set(self):
        return frozenset(self.faces)

    def without(self, stars):
        """A copy with the face on `stars` removed (used to break tilings)."""
        stars = tuple(stars)
        return FaceComplex(self.n, self.d,
                           tuple(f for f in self.faces if f.stars != stars))


@dataclass(frozen=True)
class TilingReport:
    ok: bool
    violations: Tuple[str, ...]
    free_boundary: FrozenSet[CubeFace]


class ExactLinearMap:
    """
    A d x n matrix of exact rationals.

    Parameters
    ----------
    entries : sequence of sequences
        Rows of the matrix; every entry is converted to Fraction.
    """

    def __init__(self, entries):
        rows = [[Fraction(value) for value in row] for row in entries]
        if not rows or any(len(row) != len(rows[0]) for row in rows):
            msg = "A linear map needs a non-empty rectangular matrix"
            raise InputError(msg)
        self.entries = np.array(rows, dtype=object)

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    def column(self, j):
        """Column j, counted from 1."""
        return self.entries[:, j - 1]

    def minor(self, row_ids, col_ids):
        return exact_det(self.entries[np.ix_(list(row_ids), list(col_ids))])

    def is_totally_positive(self):
        for size in range(1, min(self.rows, self.cols) + 1):
            for row_ids in combinations(range(self.rows), size):
                for col_ids in combinations(range(self.cols), size):
                    if self.minor(row_ids, col_ids) <= 0:
                        logger.debug("Minor rows %s cols %s is not positive",
                                     row_ids, col_ids)
                        return False
        return True


def _fraction_matrix(matrix):
    return np.array([[Fraction(value) for value in row] for row in matrix],
                    dtype=object)


def exact_det(matrix):
    """Determinant of a square matrix by fraction-exact elimination."""
    m = _fraction_matrix(matrix)
    size = len(m)
    if size == 0:
        return Fraction(1)
    if m.shape != (size, size):
        msg = f"Determinant of a non-square {m.shape} matrix"
        raise InputError(msg)
    det = Fraction(1)
    for col in range(size):
        pivots = [r for r in range(col, size) if m[r, col] != 0]
        if not pivots:
            return Fraction(0)
        pivot = pivots[0]
        if pivot != col:
            m[[col, pivot]] = m[[pivot, col]]
            det = -det
        det *= m[col, col]
        for r in range(col + 1, size):
            factor = m[r, col] / m[col, col]
            if factor:
                m[r, col:] = m[r, col:] - factor * m[col, col:]
    return det


def exact_rank(vectors):
    """Rank of a list of equal-length vectors."""
    if len(vectors) == 0:
        return 0
    m = _fraction_matrix(vectors)
    rank = 0
    rows, cols = m.shape
    for col in range(cols):
        pivots = [r for r in range(rank, rows) if m[r, col] != 0]
        if not pivots:
            continue
        m[[rank, pivots[0]]] = m[[pivots[0], rank]]
        for r in range(rank + 1, rows):
            factor = m[r, col] / m[rank, col]
            if factor:
                m[r, :] = m[r, :] - factor * m[rank, :]
        rank += 1
        if rank == rows:
            break
    return rank


def solve_exact(matrix, rhs):
    """Solves the square system matrix @ x = rhs exactly."""
    m = _fraction_matrix(matrix)
    size = len(m)
    augmented = np.concatenate(
        [m, _fraction_matrix([[value] for value in rhs])], axis=1)
    for col in range(size):
        pivots = [r for r in range(col, size) if augmented[r, col] != 0]
        if not pivots:
            msg = "Singular system"
            raise InputError(msg)
        augmented[[col, pivots[0]]] = augmented[[pivots[0], col]]
        augmented[col, :] = augmented[col, :] / augmented[col, col]
        for r in range(size):
            if r != col and augmented[r, col] != 0:
                augmented[r, :] = (augmented[r, :]
                                   - augmented[r, col] * augmented[col, :])
    return tuple(augmented[:, size])


def vandermonde_map(n, d, affine=False):
    """
    The d x n matrix with entries j**i (i = 1..d, j = 1..n).

    With affine=True a row of ones is put on top, giving the affinely
    positive version used for the moment curve.
    """
    if not 1 <= d <= n:
        msg = f"Vandermonde map needs 1 <= d <= n, got n={n}, d={d}"
        raise InputError(msg)
    exponents = range(0 if affine else 1, d + 1)
    return ExactLinearMap([[j ** i for j in range(1, n + 1)]
                           for i in exponents])


def p_sign(y, label_set):
    """
    Sign attached to coordinate y by the face with stars on `label_set`:
    (-1) ** (|X| - i), where i counts the elements of X below y.

    For even |X| this is +1 below X, (-1)**i between the i-th and (i+1)-th
    element, and +1 above X.
    """
    label_set = tuple(label_set)
    if y in label_set:
        msg = f"Coordinate {y} is one of the stars {label_set}"
        raise InputError(msg)
    below = sum(1 for a in label_set if a < y)
    return (-1) ** (len(label_set) - below)


def face_of(element, label_set):
    """The face F^e_X of K(e) whose stars are X."""
    n, d = element.n, element.d
    label_set = as_label_set(label_set, ground=range(1, n + 1))
    if len(label_set) != d:
        msg = f"Face index {label_set} must have {d} elements"
        raise InputError(msg)
    signs = []
    for i in range(1, n + 1):
        if i in label_set:
            signs.append(STAR)
            continue
        generator = tuple(sorted(label_set + (i,)))
        xi = 1 if generator in element.inversions else -1
        signs.append(p_sign(i, label_set) * xi)
    return CubeFace(tuple(signs))


def face_complex(element):
    """K(e)."""
    faces = tuple(face_of(element, label_set)
                  for label_set in subsets(ground_set(element.n), element.d))
    return FaceComplex(element.n, element.d, faces)


def _facets(face, upper):
    dimension = face.dimension
    if dimension < 1:
        msg = f"Face {face} has no facets"
        raise InputError(msg)
    shift = 0 if upper else 1
    return frozenset(face.fixed(star, (-1) ** (dimension + i + shift))
                     for i, star in enumerate(face.stars, start=1))


def upper_facets(face):
    """Facets of a face that lie on top after a totally positive
    projection to one dimension below the face."""
    return _facets(face, upper=True)


def lower_facets(face):
    return _facets(face, upper=False)


def _side(facet, face, projection):
    """Sign of the determinant of the facet's projected spanning vectors and
    the projected direction from the facet into the face."""
    extra, = set(face.stars) - set(facet.stars)
    inward = -facet.signs[extra - 1]
    vectors = [projection.column(star) for star in facet.stars]
    vectors.append(inward * projection.column(extra))
    det = exact_det(vectors)
    return (det > 0) - (det < 0)


def verify_tiling(complex_, projection):
    """
    Checks that a face complex projects to a tiling.

    Every facet of every face must either be shared by exactly two faces
    lying on opposite sides of it after projection, or belong to
    K(0̂) or K(1̂) of B(n,d-1) and occur once.  Every d-subset must index
    exactly one face, and every boundary facet must be covered.

    Parameters
    ----------
    complex_ : FaceComplex
    projection : ExactLinearMap
        Totally positive, with d rows and n columns.

    Returns
    -------
    report : TilingReport

    Raises
    ------
    InputError
        If the projection has the wrong shape or is not totally positive.
    """
    n, d = complex_.n, complex_.d
    if d < 1:
        msg = "Tilings are checked for faces of dimension d >= 1"
        raise InputError(msg)
    if projection.rows != d or projection.cols != n:
        msg = (f"Projection is {projection.rows}x{projection.cols}, "
               f"expected {d}x{n}")
        raise InputError(msg)
    if not projection.is_totally_positive():
        msg = "Projection is not totally positive"
        raise InputError(msg)

    violations = []
    counts = defaultdict(int)
    for face in complex_.faces:
        counts[face.stars] += 1
    for label_set in subsets(ground_set(n), d):
        if counts[label_set] != 1:
            violations.append(f"{counts[label_set]} faces with stars "
                              f"{label_set}")
    for stars in sorted(set(counts) - set(subsets(ground_set(n), d))):
        violations.append(f"face with stars {stars} has the wrong dimension")

    incidence = defaultdict(list)
    for face in complex_.faces:
        for facet in upper_facets(face) | lower_facets(face):
            incidence[facet].append(face)

    boundary = (face_complex(bottom(n, d - 1)).face_set()
                | face_complex(top(n, d - 1)).face_set())
    free = set()
    for facet in sorted(incidence, key=str):
        owners = incidence[facet]
        if len(owners) == 1:
            free.add(facet)
            if facet not in boundary:
                violations.append(f"dangling subface {facet}")
        elif len(owners) == 2:
            if facet in boundary:
                violations.append(f"boundary subface {facet} is shared")
            elif _side(facet, owners[0], projection) \
                    == _side(facet, owners[1], projection):
                violations.append(f"faces {owners[0]} and {owners[1]} "
                                  f"overlap across {facet}")
        else:
            violations.append(f"subface {facet} is shared by "
                              f"{len(owners)} faces")
    for facet in sorted(boundary - free, key=str):
        violations.append(f"boundary subface {facet} is not covered")

    logger.debug("Tiling check of %d faces: %d violations",
                 len(complex_.faces), len(violations))
    return TilingReport(not violations, tuple(violations), frozenset(free))


def cover_face_change(low, high):
    """
    True if K(low) and K(high) differ exactly on the facets of one
    (d+1)-face, with K(low) holding its lower facets and K(high) its upper
    facets.
    """
    added = high.inversions - low.inversions
    if len(added) != 1 or not low.inversions <= high.inversions:
        return False
    stars, = added
    only_low = face_complex(low).face_set() - face_complex(high).face_set()
    only_high = face_complex(high).face_set() - face_complex(low).face_set()
    if not only_high:
        return False
    sample = next(iter(only_high))
    signs = [STAR if i in stars else sign
             for i, sign in enumerate(sample.signs, start=1)]
    big_face = CubeFace(tuple(signs))
    return (only_high == upper_facets(big_face)
            and only_low == lower_facets(big_face))


def preimage_alternates(square):
    """
    For a square totally positive map W, checks that the solution of
    W x = e_n alternates in sign and ends positive.
    """
    size = square.rows
    if square.cols != size:
        msg = "preimage_alternates needs a square map"
        raise InputError(msg)
    target = [0] * (size - 1) + [1]
    solution = solve_exact(square.entries, target)
    return all((value > 0) == ((size - j) % 2 == 0)
               for j, value in enumerate(solution, start=1))


def vertex_figure_ones(element):
    """The d-subsets X whose face F^e_X contains the vertex (1,...,1)."""
    return frozenset(face.stars for face in face_complex(element).faces
                     if -1 not in face.signs)


def maxprefix_image(face):
    images = set()
    for vertex in face.vertices():
        running = []
        for value in vertex:
            running.append(value if not running else max(running[-1], value))
        images.add(tuple(running))
    return sorted(images)


def maxprefix_preserves_dim(face):
    """True if the prefix-maximum map keeps the dimension of the face."""
    points = maxprefix_image(face)
    base = points[0]
    differences = [[a - b for a, b in zip(point, base)]
                   for point in points[1:]]
    return exact_rank(differences) == face.dimension


def prefix_simplex(face):
    """
    Vertex labels of the prefix-maximum image of a face, where the point
    whose first a-1 coordinates are -1 (and the rest +1) is labeled a.
    """
    labels = set()
    for point in maxprefix_image(face):
        leading = next((i for i, value in enumerate(point) if value == 1),
                       len(point))
        labels.add(leading + 1)
    return tuple(sorted(labels))


def link_zero_simplices(element):
    """
    Simplices on [1, n+1] read off K(e) through the prefix map applied to
    the antipodal faces; these are the simplices of the link at 0 of f(e).
    """
    simplices = set()
    for face in face_complex(element).faces:
        antipodal = face.negated()
        if maxprefix_preserves_dim(antipodal):
            simplices.add(prefix_simplex(antipodal))
    return frozenset(simplices)
