"""Point configurations with exact integer arithmetic.

A configuration is stored as an n x (d+1) integer matrix whose rows are the
points in homogeneous coordinates (affine coordinates with a trailing 1,
scaled to clear denominators).  All geometric predicates (orientation,
volume, affine dependence) are evaluated exactly over the integers or
rationals; floating point never enters.

Permutations of the points are plain tuples of images: ``p[i]`` is the image
of index ``i``.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .errors import (
    DuplicatePoint,
    KernelNotOneDimensional,
    NotAffine,
    NotAPermutation,
    NotSpanning,
    NotUnimodular,
    UnknownFamily,
)

Permutation = tuple  # tuple of images; images[i] is where point i goes


# --------------------------------------------------------------------------
# permutation helpers

def identity_perm(n: int) -> Permutation:
    return tuple(range(n))

def compose(g: Permutation, h: Permutation) -> Permutation:
    """Return g after h: (g*h)(i) = g(h(i))."""
    return tuple(g[x] for x in h)

def inverse(g: Permutation) -> Permutation:
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)

def is_permutation(images, n: int) -> bool:
    return len(images) == n and sorted(images) == list(range(n))


# --------------------------------------------------------------------------
# exact linear algebra on small matrices

def det_int(rows) -> int:
    """Determinant of a square integer matrix, fraction-free (Bareiss)."""
    a = [list(r) for r in rows]
    m = len(a)
    if m == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(m - 1):
        if a[k][k] == 0:
            for i in range(k + 1, m):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        for i in range(k + 1, m):
            row_i = a[i]
            row_k = a[k]
            aik = row_i[k]
            for j in range(k + 1, m):
                row_i[j] = (row_i[j] * pk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    return sign * a[m - 1][m - 1]


def _rref(rows):
    """Reduced row echelon form over Fraction; returns (matrix, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def matrix_rank(rows) -> int:
    return len(_rref(rows)[1])


def _normalize_integer_vector(vec):
    """Scale a rational vector to coprime integers with first nonzero positive."""
    den = math.lcm(*[f.denominator for f in vec]) if vec else 1
    ints = [int(f * den) for f in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g:
        ints = [x // g for x in ints]
    first = next((x for x in ints if x != 0), 0)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


# --------------------------------------------------------------------------
# the configuration value

class PointConfiguration:
    """Immutable homogeneous integer point matrix plus per-instance caches.

    ``ordering`` records the permutation that was applied to the raw input
    rows when the configuration was built; rows are always stored in the
    order used for comparisons and for the placing construction.
    """

    __slots__ = (
        "points", "n", "d", "ordering",
        "_comb", "_vt_by_id", "_vol_by_id", "_dep_cache", "_hull_cache",
    )

    def __init__(self, points, ordering=None):
        pts = tuple(tuple(int(x) for x in row) for row in points)
        if not pts:
            raise NotSpanning("empty configuration")
        width = len(pts[0])
        if any(len(r) != width for r in pts):
            raise NotSpanning("ragged point matrix")
        seen = {}
        for i, r in enumerate(pts):
            if r in seen:
                raise DuplicatePoint(f"points {seen[r]} and {i} coincide")
            seen[r] = i
        self.points = pts
        self.n = len(pts)
        self.d = width - 1
        if matrix_rank(pts) != self.d + 1:
            raise NotSpanning(
                f"points span a flat of dimension < {self.d}"
            )
        self.ordering = tuple(ordering) if ordering is not None else tuple(range(self.n))
        # lex-rank tables: simplices are interned as the lex rank of their
        # sorted vertex tuple, so integer id order equals tuple order
        k = self.d + 1
        self._comb = [[math.comb(m, t) for t in range(k + 2)] for m in range(self.n + 1)]
        self._vt_by_id = {}
        self._vol_by_id = {}
        self._dep_cache = {}
        self._hull_cache = None

    def __reduce__(self):
        return (PointConfiguration, (self.points, self.ordering))

    def __eq__(self, other):
        return isinstance(other, PointConfiguration) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"PointConfiguration(n={self.n}, d={self.d})"

    # --- simplex interning ------------------------------------------------

    def simplex_id(self, vt) -> int:
        """Lex rank of a sorted (d+1)-vertex tuple among all such subsets."""
        n = self.n
        k = self.d + 1
        comb = self._comb
        r = 0
        prev = -1
        for i, v in enumerate(vt):
            t = k - i
            r += comb[n - prev - 1][t] - comb[n - v][t]
            prev = v
        self._vt_by_id.setdefault(r, tuple(vt))
        return r

    def vertex_tuple(self, sid: int):
        return self._vt_by_id[sid]

    def volume_of_id(self, sid: int) -> int:
        v = self._vol_by_id.get(sid)
        if v is None:
            v = normalized_volume(self, self._vt_by_id[sid])
            self._vol_by_id[sid] = v
        return v

    def dependence(self, vts):
        """Cached affine_dependence keyed by the sorted vertex tuple."""
        c = self._dep_cache.get(vts)
        if c is None:
            c = affine_dependence(self, vts)
            self._dep_cache[vts] = c
        return c


# --------------------------------------------------------------------------
# construction

def homogenize(rows, ordering=None, homogeneous=False) -> PointConfiguration:
    """Build a configuration from affine (or already homogeneous) rows.

    Rational entries are cleared by one global dilation, which preserves the
    combinatorial structure.  ``ordering`` permutes the rows before storage;
    the applied permutation is recorded on the result.
    """
    mat = [list(r) for r in rows]
    if not mat:
        raise NotSpanning("empty configuration")
    if ordering is not None:
        if not is_permutation(tuple(ordering), len(mat)):
            raise NotSpanning("ordering is not a permutation of the rows")
        mat = [mat[i] for i in ordering]
    frac = [[Fraction(x) for x in r] for r in mat]
    if not homogeneous:
        scale = math.lcm(*[f.denominator for row in frac for f in row] or [1])
        frac = [[f * scale for f in row] + [Fraction(1)] for row in frac]
    else:
        if any(f.denominator != 1 for row in frac for f in row):
            raise NotSpanning("homogeneous input must be integral")
    return PointConfiguration(
        [[int(f) for f in row] for row in frac],
        ordering=ordering,
    )


def reorder(cfg: PointConfiguration, ordering) -> PointConfiguration:
    """New configuration with rows permuted: row i of the result is row ordering[i]."""
    ordering = tuple(ordering)
    if not is_permutation(ordering, cfg.n):
        raise NotSpanning("ordering is not a permutation of the rows")
    return PointConfiguration([cfg.points[i] for i in ordering], ordering=ordering)


def relabel_generator(gen: Permutation, ordering) -> Permutation:
    """Conjugate a point permutation by a row reordering.

    If new index i holds old point ordering[i], the generator g on old labels
    becomes ordering^-1 * g * ordering on new labels.
    """
    inv = inverse(tuple(ordering))
    return tuple(inv[gen[ordering[i]]] for i in range(len(gen)))


# --------------------------------------------------------------------------
# predicates

def orientation(cfg: PointConfiguration, simplex) -> int:
    """Sign of the determinant of the homogeneous rows of d+1 points."""
    pts = cfg.points
    d = det_int([pts[i] for i in simplex])
    return (d > 0) - (d < 0)


def normalized_volume(cfg: PointConfiguration, simplex) -> int:
    """Euclidean volume times d! of the simplex on the given d+1 points."""
    pts = cfg.points
    return abs(det_int([pts[i] for i in simplex]))


def affine_dependence(cfg: PointConfiguration, idxs):
    """The unique (up to scale) affine dependence on the given points.

    Returns coprime integers c with sum_i c[i] * point[idxs[i]] = 0 in
    homogeneous coordinates, sign-normalized so the first nonzero entry is
    positive.  Raises KernelNotOneDimensional unless the kernel is a line.
    """
    rows = [cfg.points[i] for i in idxs]
    k = len(rows)
    # kernel of the transpose: coefficient vectors c with c . rows = 0
    cols = [[Fraction(rows[i][j]) for i in range(k)] for j in range(cfg.d + 1)]
    a, pivots = _rref(cols)
    free = [j for j in range(k) if j not in pivots]
    if len(free) != 1:
        raise KernelNotOneDimensional(
            f"kernel of {k} points has dimension {len(free)}"
        )
    j = free[0]
    vec = [Fraction(0)] * k
    vec[j] = Fraction(1)
    for r, pc in enumerate(pivots):
        vec[pc] = -a[r][j]
    return _normalize_integer_vector(vec)


# --------------------------------------------------------------------------
# symmetry validation

def validate_symmetry(cfg: PointConfiguration, perm) -> None:
    """Check that a point permutation is induced by a unimodular affine map.

    Solves for the affine map sending d+1 independent points to their images,
    then verifies it on every point (NotAffine otherwise) and checks that its
    determinant has absolute value 1 (NotUnimodular otherwise).
    """
    perm = tuple(perm)
    if not is_permutation(perm, cfg.n):
        raise NotAPermutation(f"{perm} is not a permutation of 0..{cfg.n - 1}")
    pts = cfg.points
    # greedy affinely independent basis
    basis = []
    for i in range(cfg.n):
        if matrix_rank([pts[j] for j in basis + [i]]) == len(basis) + 1:
            basis.append(i)
        if len(basis) == cfg.d + 1:
            break
    p = [[Fraction(x) for x in pts[i]] for i in basis]
    q = [[Fraction(x) for x in pts[perm[i]]] for i in basis]
    # solve P * A = Q for the (d+1)x(d+1) homogeneous matrix A
    aug, pivots = _rref([p[i] + q[i] for i in range(len(p))])
    amat = [row[cfg.d + 1:] for row in aug]
    for i in range(cfg.n):
        row = pts[i]
        img = pts[perm[i]]
        for j in range(cfg.d + 1):
            s = sum(Fraction(row[t]) * amat[t][j] for t in range(cfg.d + 1))
            if s != img[j]:
                raise NotAffine(
                    f"no affine map realizes the permutation (fails at point {i})"
                )
    dets = _det_fraction(amat)
    if abs(dets) != 1:
        raise NotUnimodular(f"affine map has determinant {dets}")


def _det_fraction(rows):
    a = [list(r) for r in rows]
    m = len(a)
    sign = 1
    res = Fraction(1)
    for k in range(m):
        pr = next((i for i in range(k, m) if a[i][k] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != k:
            a[k], a[pr] = a[pr], a[k]
            sign = -sign
        pv = a[k][k]
        res *= pv
        for i in range(k + 1, m):
            if a[i][k]:
                f = a[i][k] / pv
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return res * sign


# --------------------------------------------------------------------------
# built-in families

def generate_family(name: str, params=()):
    """Named configuration plus symmetry generators: (cfg, generators).

    cube(d)               vertices of [0,1]^d, full hyperoctahedral symmetry
    simplex_product(p,q)  vertex set of a product of two simplices
    dilated_simplex(k,d)  lattice points of the k-fold standard simplex
    moae                  "mother of all examples": triangle in a triangle
    """
    params = tuple(int(x) for x in params)
    if name == "cube":
        (d,) = params
        rows = [list(bits) for bits in itertools.product((0, 1), repeat=d)]
        # Number the origin first and its d neighbors next: the point
        # stabilizer chain then shrinks at every step, keeping switch
        # tables shallow (depth d for the full automorphism group).
        units = sorted((r for r in rows if sum(r) == 1), reverse=True)
        rows = [[0] * d] + units + [r for r in rows if sum(r) > 1]
        gens = []
        for a in range(d - 1):  # swap coordinates a and a+1
            gens.append(_coordinate_map_perm(rows, lambda x, a=a: _swapped(x, a, a + 1)))
        gens.append(_coordinate_map_perm(rows, lambda x: [1 - x[0]] + list(x[1:])))
    elif name == "simplex_product":
        p, q = params
        rows = []
        for i in range(p + 1):
            for j in range(q + 1):
                row = [0] * (p + q)
                if i > 0:
                    row[i - 1] = 1
                if j > 0:
                    row[p + j - 1] = 1
                rows.append(row)
        idx = lambda i, j: i * (q + 1) + j
        gens = []
        for sigma in _symmetric_group_generators(p + 1):
            gens.append(tuple(idx(sigma[i], j) for i in range(p + 1) for j in range(q + 1)))
        for tau in _symmetric_group_generators(q + 1):
            gens.append(tuple(idx(i, tau[j]) for i in range(p + 1) for j in range(q + 1)))
    elif name == "dilated_simplex":
        k, d = params
        rows = [list(x) for x in itertools.product(range(k + 1), repeat=d)
                if sum(x) <= k]
        rows.sort()
        gens = []
        # Sym(d+1) on barycentric coordinates (k - sum(x), x_1, ..., x_d)
        for a in range(d):
            if a == 0:
                f = lambda x, k=k: [k - sum(x)] + list(x[1:])  # swap x0 <-> x1
            else:
                f = lambda x, a=a: _swapped(x, a - 1, a)  # swap x_a <-> x_{a+1}
            gens.append(_coordinate_map_perm(rows, f))
    elif name == "moae":
        rows = [[0, 0], [4, 0], [0, 4], [1, 1], [2, 1], [1, 2]]
        gens = [
            _coordinate_map_perm(rows, lambda x: [4 - x[0] - x[1], x[0]]),  # rotation
            _coordinate_map_perm(rows, lambda x: [x[1], x[0]]),             # reflection
        ]
    else:
        raise UnknownFamily(name)
    cfg = homogenize(rows)
    for g in gens:
        validate_symmetry(cfg, g)
    return cfg, [tuple(g) for g in gens]


def _swapped(x, a, b):
    y = list(x)
    y[a], y[b] = y[b], y[a]
    return y


def _coordinate_map_perm(rows, f) -> Permutation:
    index = {tuple(r): i for i, r in enumerate(rows)}
    images = []
    for r in rows:
        img = tuple(f(r))
        if img not in index:
            raise NotAffine(f"coordinate map leaves the configuration: {r} -> {img}")
        images.append(index[img])
    return tuple(images)


def _symmetric_group_generators(m: int):
    """Transposition (0 1) and the m-cycle, as image tuples (m >= 1)."""
    if m == 1:
        return [(0,)]
    swap = tuple([1, 0] + list(range(2, m)))
    cycle = tuple(list(range(1, m)) + [0])
    return [swap, cycle]
