"""Triangulations of a point configuration and bistellar flips.

A triangulation is stored as a sorted tuple of simplex ids, where the id of a
simplex is the lexicographic rank of its sorted vertex tuple among all
(d+1)-subsets of the points.  Integer id order therefore coincides with
lexicographic order on vertex tuples, which is the order used for the
tie-break in the total order on triangulations.

The total order compares GKZ vectors lexicographically in point order and
breaks ties on characteristic vectors over the simplex order: at the first
simplex where membership differs, the triangulation containing it is larger.
"""

from __future__ import annotations

from collections import deque
from functools import cmp_to_key

from .errors import FlipNotApplicable, InvalidTriangulation
from .pointconfig import PointConfiguration, orientation

__all__ = [
    "Triangulation", "Flip", "make_triangulation", "placing_triangulation",
    "hull_volume", "is_valid", "interior_ridges", "find_flips", "apply_flip",
    "gkz_vector", "compare_total", "vertices_used", "is_full", "is_unimodular",
    "enumerate_bfs", "star_refine_full", "dump_triangulation",
    "parse_triangulation",
]


class Triangulation:
    """Immutable set of maximal simplices, identified by interned ids."""

    __slots__ = ("cfg", "ids", "_gkz", "_hash")

    def __init__(self, cfg: PointConfiguration, ids, gkz=None):
        self.cfg = cfg
        self.ids = tuple(ids)
        self._gkz = gkz
        self._hash = hash(self.ids)

    @property
    def simplices(self):
        """Vertex tuples, sorted lexicographically."""
        vt = self.cfg.vertex_tuple
        return tuple(vt(s) for s in self.ids)

    @property
    def gkz(self):
        if self._gkz is None:
            cfg = self.cfg
            z = [0] * cfg.n
            for sid in self.ids:
                v = cfg.volume_of_id(sid)
                for p in cfg.vertex_tuple(sid):
                    z[p] += v
            self._gkz = tuple(z)
        return self._gkz

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.ids == other.ids

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.ids)

    def __lt__(self, other):
        return compare_total(self.cfg, self, other) < 0

    def __repr__(self):
        inner = ",".join("{" + ",".join(map(str, s)) + "}" for s in self.simplices)
        return "{" + inner + "}"


class Flip:
    """A bistellar exchange: removed and added simplices plus its circuit."""

    __slots__ = ("cfg", "removed", "added", "circuit")

    def __init__(self, cfg, removed, added, circuit):
        self.cfg = cfg
        self.removed = tuple(sorted(removed))  # simplex ids
        self.added = tuple(sorted(added))
        self.circuit = circuit  # (positive part, negative part) as vertex tuples

    def removed_simplices(self):
        return tuple(self.cfg.vertex_tuple(s) for s in self.removed)

    def added_simplices(self):
        return tuple(self.cfg.vertex_tuple(s) for s in self.added)

    def __eq__(self, other):
        return (isinstance(other, Flip)
                and self.removed == other.removed and self.added == other.added)

    def __hash__(self):
        return hash((self.removed, self.added))

    def __repr__(self):
        return f"Flip(removed={self.removed_simplices()}, added={self.added_simplices()})"


def make_triangulation(cfg: PointConfiguration, simplices) -> Triangulation:
    """Build a triangulation value from an iterable of vertex collections."""
    ids = []
    for s in simplices:
        vt = tuple(sorted(s))
        if len(vt) != cfg.d + 1 or len(set(vt)) != len(vt):
            raise InvalidTriangulation(f"{s} is not a set of d+1 = {cfg.d + 1} vertices")
        if vt[0] < 0 or vt[-1] >= cfg.n:
            raise InvalidTriangulation(f"{s} has out-of-range vertices")
        ids.append(cfg.simplex_id(vt))
    ids = sorted(set(ids))
    if not ids:
        raise InvalidTriangulation("no simplices")
    return Triangulation(cfg, ids)


# --------------------------------------------------------------------------
# placing construction (incremental hull, points inserted in row order)

def placing_triangulation(cfg: PointConfiguration) -> Triangulation:
    """Triangulation obtained by placing the points one by one in row order.

    The first affinely independent d+1 points form the initial simplex; every
    later point lying outside the current hull is coned over the facets it
    sees.  Points inside (or on) the hull are skipped, so the result need not
    use all points.
    """
    from .pointconfig import matrix_rank

    pts = cfg.points
    basis = []
    for i in range(cfg.n):
        if matrix_rank([pts[j] for j in basis + [i]]) == len(basis) + 1:
            basis.append(i)
        if len(basis) == cfg.d + 1:
            break
    simplices = [tuple(sorted(basis))]
    rest = [i for i in range(cfg.n) if i not in basis]
    for p in rest:
        facets = {}
        for s in simplices:
            for k in range(len(s)):
                f = s[:k] + s[k + 1:]
                facets.setdefault(f, []).append(s[k])
        new = []
        for f, apexes in facets.items():
            if len(apexes) != 1:
                continue
            sp = orientation(cfg, f + (p,))
            if sp != 0 and sp == -orientation(cfg, f + (apexes[0],)):
                new.append(tuple(sorted(f + (p,))))
        simplices.extend(new)
    return make_triangulation(cfg, simplices)


def hull_volume(cfg: PointConfiguration) -> int:
    """Normalized volume of the convex hull (cached on the configuration)."""
    if cfg._hull_cache is None:
        t = placing_triangulation(cfg)
        cfg._hull_cache = sum(cfg.volume_of_id(s) for s in t.ids)
    return cfg._hull_cache


# --------------------------------------------------------------------------
# validity and faces

def is_valid(cfg: PointConfiguration, t: Triangulation) -> bool:
    """Full correctness check: spanning simplices that tile the hull properly."""
    if not t.ids:
        return False
    for sid in t.ids:
        if cfg.volume_of_id(sid) == 0:
            return False
    total = 0
    ridge_map = {}
    for sid in t.ids:
        total += cfg.volume_of_id(sid)
        s = cfg.vertex_tuple(sid)
        for k in range(len(s)):
            ridge_map.setdefault(s[:k] + s[k + 1:], []).append(s[k])
    for ridge, apexes in ridge_map.items():
        if len(apexes) > 2:
            return False
        if len(apexes) == 2:
            a, b = apexes
            if orientation(cfg, ridge + (a,)) != -orientation(cfg, ridge + (b,)):
                return False
    return total == hull_volume(cfg)


def interior_ridges(cfg: PointConfiguration, t: Triangulation):
    """(ridge, left simplex, right simplex) for every ridge shared by two simplices."""
    out = []
    for ridge, pair in _ridge_pairs(cfg, t):
        sa, sb = pair
        out.append((ridge, cfg.vertex_tuple(sa), cfg.vertex_tuple(sb)))
    return out


def _ridge_pairs(cfg, t):
    ridge_map = {}
    for sid in t.ids:
        s = cfg.vertex_tuple(sid)
        for k in range(len(s)):
            ridge_map.setdefault(s[:k] + s[k + 1:], []).append(sid)
    return [(r, ids) for r, ids in ridge_map.items() if len(ids) == 2]


def vertices_used(cfg: PointConfiguration, t: Triangulation):
    used = set()
    for sid in t.ids:
        used.update(cfg.vertex_tuple(sid))
    return tuple(sorted(used))


def is_full(cfg: PointConfiguration, t: Triangulation) -> bool:
    return len(vertices_used(cfg, t)) == cfg.n


def is_unimodular(cfg: PointConfiguration, t: Triangulation) -> bool:
    return all(cfg.volume_of_id(s) == 1 for s in t.ids)


# --------------------------------------------------------------------------
# GKZ vectors and the total order

def gkz_vector(cfg: PointConfiguration, t: Triangulation):
    """Per point, the sum of normalized volumes of the simplices using it."""
    return t.gkz


def compare_total(cfg: PointConfiguration, t1: Triangulation, t2: Triangulation) -> int:
    """Total order: GKZ lexicographically, then the characteristic tie-break.

    Returns -1, 0 or 1.  On equal GKZ vectors, the triangulation containing
    the lexicographically first simplex on which they differ is the larger.
    """
    z1 = t1.gkz
    z2 = t2.gkz
    if z1 != z2:
        return 1 if z1 > z2 else -1
    a = t1.ids
    b = t2.ids
    if a == b:
        return 0
    for x, y in zip(a, b):
        if x != y:
            return 1 if x < y else -1
    return 1 if len(a) > len(b) else -1


# --------------------------------------------------------------------------
# flips

def find_flips(cfg: PointConfiguration, t: Triangulation):
    """All bistellar flips supported on circuits of the configuration.

    Exchange flips are discovered from interior ridges (the ridge plus its
    two apexes spans the circuit); insertion flips from unused points lying
    in the hull.  For each circuit the cells of the realized side must all be
    faces of the triangulation with one common link.
    """
    seen = set()
    flips = []
    simplex_sets = [(sid, frozenset(cfg.vertex_tuple(sid))) for sid in t.ids]

    def try_circuit(w):
        dep = cfg.dependence(w)
        plus = tuple(v for v, c in zip(w, dep) if c > 0)
        minus = tuple(v for v, c in zip(w, dep) if c < 0)
        return plus, minus

    def link_of(cell):
        cs = frozenset(cell)
        return frozenset(
            tuple(sorted(fs - cs)) for _, fs in simplex_sets if cs <= fs
        )

    def build(realized, other, circuit):
        key = (realized, other)
        if key in seen:
            return
        seen.add(key)
        zset = frozenset(realized) | frozenset(other)
        cells = [tuple(sorted(zset - {z})) for z in realized]
        link = link_of(cells[0])
        if not link:
            return
        for cell in cells[1:]:
            if link_of(cell) != link:
                return
        removed = [
            cfg.simplex_id(tuple(sorted(cell + tau)))
            for cell in cells for tau in link
        ]
        added = [
            cfg.simplex_id(tuple(sorted(tuple(zset - {z}) + tau)))
            for z in other for tau in link
        ]
        flips.append(Flip(cfg, removed, added, circuit))

    for ridge, pair in _ridge_pairs(cfg, t):
        sa, sb = pair
        a = next(v for v in cfg.vertex_tuple(sa) if v not in ridge)
        b = next(v for v in cfg.vertex_tuple(sb) if v not in ridge)
        w = tuple(sorted(ridge + (a, b)))
        plus, minus = try_circuit(w)
        if a in plus:
            realized, other = plus, minus
        else:
            realized, other = minus, plus
        if b not in realized:
            continue  # apexes must sit on one side of the circuit
        build(realized, other, (plus, minus))

    used = set(vertices_used(cfg, t))
    for p in range(cfg.n):
        if p in used:
            continue
        for sid, fs in simplex_sets:
            s = cfg.vertex_tuple(sid)
            w = tuple(sorted(s + (p,)))
            dep = cfg.dependence(w)
            cp = dep[w.index(p)]
            if cp == 0:
                continue
            support = [(v, c) for v, c in zip(w, dep) if c != 0 and v != p]
            if any(c * cp > 0 for _, c in support):
                continue  # mixed signs: p lies outside this simplex
            plus, minus = try_circuit(w)
            realized = (p,)
            other = tuple(v for v, _ in support)
            build(realized, other, (plus, minus))
            break
    flips.sort(key=lambda f: (f.removed, f.added))
    return flips


def apply_flip(cfg: PointConfiguration, t: Triangulation, flip: Flip) -> Triangulation:
    """Exchange the flip's removed simplices for its added ones."""
    ids = set(t.ids)
    if not ids.issuperset(flip.removed):
        raise FlipNotApplicable(f"{flip} does not apply")
    ids.difference_update(flip.removed)
    ids.update(flip.added)
    gkz = None
    if t._gkz is not None:
        z = list(t._gkz)
        for sid in flip.removed:
            v = cfg.volume_of_id(sid)
            for p in cfg.vertex_tuple(sid):
                z[p] -= v
        for sid in flip.added:
            v = cfg.volume_of_id(sid)
            for p in cfg.vertex_tuple(sid):
                z[p] += v
        gkz = tuple(z)
    return Triangulation(cfg, sorted(ids), gkz)


# --------------------------------------------------------------------------
# text encoding

def dump_triangulation(t: Triangulation) -> str:
    """Canonical one-line encoding: "{{i,j,...},...}" with everything sorted."""
    return "{" + ",".join(
        "{" + ",".join(map(str, s)) + "}" for s in t.simplices
    ) + "}"


def parse_triangulation(cfg: PointConfiguration, text: str) -> Triangulation:
    """Inverse of dump_triangulation; whitespace-tolerant."""
    from .errors import ParseError

    s = "".join(text.split())
    if not (s.startswith("{{") and s.endswith("}}")):
        raise ParseError(f"expected {{{{...}}}} around a simplex list, got {text!r}")
    body = s[2:-2]
    simplices = []
    for chunk in body.split("},{"):
        if not chunk:
            raise ParseError(f"empty simplex in {text!r}")
        try:
            simplices.append(tuple(int(v) for v in chunk.split(",")))
        except ValueError as exc:
            raise ParseError(f"bad vertex in {chunk!r}: {exc}") from None
    return make_triangulation(cfg, simplices)


# --------------------------------------------------------------------------
# breadth-first oracle over the flip graph

def enumerate_bfs(cfg: PointConfiguration, group=None, mode=None, max_orbits=None):
    """Orbit representatives by breadth-first closure of the flip graph.

    Starts from the placing triangulation (star-refined to a full one when
    the mode asks for full triangulations), deduplicates orbits with the
    brute-force canonical form and keeps an explicit visited set.  Intended
    as an independent oracle against the reverse-search path; quadratic
    memory in the number of orbits.
    """
    from .symmetry import PermGroup, canonical_bruteforce
    from .regularity import is_regular

    if group is None or isinstance(group, (list, tuple)):
        group = PermGroup(cfg.n, group or [])
    regular_only = bool(mode and getattr(mode, "regular_only", False))
    full_only = bool(mode and getattr(mode, "full_only", False))

    t0 = placing_triangulation(cfg)
    if full_only:
        t0 = _full_seed(cfg, t0, need_regular=regular_only)

    regmemo = {}

    def rep_ok(rep):
        if not regular_only:
            return True
        r = regmemo.get(rep.ids)
        if r is None:
            r = is_regular(cfg, rep)
            regmemo[rep.ids] = r
        return r

    start = canonical_bruteforce(cfg, t0, group)
    if full_only and not is_full(cfg, t0):
        raise InvalidTriangulation("could not build a full starting triangulation")
    if not rep_ok(start):
        raise InvalidTriangulation("starting triangulation fails the mode filter")
    visited = {start.ids: start}
    queue = deque([start])
    canon_memo = {}
    while queue:
        node = queue.popleft()
        for flip in find_flips(cfg, node):
            target = apply_flip(cfg, node, flip)
            if full_only and not is_full(cfg, target):
                continue
            rep = canon_memo.get(target.ids)
            if rep is None:
                rep = canonical_bruteforce(cfg, target, group)
                if len(canon_memo) < 200_000:
                    canon_memo[target.ids] = rep
            if rep.ids in visited:
                continue
            if not rep_ok(rep):
                continue
            visited[rep.ids] = rep
            queue.append(rep)
            if max_orbits is not None and len(visited) > max_orbits:
                raise InvalidTriangulation(f"more than {max_orbits} orbits")
    out = list(visited.values())
    out.sort(key=cmp_to_key(lambda a, b: compare_total(cfg, a, b)), reverse=True)
    return out


def _full_seed(cfg: PointConfiguration, seed: Triangulation,
               need_regular: bool) -> Triangulation:
    """Star-refine a regular seed into a full one, retrying rotated
    insertion orders if a refinement comes out irregular."""
    from .errors import SeedNotRegular
    from .regularity import is_regular

    base = list(range(cfg.n))
    for k in (0, 1, 2, 3):
        refined = star_refine_full(cfg, seed, base[k:] + base[:k])
        if not need_regular or is_regular(cfg, refined):
            return refined
    raise SeedNotRegular("no regular full refinement of the placing seed found")


def star_refine_full(cfg: PointConfiguration, t: Triangulation,
                     order=None) -> Triangulation:
    """Insert unused points by starring their carrier faces.

    Points are inserted in configuration order unless an explicit order is
    given.  Each insertion applies the flip whose circuit has the point as
    its singleton side, which subdivides exactly the simplices containing it.
    """
    wanted = list(order) if order is not None else list(range(cfg.n))
    while True:
        used = set(vertices_used(cfg, t))
        missing = [p for p in wanted if p not in used]
        if not missing:
            return t
        target = missing[0]
        progressed = False
        for flip in find_flips(cfg, t):
            if (target,) in flip.circuit:
                t = apply_flip(cfg, t, flip)
                progressed = True
                break
        if not progressed:
            raise InvalidTriangulation(
                f"point {target} cannot be inserted by a star subdivision"
            )
