"""Permutation groups acting on points and triangulations.

Orbit canonicalization works through switch tables: entry (i, j) of the
table is a group element fixing 0..i-1 pointwise and mapping j to i (the
identity when no such element exists).  Row i is then a transversal of the
stabilizer of 0..i in the stabilizer of 0..i-1, so walking the rows while
only following switches that cannot decrease the evaluation vector reaches
a lexicographic maximum of the orbit.

The canonical representative of a triangulation is the orbit maximum under
the total order (GKZ first, characteristic tie-break); good_switches only
ever consumes the GKZ part, the tie-break enters when comparing finished
candidates.  canonical_bruteforce maximizes over every group element and
serves as the independent oracle.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .errors import GroupTooLarge, NotAPermutation
from .pointconfig import compose, identity_perm, inverse, is_permutation
from .triangulation import Triangulation

__all__ = [
    "PermGroup", "SwitchTable", "enumerate_elements", "build_switch_table",
    "good_switches", "act", "canonical_rep", "canonical_generic",
    "canonical_bruteforce", "orbit", "orbit_size", "jbound", "jbound_stats",
]

ELEMENT_CAP = 10 ** 6


def enumerate_elements(n: int, generators, cap: int = ELEMENT_CAP):
    """Closure of the generators under composition, sorted by image tuple."""
    gens = []
    for g in generators:
        g = tuple(g)
        if not is_permutation(g, n):
            raise NotAPermutation(f"{g} is not a permutation of 0..{n - 1}")
        gens.append(g)
    ident = identity_perm(n)
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = compose(g, h)
                if gh not in elements:
                    elements.add(gh)
                    nxt.append(gh)
                    if len(elements) > cap:
                        raise GroupTooLarge(f"closure exceeds {cap} elements")
        frontier = nxt
    return tuple(sorted(elements))


class PermGroup:
    """A finite permutation group given by generators; closure is explicit."""

    __slots__ = ("n", "generators", "elements", "_inv_rows")

    def __init__(self, n: int, generators=()):
        self.n = n
        self.generators = tuple(tuple(g) for g in generators)
        self.elements = enumerate_elements(n, self.generators)
        self._inv_rows = None

    def __reduce__(self):
        return (PermGroup, (self.n, self.generators))

    @property
    def order(self) -> int:
        return len(self.elements)

    def inv_rows(self):
        """|G| x n integer array whose row for g holds the images of g^-1."""
        if self._inv_rows is None:
            self._inv_rows = np.array(
                [inverse(g) for g in self.elements], dtype=np.int64
            )
        return self._inv_rows

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"PermGroup(n={self.n}, order={self.order})"


# --------------------------------------------------------------------------
# actions

def act(g, t: Triangulation) -> Triangulation:
    """Relabel a triangulation by a point permutation."""
    cfg = t.cfg
    vt = cfg.vertex_tuple
    sid = cfg.simplex_id
    ids = sorted(sid(tuple(sorted(g[v] for v in vt(s)))) for s in t.ids)
    gkz = None
    if t._gkz is not None:
        out = [0] * cfg.n
        for p, v in enumerate(t._gkz):
            out[g[p]] = v
        gkz = tuple(out)
    return Triangulation(cfg, ids, gkz)


def _permuted(z, g):
    out = [0] * len(z)
    for p, v in enumerate(z):
        out[g[p]] = v
    return tuple(out)


def orbit(cfg, t: Triangulation, group: PermGroup):
    """The set of relabelings of t under the group."""
    return {act(g, t) for g in group.elements}


def orbit_size(cfg, t: Triangulation, group: PermGroup) -> int:
    """|G| / |stabilizer|, with stabilizer candidates screened by GKZ."""
    if group.order == 1:
        return 1
    z = t.gkz
    stab = 0
    if max(abs(v) for v in z) < 2 ** 62:
        rows = group.inv_rows()
        m = np.array(z, dtype=np.int64)[rows]
        mask = (m == np.array(z, dtype=np.int64)).all(axis=1)
        candidates = [group.elements[i] for i in np.nonzero(mask)[0]]
    else:
        candidates = group.elements
    for g in candidates:
        if act(g, t).ids == t.ids:
            stab += 1
    return group.order // stab


# --------------------------------------------------------------------------
# switch tables

class SwitchTable:
    """m x m table of switches; entry (i, j) fixes 0..i-1 and sends j to i."""

    __slots__ = ("m", "entries", "depth", "row_sizes")

    def __init__(self, m: int, entries):
        self.m = m
        self.entries = tuple(tuple(row) for row in entries)
        ident = identity_perm(m)
        depth = 0
        sizes = []
        for i, row in enumerate(self.entries):
            nontrivial = sum(1 for e in row if e != ident)
            sizes.append(1 + nontrivial)
            if nontrivial:
                depth = i + 1
        self.depth = depth
        self.row_sizes = tuple(sizes)

    def __repr__(self):
        return f"SwitchTable(m={self.m}, depth={self.depth}, sizes={self.row_sizes})"


def build_switch_table(group: PermGroup) -> SwitchTable:
    """Fill each slot with the first qualifying element in sorted order."""
    n = group.n
    ident = identity_perm(n)
    entries = [[ident] * n for _ in range(n)]
    stab = list(group.elements)  # fixes 0..i-1 pointwise, maintained per row
    for i in range(n):
        for g in stab:
            j = g.index(i)  # g fixes 0..i-1, so j >= i
            if j > i and entries[i][j] is ident:
                entries[i][j] = g
        stab = [g for g in stab if g[i] == i]
        if len(stab) == 1:
            break  # chain is trivial; remaining rows stay identity
    return SwitchTable(n, entries)


def good_switches(z, i: int, table: SwitchTable):
    """Switches into position i that cannot lower the evaluation vector.

    Scans the values z_j greater than z_i in decreasing order and returns the
    nontrivial switches of the first value class that has any; otherwise the
    switches of the class of z_i itself, which always includes the identity.
    """
    row = table.entries[i]
    ident_ok = identity_perm(table.m)
    zi = z[i]
    for y in sorted({z[j] for j in range(i + 1, table.m) if z[j] > zi}, reverse=True):
        found = [row[j] for j in range(i + 1, table.m)
                 if z[j] == y and row[j] != ident_ok]
        if found:
            return found
    out = [ident_ok]
    for j in range(i + 1, table.m):
        if z[j] == zi and row[j] != ident_ok:
            out.append(row[j])
    return out


# --------------------------------------------------------------------------
# canonical forms

def canonical_generic(omega, evaluate, action, table: SwitchTable):
    """Orbit element with lexicographically maximal evaluation vector.

    evaluate maps an object to a length-m sequence compatible with the point
    action (evaluate(g . omega) is evaluate(omega) permuted by g); action
    applies a permutation to an object.
    """
    def rec(om, i):
        if i > table.depth:
            return om
        z = evaluate(om)
        best = om
        best_z = tuple(z)
        for s in good_switches(z, i, table):
            cand = rec(action(s, om), i + 1)
            cz = tuple(evaluate(cand))
            if cz > best_z:
                best = cand
                best_z = cz
        return best

    return rec(omega, 0)


def canonical_rep(cfg, t: Triangulation, group: PermGroup,
                  table: SwitchTable | None = None) -> Triangulation:
    """Orbit maximum under the total order, via the switch-table walk.

    Only the composed permutation and the permuted GKZ vector travel down the
    recursion; triangulations are materialized when GKZ ties force the
    characteristic tie-break.
    """
    if group.order == 1:
        return t
    if table is None:
        table = build_switch_table(group)
    depth = table.depth
    ident = identity_perm(group.n)
    best = {"z": None, "g": None, "ids": None}

    def consider(z, g):
        if best["z"] is None or z > best["z"]:
            best["z"] = z
            best["g"] = g
            best["ids"] = None
        elif z == best["z"]:
            ids = act(g, t).ids
            if best["ids"] is None:
                best["ids"] = act(best["g"], t).ids
            if ids < best["ids"]:  # earlier simplex present = larger
                best["g"] = g
                best["ids"] = ids

    def rec(z, g, i):
        if i > depth:
            consider(z, g)
            return
        for s in good_switches(z, i, table):
            if s is ident or s == ident:
                rec(z, g, i + 1)
            else:
                rec(_permuted(z, s), compose(s, g), i + 1)

    rec(t.gkz, ident, 0)
    g = best["g"]
    if g == ident:
        return t
    if best["ids"] is not None:
        return Triangulation(cfg, best["ids"], best["z"])
    return act(g, t)


def canonical_bruteforce(cfg, t: Triangulation, group: PermGroup) -> Triangulation:
    """Orbit maximum by scanning every group element (the oracle path)."""
    if group.order == 1:
        return t
    z = t.gkz
    if max(abs(v) for v in z) < 2 ** 62:
        rows = group.inv_rows()
        m = np.array(z, dtype=np.int64)[rows]
        # lexicographically largest permuted GKZ row
        order = np.lexsort(m.T[::-1])
        top = m[order[-1]]
        mask = (m == top).all(axis=1)
        candidates = [group.elements[i] for i in np.nonzero(mask)[0]]
    else:
        best_z = max(_permuted(z, g) for g in group.elements)
        candidates = [g for g in group.elements if _permuted(z, g) == best_z]
    best = None
    for g in candidates:
        cand = act(g, t)
        if best is None or cand.ids < best.ids:  # equal GKZ: tuple order decides
            best = cand
    return best


# --------------------------------------------------------------------------
# statistics

def jbound(t: Triangulation) -> int:
    """Largest multiplicity among the GKZ entries (branching bound)."""
    return max(Counter(t.gkz).values())


def jbound_stats(items):
    """Histogram and mean of the branching bound over triangulations."""
    hist = Counter()
    total = 0
    count = 0
    for t in items:
        j = jbound(t) if isinstance(t, Triangulation) else max(Counter(t).values())
        hist[j] += 1
        total += j
        count += 1
    mean = total / count if count else 0.0
    return dict(sorted(hist.items())), mean
