"""Down-flip reverse search over triangulation orbits.

The searched graph has one node per orbit representative (per triangulation
when symmetry is off).  Children of a node are the canonicalized down-flip
targets, sorted descending in the total order; the predecessor function
climbs to the canonicalized maximum up-flip target.  Since representatives
are orbit maxima, a node's representative always reappears among its
predecessor's children, which makes the memoryless parent check of reverse
search sound under the group action.

Traversal follows the classic reverse-search loop: scan children in order,
descend when the parent check confirms the edge, and backtrack through the
predecessor function, resuming after the index it reports.  A budget caps
the number of nodes visited per call; on exhaustion the walk backtracks to
its starting node and reports every unentered child along the way as a new
work unit, so that the union of all units' visits is exactly the full tree.

Regularity restricts the tree itself: every non-optimal regular
triangulation has a larger regular flip neighbor (an improving edge of the
secondary polytope), so the regular subgraph has a single ascent fixpoint.
Fullness enjoys no such guarantee; the full subgraph can contain several
triangulations none of whose larger neighbors are full (the twice-dilated
tetrahedron is a counterexample), and restricting the tree to full nodes
would then silently drop whole subtrees.  Full mode therefore traverses
the unrestricted tree and filters fullness only on output, via
passes_output.
"""

from __future__ import annotations

from functools import cmp_to_key
from typing import NamedTuple

from .errors import InconsistentOracle
from .regularity import is_regular
from .symmetry import build_switch_table, canonical_rep
from .triangulation import (
    Triangulation, apply_flip, compare_total, find_flips, is_full,
    placing_triangulation,
)

__all__ = [
    "SearchMode", "Node", "WorkUnit", "down_neighbors", "predecessor",
    "find_root", "passes_output", "reverse_search",
]


class SearchMode:
    """Search restrictions plus the group context used to canonicalize."""

    __slots__ = ("regular_only", "full_only", "symmetric", "group", "table")

    def __init__(self, regular_only=False, full_only=False, symmetric=False,
                 group=None, table=None):
        self.regular_only = bool(regular_only)
        self.full_only = bool(full_only)
        self.symmetric = bool(symmetric)
        if self.symmetric and group is None:
            raise ValueError("symmetric search needs a group")
        self.group = group
        if self.symmetric and table is None and group.order > 1:
            table = build_switch_table(group)
        self.table = table

    def __repr__(self):
        return (f"SearchMode(regular_only={self.regular_only}, "
                f"full_only={self.full_only}, symmetric={self.symmetric})")


class Node:
    """A search-tree node; rep is canonical whenever the mode is symmetric."""

    __slots__ = ("rep",)

    def __init__(self, rep: Triangulation):
        self.rep = rep

    def __eq__(self, other):
        return isinstance(other, Node) and self.rep.ids == other.rep.ids

    def __hash__(self):
        return hash(self.rep.ids)

    def __repr__(self):
        return f"Node({self.rep!r})"


class WorkUnit(NamedTuple):
    node: Node
    depth: int


# --------------------------------------------------------------------------
# cache-aware primitive wrappers (caches: see engine.CacheSet; None = direct)

def _flips(t, caches):
    if caches is not None:
        return caches.flips(t)
    return find_flips(t.cfg, t)


def _canonical(t, mode, caches):
    if not mode.symmetric or mode.group.order == 1:
        return t
    if caches is not None:
        return caches.canonical(t)
    return canonical_rep(t.cfg, t, mode.group, mode.table)


def _regular(t, caches):
    if caches is not None:
        return caches.regular(t)
    return is_regular(t.cfg, t)


def _in_tree(rep, mode, caches):
    return not mode.regular_only or _regular(rep, caches)


def passes_output(rep, mode) -> bool:
    """Whether a visited node belongs to the enumerated set (full-mode gate)."""
    return not mode.full_only or is_full(rep.cfg, rep)


# --------------------------------------------------------------------------
# the two oracles

def down_neighbors(node, mode, caches=None):
    """Children candidates: canonicalized down-flip targets, sorted descending.

    The regularity filter runs on representatives because regularity is
    invariant under relabeling; this lets the regularity cache key on the
    representative each orbit shares.
    """
    rep = node.rep
    cfg = rep.cfg
    by_ids = {}
    for flip in _flips(rep, caches):
        target = apply_flip(cfg, rep, flip)
        if compare_total(cfg, target, rep) >= 0:
            continue
        trep = _canonical(target, mode, caches)
        if trep.ids not in by_ids:
            by_ids[trep.ids] = trep
    kept = [t for t in by_ids.values() if _in_tree(t, mode, caches)]
    kept.sort(key=cmp_to_key(lambda a, b: compare_total(cfg, a, b)), reverse=True)
    return [Node(t) for t in kept]


def _parent_rep(node, mode, caches=None):
    """Representative of the predecessor, or None at the root."""
    rep = node.rep
    cfg = rep.cfg
    best = None
    best_rep = None
    for flip in _flips(rep, caches):
        target = apply_flip(cfg, rep, flip)
        if compare_total(cfg, target, rep) <= 0:
            continue
        trep = None
        if mode.regular_only:
            trep = _canonical(target, mode, caches)
            if not _regular(trep, caches):
                continue
        if best is None or compare_total(cfg, target, best) > 0:
            best = target
            best_rep = trep
    if best is None:
        return None
    if best_rep is None:
        best_rep = _canonical(best, mode, caches)
    return best_rep


def predecessor(node, mode, caches=None):
    """(parent Node, index of node in the parent's children), None at the root."""
    parent_rep = _parent_rep(node, mode, caches)
    if parent_rep is None:
        return None
    parent = Node(parent_rep)
    for idx, sibling in enumerate(down_neighbors(parent, mode, caches)):
        if sibling.rep.ids == node.rep.ids:
            return parent, idx
    raise InconsistentOracle(
        f"{node!r} missing from the children of its predecessor {parent!r}"
    )


# --------------------------------------------------------------------------
# root finding

def find_root(cfg, mode, caches=None):
    """Optimal node: seed with the regular placing triangulation, ascend."""
    seed = placing_triangulation(cfg)
    node = Node(_canonical(seed, mode, caches))
    while True:
        parent = _parent_rep(node, mode, caches)
        if parent is None:
            return node
        node = Node(parent)


# --------------------------------------------------------------------------
# budgeted traversal

def reverse_search(root, mode, budget=None, visitor=None, caches=None,
                   edge_visitor=None):
    """Budgeted depth-first reverse search from a node or work unit.

    Returns (visited_count, unexplored work units).  The visitor is called
    once per visited node with (node, absolute depth); edge_visitor, when
    given, sees every confirmed tree edge (parent, child) exactly once,
    whether the child is entered or reported as a work unit.
    """
    if isinstance(root, WorkUnit):
        node, base = root.node, root.depth
    elif isinstance(root, Node):
        node, base = root, 0
    else:
        node, base = root
        if not isinstance(node, Node):
            node = Node(node)
    if budget is not None and budget < 1:
        raise ValueError("budget must be at least 1")

    visited = 1
    if visitor is not None:
        visitor(node, base)
    exhausted = budget is not None and visited >= budget
    unexplored = []
    v = node
    j = 0  # 1-based scan position within the current children list
    depth = 0
    while True:
        children = down_neighbors(v, mode, caches)
        if not exhausted:
            moved = False
            while j < len(children):
                j += 1
                w = children[j - 1]
                parent = _parent_rep(w, mode, caches)
                if parent is not None and parent.ids == v.rep.ids:
                    if edge_visitor is not None:
                        edge_visitor(v, w)
                    v = w
                    j = 0
                    depth += 1
                    visited += 1
                    if visitor is not None:
                        visitor(v, base + depth)
                    if budget is not None and visited >= budget:
                        exhausted = True
                    moved = True
                    break
            if moved:
                continue
        else:
            for w in children[j:]:
                parent = _parent_rep(w, mode, caches)
                if parent is not None and parent.ids == v.rep.ids:
                    if edge_visitor is not None:
                        edge_visitor(v, w)
                    unexplored.append(WorkUnit(w, base + depth + 1))
            j = len(children)
        if depth == 0:
            break
        v, pidx = predecessor(v, mode, caches)
        j = pidx + 1
        depth -= 1
    return visited, unexplored
