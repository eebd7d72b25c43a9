"""Budgeted master-worker enumeration engine.

Work units are unvisited search-tree nodes with their depth.  The master
seeds the queue with the root, hands units to workers together with the
current budget, and collects per-unit results: node counts, statistics,
and the unexplored subtree roots the budget cut off.  Workers share the
immutable configuration, group and switch table but nothing mutable; the
pending queue and the output sink are the only synchronization points, so
every count is a sum over completed units and independent of scheduling.

Each worker owns three small LRU caches (flips, canonical representatives,
regularity verdicts); they are pure accelerators, results never depend on
their capacity.

Checkpoints are line-oriented text: magic, input digest, mode flags, the
counters so far, then one pending unit per line.  Only completed units
contribute to the counters, so restoring a checkpoint and finishing the
pending units reproduces the uninterrupted totals exactly.
"""

from __future__ import annotations

import hashlib
import os
import time
from collections import OrderedDict
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field

import multiprocessing

from .errors import DigestMismatch, MalformedCheckpoint
from .search import (
    Node, SearchMode, WorkUnit, find_root, passes_output, reverse_search,
)
from .regularity import is_regular
from .symmetry import build_switch_table, canonical_rep, orbit_size
from .triangulation import (
    Triangulation, dump_triangulation, find_flips, parse_triangulation,
)

__all__ = [
    "LRUCache", "CacheConfig", "CacheSet", "cached", "BudgetConfig",
    "dynamic_budget", "WorkUnit", "Report", "CheckpointState",
    "checkpoint_write", "checkpoint_restore", "input_digest", "run",
]


# --------------------------------------------------------------------------
# caches

class LRUCache:
    """Least-recently-used map; capacity 0 disables caching."""

    __slots__ = ("capacity", "data", "hits", "misses")

    def __init__(self, capacity: int):
        self.capacity = int(capacity)
        self.data = OrderedDict()
        self.hits = 0
        self.misses = 0

    def get(self, key, default=None):
        if self.capacity <= 0:
            return default
        try:
            self.data.move_to_end(key)
        except KeyError:
            return default
        return self.data[key]

    def put(self, key, value):
        if self.capacity <= 0:
            return
        self.data[key] = value
        self.data.move_to_end(key)
        while len(self.data) > self.capacity:
            self.data.popitem(last=False)

    def __len__(self):
        return len(self.data)


_MISS = object()


def cached(op, key, cache: LRUCache | None):
    """Memoize op(key) through an LRU cache; None or capacity 0 recomputes."""
    if cache is not None and cache.capacity > 0:
        hit = cache.get(key, _MISS)
        if hit is not _MISS:
            cache.hits += 1
            return hit
        cache.misses += 1
    value = op(key)
    if cache is not None:
        cache.put(key, value)
    return value


@dataclass(frozen=True)
class CacheConfig:
    flips: int = 2000
    orbits: int = 2000
    regular: int = 2000
    debug: bool = False  # cross-validate every hit against recomputation


class CacheSet:
    """Per-worker caches bound to one configuration and group context."""

    __slots__ = ("cfg", "mode", "flip_cache", "orbit_cache",
                 "regularity_cache", "debug")

    def __init__(self, cfg, mode: SearchMode, config: CacheConfig | None = None):
        config = config or CacheConfig()
        self.cfg = cfg
        self.mode = mode
        self.flip_cache = LRUCache(config.flips)
        self.orbit_cache = LRUCache(config.orbits)
        self.regularity_cache = LRUCache(config.regular)
        self.debug = config.debug

    def flips(self, t: Triangulation):
        value = cached(lambda x: find_flips(self.cfg, x), t, self.flip_cache)
        if self.debug:
            assert value == find_flips(self.cfg, t)
        return value

    def canonical(self, t: Triangulation) -> Triangulation:
        mode = self.mode
        if not mode.symmetric or mode.group.order == 1:
            return t
        value = cached(
            lambda x: canonical_rep(self.cfg, x, mode.group, mode.table),
            t, self.orbit_cache,
        )
        if self.debug:
            assert value.ids == canonical_rep(
                self.cfg, t, mode.group, mode.table).ids
        return value

    def regular(self, t: Triangulation) -> bool:
        value = cached(lambda x: is_regular(self.cfg, x), t,
                       self.regularity_cache)
        if self.debug:
            assert value == is_regular(self.cfg, t)
        return value


# --------------------------------------------------------------------------
# budget policy

@dataclass(frozen=True)
class BudgetConfig:
    small: int | None = 50
    large: int | None = 5000  # None = unlimited


def dynamic_budget(pending_size: int, workers: int,
                   config: BudgetConfig) -> int | None:
    """Small budgets while the queue is starved, large ones once it is fed."""
    if workers <= 1:
        return config.large
    if pending_size < 2 * workers:
        return config.small
    return config.large


# --------------------------------------------------------------------------
# reports and checkpoints

@dataclass
class Report:
    orbit_count: int = 0
    regular_count: int | None = None
    total_triangulations: int | None = None
    observed_max_degree: int = 0
    max_simplices_seen: int = 0
    wall_time: float = 0.0
    worker_counts: dict = field(default_factory=dict)
    complete: bool = True


@dataclass
class CheckpointState:
    digest: str
    mode_flags: dict
    counters: dict
    units: list  # (depth, triangulation encoding) pairs


def input_digest(cfg, group) -> str:
    """Hex digest of the configuration rows and the group elements."""
    h = hashlib.sha256()
    h.update(b"points\n")
    for row in cfg.points:
        h.update((",".join(map(str, row)) + "\n").encode())
    h.update(b"elements\n")
    elements = group.elements if group is not None else ()
    for g in elements:
        h.update((",".join(map(str, g)) + "\n").encode())
    return h.hexdigest()


_MAGIC = "secenum-checkpoint v1"


def checkpoint_write(state: CheckpointState, path: str):
    lines = [_MAGIC, state.digest]
    mf = state.mode_flags
    lines.append(
        "mode regular=%d full=%d symmetric=%d"
        % (int(mf.get("regular", 0)), int(mf.get("full", 0)),
           int(mf.get("symmetric", 0)))
    )
    parts = ["visited=%d" % state.counters.get("visited", 0)]
    for key in ("regular", "total", "maxdeg", "maxsimp"):
        value = state.counters.get(key)
        if value is not None:
            parts.append("%s=%d" % (key, value))
    lines.append(" ".join(parts))
    for depth, enc in state.units:
        lines.append("depth=%d T=%s" % (depth, enc))
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def checkpoint_restore(path: str) -> CheckpointState:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or lines[0] != _MAGIC:
        raise MalformedCheckpoint(f"missing '{_MAGIC}' header")
    if len(lines) < 4:
        raise MalformedCheckpoint("truncated checkpoint")
    digest = lines[1].strip()
    if not digest or any(c not in "0123456789abcdef" for c in digest):
        raise MalformedCheckpoint("bad digest line")
    if not lines[2].startswith("mode "):
        raise MalformedCheckpoint("missing mode line")
    mode_flags = {}
    for tok in lines[2].split()[1:]:
        key, _, value = tok.partition("=")
        if value not in ("0", "1"):
            raise MalformedCheckpoint(f"bad mode flag {tok!r}")
        mode_flags[key] = bool(int(value))
    if not lines[3].startswith("visited="):
        raise MalformedCheckpoint("missing counters line")
    counters = {}
    for tok in lines[3].split():
        key, _, value = tok.partition("=")
        try:
            counters[key] = int(value)
        except ValueError:
            raise MalformedCheckpoint(f"bad counter {tok!r}") from None
    units = []
    for ln in lines[4:]:
        if not ln.strip():
            continue
        if not ln.startswith("depth="):
            raise MalformedCheckpoint(f"bad unit line {ln!r}")
        head, _, enc = ln.partition(" T=")
        try:
            depth = int(head[len("depth="):])
        except ValueError:
            raise MalformedCheckpoint(f"bad unit depth in {ln!r}") from None
        if not enc:
            raise MalformedCheckpoint(f"missing triangulation in {ln!r}")
        units.append((depth, enc))
    return CheckpointState(digest=digest, mode_flags=mode_flags,
                           counters=counters, units=units)


# --------------------------------------------------------------------------
# unit execution (shared by the in-process path and pool workers)

class _UnitOptions:
    __slots__ = ("count_regular", "collect_stats", "want_nodes", "want_edges")

    def __init__(self, count_regular, collect_stats, want_nodes, want_edges):
        self.count_regular = count_regular
        self.collect_stats = collect_stats
        self.want_nodes = want_nodes
        self.want_edges = want_edges


def _execute_unit(cfg, mode, caches, opts, ids, depth, budget):
    node = Node(Triangulation(cfg, ids))
    stats = {
        "visited": 0, "regular": 0, "total": 0, "maxdeg": 0, "maxsimp": 0,
    }
    nodes = [] if opts.want_nodes else None
    edges = [] if opts.want_edges else None

    def visitor(nd, dp):
        rep = nd.rep
        if not passes_output(rep, mode):
            return  # tree node outside the enumerated set (full mode)
        stats["visited"] += 1
        stats["maxdeg"] = max(stats["maxdeg"], len(caches.flips(rep)))
        stats["maxsimp"] = max(stats["maxsimp"], len(rep.ids))
        if opts.count_regular and caches.regular(rep):
            stats["regular"] += 1
        if opts.collect_stats:
            if mode.symmetric and mode.group.order > 1:
                stats["total"] += orbit_size(cfg, rep, mode.group)
            else:
                stats["total"] += 1
        if nodes is not None:
            nodes.append(rep.ids)

    def edge_visitor(parent, child):
        edges.append((parent.rep.ids, child.rep.ids))

    visited, unexplored = reverse_search(
        (node, depth), mode, budget=budget, visitor=visitor, caches=caches,
        edge_visitor=edge_visitor if opts.want_edges else None,
    )
    units = [(u.node.rep.ids, u.depth) for u in unexplored]
    return visited, units, stats, nodes, edges


_WCTX = None


def _init_worker(cfg, group, flags, cache_config, opt_tuple):
    global _WCTX
    regular_only, full_only, symmetric = flags
    table = None
    if symmetric and group is not None and group.order > 1:
        table = build_switch_table(group)
    mode = SearchMode(regular_only, full_only, symmetric,
                      group=group if symmetric else None, table=table)
    caches = CacheSet(cfg, mode, cache_config)
    _WCTX = (cfg, mode, caches, _UnitOptions(*opt_tuple))


def _worker_task(payload):
    ids, depth, budget = payload
    cfg, mode, caches, opts = _WCTX
    visited, units, stats, nodes, edges = _execute_unit(
        cfg, mode, caches, opts, ids, depth, budget)
    return os.getpid(), visited, units, stats, nodes, edges


# --------------------------------------------------------------------------
# the master loop

def run(cfg, group, mode, workers=1, budget_config=None, cache_config=None,
        sink=None, *, checkpoint_path=None, restore=None,
        stop_after_units=None, count_regular=None, collect_stats=False,
        edge_sink=None) -> Report:
    """Enumerate the orbit tree and aggregate counts across workers.

    The visited set, all counts and all statistics are independent of the
    worker count, the budget sizes and the cache capacities; only the wall
    time and the emission order vary.
    """
    start = time.monotonic()
    budget_config = budget_config or BudgetConfig()
    cache_config = cache_config or CacheConfig()
    if not isinstance(mode, SearchMode):
        raise TypeError("mode must be a SearchMode")
    if mode.symmetric and mode.group is None:
        mode = SearchMode(mode.regular_only, mode.full_only, True, group=group)
    if count_regular is None:
        count_regular = not mode.regular_only
    opts = _UnitOptions(
        count_regular=count_regular and not mode.regular_only,
        collect_stats=collect_stats,
        want_nodes=sink is not None,
        want_edges=edge_sink is not None,
    )
    digest = input_digest(cfg, group)
    flags = (mode.regular_only, mode.full_only, mode.symmetric)

    counters = {"visited": 0, "regular": 0 if count_regular else None,
                "total": 0 if collect_stats else None,
                "maxdeg": 0, "maxsimp": 0}
    pending = []
    if restore is not None:
        if restore.digest != digest:
            raise DigestMismatch(
                "checkpoint was written for a different input")
        want = {"regular": mode.regular_only, "full": mode.full_only,
                "symmetric": mode.symmetric}
        if restore.mode_flags != want:
            raise DigestMismatch(
                f"checkpoint mode {restore.mode_flags} differs from {want}")
        counters["visited"] = restore.counters.get("visited", 0)
        counters["maxdeg"] = restore.counters.get("maxdeg", 0)
        counters["maxsimp"] = restore.counters.get("maxsimp", 0)
        if count_regular:
            counters["regular"] = restore.counters.get("regular", 0)
        if collect_stats:
            counters["total"] = restore.counters.get("total", 0)
        for depth, enc in restore.units:
            pending.append((parse_triangulation(cfg, enc).ids, depth))
    else:
        master_caches = CacheSet(cfg, mode, cache_config)
        root = find_root(cfg, mode, master_caches)
        pending.append((root.rep.ids, 0))

    worker_counts = {}
    completed_units = 0
    stopping = False

    def apply_result(pid, visited, units, stats, nodes, edges):
        nonlocal completed_units
        counters["visited"] += stats["visited"]
        if count_regular:
            counters["regular"] += stats["regular"]
        if collect_stats:
            counters["total"] += stats["total"]
        counters["maxdeg"] = max(counters["maxdeg"], stats["maxdeg"])
        counters["maxsimp"] = max(counters["maxsimp"], stats["maxsimp"])
        worker_counts[pid] = worker_counts.get(pid, 0) + visited
        pending.extend(units)
        if nodes is not None and sink is not None:
            for ids in nodes:
                sink(Triangulation(cfg, ids))
        if edges is not None and edge_sink is not None:
            for pids, cids in edges:
                edge_sink(Triangulation(cfg, pids), Triangulation(cfg, cids))
        completed_units += 1

    def snapshot(extra_units=()):
        units = [(d, dump_triangulation(Triangulation(cfg, ids)))
                 for ids, d in list(extra_units) + pending]
        return CheckpointState(
            digest=digest,
            mode_flags={"regular": mode.regular_only, "full": mode.full_only,
                        "symmetric": mode.symmetric},
            counters=dict(counters),
            units=units,
        )

    if workers <= 1:
        caches = CacheSet(cfg, mode, cache_config)
        while pending:
            if stop_after_units is not None and completed_units >= stop_after_units:
                stopping = True
                break
            budget = dynamic_budget(len(pending), 1, budget_config)
            ids, depth = pending.pop()
            result = _execute_unit(cfg, mode, caches, opts, ids, depth, budget)
            apply_result(0, *result)
            if checkpoint_path:
                checkpoint_write(snapshot(), checkpoint_path)
    else:
        ctx = multiprocessing.get_context("fork")
        opt_tuple = (opts.count_regular, opts.collect_stats,
                     opts.want_nodes, opts.want_edges)
        with ProcessPoolExecutor(
            max_workers=workers, mp_context=ctx, initializer=_init_worker,
            initargs=(cfg, group if mode.symmetric else None, flags,
                      cache_config, opt_tuple),
        ) as pool:
            inflight = {}
            try:
                while pending or inflight:
                    while (pending and len(inflight) < workers
                           and not stopping):
                        budget = dynamic_budget(
                            len(pending), workers, budget_config)
                        ids, depth = pending.pop()
                        fut = pool.submit(_worker_task, (ids, depth, budget))
                        inflight[fut] = (ids, depth)
                    if not inflight:
                        break
                    done, _ = wait(inflight, return_when=FIRST_COMPLETED)
                    for fut in done:
                        apply_result(*fut.result())  # on error the unit stays
                        inflight.pop(fut)            # in the emergency snapshot
                        if (stop_after_units is not None
                                and completed_units >= stop_after_units):
                            stopping = True
                    if checkpoint_path:
                        checkpoint_write(snapshot(inflight.values()),
                                         checkpoint_path)
            except Exception:
                if checkpoint_path:
                    checkpoint_write(snapshot(inflight.values()),
                                     checkpoint_path)
                raise

    if stopping and checkpoint_path:
        checkpoint_write(snapshot(), checkpoint_path)

    regular_count = counters["regular"]
    if mode.regular_only and count_regular:
        regular_count = counters["visited"]
    return Report(
        orbit_count=counters["visited"],
        regular_count=regular_count,
        total_triangulations=counters["total"],
        observed_max_degree=counters["maxdeg"],
        max_simplices_seen=counters["maxsimp"],
        wall_time=time.monotonic() - start,
        worker_counts=dict(worker_counts),
        complete=not stopping or not pending,
    )
