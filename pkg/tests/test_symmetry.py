"""Groups, switch tables, canonical representatives, orbit statistics."""

import itertools
import pickle

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import secenum as se
from secenum.pointconfig import compose, identity_perm, inverse
from secenum.symmetry import (
    SwitchTable, act, build_switch_table, canonical_bruteforce,
    canonical_generic, canonical_rep, enumerate_elements, good_switches,
    jbound, jbound_stats, orbit, orbit_size,
)
from conftest import family, flip_walk


S4_GENS = [(1, 0, 2, 3), (1, 2, 3, 0)]


def _handmade_sym4_table():
    """The Sym(4) switch table given entry by entry in cycle notation."""
    ident = identity_perm(4)
    entries = [[ident] * 4 for _ in range(4)]
    entries[0][1] = (3, 0, 1, 2)   # (0 3 2 1)
    entries[0][2] = (2, 3, 0, 1)   # (0 2)(1 3)
    entries[0][3] = (1, 2, 3, 0)   # (0 1 2 3)
    entries[1][2] = (0, 3, 1, 2)   # (1 3 2)
    entries[1][3] = (0, 2, 3, 1)   # (1 2 3)
    entries[2][3] = (0, 1, 3, 2)   # (2 3)
    return SwitchTable(4, entries)


# --------------------------------------------------------------------------
# group closure

def test_enumerate_elements_closes_s3():
    elems = enumerate_elements(3, [(1, 0, 2), (1, 2, 0)])
    assert len(elems) == 6
    assert elems == tuple(sorted(elems))
    assert identity_perm(3) in elems


def test_enumerate_elements_rejects_non_permutation():
    with pytest.raises(se.NotAPermutation):
        enumerate_elements(3, [(0, 0, 1)])


def test_enumerate_elements_cap():
    with pytest.raises(se.GroupTooLarge):
        enumerate_elements(6, [(1, 0, 2, 3, 4, 5), (1, 2, 3, 4, 5, 0)], cap=100)


def test_permgroup_pickles_by_generators():
    group = se.PermGroup(4, S4_GENS)
    clone = pickle.loads(pickle.dumps(group))
    assert clone.elements == group.elements


def test_inv_rows_hold_inverse_images():
    group = se.PermGroup(4, S4_GENS)
    rows = group.inv_rows()
    for k, g in enumerate(group.elements):
        assert tuple(rows[k]) == inverse(g)


# --------------------------------------------------------------------------
# the action on triangulations

def test_act_is_a_group_action(moae):
    cfg, group = moae
    t = se.placing_triangulation(cfg)
    assert act(identity_perm(cfg.n), t) == t
    for g in group.elements:
        for h in group.generators:
            assert act(g, act(h, t)) == act(compose(g, h), t)


def test_act_permutes_gkz(moae):
    cfg, group = moae
    t = se.star_refine_full(cfg, se.placing_triangulation(cfg))
    for g in group.elements:
        moved = act(g, t)
        expect = [0] * cfg.n
        for p, v in enumerate(t.gkz):
            expect[g[p]] = v
        assert moved.gkz == tuple(expect)
        assert se.is_valid(cfg, moved)


def test_orbit_sizes(moae):
    cfg, group = moae
    reps = se.enumerate_bfs(cfg, group)
    sizes = sorted(orbit_size(cfg, t, group) for t in reps)
    assert sizes == [1, 2, 3, 6, 6]
    for t in reps:
        assert orbit_size(cfg, t, group) == len(orbit(cfg, t, group))


def test_orbit_size_big_entry_fallback(moae):
    cfg, group = moae
    t = se.placing_triangulation(cfg)
    scaled = se.Triangulation(cfg, t.ids, tuple(v * 2 ** 62 for v in t.gkz))
    assert orbit_size(cfg, scaled, group) == orbit_size(cfg, t, group)


# --------------------------------------------------------------------------
# switch tables

def test_handmade_sym4_table_shape():
    table = _handmade_sym4_table()
    assert table.depth == 3
    assert table.row_sizes == (4, 3, 2, 1)
    prod = 1
    for s in table.row_sizes:
        prod *= s
    assert prod == 24


def test_built_sym4_table_matches_handmade_profile():
    table = build_switch_table(se.PermGroup(4, S4_GENS))
    assert table.depth == 3
    assert table.row_sizes == (4, 3, 2, 1)


def test_entry_conditions():
    group = se.PermGroup(4, S4_GENS)
    table = build_switch_table(group)
    ident = identity_perm(4)
    for i in range(4):
        for j in range(4):
            s = table.entries[i][j]
            if s == ident:
                continue
            assert j > i
            assert all(s[k] == k for k in range(i))
            assert s[j] == i
            assert s in group.elements


@pytest.mark.parametrize("name,params,depth,sizes", [
    ("cube", (3,), 3, (8, 3, 2)),
    ("cube", (4,), 4, (16, 4, 3, 2)),
])
def test_cube_table_profiles(name, params, depth, sizes):
    _, group = family(name, params)
    table = build_switch_table(group)
    assert table.depth == depth
    assert table.row_sizes[:depth] == sizes
    assert all(s == 1 for s in table.row_sizes[depth:])
    prod = 1
    for s in table.row_sizes:
        prod *= s
    assert prod == group.order


def _stabilizer(elements, upto):
    return [g for g in elements if all(g[k] == k for k in range(upto))]


@pytest.mark.parametrize("name,params", [
    ("moae", ()), ("cube", (3,)), ("simplex_product", (2, 2)),
    ("dilated_simplex", (2, 3)),
])
def test_rows_are_transversals(name, params):
    # row i represents each coset G_[i+1] . s of the stabilizer chain once:
    # g factors as h . s with h fixing 0..i, and the factor s is unique
    _, group = family(name, params)
    table = build_switch_table(group)
    ident = identity_perm(group.n)
    for i in range(group.n):
        row = [s for s in table.entries[i] if s != ident] + [ident]
        chain = _stabilizer(group.elements, i)
        deeper = set(_stabilizer(group.elements, i + 1))
        assert len(row) * len(deeper) == len(chain)
        for g in chain:
            hits = [s for s in row if compose(g, inverse(s)) in deeper]
            assert len(hits) == 1


@pytest.mark.parametrize("name,params", [
    ("moae", ()), ("cube", (3,)), ("cube", (4,)),
])
def test_every_element_decomposes_uniquely_into_switches(name, params):
    _, group = family(name, params)
    table = build_switch_table(group)
    ident = identity_perm(group.n)
    rows = []
    for i in range(table.depth):
        rows.append([s for s in table.entries[i] if s != ident] + [ident])
    products = []
    for choice in itertools.product(*rows):
        g = ident  # row-0 switch is applied first
        for s in choice:
            g = compose(s, g)
        products.append(g)
    assert len(products) == group.order
    assert sorted(products) == list(group.elements)


# --------------------------------------------------------------------------
# good switches

def test_good_switches_picks_highest_improving_class():
    table = _handmade_sym4_table()
    out = good_switches((0, 1, 1, 0), 0, table)
    assert sorted(out) == [(2, 3, 0, 1), (3, 0, 1, 2)]


def test_good_switches_falls_back_to_own_class():
    table = _handmade_sym4_table()
    ident = identity_perm(4)
    assert good_switches((1, 0, 0, 0), 0, table) == [ident]
    out = good_switches((0, 0, 0, 0), 0, table)
    assert ident in out
    assert len(out) == 4


def test_good_switches_row_one():
    table = _handmade_sym4_table()
    out = good_switches((1, 0, 1, 0), 1, table)
    assert out == [(0, 3, 1, 2)]


# --------------------------------------------------------------------------
# canonical forms

def _subset_action(g, sub):
    return frozenset(g[x] for x in sub)


def _char(sub):
    return tuple(1 if x in sub else 0 for x in range(4))


def test_canonical_generic_subset_example():
    table = _handmade_sym4_table()
    out = canonical_generic(frozenset({1, 2}), _char, _subset_action, table)
    assert out == frozenset({0, 1})


def test_canonical_generic_agrees_with_brute_force_on_all_subsets():
    table = _handmade_sym4_table()
    elements = enumerate_elements(4, S4_GENS)
    for bits in itertools.product((0, 1), repeat=4):
        sub = frozenset(i for i in range(4) if bits[i])
        out = canonical_generic(sub, _char, _subset_action, table)
        best = max(_char(_subset_action(g, sub)) for g in elements)
        assert _char(out) == best


def test_canonical_rep_on_all_moae_triangulations(moae):
    cfg, group = moae
    table = build_switch_table(group)
    for t in se.enumerate_bfs(cfg):
        fast = canonical_rep(cfg, t, group, table)
        slow = canonical_bruteforce(cfg, t, group)
        assert fast == slow
        assert fast.gkz == slow.gkz
        # the representative is the orbit maximum under the total order
        assert all(not (fast < other) or fast == other
                   for other in orbit(cfg, t, group))


def test_canonical_rep_is_orbit_invariant_and_idempotent(moae):
    cfg, group = moae
    t = se.star_refine_full(cfg, se.placing_triangulation(cfg))
    rep = canonical_rep(cfg, t, group)
    for g in group.elements:
        assert canonical_rep(cfg, act(g, t), group) == rep
    assert canonical_rep(cfg, rep, group) == rep


@pytest.mark.parametrize("name,params", [
    ("cube", (3,)), ("simplex_product", (2, 2)), ("dilated_simplex", (2, 3)),
])
def test_canonical_rep_matches_brute_force_on_walks(name, params):
    cfg, group = family(name, params)
    table = build_switch_table(group)
    for seed in range(40):
        t = flip_walk(cfg, 6, seed)
        assert canonical_rep(cfg, t, group, table) == \
            canonical_bruteforce(cfg, t, group)


def test_trivial_group_returns_input(moae):
    cfg, _ = moae
    group = se.PermGroup(cfg.n, [])
    t = se.placing_triangulation(cfg)
    assert canonical_rep(cfg, t, group) is t
    assert canonical_bruteforce(cfg, t, group) is t


# --------------------------------------------------------------------------
# statistics

def test_jbound_is_max_gkz_multiplicity(moae):
    cfg, _ = moae
    t = se.placing_triangulation(cfg)
    assert t.gkz == (16, 16, 16, 0, 0, 0)
    assert jbound(t) == 3


def test_jbound_stats_mixed_inputs(moae):
    cfg, _ = moae
    t = se.placing_triangulation(cfg)
    hist, mean = jbound_stats([t, (1, 1, 2, 3), (4, 4, 4, 4)])
    assert hist == {2: 1, 3: 1, 4: 1}
    assert mean == 3.0
    assert jbound_stats([]) == ({}, 0.0)
