#!/usr/bin/env python3
"""Switch tables and canonical forms on the 4-cube.

Builds the 384-element symmetry group of the unit 4-cube, shows the switch
table that encodes it compactly, and walks a famous pair of non-regular
triangulations sitting in two different orbits with the same canonical GKZ
vector.
"""

import math

import secenum as se

# vertices of {0,1}^4, numbered by binary counting, so vertex 0xA = (0,1,0,1)
rows = [[(i >> k) & 1 for k in range(4)] for i in range(16)]
cfg = se.homogenize(rows)
index = {tuple(r): i for i, r in enumerate(rows)}
coordinate_maps = [
    lambda b: (b[1], b[0], b[2], b[3]),      # swap two axes
    lambda b: (b[1], b[2], b[3], b[0]),      # cycle all four axes
    lambda b: (1 - b[0], b[1], b[2], b[3]),  # mirror one axis
]
gens = [tuple(index[f(tuple(r))] for r in rows) for f in coordinate_maps]
group = se.PermGroup(cfg.n, gens)
print("group order:", group.order)

# the switch table stores one permutation per coset of the stabilizer chain;
# a handful of entries replace the full element list
table = se.build_switch_table(group)
print("switch table depth:", table.depth)
print("row sizes:", table.row_sizes[:table.depth],
      "- product", math.prod(table.row_sizes))

# a triangulation into 23 simplices, written with hex vertex labels
cells = """01278 0157D 0178D 02478 0457D 0478D 1237A 1278A 137AB 178AB
178BD 189BD 2467C 2478C 267AC 278AC 478CD 67ACE 78ABC 78BCD 7ABCE 7BCDF
7BCEF""".split()
t = se.make_triangulation(cfg, [tuple(sorted(int(c, 16) for c in w)) for w in cells])
print("\ntriangulation of the 4-cube into", len(t.simplices), "cells")
print("GKZ:", t.gkz)
print("regular?", se.is_regular(cfg, t))

# one of its flips replaces four cells by four others; the result is again
# non-regular, and lies in a different orbit with the same canonical GKZ
flips = se.find_flips(cfg, t)
print("flips available:", len(flips))


def hexcells(words):
    return {tuple(sorted(int(c, 16) for c in w)) for w in words}


f = next(f for f in flips
         if set(f.removed_simplices()) == hexcells(("2467C", "2478C",
                                                    "267AC", "278AC"))
         and set(f.added_simplices()) == hexcells(("2467A", "478AC",
                                                   "467AC", "2478A")))
t2 = se.apply_flip(cfg, t, f)
print("after flip, GKZ:", t2.gkz)
print("regular?", se.is_regular(cfg, t2))

rep1 = se.canonical_rep(cfg, t, group, table)
rep2 = se.canonical_rep(cfg, t2, group, table)
print("\ncanonical GKZ of both orbits:", rep1.gkz)
print("they agree:", rep1.gkz == rep2.gkz)
print("same orbit?", rep1 == rep2)
print("orbit sizes:", se.orbit_size(cfg, t, group), "and",
      se.orbit_size(cfg, t2, group))

# the same machinery canonicalizes anything with an equivariant evaluation:
# here, subsets of {0,1,2,3} under Sym(4)
sym4 = se.build_switch_table(se.PermGroup(4, [(1, 0, 2, 3), (1, 2, 3, 0)]))
out = se.canonical_generic(
    frozenset({1, 2}),
    lambda s: tuple(1 if x in s else 0 for x in range(4)),
    lambda g, s: frozenset(g[x] for x in s),
    sym4)
print("\ncanonical form of the subset {1, 2} under Sym(4):", sorted(out))
