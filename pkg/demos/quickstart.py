#!/usr/bin/env python3
"""Tour of the core objects on a six-point configuration.

Two nested triangles; the smallest example where non-regular triangulations
appear. Run as a script, top to bottom.
"""

import secenum as se

cfg, gens = se.generate_family("moae", ())
print("points (homogeneous rows):")
for row in cfg.points:
    print("   ", row)

# the placing triangulation inserts points in the configuration order
t = se.placing_triangulation(cfg)
print("\nplacing triangulation:", t)
print("GKZ vector:", t.gkz)
print("uses every point:", se.is_full(cfg, t))

# flips move between triangulations; each is supported on a circuit
for f in se.find_flips(cfg, t):
    print("flip:", f)

# exact regularity decision via the folding-constraint LP
print("\nregular?", se.is_regular(cfg, t))
cons = se.folding_constraints(cfg, t)
ok, heights = se.strict_feasible(cons)
print("height vector witness:", [str(h) for h in heights])

# enumerate everything, then up to the symmetry group
everything = se.enumerate_bfs(cfg)
print("\ntriangulations in all:", len(everything))
bad = [u for u in everything if not se.is_regular(cfg, u)]
print("non-regular ones:", len(bad), "- they share a GKZ vector:",
      bad[0].gkz == bad[1].gkz)

group = se.PermGroup(cfg.n, gens)
orbits = se.enumerate_bfs(cfg, group)
print("orbits under the order-%d symmetry group:" % group.order, len(orbits))
for rep in orbits:
    print("    size %2d  gkz %s" % (se.orbit_size(cfg, rep, group), str(rep.gkz)))
