#!/usr/bin/env python3
"""The budgeted master-worker engine on a product of simplices.

Counts orbits of triangulations of the 5-dimensional product of a triangle
and a 4-simplex, then shows that worker counts and budgets never change the
answer, and that a run survives an interruption through its checkpoint.
"""

import os
import tempfile

import secenum as se

cfg, gens = se.generate_family("simplex_product", (2, 4))
group = se.PermGroup(cfg.n, gens)
mode = se.SearchMode(symmetric=True, group=group)

reps = []
report = se.run(cfg, group, mode, sink=reps.append, count_regular=True,
                collect_stats=True)
print("orbits:", report.orbit_count)
print("regular:", report.regular_count)
print("triangulations in total:", report.total_triangulations)
print("max flips at a node:", report.observed_max_degree)
print("largest cell count:", report.max_simplices_seen)
print("wall time: %.2fs" % report.wall_time)

# budgets split the tree into restartable work units; tiny budgets mean many
# units, huge budgets mean few. The emitted orbits are identical either way.
baseline = sorted(t.ids for t in reps)
for budget in (1, 50, None):
    for workers in (1, 2):
        got = []
        se.run(cfg, group, mode, workers=workers,
               budget_config=se.BudgetConfig(small=budget, large=budget),
               sink=got.append)
        label = "unlimited" if budget is None else str(budget)
        print("workers=%d budget=%-9s identical stream: %s"
              % (workers, label, sorted(t.ids for t in got) == baseline))

# checkpointing: stop after a few work units, then resume from the file
path = os.path.join(tempfile.mkdtemp(), "ck")
first = []
partial = se.run(cfg, group, mode, sink=first.append,
                 budget_config=se.BudgetConfig(small=1, large=5),
                 checkpoint_path=path, stop_after_units=25)
print("\ninterrupted run: complete=%s, %d orbits so far"
      % (partial.complete, partial.orbit_count))
rest = []
resumed = se.run(cfg, group, mode, sink=rest.append,
                 budget_config=se.BudgetConfig(small=1, large=5),
                 restore=se.checkpoint_restore(path))
print("resumed run:     complete=%s, %d orbits in total"
      % (resumed.complete, resumed.orbit_count))
print("streams partition the baseline:",
      sorted(t.ids for t in first + rest) == baseline)
