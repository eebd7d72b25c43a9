"""Regularity of triangulations via exact linear programming.

A triangulation is regular when some height vector h lifts it to the lower
convex hull.  That holds exactly when h satisfies one strict inequality per
interior ridge (the lift folds upward across the ridge) and one per unused
point (the point is lifted strictly above the simplex containing it).

Strict feasibility of c_k . h > 0 is decided through the auxiliary program
max eps subject to c_k . h >= eps and eps <= 1, solved by a rational simplex
method: the dictionary is kept as an integer matrix with one common
denominator (fraction-free pivoting), free height variables are pivoted into
the basis first, and Bland's smallest-index rule guarantees termination.
The optimum is 1 when a witness exists and 0 otherwise; a returned witness
is always re-checked against every constraint.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SecenumError
from .pointconfig import PointConfiguration
from .triangulation import Triangulation, _ridge_pairs, vertices_used

__all__ = ["FoldingConstraint", "folding_constraints", "strict_feasible", "is_regular"]


class FoldingConstraint:
    """One strict inequality coeffs . h > 0 with its provenance."""

    __slots__ = ("coeffs", "kind", "where")

    def __init__(self, coeffs, kind, where):
        self.coeffs = tuple(coeffs)
        self.kind = kind      # "ridge" or "unused"
        self.where = where    # the ridge tuple, or the unused point index

    def __eq__(self, other):
        return isinstance(other, FoldingConstraint) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"FoldingConstraint({self.kind} {self.where}: {self.coeffs})"


def folding_constraints(cfg: PointConfiguration, t: Triangulation):
    """The local conditions a lift must satisfy to induce the triangulation.

    One constraint per interior ridge, from the affine dependence on the
    ridge plus its two apexes, signs chosen so both apex coefficients are
    positive; one constraint per unused point p, from the dependence on
    sigma union {p} for the lexicographically smallest simplex sigma whose
    hull contains p, signs chosen so p's coefficient is positive.
    """
    n = cfg.n
    out = []
    seen = set()
    for ridge, pair in _ridge_pairs(cfg, t):
        sa, sb = pair
        a = next(v for v in cfg.vertex_tuple(sa) if v not in ridge)
        w = tuple(sorted(ridge + (a, next(
            v for v in cfg.vertex_tuple(sb) if v not in ridge))))
        dep = cfg.dependence(w)
        if dep[w.index(a)] < 0:
            dep = tuple(-c for c in dep)
        coeffs = [0] * n
        for v, c in zip(w, dep):
            coeffs[v] = c
        key = tuple(coeffs)
        if key not in seen:
            seen.add(key)
            out.append(FoldingConstraint(key, "ridge", ridge))
    used = set(vertices_used(cfg, t))
    for p in range(n):
        if p in used:
            continue
        for sid in t.ids:  # ids ascend in lex order on vertex tuples
            s = cfg.vertex_tuple(sid)
            w = tuple(sorted(s + (p,)))
            dep = cfg.dependence(w)
            cp = dep[w.index(p)]
            if cp == 0 or any(c * cp > 0 for v, c in zip(w, dep) if v != p):
                continue
            if cp < 0:
                dep = tuple(-c for c in dep)
            coeffs = [0] * n
            for v, c in zip(w, dep):
                coeffs[v] = c
            key = tuple(coeffs)
            if key not in seen:
                seen.add(key)
                out.append(FoldingConstraint(key, "unused", p))
            break
        else:
            raise SecenumError(f"unused point {p} lies in no simplex of {t!r}")
    return out


def strict_feasible(constraints):
    """Decide whether some h satisfies every constraint strictly.

    Returns (feasible, witness); the witness is a tuple of Fractions, or
    None when infeasible.
    """
    rows = [c.coeffs if isinstance(c, FoldingConstraint) else tuple(c)
            for c in constraints]
    if not rows:
        return True, ()
    n = len(rows[0])
    eps, heights = _max_eps(rows, n)
    if eps <= 0:
        return False, None
    return True, tuple(heights)


def is_regular(cfg: PointConfiguration, t: Triangulation) -> bool:
    """Exact regularity test; any witness is re-verified before returning."""
    cons = folding_constraints(cfg, t)
    ok, witness = strict_feasible(cons)
    if not ok:
        return False
    for c in cons:
        lhs = sum(Fraction(a) * h for a, h in zip(c.coeffs, witness))
        if lhs <= 0:
            raise SecenumError(
                f"regularity witness fails {c!r} (got {lhs}); solver inconsistency"
            )
    return True


# --------------------------------------------------------------------------
# fraction-free dictionary simplex for: max eps, rows . h >= eps, eps <= 1

def _max_eps(rows, n):
    """Optimum of the auxiliary program and the heights at the optimum.

    The dictionary stores q * x_basic[i] = rhs[i] - sum_j a[i][j] * x_nonbasic[j]
    with a single positive integer denominator q; pivots keep all entries
    integral (two-step minor identity gives exact divisions).
    """
    k = len(rows)
    m = k + 1                         # fold rows plus the eps <= 1 cap
    nn = n + 1                        # nonbasic heights plus eps
    # variable ids: 0..n-1 heights (free), n eps, n+1+i slack of row i
    a = [[-c for c in row] + [1] for row in rows]
    a.append([0] * n + [1])           # cap row: slack = 1 - eps
    rhs = [0] * k + [1]
    obj = [0] * n + [-1]              # z = eps
    objr = 0
    q = 1
    basis = [n + 1 + i for i in range(m)]
    nonbasis = list(range(nn))

    def pivot(r, c):
        nonlocal q, objr
        p = a[r][c]
        sg = 1 if p > 0 else -1
        prow = a[r]
        pr_rhs = rhs[r]
        for i in range(m):
            if i == r:
                continue
            ai = a[i]
            f = ai[c]
            for j in range(nn):
                if j != c:
                    ai[j] = sg * (p * ai[j] - f * prow[j]) // q
            rhs[i] = sg * (p * rhs[i] - f * pr_rhs) // q
            ai[c] = -sg * f
        f = obj[c]
        for j in range(nn):
            if j != c:
                obj[j] = sg * (p * obj[j] - f * prow[j]) // q
        objr = sg * (p * objr - f * pr_rhs) // q
        obj[c] = -sg * f
        for j in range(nn):
            if j != c:
                prow[j] = sg * prow[j]
        prow[c] = sg * q
        rhs[r] = sg * pr_rhs
        q = sg * p
        basis[r], nonbasis[c] = nonbasis[c], basis[r]

    # drive the free height variables into the basis
    for c in range(nn):
        if nonbasis[c] >= n:
            continue
        best = None
        for i in range(m):
            if basis[i] < n or a[i][c] == 0:
                continue
            if best is None or abs(a[i][c]) < abs(a[best][c]):
                best = i
        if best is not None:
            pivot(best, c)

    # Bland's rule on the remaining (all-constrained) problem
    while True:
        enter = None
        for c in range(nn):
            v = nonbasis[c]
            if v < n:
                if obj[c] != 0:
                    raise SecenumError("free height with nonzero reduced cost")
                continue
            if obj[c] < 0 and (enter is None or v < nonbasis[enter]):
                enter = c
        if enter is None:
            break
        leave = None
        for i in range(m):
            if basis[i] < n:
                continue
            coef = a[i][enter]
            if coef <= 0:
                continue
            if leave is None:
                leave = i
            else:
                lhs = rhs[i] * a[leave][enter]
                rhsv = rhs[leave] * coef
                if lhs < rhsv or (lhs == rhsv and basis[i] < basis[leave]):
                    leave = i
        if leave is None:
            raise SecenumError("auxiliary program unbounded; constraint bug")
        pivot(leave, enter)

    eps = Fraction(objr, q)
    heights = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            heights[basis[i]] = Fraction(rhs[i], q)
    if eps not in (0, 1):
        raise SecenumError(f"auxiliary optimum {eps} outside {{0,1}}")
    return eps, heights
