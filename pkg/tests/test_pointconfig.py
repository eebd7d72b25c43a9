"""Point configurations: construction, exact linear algebra, symmetries."""

import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import secenum as se
from secenum.pointconfig import (
    affine_dependence, compose, det_int, identity_perm, inverse,
    is_permutation, matrix_rank, normalized_volume, orientation, reorder,
)
from conftest import family, lex_cube


# --------------------------------------------------------------------------
# permutations

perms = st.permutations(list(range(6)))


@given(perms)
def test_inverse_composes_to_identity(g):
    g = tuple(g)
    assert compose(g, inverse(g)) == identity_perm(6)
    assert compose(inverse(g), g) == identity_perm(6)


@given(perms, perms, perms)
def test_compose_is_associative(g, h, k):
    g, h, k = tuple(g), tuple(h), tuple(k)
    assert compose(compose(g, h), k) == compose(g, compose(h, k))


def test_compose_applies_right_factor_first():
    # compose(g, h) maps x to g[h[x]]
    g = (1, 2, 0)
    h = (0, 2, 1)
    assert compose(g, h) == (1, 0, 2)


def test_is_permutation():
    assert is_permutation((2, 0, 1), 3)
    assert not is_permutation((0, 0, 1), 3)
    assert not is_permutation((0, 1), 3)
    assert not is_permutation((0, 1, 3), 3)


# --------------------------------------------------------------------------
# exact linear algebra

def _det_laplace(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * _det_laplace(minor)
    return total


def test_det_int_matches_cofactor_expansion():
    rng = random.Random(7)
    for size in (1, 2, 3, 4, 5):
        for _ in range(20):
            rows = [[rng.randint(-6, 6) for _ in range(size)] for _ in range(size)]
            assert det_int(rows) == _det_laplace(rows)


def test_det_int_big_entries_stay_exact():
    rows = [[10 ** 12, 1], [1, 10 ** 12]]
    assert det_int(rows) == 10 ** 24 - 1


def test_matrix_rank():
    assert matrix_rank([[1, 0], [0, 1]]) == 2
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    assert matrix_rank([[0, 0], [0, 0]]) == 0
    assert matrix_rank([[1, 2, 3], [4, 5, 6], [5, 7, 9]]) == 2


# --------------------------------------------------------------------------
# construction and validation

def test_homogenize_appends_unit_column():
    cfg = se.homogenize([[0, 0], [1, 0], [0, 1]])
    assert cfg.points == ((0, 0, 1), (1, 0, 1), (0, 1, 1))
    assert cfg.n == 3 and cfg.d == 2


def test_homogenize_clears_denominators_globally():
    cfg = se.homogenize([[Fraction(1, 2), 0], [0, Fraction(1, 3)], [1, 1]])
    assert cfg.points == ((3, 0, 1), (0, 2, 1), (6, 6, 1))


def test_homogenize_rational_strings():
    cfg = se.homogenize([["1/2", 0], [0, "1/2"], [1, 1]])
    assert cfg.points == ((1, 0, 1), (0, 1, 1), (2, 2, 1))


def test_homogeneous_input_used_verbatim():
    cfg = se.homogenize([[0, 2], [1, 1], [2, 1]], homogeneous=True)
    assert cfg.points == ((0, 2), (1, 1), (2, 1))
    assert cfg.d == 1


def test_homogeneous_input_must_be_integral():
    with pytest.raises(se.NotSpanning):
        se.homogenize([[Fraction(1, 2), 1]], homogeneous=True)


def test_duplicate_points_rejected():
    with pytest.raises(se.DuplicatePoint):
        se.homogenize([[0, 0], [1, 1], [0, 0]])


def test_flat_configuration_rejected():
    with pytest.raises(se.NotSpanning):
        se.homogenize([[0, 0], [1, 1], [2, 2]])


def test_empty_and_ragged_rejected():
    with pytest.raises(se.NotSpanning):
        se.homogenize([])
    with pytest.raises(se.NotSpanning):
        se.PointConfiguration([[1, 0, 1], [0, 1]])


def test_reorder_permutes_rows():
    cfg = se.homogenize([[0, 0], [1, 0], [0, 1]])
    out = reorder(cfg, (2, 0, 1))
    assert out.points == (cfg.points[2], cfg.points[0], cfg.points[1])
    assert out.ordering == (2, 0, 1)


def test_relabel_generator_tracks_reordering():
    cfg, group = family("moae")
    ordering = (3, 1, 4, 0, 5, 2)
    out = reorder(cfg, ordering)
    for g in group.generators:
        se.validate_symmetry(out, se.relabel_generator(g, ordering))


# --------------------------------------------------------------------------
# simplex interning

def test_simplex_id_is_lex_rank():
    cfg = lex_cube(3)
    tuples = sorted(itertools.combinations(range(8), 4))
    ids = [cfg.simplex_id(vt) for vt in tuples]
    assert ids == list(range(math.comb(8, 4)))
    for vt, sid in zip(tuples, ids):
        assert cfg.vertex_tuple(sid) == vt


def test_volume_of_id_caches_normalized_volume():
    cfg = lex_cube(2)
    sid = cfg.simplex_id((0, 1, 2))
    assert cfg.volume_of_id(sid) == normalized_volume(cfg, (0, 1, 2)) == 1


# --------------------------------------------------------------------------
# volumes, orientation, dependences

def test_unit_simplex_volume():
    cfg = se.homogenize([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert normalized_volume(cfg, (0, 1, 2, 3)) == 1


def test_orientation_is_alternating():
    cfg = lex_cube(2)
    assert orientation(cfg, (0, 1, 2)) == -orientation(cfg, (1, 0, 2))
    assert orientation(cfg, (0, 1, 3)) != 0


def test_degenerate_simplex_has_zero_volume():
    cfg = se.homogenize([[0, 0], [1, 0], [2, 0], [0, 1]])
    assert normalized_volume(cfg, (0, 1, 2)) == 0
    assert orientation(cfg, (0, 1, 2)) == 0


def test_affine_dependence_annihilates_points():
    cfg = lex_cube(2)  # 0=(0,0) 1=(0,1) 2=(1,0) 3=(1,1)
    idxs = (0, 1, 2, 3)
    dep = affine_dependence(cfg, idxs)
    assert dep == (1, -1, -1, 1)
    for j in range(cfg.d + 1):
        assert sum(c * cfg.points[i][j] for c, i in zip(dep, idxs)) == 0


def test_affine_dependence_normalization():
    cfg = se.homogenize([[0, 0], [2, 0], [1, 0], [0, 1]])
    dep = affine_dependence(cfg, (0, 1, 2))
    assert dep == (1, 1, -2)
    assert math.gcd(*map(abs, dep)) == 1


def test_affine_dependence_needs_line_kernel():
    cfg = lex_cube(2)
    with pytest.raises(se.KernelNotOneDimensional):
        affine_dependence(cfg, (0, 1, 2))


# --------------------------------------------------------------------------
# symmetry validation

def test_family_generators_are_valid_symmetries():
    for name, params in [("cube", (3,)), ("simplex_product", (2, 2)),
                         ("dilated_simplex", (2, 3)), ("moae", ())]:
        cfg, gens = se.generate_family(name, params)
        for g in gens:
            se.validate_symmetry(cfg, g)


def test_validate_symmetry_rejects_non_affine_permutation():
    cfg = lex_cube(2)
    # swapping one edge pair only is not induced by an affine map
    with pytest.raises(se.NotAffine):
        se.validate_symmetry(cfg, (1, 0, 2, 3))


def test_validate_symmetry_rejects_non_permutation():
    cfg = lex_cube(2)
    with pytest.raises(se.NotAPermutation):
        se.validate_symmetry(cfg, (0, 0, 1, 2))


def test_validate_symmetry_accepts_orientation_reversal():
    cfg = lex_cube(2)
    se.validate_symmetry(cfg, (0, 2, 1, 3))  # coordinate swap, det -1


# --------------------------------------------------------------------------
# generated families

@pytest.mark.parametrize("name,params,n,d,order", [
    ("cube", (2,), 4, 2, 8),
    ("cube", (3,), 8, 3, 48),
    ("cube", (4,), 16, 4, 384),
    ("simplex_product", (2, 2), 9, 4, 36),
    ("simplex_product", (2, 3), 12, 5, 144),
    ("simplex_product", (3, 3), 16, 6, 576),
    ("dilated_simplex", (2, 3), 10, 3, 24),
    ("moae", (), 6, 2, 6),
])
def test_family_shapes_and_group_orders(name, params, n, d, order):
    cfg, group = family(name, params)
    assert (cfg.n, cfg.d) == (n, d)
    assert group.order == order


def test_cube_numbers_origin_then_unit_vectors():
    cfg, _ = family("cube", (4,))
    assert cfg.points[0] == (0, 0, 0, 0, 1)
    units = {cfg.points[i][:4] for i in (1, 2, 3, 4)}
    assert units == {(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)}


def test_moae_rows():
    cfg, _ = family("moae")
    assert cfg.points == (
        (0, 0, 1), (4, 0, 1), (0, 4, 1), (1, 1, 1), (2, 1, 1), (1, 2, 1))


def test_unknown_family():
    with pytest.raises(se.UnknownFamily):
        se.generate_family("dodecahedron")


@settings(max_examples=30)
@given(st.permutations(list(range(6))))
def test_reorder_then_relabel_preserves_symmetry(ordering):
    cfg, group = family("moae")
    out = reorder(cfg, tuple(ordering))
    for g in group.generators:
        se.validate_symmetry(out, se.relabel_generator(g, tuple(ordering)))
