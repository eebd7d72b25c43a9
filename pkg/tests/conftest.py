"""Shared fixtures: named configurations with their symmetry groups."""

import functools
import itertools
import random

import pytest

import secenum as se


@functools.lru_cache(maxsize=None)
def family(name, params=()):
    """(cfg, group) for a generated family, built once per session."""
    cfg, gens = se.generate_family(name, params)
    return cfg, se.PermGroup(cfg.n, gens)


def lex_cube(d):
    """Cube vertices in binary counting order (most significant bit first)."""
    rows = [list(bits) for bits in itertools.product((0, 1), repeat=d)]
    return se.homogenize(rows)


def flip_walk(cfg, steps, seed, start=None):
    """Random walk in the flip graph; returns the triangulation reached."""
    rng = random.Random(seed)
    t = start if start is not None else se.placing_triangulation(cfg)
    for _ in range(steps):
        flips = se.find_flips(cfg, t)
        if not flips:
            break
        t = se.apply_flip(cfg, t, rng.choice(flips))
    return t


@pytest.fixture(scope="session")
def moae():
    return family("moae")


@pytest.fixture(scope="session")
def cube3():
    return family("cube", (3,))


@pytest.fixture(scope="session")
def cube4():
    return family("cube", (4,))


@pytest.fixture(scope="session")
def d2d2():
    return family("simplex_product", (2, 2))


@pytest.fixture(scope="session")
def two_delta3():
    return family("dilated_simplex", (2, 3))
