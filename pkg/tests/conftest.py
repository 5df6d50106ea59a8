import random
from dataclasses import replace
from pathlib import Path

import pytest

from src.fixloc import FixedComponent, FixedPointData

EXAMPLES = Path(__file__).parent.parent / "resources" / "examples"

POINT = (1,)
CP2 = (1, 0, 1, 0, 1)
CP3 = (1, 0, 1, 0, 1, 0, 1)
K3 = (1, 0, 22, 0, 1)


@pytest.fixture
def examples_dir():
    return EXAMPLES


@pytest.fixture
def cp4_standard():
    return FixedPointData(4, (
        FixedComponent(0, POINT, 1, 0, -4, (1, 1, 1, 1)),
        FixedComponent(6, CP3, 0, 1, 1, (-1,)),
    ), monotone=True)


@pytest.fixture
def weighted_cp4():
    return FixedPointData(4, (
        FixedComponent(0, POINT, 1, 0, -5, (1, 1, 1, 2)),
        FixedComponent(4, CP2, 1, 1, 0, (-1, 1)),
        FixedComponent(0, POINT, 1, 4, 5, (-1, -1, -1, -2)),
    ), monotone=True)


@pytest.fixture
def mutated_weighted_cp4(weighted_cp4):
    components = list(weighted_cp4.components)
    components[1] = replace(components[1], lam=2)
    return replace(weighted_cp4, components=tuple(components))


@pytest.fixture
def k3_blowup():
    return FixedPointData(4, (
        FixedComponent(0, POINT, 1, 0),
        FixedComponent(4, K3, -16, 1),
        FixedComponent(6, CP3, 0, 1),
    ))


def isolated_points(half_dim, counts, spin=None):
    """Data with only isolated fixed points, counts[k] of them with lambda = k."""
    components = [FixedComponent(0, POINT, 1, lam) for lam, count in enumerate(counts) for _ in range(count)]
    return FixedPointData(half_dim, tuple(components), spin=spin)


def random_component(rng: random.Random, half_dim: int) -> FixedComponent:
    dim = 2 * rng.randint(0, half_dim)
    betti = [0] * (dim + 1)
    for i in range(dim // 2 + 1):
        b = 1 if i == 0 else rng.randint(0, 6)
        betti[i] = betti[dim - i] = b
    if dim == 0:
        signature = 1
    elif dim % 4:
        signature = 0
    else:
        middle = betti[dim // 2]
        signature = rng.choice([s for s in range(-middle, middle + 1) if (s - middle) % 2 == 0])
    lam = rng.randint(0, half_dim - dim // 2)
    return FixedComponent(dim, tuple(betti), signature, lam)


def random_fixed_point_data(seed: int) -> FixedPointData:
    rng = random.Random(seed)
    half_dim = rng.randint(1, 6)
    components = tuple(random_component(rng, half_dim) for _ in range(rng.randint(1, 6)))
    return FixedPointData(half_dim, components)


def random_unimodal_points(seed: int) -> FixedPointData:
    """Isolated fixed points whose even Betti numbers rise to the middle and fall back."""
    rng = random.Random(seed)
    half_dim = rng.choice([2, 4, 6, 8])
    rising = [1]
    for _ in range(half_dim // 2):
        rising.append(rising[-1] + rng.randint(0, 3))
    return isolated_points(half_dim, rising + rising[-2::-1])
