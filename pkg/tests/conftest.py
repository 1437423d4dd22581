from __future__ import annotations

import numpy as np
import pytest

from ctrkit.kinematics import JointConfig, TubeSpec

# telescoping family used by the link-count tests: prefixes of this table
# give 1, 3, 5, 7 links for 1..4 tubes
FAMILY_CURVED = (50.0, 60.0, 65.0, 70.0)
FAMILY_RHO = (50.0, 85.0, 120.0, 150.0)
FAMILY_OD = (3.6, 3.0, 2.4, 1.8)
FAMILY_ID = (3.2, 2.6, 2.0, 1.4)
FAMILY_KAPPA = (1 / 200, 1 / 180, 1 / 150, 1 / 120)


def make_tube(
    tube_id: int,
    outer: float,
    inner: float,
    kappa: float,
    straight: float,
    curved: float,
    modulus: float = 75e3,
) -> TubeSpec:
    return TubeSpec(
        tube_id=tube_id,
        youngs_modulus=modulus,
        outer_diameter=outer,
        inner_diameter=inner,
        precurvature=kappa,
        straight_length=straight,
        curved_length=curved,
    )


def family_robot(n_tubes: int):
    tubes = tuple(
        make_tube(
            i + 1,
            FAMILY_OD[i],
            FAMILY_ID[i],
            FAMILY_KAPPA[i],
            200.0,
            FAMILY_CURVED[i],
        )
        for i in range(n_tubes)
    )
    rotations = (0.0, 40.0, -70.0, 110.0)[:n_tubes]
    joints = JointConfig(FAMILY_RHO[:n_tubes], rotations)
    return tubes, joints


def canonical_pair():
    """Two-tube arrangement whose link table is checked by hand."""
    tubes = (
        make_tube(1, 2.4, 2.0, 1 / 180, 120.0, 40.0),
        make_tube(2, 1.8, 1.4, 1 / 120, 140.0, 60.0),
    )
    return tubes


@pytest.fixture
def two_tubes():
    return canonical_pair()


@pytest.fixture
def two_tube_joints():
    return JointConfig((100.0, 160.0), (0.0, 90.0))


@pytest.fixture
def straight_tube():
    return (make_tube(1, 2.4, 2.0, 0.0, 100.0, 0.0),)


def random_robot(rng: np.random.Generator, n_tubes: int):
    """Random valid robot + joints for oracle comparisons.

    Precurvatures are either zero or >= 1/300 so every equilibrium
    curvature sits well clear of the straight-arc threshold.
    """
    profiles = {
        2: ((2.4, 2.0), (1.8, 1.4)),
        3: ((3.0, 2.6), (2.4, 2.0), (1.8, 1.4)),
    }[n_tubes]
    tubes = []
    total = rng.uniform(100.0, 140.0)
    lengths = []
    for i, (outer, inner) in enumerate(profiles):
        if i > 0:
            total += rng.uniform(20.0, 50.0)
        lengths.append(total)
        curved = rng.uniform(20.0, 60.0)
        kappa = 0.0 if rng.uniform() < 0.15 else rng.uniform(1 / 300, 1 / 80)
        tubes.append(
            make_tube(
                i + 1,
                outer,
                inner,
                kappa,
                total - curved,
                curved,
                modulus=rng.uniform(50e3, 80e3),
            )
        )
    translations = []
    previous = 0.0
    for length in lengths:
        rho = max(rng.uniform(0.0, length), previous)
        translations.append(rho)
        previous = rho
    rotations = rng.uniform(-180.0, 180.0, size=n_tubes)
    return tuple(tubes), JointConfig(translations, rotations)
