import math

import numpy as np
import pytest

from crackchannel import Bimaterial, Configuration, Defect, DefectKind, LoadCase, TipState


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_defect(rng, x_range=(-2.0, 6.0)):
    kind = DefectKind.MICROCRACK if rng.random() < 0.5 else DefectKind.RIGID_LINE_INCLUSION
    y = rng.choice([-1.0, 1.0]) * rng.uniform(0.4, 2.0)
    return Defect(kind, rng.uniform(*x_range), y, rng.uniform(0.02, 0.15), rng.uniform(0, math.pi))


def random_config(rng, n=6):
    load = LoadCase(rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0]), -rng.uniform(0.3, 50.0))
    material = Bimaterial(rng.uniform(0.2, 5.0), rng.uniform(0.2, 5.0))
    return Configuration(material, load, TipState.at(0.0, load), [random_defect(rng) for _ in range(n)])
