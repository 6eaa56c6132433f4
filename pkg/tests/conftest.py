import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nerfkit import fixtures as fx  # noqa: E402
from nerfkit.cat_nerve import nerve  # noqa: E402
from nerfkit.strict_ncat import multi_nerve  # noqa: E402
from nerfkit.weak2 import double_nerve, weak2_from_strict  # noqa: E402


@functools.lru_cache(maxsize=None)
def nerve_of(name, bound=3):
    return nerve(fx.generate(name), bound)


@functools.lru_cache(maxsize=None)
def strict_by_name(name):
    return {S.name: S for S in fx.strict_fixtures() + fx.strict3_fixtures()}[name]


@functools.lru_cache(maxsize=None)
def multi_nerve_of(name, bound=3):
    return multi_nerve(strict_by_name(name), bound)


def _region_key(region):
    return region if isinstance(region, int) else tuple(region)


@functools.lru_cache(maxsize=None)
def _double_nerve(name, region):
    C = fx.weak_cocycle() if name == "weak_cocycle" else weak2_from_strict(strict_by_name(name))
    return double_nerve(C, region if isinstance(region, int) else list(region))


def double_nerve_of(name, region=2):
    return _double_nerve(name, _region_key(region))


STRICT_NAMES = [S.name for S in fx.strict_fixtures()]
GROUPOID_STRICT = ["strict2_z2", "strict2_terminal", "strict2_contractible", "strict2_s3",
                   "z2_loops", "z3_loops", "crossed_id_z2", "strict_z2_aut"]


@pytest.fixture(scope="session")
def weak_nerve():
    return double_nerve_of("weak_cocycle", 2)


@pytest.fixture(scope="session")
def weak_nerve_ext():
    return double_nerve_of("weak_cocycle", fx.EXTRACTION_REGION)
