from itertools import combinations

import pytest
from hypothesis import HealthCheck, settings

from nltoric.catalog import NAMES, load_catalog
from nltoric.fan import Fan

settings.register_profile("exact", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("exact")


def projective_fan(r):
    rays = [tuple(int(i == j) for j in range(r)) for i in range(r)] + [tuple([-1] * r)]
    return Fan(r, tuple(rays), tuple(combinations(range(r + 1), r)), f"p{r}")


@pytest.fixture(params=NAMES)
def entry(request):
    return load_catalog(request.param)
