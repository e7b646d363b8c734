import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from homalcev.constructions import WeightedGenSpec  # noqa: E402
from homalcev.superalgebra import SuperAlgebra  # noqa: E402

settings.register_profile("repo", deadline=None, max_examples=60)
settings.load_profile("repo")

# Seeded algebras on which HOM_MALCEV holds but S1 and IDENT_C fail.
SPLIT_EVEN_SPEC = WeightedGenSpec(4, (0, 0, 0, 0), (2, 1, 0, 1), 1, 3, 1076119704)
SPLIT_SUPER_SPEC = WeightedGenSpec(4, (0, 1, 1, 1), (2, 1, 0, 2), 1, 3, 91)


def split_even_algebra() -> SuperAlgebra:
    """Basis a, b, c, d with [a,c]=3a, [b,c]=-3b+2d, [b,d]=-3a, [c,d]=-2b+3d."""
    prods = {
        (0, 2): {0: 3},
        (1, 2): {1: -3, 3: 2},
        (1, 3): {0: -3},
        (2, 3): {1: -2, 3: 3},
    }
    full = dict(prods)
    for (i, j), v in prods.items():
        full[(j, i)] = {k: -c for k, c in v.items()}
    return SuperAlgebra.from_products("split-even", (0, 0, 0, 0), full)


def split_super_algebra() -> SuperAlgebra:
    """Parities (0,1,1,1): e1e1=e0, e0e2=-3e3, e2e3=e3e2=-2e0."""
    prods = {
        (1, 1): {0: 1},
        (0, 2): {3: -3},
        (2, 0): {3: 3},
        (2, 3): {0: -2},
        (3, 2): {0: -2},
    }
    return SuperAlgebra.from_products("split-super", (0, 1, 1, 1), prods)


@pytest.fixture
def split_even():
    return split_even_algebra()


@pytest.fixture
def split_super():
    return split_super_algebra()
