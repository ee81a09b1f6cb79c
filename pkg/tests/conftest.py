import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from superport import canonical_network

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

FIXTURE_NAMES = [
    "w-network.json",
    "fig6-square.json",
    "fig7-square.json",
    "fig1-twoport.json",
    "k4.json",
]


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURE_DIR


def fixture_path(name: str) -> Path:
    return FIXTURE_DIR / name


# small positive rationals keep determinants and inverses readable
positive_rationals = st.fractions(
    min_value=Fraction(1, 9), max_value=Fraction(9), max_denominator=9
)

rationals = st.fractions(
    min_value=Fraction(-9), max_value=Fraction(9), max_denominator=9
)


def rational_tuple(rng: random.Random, count: int = 4) -> list[Fraction]:
    return [
        Fraction(rng.randint(1, 12), rng.randint(1, 12)) for _ in range(count)
    ]


def w_network(a, b, c, d):
    """Star-with-a-tail network of the worked response-reduction example:
    boundary {1,2,3} and {4,5}, edges 15:a, 25:b, 24:c, 34:d."""
    return canonical_network(
        [(1, 5, a), (2, 5, b), (2, 4, c), (3, 4, d)], [[1, 2, 3], [4, 5]]
    )


def diagonal_square(a, b, c, d):
    """Two-port square whose ports sit on diagonals: ports {1,2}, {3,4},
    edges 13:a, 24:b, 14:c, 23:d."""
    return canonical_network(
        [(1, 3, a), (2, 4, b), (1, 4, c), (2, 3, d)], [[1, 2], [3, 4]]
    )


def side_square(a, b, c, d):
    """Two-port square whose ports are the sides: ports {1,2}, {3,4},
    edges 13:a, 12:b, 24:c, 34:d."""
    return canonical_network(
        [(1, 3, a), (1, 2, b), (2, 4, c), (3, 4, d)], [[1, 2], [3, 4]]
    )
