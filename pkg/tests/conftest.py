import random

import pytest

from borderhom.simplicial import SimplicialComplex, SimplicialPair

# 6-vertex projective plane and 7-vertex torus
PROJECTIVE_PLANE = [
    ("1", "2", "3"), ("1", "3", "4"), ("1", "4", "5"), ("1", "5", "6"), ("1", "6", "2"),
    ("2", "3", "5"), ("3", "4", "6"), ("4", "5", "2"), ("5", "6", "3"), ("6", "2", "4"),
]
TORUS = [tuple(str((i + k) % 7) for k in offs) for i in range(7) for offs in ((0, 1, 3), (0, 2, 3))]


def absolute(simplices):
    return SimplicialPair(SimplicialComplex.from_simplices(simplices), SimplicialComplex.empty())


def random_complex(rng: random.Random, max_vertices: int = 12, max_dim: int = 3) -> SimplicialComplex:
    """Face closure of a few random simplices on at most ``max_vertices`` vertices."""
    n = rng.randint(1, max_vertices)
    verts = [f"v{i}" for i in range(n)]
    simplices = [(v,) for v in verts]
    for _ in range(rng.randint(0, 3 * n)):
        k = rng.randint(2, min(max_dim + 1, n)) if n > 1 else 1
        simplices.append(tuple(rng.sample(verts, k)))
    return SimplicialComplex.from_simplices(simplices)


def random_pair(rng: random.Random, max_vertices: int = 12, max_dim: int = 3) -> SimplicialPair:
    cx = random_complex(rng, max_vertices, max_dim)
    keep = [v for v in cx.vertices if rng.random() < 0.4]
    return SimplicialPair(cx, cx.full_subcomplex(keep))


@pytest.fixture
def circle():
    return absolute([("a", "b"), ("b", "c"), ("a", "c")])


@pytest.fixture
def projective_plane():
    return absolute(PROJECTIVE_PLANE)


@pytest.fixture
def torus():
    return absolute(TORUS)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import VERDICTS

    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[number])
