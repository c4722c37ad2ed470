"""Shared fixtures: small closed surfaces, the counterexample disk and random metrics."""
import numpy as np
import pytest

from src.comparison import build_counterexample
from src.domain.complex import make_surface

TETRAHEDRON_FACES = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
OCTAHEDRON_FACES = [
    [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 1, 4],
    [1, 2, 5], [2, 3, 5], [3, 4, 5], [1, 4, 5],
]
BACKGROUNDS = ["euclidean", "hyperbolic"]


def constant_weights(faces, value):
    edges = {tuple(sorted((f[i], f[j]))) for f in faces for i, j in ((0, 1), (1, 2), (0, 2))}
    return {edge: value for edge in edges}


def random_concave_weights(faces, rng, low=0.0, high=1.0):
    """I in [low, 1] per edge, resampled until every gamma weight is nonnegative."""
    edges = sorted({tuple(sorted((f[i], f[j]))) for f in faces for i, j in ((0, 1), (1, 2), (0, 2))})
    while True:
        weights = dict(zip(edges, rng.uniform(low, high, len(edges))))
        if all(_gamma_ok(face, weights) for face in faces):
            return weights


def _gamma_ok(face, weights):
    a, b, c = face
    opposite = [weights[tuple(sorted((b, c)))], weights[tuple(sorted((a, c)))], weights[tuple(sorted((a, b)))]]
    return all(opposite[k] + opposite[(k + 1) % 3] * opposite[(k + 2) % 3] >= 0 for k in range(3))


@pytest.fixture
def tetrahedron():
    """Factory: tetrahedral sphere with constant inversive distance."""
    def build(background="euclidean", inversive=0.0):
        return make_surface(TETRAHEDRON_FACES, background, constant_weights(TETRAHEDRON_FACES, inversive))
    return build


@pytest.fixture
def octahedron():
    """Factory: octahedral sphere with constant inversive distance."""
    def build(background="euclidean", inversive=0.5):
        return make_surface(OCTAHEDRON_FACES, background, constant_weights(OCTAHEDRON_FACES, inversive))
    return build


@pytest.fixture
def counterexample():
    return build_counterexample()


@pytest.fixture
def rng():
    return np.random.default_rng(20240617)
