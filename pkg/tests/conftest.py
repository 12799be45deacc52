"""Shared test helpers: canonical clouds and random multigraphs."""

import numpy as np
import pytest

from screeb import Edge, Multigraph, PointCloud


def random_multigraph(rng, max_vertices=40, max_edges=60, positions=False):
    """Random multigraph with self-loops and parallel edges."""
    n = int(rng.integers(1, max_vertices + 1))
    n_edges = int(rng.integers(0, max_edges + 1))
    edges = []
    for _ in range(n_edges):
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))  # may equal u: self-loop
        length = float(rng.uniform(0.1, 5.0))
        mult = int(rng.integers(1, 4))
        edges.append(Edge(u, v, length, mult))
    pos = rng.normal(size=(n, 2)) if positions else None
    return Multigraph(n, tuple(edges), pos)


def segment_cloud(rng, n=300):
    t = rng.uniform(size=n)
    return PointCloud(np.column_stack([t, np.zeros(n)]))


def circle_cloud(rng, n=300, radius=1.0):
    theta = rng.uniform(0, 2 * np.pi, n)
    return PointCloud(radius * np.column_stack([np.cos(theta), np.sin(theta)]))


def ytree_cloud(rng, per_arm=100):
    segs = []
    for ang in (np.pi / 2, np.pi + np.pi / 6, -np.pi / 6):
        t = rng.uniform(size=per_arm)
        segs.append(np.column_stack([t * np.cos(ang), t * np.sin(ang)]))
    return PointCloud(np.vstack(segs))


def disk_points(rng, n, radius, center):
    ang = rng.uniform(0, 2 * np.pi, n)
    rad = radius * np.sqrt(rng.uniform(size=n))
    return np.column_stack([center[0] + rad * np.cos(ang), center[1] + rad * np.sin(ang)])


def two_blob_cloud(rng, per_blob=30, gap=12.0):
    return PointCloud(
        np.vstack([disk_points(rng, per_blob, 1.0, (0, 0)), disk_points(rng, per_blob, 1.0, (gap, 0))])
    )


def add_noise(cloud, rng, scale):
    return PointCloud(cloud.points + rng.normal(scale=scale, size=cloud.points.shape))


@pytest.fixture
def rng():
    return np.random.default_rng(0)
