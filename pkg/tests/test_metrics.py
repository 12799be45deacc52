"""Topology metrics: persistence diagrams, Wasserstein matching, GED upper
bound, persistence images, and the combined comparison."""

import itertools
import math

import numpy as np
import pytest

from screeb import (
    Edge,
    Multigraph,
    PersistenceDiagram,
    approx_ged,
    betti,
    compare,
    edge_length_diagram,
    persistence_image,
    persistence_similarity,
    wasserstein_breakdown,
    wasserstein_distance,
)
from screeb import graph as graphmod
from screeb.errors import UnitMismatchError
from screeb.metrics import edit_cost

from conftest import random_multigraph


# -- independent oracles --------------------------------------------------------


def sweep_diagram_oracle(g, normalize):
    """Brute-force threshold sweep: recompute (b0, b1) of the prefix subgraph
    at every edge weight; b0 drops are H0 deaths, b1 jumps are H1 births."""
    if not g.edges:
        return [], g.n_vertices, []
    scale = max(e.length for e in g.edges) if normalize else 1.0
    if scale <= 0:
        scale = 1.0
    instances = []
    for e in g.edges:
        instances.extend([(e.length, e.u, e.v)] * e.multiplicity)
    instances.sort()
    deaths, births = [], []
    included = []
    prev_b0, prev_b1 = g.n_vertices, 0
    for length, u, v in instances:
        included.append(Edge(u, v, length))
        sub = Multigraph(g.n_vertices, tuple(included))
        b0, b1 = betti(sub)
        if b0 == prev_b0 - 1:
            deaths.append(length / scale)
        elif b1 == prev_b1 + 1:
            births.append(length / scale)
        prev_b0, prev_b1 = b0, b1
    return sorted(deaths), prev_b0, sorted(births)


def matching_cost_oracle(points_a, diag_a, points_b, diag_b):
    """Exhaustive optimal partial matching (L-infinity ground cost)."""
    na, nb = len(points_a), len(points_b)
    best = math.inf
    for k in range(min(na, nb) + 1):
        for subset_a in itertools.combinations(range(na), k):
            for subset_b in itertools.permutations(range(nb), k):
                cost = 0.0
                for i, j in zip(subset_a, subset_b):
                    cost += max(abs(points_a[i][0] - points_b[j][0]), abs(points_a[i][1] - points_b[j][1]))
                cost += sum(diag_a[i] for i in range(na) if i not in subset_a)
                cost += sum(diag_b[j] for j in range(nb) if j not in subset_b)
                best = min(best, cost)
    return best


def wasserstein_oracle(d1, d2):
    h0 = matching_cost_oracle(
        [(0.0, x) for x in d1.h0_deaths], [x / 2 for x in d1.h0_deaths],
        [(0.0, x) for x in d2.h0_deaths], [x / 2 for x in d2.h0_deaths],
    )
    h1 = matching_cost_oracle(
        [(b, 1.0) for b in d1.h1_births], [(1 - b) / 2 for b in d1.h1_births],
        [(b, 1.0) for b in d2.h1_births], [(1 - b) / 2 for b in d2.h1_births],
    )
    return h0 + h1 + 0.5 * abs(d1.h0_essential - d2.h0_essential)


def exact_ged(g1, g2):
    """Exhaustive minimum over all partial injective node correspondences."""
    n1, n2 = g1.n_vertices, g2.n_vertices
    best = math.inf
    for k in range(min(n1, n2) + 1):
        for keep in itertools.combinations(range(n1), k):
            for image in itertools.permutations(range(n2), k):
                best = min(best, edit_cost(g1, g2, dict(zip(keep, image))))
    return best


def random_diagram(rng, max_bars=6):
    deaths = np.sort(rng.uniform(0.05, 1.0, size=int(rng.integers(0, max_bars + 1))))
    births = np.sort(rng.uniform(0.0, 0.95, size=int(rng.integers(0, 3))))
    return PersistenceDiagram(deaths, int(rng.integers(1, 4)), births, True)


# -- edge_length_diagram ---------------------------------------------------------


def test_diagram_triangle_by_hand():
    g = Multigraph(3, (Edge(0, 1, 1.0), Edge(1, 2, 2.0), Edge(0, 2, 3.0)))
    d = edge_length_diagram(g, normalize=False)
    assert d.h0_deaths.tolist() == [1.0, 2.0]
    assert d.h0_essential == 1
    assert d.h1_births.tolist() == [3.0]


def test_diagram_single_vertex():
    d = edge_length_diagram(Multigraph(1, ()), normalize=False)
    assert d.h0_deaths.size == 0 and d.h1_births.size == 0
    assert d.h0_essential == 1


def test_diagram_normalized_path():
    g = Multigraph(5, tuple(Edge(i, i + 1, 1.0) for i in range(4)))
    d = edge_length_diagram(g, normalize=True)
    assert d.h0_deaths.tolist() == [1.0, 1.0, 1.0, 1.0]
    assert d.h0_essential == 1
    assert d.h1_births.size == 0


def test_diagram_counts_match_betti(rng):
    for _ in range(50):
        g = random_multigraph(rng, max_vertices=20, max_edges=30)
        d = edge_length_diagram(g, normalize=True)
        b = betti(g)
        assert d.h0_essential == b.b0
        assert len(d.h1_births) == b.b1
        assert len(d.h0_deaths) == g.n_vertices - b.b0


def test_diagram_matches_sweep_oracle(rng):
    for _ in range(120):
        g = random_multigraph(rng, max_vertices=30, max_edges=40)
        d = edge_length_diagram(g, normalize=True)
        deaths, b0, births = sweep_diagram_oracle(g, normalize=True)
        assert np.allclose(d.h0_deaths, deaths)
        assert d.h0_essential == b0
        assert np.allclose(d.h1_births, births)


def test_diagram_deaths_are_forest_weights(rng):
    # Deaths multiset equals the minimum spanning forest weights under the
    # same tie rule; oracle is an independent Prim-style construction.
    for _ in range(60):
        g = random_multigraph(rng, max_vertices=25, max_edges=35)
        d = edge_length_diagram(g, normalize=False)
        instances = sorted(
            (e.length, e.u, e.v) for e in g.edges for _ in range(e.multiplicity) if e.u != e.v
        )
        parent = list(range(g.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        forest = []
        for length, u, v in instances:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
                forest.append(length)
        assert np.allclose(np.sort(d.h0_deaths), np.sort(forest))


# -- wasserstein ---------------------------------------------------------------


def test_wasserstein_identity():
    d = PersistenceDiagram(np.array([0.3, 0.8]), 1, np.array([0.5]), True)
    assert wasserstein_distance(d, d) == 0.0


def test_wasserstein_single_bar_to_empty():
    d1 = PersistenceDiagram(np.array([0.8]), 1, np.array([]), True)
    d2 = PersistenceDiagram(np.array([]), 1, np.array([]), True)
    assert wasserstein_distance(d1, d2) == pytest.approx(0.4)


def test_wasserstein_two_bars_versus_one():
    d1 = PersistenceDiagram(np.array([0.2, 0.9]), 1, np.array([]), True)
    d2 = PersistenceDiagram(np.array([0.85]), 1, np.array([]), True)
    assert wasserstein_distance(d1, d2) == pytest.approx(0.15)


def test_wasserstein_essential_mismatch():
    d1 = PersistenceDiagram(np.array([]), 3, np.array([]), True)
    d2 = PersistenceDiagram(np.array([]), 1, np.array([]), True)
    assert wasserstein_distance(d1, d2) == pytest.approx(1.0)


def test_wasserstein_unit_mismatch():
    d1 = PersistenceDiagram(np.array([0.5]), 1, np.array([]), True)
    d2 = PersistenceDiagram(np.array([0.5]), 1, np.array([]), False)
    with pytest.raises(UnitMismatchError):
        wasserstein_distance(d1, d2)


def test_wasserstein_rejects_other_orders():
    d = PersistenceDiagram(np.array([0.5]), 1, np.array([]), True)
    with pytest.raises(ValueError):
        wasserstein_distance(d, d, order=2)


def test_wasserstein_matches_brute_force(rng):
    for _ in range(200):
        d1 = random_diagram(rng, max_bars=4)
        d2 = random_diagram(rng, max_bars=4)
        got = wasserstein_distance(d1, d2)
        want = wasserstein_oracle(d1, d2)
        assert got == pytest.approx(want, abs=1e-10)


def test_wasserstein_pseudometric(rng):
    diagrams = [random_diagram(rng) for _ in range(30)]
    for _ in range(300):
        a, b, c = (diagrams[i] for i in rng.integers(0, 30, size=3))
        dab = wasserstein_distance(a, b)
        dba = wasserstein_distance(b, a)
        assert abs(dab - dba) <= 1e-12
        assert dab + wasserstein_distance(b, c) >= wasserstein_distance(a, c) - 1e-9


def test_similarity_values():
    assert persistence_similarity(0.0) == 1.0
    assert persistence_similarity(1.0) == 0.5
    assert persistence_similarity(3.0) == 0.25
    with pytest.raises(ValueError):
        persistence_similarity(-0.1)


# -- approx_ged -----------------------------------------------------------------


def test_ged_identity_distinct_signatures():
    g = Multigraph(3, (Edge(0, 1, 1.0), Edge(1, 2, 1.0), Edge(1, 1, 1.0)))
    assert approx_ged(g, g) == 0.0


def test_ged_vertex_versus_edge():
    g1 = Multigraph(1, ())
    g2 = Multigraph(2, (Edge(0, 1, 1.0),))
    assert approx_ged(g1, g2) == 2.0
    assert exact_ged(g1, g2) == 2.0


def test_ged_self_loop_deletion():
    g1 = Multigraph(1, (Edge(0, 0, 1.0),))
    g2 = Multigraph(1, ())
    assert approx_ged(g1, g2) == 1.0
    assert exact_ged(g1, g2) == 1.0


def test_ged_twin_stars_self_comparison():
    # Automorphic leaves across two identical components; signature
    # assignment alone could mix them, but identical graphs must score 0.
    edges = [Edge(0, i, 1.0) for i in (1, 2, 3)] + [Edge(4, i, 1.0) for i in (5, 6, 7)]
    g = Multigraph(8, tuple(edges))
    assert approx_ged(g, g) == 0.0


def test_ged_symmetry(rng):
    graphs = [graphmod.reduce(random_multigraph(rng, max_vertices=6, max_edges=8)) for _ in range(12)]
    for g1 in graphs:
        for g2 in graphs:
            assert approx_ged(g1, g2) == approx_ged(g2, g1)


def test_ged_upper_bounds_exact(rng):
    graphs = []
    while len(graphs) < 16:
        g = graphmod.reduce(random_multigraph(rng, max_vertices=4, max_edges=5))
        if g.n_vertices <= 4 and g.edge_count() <= 5:
            graphs.append(g)
    for g1 in graphs:
        for g2 in graphs:
            assert approx_ged(g1, g2) >= exact_ged(g1, g2) - 1e-12


# -- persistence images --------------------------------------------------------


def test_image_empty_diagram_zero():
    d = PersistenceDiagram(np.array([]), 0, np.array([]), True)
    img = persistence_image(d)
    assert img.vector.shape == (200,)
    assert np.all(img.vector == 0.0)


def test_image_corner_mass_quarter():
    # A single full bar deposits a Gaussian at the (0, 1) corner; a quarter
    # of its mass lands inside the unit square. Oracle: midpoint quadrature.
    d = PersistenceDiagram(np.array([1.0]), 1, np.array([]), True)
    img = persistence_image(d)
    assert img.vector.sum() == pytest.approx(0.25, abs=1e-6)
    xs = np.linspace(0, 1, 400, endpoint=False) + 1 / 800
    gx, gy = np.meshgrid(xs, xs, indexing="ij")
    dens = np.exp(-((gx - 0.0) ** 2 + (gy - 1.0) ** 2) / (2 * 0.1**2)) / (2 * np.pi * 0.1**2)
    oracle = dens.sum() / 400**2
    assert img.vector.sum() == pytest.approx(oracle, abs=1e-4)


def test_image_linearity():
    single = PersistenceDiagram(np.array([0.6]), 1, np.array([]), True)
    double = PersistenceDiagram(np.array([0.6, 0.6]), 1, np.array([]), True)
    np.testing.assert_allclose(persistence_image(double).vector, 2 * persistence_image(single).vector)


def test_image_h0_h1_blocks():
    d_h1 = PersistenceDiagram(np.array([]), 1, np.array([0.4]), True)
    img = persistence_image(d_h1).vector
    assert np.all(img[:100] == 0.0)
    assert img[100:].sum() > 0


def test_image_lipschitz_under_perturbation(rng):
    base = np.sort(rng.uniform(0.2, 0.9, size=5))
    for _ in range(20):
        delta = float(rng.uniform(0, 0.01))
        idx = int(rng.integers(0, 5))
        moved = base.copy()
        moved[idx] = np.clip(moved[idx] + delta, 0.0, 1.0)
        realized = abs(moved[idx] - base[idx])
        a = persistence_image(PersistenceDiagram(base, 1, np.array([]), True)).vector
        b = persistence_image(PersistenceDiagram(moved, 1, np.array([]), True)).vector
        assert np.linalg.norm(a - b) <= 5 * realized * max(base.max(), moved.max()) + 1e-12


def test_image_requires_normalized():
    d = PersistenceDiagram(np.array([2.0]), 1, np.array([]), False)
    with pytest.raises(ValueError):
        persistence_image(d)


# -- compare -----------------------------------------------------------------------


def test_compare_identical():
    g = Multigraph(3, (Edge(0, 1, 1.0), Edge(1, 2, 2.0), Edge(2, 2, 0.5)))
    result = compare(g, g)
    assert result.wasserstein_similarity == 1.0
    assert result.ged == 0.0


def test_compare_segment_versus_circle():
    seg = Multigraph(2, (Edge(0, 1, 1.0),))
    circle = Multigraph(1, (Edge(0, 0, 1.0),))
    result = compare(seg, circle)
    assert result.ged >= 1.0
    assert result.wasserstein_similarity < 1.0


def test_compare_symmetric(rng):
    for _ in range(10):
        g1 = random_multigraph(rng, max_vertices=8, max_edges=10)
        g2 = random_multigraph(rng, max_vertices=8, max_edges=10)
        r12 = compare(g1, g2)
        r21 = compare(g2, g1)
        assert r12.wasserstein_similarity == pytest.approx(r21.wasserstein_similarity, abs=1e-12)
        assert r12.ged == r21.ged


def test_compare_reduces_inputs():
    chain = Multigraph(4, tuple(Edge(i, i + 1, 1.0) for i in range(3)))
    edge = Multigraph(2, (Edge(0, 1, 3.0),))
    result = compare(chain, edge)
    assert result.wasserstein_similarity == 1.0
    assert result.ged == 0.0


def test_breakdown_terms_sum():
    d1 = PersistenceDiagram(np.array([0.2, 0.9]), 2, np.array([0.3]), True)
    d2 = PersistenceDiagram(np.array([0.5]), 1, np.array([]), True)
    parts = wasserstein_breakdown(d1, d2)
    assert parts["total"] == pytest.approx(parts["h0"] + parts["h1"] + parts["essential"])
