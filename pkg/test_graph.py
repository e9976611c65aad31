"""
Tests for graph construction, edge-list loading and the noisy-permutation
operations.
"""

import os
import tempfile

import numpy as np
import pytest

from cone_align.graphs import (
    GroundTruthPermutation,
    SparseGraph,
    drop_edges,
    load_edge_list,
    pad_to_size,
    parse_generator_descriptor,
    permute_graph,
    save_edge_list,
    synth_graph,
)


def _write(directory: str, name: str, text: str) -> str:
    path = os.path.join(directory, name)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
    return path


def test_sparse_graph_invariants():
    """Symmetry, self-loop removal and degrees."""
    print("Testing SparseGraph invariants...")

    g = SparseGraph(4, [(0, 1), (1, 0), (2, 2), (1, 2), (3, 1)])
    A = g.to_dense()

    assert g.num_edges == 3
    assert np.array_equal(A, A.T)
    assert np.all(np.diag(A) == 0)
    assert np.array_equal(g.degrees, A.sum(axis=1))
    assert list(g.neighbors(1)) == [0, 2, 3]
    assert g.volume == 6
    assert g.has_edge(3, 1) and not g.has_edge(0, 3)

    with pytest.raises(ValueError):
        SparseGraph(2, [(0, 2)])

    print("✓ SparseGraph tests passed")


def test_load_edge_list():
    """Relabeling, duplicates, comments, formats and errors."""
    print("\nTesting edge-list loading...")

    with tempfile.TemporaryDirectory() as tmp:
        g = load_edge_list(_write(tmp, 'abc.txt', "a b\nb c\n"))
        assert g.n == 3
        assert g.edges.tolist() == [[0, 1], [1, 2]]
        assert g.labels == ['a', 'b', 'c']
        assert g.label_index()['c'] == 2

        dup = load_edge_list(_write(tmp, 'dup.txt', "% konect header\na b\na b\nb a\n"))
        assert dup.num_edges == 1
        assert dup.edges.tolist() == [[0, 1]]

        numeric = load_edge_list(_write(tmp, 'num.csv', "# comment\n10,2,0.5\n2,7\n\n7,7\n"))
        assert numeric.labels == [2, 7, 10]
        assert numeric.edges.tolist() == [[0, 1], [0, 2]]

        with pytest.raises(ValueError, match=":2:"):
            load_edge_list(_write(tmp, 'bad.txt', "1 2\n3\n"))

        latin = os.path.join(tmp, 'latin.txt')
        with open(latin, 'wb') as f:
            f.write(b"1 2\n2 3\ncaf\xe9 1\n")
        with pytest.raises(ValueError, match=r"latin.txt:3: not valid UTF-8"):
            load_edge_list(latin)

        accented = load_edge_list(_write(tmp, 'utf8.txt', "caf\u00e9 th\u00e9\n"))
        assert accented.labels == ['caf\u00e9', 'th\u00e9']

        with pytest.raises(ValueError):
            load_edge_list(_write(tmp, 'empty.txt', "# nothing\n"))

        with pytest.raises(ValueError):
            load_edge_list(_write(tmp, 'loops.txt', "1 1\n2 2\n"))

        with pytest.raises(ValueError):
            load_edge_list(os.path.join(tmp, 'missing.txt'))

        path = os.path.join(tmp, 'roundtrip.txt')
        save_edge_list(numeric, path)
        assert load_edge_list(path) == numeric

    print("✓ Edge-list loading tests passed")


def test_permute_graph():
    """Relabeling follows the permutation and preserves degrees."""
    print("\nTesting permute_graph...")

    path = SparseGraph(3, [(0, 1), (1, 2)])
    assert permute_graph(path, GroundTruthPermutation.identity(3)) == path

    permuted = permute_graph(path, GroundTruthPermutation([2, 0, 1]))
    assert permuted.edges.tolist() == [[0, 1], [0, 2]]

    g = synth_graph('erdos_renyi', 40, {'p': 0.15}, seed=3)
    sigma = GroundTruthPermutation.random(g.n, seed=11)
    h = permute_graph(g, sigma)
    assert np.array_equal(np.sort(g.degrees), np.sort(h.degrees))
    for i, j in g.edges:
        assert h.has_edge(sigma.perm[i], sigma.perm[j])
    assert permute_graph(h, sigma.inverse()) == g

    with pytest.raises(ValueError):
        permute_graph(path, GroundTruthPermutation.identity(4))

    print("✓ permute_graph tests passed")


def test_ground_truth_permutation():
    """Bijection check, determinism and CSV persistence."""
    print("\nTesting GroundTruthPermutation...")

    assert np.array_equal(
        GroundTruthPermutation.random(25, seed=4).perm,
        GroundTruthPermutation.random(25, seed=4).perm
    )

    with pytest.raises(ValueError):
        GroundTruthPermutation([0, 0, 1])

    sigma = GroundTruthPermutation.random(12, seed=1)
    assert np.array_equal(sigma.perm[sigma.inverse().perm], np.arange(12))

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'perm.csv')
        sigma.to_csv(path)
        with open(path) as f:
            assert f.readline().strip() == "source_index,target_index"
        assert np.array_equal(GroundTruthPermutation.from_csv(path).perm, sigma.perm)

    print("✓ GroundTruthPermutation tests passed")


def test_drop_edges():
    """Zero and full removal, determinism and the binomial edge count."""
    print("\nTesting drop_edges...")

    g = synth_graph('erdos_renyi', 120, {'p': 0.1}, seed=0)

    assert drop_edges(g, 0.0, seed=1) == g
    empty = drop_edges(g, 1.0, seed=1)
    assert empty.num_edges == 0 and empty.n == g.n
    assert drop_edges(g, 0.3, seed=5) == drop_edges(g, 0.3, seed=5)

    noisy = drop_edges(g, 0.3, seed=5)
    assert noisy.n == g.n
    for i, j in noisy.edges:
        assert g.has_edge(i, j)

    m, p = g.num_edges, 0.05
    counts = np.array([drop_edges(g, p, seed=s).num_edges for s in range(200)])
    sigma = np.sqrt(m * p * (1 - p))
    assert abs(counts.mean() - m * (1 - p)) < 3 * sigma
    print(f"  Mean kept edges {counts.mean():.1f} of {m} (expected {m * (1 - p):.1f})")

    with pytest.raises(ValueError):
        drop_edges(g, 1.5)

    print("✓ drop_edges tests passed")


def test_pad_to_size():
    """Padding appends isolated nodes."""
    print("\nTesting pad_to_size...")

    path = SparseGraph(3, [(0, 1), (1, 2)])
    assert pad_to_size(path, 3) is path

    padded = pad_to_size(path, 5)
    assert padded.n == 5
    assert padded.degrees.tolist() == [1, 2, 1, 0, 0]
    assert padded.volume == path.volume

    with pytest.raises(ValueError):
        pad_to_size(path, 2)

    print("✓ pad_to_size tests passed")


def test_synth_graph():
    """Generators are deterministic and validate their parameters."""
    print("\nTesting synthetic generators...")

    barbell = synth_graph('barbell', 10, {'clique_size': 5})
    assert barbell.n == 10
    assert barbell.num_edges == 2 * 10 + 1
    assert sorted(barbell.degrees.tolist()) == [4] * 8 + [5] * 2

    assert synth_graph('erdos_renyi', 50, {'p': 0.1}, seed=7) == synth_graph('erdos_renyi', 50, {'p': 0.1}, seed=7)

    regular = synth_graph('random_regular', 100, {'degree': 6}, seed=0)
    assert np.all(regular.degrees == 6)

    with pytest.raises(ValueError):
        synth_graph('random_regular', 7, {'degree': 3})
    with pytest.raises(ValueError):
        synth_graph('erdos_renyi', 10, {'p': 2.0})
    with pytest.raises(ValueError):
        synth_graph('barbell', 5, {'clique_size': 3})
    with pytest.raises(ValueError):
        synth_graph('lattice', 10)
    with pytest.raises(ValueError):
        synth_graph('erdos_renyi', 1)

    kind, n, params, seed = parse_generator_descriptor("random_regular:n=100,degree=6,seed=1")
    assert (kind, n, params, seed) == ('random_regular', 100, {'degree': 6}, 1)

    with pytest.raises(ValueError):
        parse_generator_descriptor("erdos_renyi:p=0.1")

    print("✓ Generator tests passed")


ARENAS_PATH = os.environ.get('CONE_ALIGN_ARENAS', os.path.join('datasets', 'arenas.edges'))


@pytest.mark.skipif(not os.path.exists(ARENAS_PATH), reason="Arenas edge list not available")
def test_arenas_loading():
    """Arenas email network: 1133 nodes, 5451 edges."""
    print("\nTesting Arenas loading...")

    g = load_edge_list(ARENAS_PATH)
    assert g.n == 1133
    assert g.num_edges == 5451

    h = permute_graph(g, GroundTruthPermutation.random(g.n, seed=0))
    assert np.array_equal(np.bincount(g.degrees), np.bincount(h.degrees))

    print("✓ Arenas loading tests passed")


def main():
    """Run all tests."""
    print("=" * 60)
    print("Cone Align - Graph Tests")
    print("=" * 60)
    print()

    try:
        test_sparse_graph_invariants()
        test_load_edge_list()
        test_permute_graph()
        test_ground_truth_permutation()
        test_drop_edges()
        test_pad_to_size()
        test_synth_graph()
        if os.path.exists(ARENAS_PATH):
            test_arenas_loading()

        print()
        print("=" * 60)
        print("✓ All graph tests passed successfully!")
        print("=" * 60)
        return 0

    except Exception as e:
        print()
        print("=" * 60)
        print("✗ Tests failed!")
        print("=" * 60)
        print(f"Error: {e}")
        import traceback
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    exit(main())
