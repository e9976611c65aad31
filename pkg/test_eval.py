"""
Tests for accuracy, matched neighborhood consistency and the degree-stratified
breakdown.
"""

import numpy as np
import pytest

from cone_align.evaluation import BUCKETS, degree_stratified_mnc, evaluate, mnc
from cone_align.graphs import GroundTruthPermutation, SparseGraph, drop_edges, permute_graph, synth_graph

STAR = SparseGraph(6, [(0, i) for i in range(1, 6)])


def test_mnc():
    """Jaccard similarity of mapped and actual neighborhoods."""
    print("Testing MNC...")

    g1 = SparseGraph(6, [(1, 2), (1, 3), (1, 4)])
    g2 = SparseGraph(6, [(1, 2), (1, 3), (1, 5)])
    identity = np.arange(6)

    assert mnc(g1, g2, identity, 1, 1) == pytest.approx(0.5)
    assert mnc(g1, g1, identity, 1, 1) == 1.0
    assert mnc(g1, g2, identity, 0, 0) is None

    disjoint = SparseGraph(6, [(1, 0), (1, 5)])
    assert mnc(g1, disjoint, identity, 1, 1) == 0.0

    # Many-to-one mappings collapse into a set.
    collapsed = np.array([0, 1, 2, 2, 2, 5])
    assert mnc(g1, g2, collapsed, 1, 1) == pytest.approx(1.0 / 3.0)

    with pytest.raises(ValueError):
        mnc(g1, g2, identity, 6, 0)
    with pytest.raises(ValueError):
        mnc(g1, g2, identity, 0, -1)

    print("✓ MNC tests passed")


def test_evaluate():
    """Perfect recovery, total miss, random mappings and errors."""
    print("\nTesting evaluate...")

    g = synth_graph('erdos_renyi', 30, {'p': 0.2}, seed=0)
    truth = GroundTruthPermutation.random(30, seed=1)
    h = permute_graph(g, truth)

    report = evaluate(g, h, truth.perm, truth)
    assert report.accuracy == 1.0
    assert report.mean_mnc == 1.0
    assert report.n_nodes == 30
    assert list(report.per_node.columns) == ['node', 'match', 'mnc', 'correct', 'degree']
    assert np.array_equal(report.per_node['degree'], g.degrees)

    miss = evaluate(g, h, (truth.perm + 1) % 30, truth)
    assert miss.accuracy == 0.0
    assert not miss.per_node['correct'].any()

    rng = np.random.default_rng(2)
    n = 50
    small = synth_graph('erdos_renyi', n, {'p': 0.1}, seed=3)
    identity = GroundTruthPermutation.identity(n)
    accuracies = [evaluate(small, small, rng.permutation(n), identity).accuracy for _ in range(200)]
    print(f"  Random mappings: mean accuracy {np.mean(accuracies):.4f} (1/n = {1 / n:.4f})")
    assert abs(np.mean(accuracies) - 1.0 / n) < 0.01

    with pytest.raises(ValueError):
        evaluate(g, h, truth.perm[:29], truth)
    with pytest.raises(ValueError):
        evaluate(g, h, np.full(30, 30), truth)

    print("✓ evaluate tests passed")


def test_undefined_mnc():
    """Isolated nodes with isolated counterparts are excluded and counted."""
    print("\nTesting undefined MNC handling...")

    g = SparseGraph(5, [(0, 1), (1, 2)])
    report = evaluate(g, g, np.arange(5), GroundTruthPermutation.identity(5))
    assert report.n_undefined == 2
    assert report.mean_mnc == 1.0
    assert report.per_node['mnc'].isna().sum() == 2

    summary = report.to_dict()
    assert summary['n_undefined'] == 2
    assert summary['accuracy'] == 1.0

    empty = SparseGraph(3, [])
    report = evaluate(empty, empty, np.arange(3), GroundTruthPermutation.identity(3))
    assert np.isnan(report.mean_mnc)
    assert report.to_dict()['mean_mnc'] is None

    print("✓ Undefined MNC tests passed")


def test_degree_buckets():
    """Closed top bucket, degree extremes and the partition."""
    print("\nTesting degree-stratified MNC...")

    regular = synth_graph('random_regular', 20, {'degree': 4}, seed=0)
    report = evaluate(regular, regular, np.arange(20), GroundTruthPermutation.identity(20))
    groups = report.degree_groups
    assert groups['high']['size'] == 20
    assert groups['low']['size'] == 0 and groups['mid']['size'] == 0
    assert groups['high']['correct']['count'] == 20
    assert groups['high']['incorrect']['mean'] is None

    star = evaluate(STAR, STAR, np.arange(6), GroundTruthPermutation.identity(6)).degree_groups
    assert star['high']['size'] == 1
    assert star['low']['size'] == 5
    assert star['high']['bounds'] == [pytest.approx(10.0 / 3.0), 5.0]

    edgeless = SparseGraph(4, [])
    groups = evaluate(edgeless, edgeless, np.arange(4), GroundTruthPermutation.identity(4)).degree_groups
    assert groups['high']['size'] == 4

    g = synth_graph('erdos_renyi', 60, {'p': 0.1}, seed=4)
    truth = GroundTruthPermutation.random(60, seed=5)
    noisy = drop_edges(permute_graph(g, truth), 0.2, seed=6)
    mapping = truth.perm.copy()
    mapping[:20] = np.random.default_rng(7).integers(0, 60, size=20)
    report = evaluate(g, noisy, mapping, truth)

    groups = report.degree_groups
    assert sum(groups[name]['size'] for name in BUCKETS) == 60
    counted = sum(groups[name][outcome]['count'] for name in BUCKETS for outcome in ('correct', 'incorrect'))
    assert counted == 60 - report.n_undefined

    summary = report.to_dict()
    assert 'values' not in summary['degree_groups']['high']['correct']
    assert 'values' in report.to_dict(include_values=True)['degree_groups']['high']['correct']

    with pytest.raises(ValueError):
        degree_stratified_mnc(report, STAR)

    print("✓ Degree-stratified MNC tests passed")


def test_relabeling_symmetry():
    """Relabeling the second graph and the alignment together leaves MNC unchanged."""
    print("\nTesting MNC relabeling symmetry...")

    g1 = synth_graph('erdos_renyi', 40, {'p': 0.15}, seed=8)
    truth = GroundTruthPermutation.random(40, seed=9)
    g2 = drop_edges(permute_graph(g1, truth), 0.1, seed=10)
    pi = np.random.default_rng(11).integers(0, 40, size=40)

    sigma = GroundTruthPermutation.random(40, seed=12)
    relabeled = permute_graph(g2, sigma)
    moved_truth = GroundTruthPermutation(sigma.perm[truth.perm])

    before = evaluate(g1, g2, pi, truth)
    after = evaluate(g1, relabeled, sigma.perm[pi], moved_truth)
    np.testing.assert_array_equal(before.per_node['mnc'].to_numpy(), after.per_node['mnc'].to_numpy())
    assert before.accuracy == after.accuracy

    print("✓ Relabeling symmetry tests passed")


def main():
    """Run all tests."""
    print("=" * 60)
    print("Cone Align - Evaluation Tests")
    print("=" * 60)
    print()

    try:
        test_mnc()
        test_evaluate()
        test_undefined_mnc()
        test_degree_buckets()
        test_relabeling_symmetry()

        print()
        print("=" * 60)
        print("✓ All evaluation tests passed successfully!")
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
