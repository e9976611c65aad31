"""
Tests for the numerical kernels: Sinkhorn, Procrustes and Frank-Wolfe steps.
"""

import itertools

import numpy as np
import pytest
from scipy.stats import ortho_group

from cone_align.solvers import (
    TransportPlan,
    fw_linear_step,
    fw_step_size,
    greedy_round,
    orthogonality_residual,
    procrustes,
    round_to_permutation,
    sinkhorn,
    transport_cost,
)


def _best_permutations(cost: np.ndarray):
    """All permutations sorted by assignment cost (brute force)."""
    n = cost.shape[0]
    scored = [
        (float(cost[np.arange(n), list(perm)].sum()), perm)
        for perm in itertools.permutations(range(n))
    ]
    return sorted(scored, key=lambda item: item[0])


def test_sinkhorn_marginals():
    """Zero cost gives the uniform plan; marginals hold within tolerance."""
    print("Testing Sinkhorn marginals...")

    plan = sinkhorn(np.zeros((4, 6)), reg=0.1)
    assert plan.converged
    assert np.allclose(plan.values, 1.0 / 24)
    assert plan.shape == (4, 6)

    rng = np.random.default_rng(0)
    for _ in range(20):
        n, m = rng.integers(2, 12, size=2)
        cost = rng.uniform(0, 1, size=(n, m))
        plan = sinkhorn(cost, reg=0.1, max_iter=5000)
        row, col = plan.marginal_residuals()
        assert plan.converged
        assert row < 1e-6 and col < 1e-6
        assert np.all(plan.values >= 0)
        assert abs(row - plan.row_residual) < 1e-15

    print("✓ Sinkhorn marginal tests passed")


def test_sinkhorn_concentrates():
    """Small regularization concentrates on the optimal assignment."""
    print("\nTesting Sinkhorn concentration...")

    cost = np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
    plan = sinkhorn(cost, reg=0.05)
    assert np.all(np.diag(plan.values) > 0.3)
    assert round_to_permutation(plan.values).tolist() == list(_best_permutations(cost)[0][1])
    assert transport_cost(plan, cost) < 0.01

    rng = np.random.default_rng(1)
    checked = 0
    for trial in range(100):
        n = 2 + trial % 5
        cost = rng.uniform(0, 1, size=(n, n))
        ranked = _best_permutations(cost)
        if len(ranked) > 1 and ranked[1][0] - ranked[0][0] < 0.1:
            continue
        plan = sinkhorn(cost, reg=0.01, max_iter=5000, tol=1e-9)
        assert round_to_permutation(plan.values).tolist() == list(ranked[0][1])
        checked += 1

    print(f"  {checked} instances with a clear optimum matched the brute-force assignment")
    assert checked >= 10

    print("✓ Sinkhorn concentration tests passed")


def test_sinkhorn_stability():
    """Log-domain iterations stay finite on wide cost ranges."""
    print("\nTesting Sinkhorn stability...")

    rng = np.random.default_rng(2)
    cost = rng.uniform(0, 1e4, size=(8, 8))
    plan = sinkhorn(cost, reg=1e-3, max_iter=200)
    assert np.all(np.isfinite(plan.values))

    plan = sinkhorn(rng.uniform(0, 1, size=(5, 5)), reg=0.2, check_objective=True)
    assert plan.converged

    capped = sinkhorn(rng.uniform(0, 1, size=(6, 6)), reg=0.001, max_iter=1, tol=1e-12)
    assert not capped.converged
    assert capped.n_iter == 1

    with pytest.raises(ValueError):
        sinkhorn(np.array([[0.0, np.inf]]), reg=1.0)
    with pytest.raises(ValueError):
        sinkhorn(np.zeros((2, 2)), reg=0.0)

    print("✓ Sinkhorn stability tests passed")


def test_sinkhorn_dual_ascent():
    """The dual objective never decreases and meets the primal at convergence."""
    print("\nTesting Sinkhorn dual objective...")

    rng = np.random.default_rng(8)
    for _ in range(30):
        n, m = (int(x) for x in rng.integers(2, 9, size=2))
        reg = float(rng.uniform(0.1, 1.0))
        cost = rng.uniform(0, 1, size=(n, m))

        plan = sinkhorn(cost, reg, max_iter=2000, check_objective=True)
        duals = np.array(plan.dual_objectives)
        assert plan.converged
        assert len(duals) == plan.n_iter
        assert np.all(np.diff(duals) >= -1e-10 * np.maximum(1.0, np.abs(duals[:-1])))

        P = plan.values
        primal = transport_cost(plan, cost) + reg * np.sum(P * (np.log(P) - 1.0))
        assert duals[-1] == pytest.approx(primal, abs=1e-4)

    assert sinkhorn(rng.uniform(0, 1, size=(3, 3)), 0.5).dual_objectives is None

    print("✓ Sinkhorn dual objective tests passed")


def test_transport_plan_scaling():
    """Uniform plans and the doubly stochastic rescaling."""
    print("\nTesting TransportPlan scaling...")

    plan = TransportPlan.uniform(5)
    assert np.allclose(plan.values.sum(axis=1), 0.2)

    unit = sinkhorn(np.random.default_rng(3).uniform(size=(5, 5)), reg=0.5).to_unit_marginals()
    assert np.allclose(unit.values.sum(axis=1), 1.0, atol=1e-5)
    assert np.allclose(unit.values.sum(axis=0), 1.0, atol=1e-5)

    with pytest.raises(ValueError):
        TransportPlan.uniform(2, 3).to_unit_marginals()

    print("✓ TransportPlan tests passed")


def test_rounding():
    """Exact assignment maximizes plan mass; greedy takes the row argmax."""
    print("\nTesting plan rounding...")

    rng = np.random.default_rng(4)
    for n in range(2, 7):
        plan = rng.uniform(size=(n, n))
        best = _best_permutations(-plan)[0]
        mapping = round_to_permutation(plan)
        assert abs(plan[np.arange(n), mapping].sum() + best[0]) < 1e-12

    plan = np.array([[0.1, 0.5, 0.5], [0.7, 0.2, 0.1], [0.6, 0.3, 0.1]])
    assert greedy_round(plan).tolist() == [1, 0, 0]
    assert sorted(round_to_permutation(plan).tolist()) == [0, 1, 2]

    print("✓ Rounding tests passed")


def test_procrustes():
    """Identity, rotation recovery, optimality and rotation invariance."""
    print("\nTesting Procrustes...")

    rng = np.random.default_rng(5)
    Y1 = rng.normal(size=(200, 32))

    assert np.linalg.norm(procrustes(Y1, Y1) - np.eye(32)) < 1e-8

    R = ortho_group.rvs(32, random_state=6)
    Q = procrustes(Y1, Y1 @ R)
    assert np.linalg.norm(Q - R) < 1e-6
    assert orthogonality_residual(Q) < 1e-8

    Y1 = rng.normal(size=(50, 6))
    Y2 = rng.normal(size=(50, 6))
    Q = procrustes(Y1, Y2)
    best = np.linalg.norm(Y1 @ Q - Y2)
    for seed in range(100):
        other = ortho_group.rvs(6, random_state=seed)
        assert best <= np.linalg.norm(Y1 @ other - Y2) + 1e-12

    R = ortho_group.rvs(6, random_state=7)
    assert np.linalg.norm(procrustes(Y1 @ R, Y2) - R.T @ Q) < 1e-6

    # Rank-one cross-covariance: the free block is completed with the identity.
    u = rng.normal(size=(30, 1))
    low_rank = u @ rng.normal(size=(1, 5))
    assert np.linalg.norm(procrustes(low_rank, low_rank) - np.eye(5)) < 1e-8

    with pytest.raises(ValueError):
        procrustes(Y1, Y2[:, :5])

    print("✓ Procrustes tests passed")


def test_fw_linear_step():
    """Zero gradient gives the uniform plan; dominant entries give a permutation."""
    print("\nTesting Frank-Wolfe linear step...")

    plan = fw_linear_step(np.zeros((4, 4)), lambda0=1.0)
    assert np.allclose(plan.values, 1.0 / 16)

    rng = np.random.default_rng(8)
    perm = rng.permutation(4)
    gradient = rng.uniform(0, 0.1, size=(4, 4))
    gradient[np.arange(4), perm] -= 5.0
    plan = fw_linear_step(gradient, lambda0=0.05)
    assert round_to_permutation(plan.values).tolist() == perm.tolist()
    assert np.allclose(plan.values * 4, np.eye(4)[perm], atol=1e-3)

    row, col = plan.marginal_residuals()
    assert row < 1e-6 and col < 1e-6

    with pytest.raises(ValueError):
        fw_linear_step(np.full((2, 2), np.nan), lambda0=1.0)

    assert fw_step_size(1) == pytest.approx(2.0 / 3.0)
    assert fw_step_size(10) == pytest.approx(1.0 / 6.0)

    print("✓ Frank-Wolfe step tests passed")


def main():
    """Run all tests."""
    print("=" * 60)
    print("Cone Align - Numerical Kernel Tests")
    print("=" * 60)
    print()

    try:
        test_sinkhorn_marginals()
        test_sinkhorn_concentrates()
        test_sinkhorn_stability()
        test_sinkhorn_dual_ascent()
        test_transport_plan_scaling()
        test_rounding()
        test_procrustes()
        test_fw_linear_step()

        print()
        print("=" * 60)
        print("✓ All numerical kernel tests passed successfully!")
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
