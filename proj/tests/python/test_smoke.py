"""Smoke tests for the compiled python module."""

import math

import pytest

import qdt

REFERENCE_TREE = "(((I//H)+I)//((Z+(D*(S//T)))*X))"


def test_parse_and_print_round_trip():
    expr = qdt.parse(REFERENCE_TREE)
    assert str(expr) == REFERENCE_TREE
    assert expr.depth == 6
    assert expr.strategy_count == 4
    assert qdt.parse(qdt.to_text(expr)) == expr


def test_parse_error_is_value_error():
    with pytest.raises(ValueError):
        qdt.parse("H+*X")
    with pytest.raises(ValueError):
        qdt.parse("")


def test_gate_matrix_values():
    h = qdt.gate_matrix(qdt.Gate.H)
    s = math.sqrt(0.5)
    assert h.m11 == pytest.approx(s, abs=1e-15)
    assert h.m22 == pytest.approx(-s, abs=1e-15)
    x = qdt.gate_matrix(qdt.Gate.X)
    assert x.rows() == (((0 + 0j), (1 + 0j)), ((1 + 0j), (0 + 0j)))
    # X*X = I
    assert qdt.mul(x, x) == qdt.gate_matrix(qdt.Gate.I)


def test_reference_strategies_and_beliefs():
    strategies = qdt.enumerate_strategies(qdt.parse(REFERENCE_TREE), 64)
    assert [qdt.to_text(s.expr) for s in strategies] == [
        "(I+I)",
        "(H+I)",
        "((Z+(D*S))*X)",
        "((Z+(D*T))*X)",
    ]
    assert all(s.weight == 0.25 for s in strategies)
    vo1 = qdt.value_operator_of(strategies[0])
    assert (vo1.p1, vo1.p2) == (0.5, 0.5)
    vo2 = qdt.value_operator_of(strategies[1])
    assert vo2.p1 == pytest.approx(1.0, abs=1e-9)
    for s in strategies:
        vo = qdt.value_operator_of(s)
        assert 0.0 <= vo.p1 <= 1.0
        assert vo.p1 + vo.p2 == pytest.approx(1.0, abs=1e-12)


def test_enumeration_overflow_raises():
    tree = qdt.parse("(((H//X)+(Y//Z))*((S//D)+(T//I)))")
    assert tree.strategy_count == 16
    with pytest.raises(ValueError):
        qdt.enumerate_strategies(tree, 8)


def test_history_generation_is_deterministic():
    a = qdt.generate_history(1000, 0.5, seed=42)
    b = qdt.generate_history(1000, 0.5, seed=42)
    assert a.n == 1000
    assert a.omega1 + a.omega2 == pytest.approx(1.0, abs=1e-12)
    assert [r.x for r in a.records] == [r.x for r in b.records]
    assert all(r.v == 1.0 for r in a.records)


def test_fitness_closed_form():
    h = qdt.generate_history(1000, 0.5, seed=42)
    n1 = sum(1 for r in h.records if r.state == qdt.CatState.Phi1_Alive)
    n2 = h.n - n1
    want = (n1 * n1 - n2 * n2) / h.n
    got = qdt.fitness(qdt.parse("(H+I)"), h, qdt.Rng(0))
    assert got == pytest.approx(want, abs=1e-9 * h.n)
    assert qdt.fitness(qdt.leaf(qdt.Gate.I), h, qdt.Rng(0)) == 0.0


def test_reward_table():
    assert qdt.reward(qdt.Action.A2_BelieveDead, qdt.CatState.Phi1_Alive, 1.0) == -1.0
    assert qdt.reward(qdt.Action.A2_BelieveDead, qdt.CatState.Phi2_Dead, 1.0) == 1.0
    assert qdt.reward(qdt.Action.A1_BelieveAlive, qdt.CatState.Phi1_Alive, 0.0) == 0.0


def test_decide_beliefs():
    rng = qdt.Rng(7)
    expr = qdt.parse("(H+I)")
    for _ in range(100):
        d = qdt.decide(expr, rng)
        assert d.action == qdt.Action.A1_BelieveAlive
        assert d.belief == pytest.approx(1.0, abs=1e-9)


def test_simulate_decisions_success_rate_of_constant_policy():
    h = qdt.generate_history(2000, 0.5, seed=9)
    sim = qdt.simulate_decisions(qdt.parse("(H+I)"), h, qdt.Rng(3))
    assert sim.report.success_rate == h.omega1
    assert len(sim.rows) == h.n


def test_evolve_smoke():
    cfg = qdt.GpConfig()
    cfg.population_size = 40
    cfg.generations = 10
    cfg.seed = 5
    h = qdt.generate_history(300, 0.0, seed=1)
    result = qdt.evolve(cfg, h)
    assert len(result.stats) == 10
    best = [row.best_fitness for row in result.stats]
    assert best == sorted(best)  # elitism keeps the trace monotone
    assert result.best.fitness >= best[0]
    # the best tree is valid text
    assert qdt.parse(result.best.expr.__str__()) == result.best.expr


def test_random_tree_depth_bounds():
    rng = qdt.Rng(11)
    for _ in range(200):
        t = qdt.random_tree(rng, 2, 5)
        assert 2 <= t.depth <= 5
