import itertools

import pytest

import flipcenter as fc

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
PENTAGON = [(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)]


def pentagon_fan(k):
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (k, (k + 2) % 5), (k, (k + 3) % 5)]
    return fc.Triangulation.from_edges(PENTAGON, edges)


def test_square_flip_and_distance():
    a = fc.Triangulation.from_edges(SQUARE, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
    b = a.flip(0, 2)
    assert b.contains(1, 3)
    assert b.flip(1, 3) == a
    d = fc.exact_distance(a, b)
    assert (d.lower, d.upper, d.exact) == (1, 1, True)
    assert d.witness == [[((0, 2), (1, 3))]]


def test_invalid_edges_raise():
    with pytest.raises(fc.NotATriangulation):
        fc.Triangulation.from_edges(SQUARE, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)])


def test_pentagon_fans():
    assert fc.exact_distance(pentagon_fan(0), pentagon_fan(2)).upper == 1
    assert fc.exact_distance(pentagon_fan(0), pentagon_fan(1)).upper == 2
    inst = fc.make_instance("fans", [pentagon_fan(k) for k in range(3)])
    res = fc.solve(inst, fc.SolverConfig(seed=1, time_budget=10, threads=1))
    best = min(sum(fc.exact_distance(pentagon_fan(c), t).upper for t in inst.triangulations) for c in range(5))
    assert res.objective.total_upper == best
    report = fc.verify(inst, res.center.edges(), exact_threshold=12)
    assert report.accepted and report.exact
    assert report.objective_upper == best


def test_counts_on_random_points():
    pts = [(x * 37 % 101, x * x % 97) for x in range(40)]
    pts = list(dict.fromkeys(pts))
    t = fc.greedy_random_triangulation(pts, seed=3)
    n, h = t.num_points, t.hull_size
    assert len(t.edges()) == 3 * n - h - 3
    assert len(t.triangles()) == 2 * n - h - 2
    mis = t.maximal_independent_set(seed=1)
    assert len(mis) >= -(-(n - 4) // 5)


def test_generators_and_round_trip(tmp_path):
    inst = fc.generate_random_instance(n=12, m=3, num_steps=3, prob=0.5, seed=5)
    assert fc.replay_random_walks(inst) == inst.triangulations
    assert fc.parse_instance(inst.to_json()) == inst
    path = tmp_path / "inst.json"
    inst.write(path)
    assert fc.read_instance(path) == inst
    res = fc.solve(inst, fc.SolverConfig(seed=2, time_budget=20, threads=1))
    assert res.objective.total_upper <= inst.center_objective
    assert fc.verify_solution_json(inst, res.solution_json(inst.uid)).accepted

    rirs = fc.generate_rirs_instance(n=200, m=3, seed=1)
    assert 0.05 < fc.mean_pairwise_overlap(rirs) < 0.5


def test_heuristic_sandwich():
    inst = fc.generate_random_instance(n=9, m=4, num_steps=4, prob=0.7, seed=8)
    for a, b in itertools.combinations(inst.triangulations, 2):
        lo = fc.distance_lower_bound(a, b)
        ex = fc.exact_distance(a, b).upper
        hi = fc.heuristic_distance(a, b, seed=1).upper
        assert lo <= ex <= hi


def test_scoring():
    assert fc.score({"A": 10, "B": 10, "C": 12}) == {"A": 40, "B": 40, "C": 25}
    assert fc.RANK_POINTS == [40, 32, 25, 19, 14, 10, 7, 5, 4, 3, 2, 1]
    assert fc.score_totals([{"A": 1, "B": 2}, {"A": 3, "B": 2}]) == {"A": 72, "B": 72}


def test_config_rejects_unknown_option():
    with pytest.raises(TypeError):
        fc.SolverConfig(not_an_option=1)
