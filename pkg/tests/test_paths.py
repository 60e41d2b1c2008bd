import random

import pytest

import oracles
from markoff import paths
from markoff.core import Classifier, on_surface, rotation_power
from markoff.errors import ConstructionError, DomainError
from markoff.graph import SurfaceGraph
from markoff.paths import (
    CagePath,
    SEED,
    cage_route,
    climb_orders,
    conic_bridge,
    construct_path,
    orbit_exponent,
    parabolic_axis,
    parabolic_exit,
    scan_to_cage,
    seed_table,
    seed_to_cage,
)


def _replay_stages(stages, p):
    x = SEED
    for stage in stages:
        for axis, n in stage.steps:
            x = rotation_power(x, axis, n, p)
        assert x == stage.endpoint, (stage.tag, x)
    return x


def test_seed_to_cage_known_primes():
    assert seed_to_cage(Classifier(29)) == (2, (1, 2, 5))
    assert seed_to_cage(Classifier(113)) == (5, (1, 34, 89))
    # table convention: at least one step, even when (1,1,1) is already caged
    assert seed_to_cage(Classifier(97), min_n=1) == (1, (1, 1, 2))


def test_seed_to_cage_min_n_one_matches_table_convention():
    # (1,1,1) itself is already in the cage mod 5, 13 and 97, so the least
    # n >= 0 is 0 there; the published walk always takes at least one step.
    for p in (5, 13, 97):
        cls = Classifier(p)
        assert seed_to_cage(cls) == (0, (1, 1, 1))
        assert seed_to_cage(cls, min_n=1) == (1, (1, 1, 2))


def test_seed_table_rows():
    (row,) = seed_table([47])
    assert row == (47, 3, ((1, 1, 1), (1, 1, 2), (1, 2, 5), (1, 5, 13)))
    (row,) = seed_table([59])
    assert row[1] == 5
    assert row[2][-1] == (1, 34, 89 % 59)
    for p, n, pts in seed_table([5, 7, 11, 13]):
        assert len(pts) == n + 1
        assert pts[0] == SEED
        assert all(oracles.rot(a, 1, p) == b for a, b in zip(pts, pts[1:]))


def test_orbit_exponent_roundtrip_and_minimality():
    p = 29
    cls = Classifier(p)
    pts = oracles.surface_points(p)
    rng = random.Random(7)
    for _ in range(60):
        src = rng.choice(pts)
        axis = rng.choice((1, 2, 3))
        orb = oracles.orbit(src, axis, p)
        dst = rng.choice(orb)
        n = orbit_exponent(src, axis, dst, cls)
        assert n is not None
        assert rotation_power(src, axis, n, p) == dst
        assert 2 * abs(n) <= len(orb)
        if 2 * abs(n) == len(orb):
            assert n > 0  # tie between the two half-way representatives goes to +


def test_orbit_exponent_off_orbit_is_none():
    cls = Classifier(11)
    # rot_1 fixes the first coordinate, so nothing with x1 != 1 is reachable
    assert orbit_exponent((1, 1, 1), 1, (2, 2, 3), cls) is None


def test_meet_points_lie_on_surface():
    p = 19
    rng = random.Random(3)
    sq = oracles.squares(p)
    for _ in range(200):
        a, b = rng.randrange(p), rng.randrange(p)
        ax_a, ax_b = rng.sample((1, 2, 3), 2)
        pts = paths._meet_points(ax_a, a, ax_b, b, p)
        disc = (9 * a * a * b * b - 4 * (a * a + b * b)) % p
        if disc == 0:
            assert len(pts) <= 1
        elif disc in sq:
            assert len(pts) == 2
        else:
            assert pts == ()
        for t in pts:
            assert t[ax_a - 1] == a and t[ax_b - 1] == b
            assert on_surface(t, p) and t != (0, 0, 0)


def _cage_reps(p, cls, g):
    reps = []
    for axis in (1, 2, 3):
        for a in cls.maximal_values():
            ids = g.conic_ids(axis, a)
            if len(ids):
                reps.append(g.point_of(int(ids[0])))
    return reps


def test_conic_bridge_witnesses_p19():
    # Where a single bridging conic exists its witnesses must sit on the
    # stated conics and be reachable along all three legs.  It does not
    # always exist: mod 19 every z joining the value pair (9, 4) has order
    # 10 or 5, never 18 or 20, so the direct bridge is genuinely missing.
    p = 19
    cls = Classifier(p)
    g = SurfaceGraph.build(p)
    reps = _cage_reps(p, cls, g)
    assert reps
    direct, missing = 0, 0
    for x in reps:
        for y in reps:
            try:
                br = conic_bridge(x, y, cls)
            except ConstructionError:
                missing += 1
                continue
            direct += 1
            assert br.k != br.i and br.k != br.j
            assert cls.is_max_value(br.z) and br.z != 0
            assert br.meet_x[br.i - 1] == x[br.i - 1]
            assert br.meet_x[br.k - 1] == br.z
            assert br.meet_y[br.j - 1] == y[br.j - 1]
            assert br.meet_y[br.k - 1] == br.z
            assert on_surface(br.meet_x, p) and on_surface(br.meet_y, p)
            assert orbit_exponent(x, br.i, br.meet_x, cls) is not None
            assert orbit_exponent(br.meet_x, br.k, br.meet_y, cls) is not None
            assert orbit_exponent(br.meet_y, br.j, y, cls) is not None
    assert direct > 0 and missing > 0
    x_bad = next(t for t in reps if t[0] == 9 and paths.maximal_index(t, cls) == 1)
    y_bad = next(t for t in reps if t[0] == 4 and paths.maximal_index(t, cls) == 1)
    with pytest.raises(ConstructionError):
        conic_bridge(x_bad, y_bad, cls)


def test_cage_connect_exhaustive_pairs():
    # The chain router must join every ordered pair of cage representatives,
    # including the pairs the direct bridge misses and the split value-0
    # conic mod 5.
    for p in (5, 19):
        cls = Classifier(p)
        g = SurfaceGraph.build(p)
        reps = _cage_reps(p, cls, g)
        for x in reps:
            for y in reps:
                steps = paths.cage_connect(x, y, cls)
                cur = x
                for axis, n in steps:
                    assert n != 0
                    cur = rotation_power(cur, axis, n, p)
                assert cur == y, (p, x, y, steps)


def test_cage_route_every_maximal_point():
    # p = 5 exercises the degenerate value-0 conic (points like (0,3,4) whose
    # only maximal axis carries a 0); p = 13 has the 2p parabolic class;
    # p = 19 is the 3 mod 4 shape.
    for p in (5, 13, 19):
        cls = Classifier(p)
        for x in oracles.surface_points(p):
            if not any(cls.is_max_value(c) for c in x):
                continue
            stages = cage_route(x, cls)
            assert _replay_stages(stages, p) == x
            assert stages[0].tag == "seed"
            assert all(s.tag == "cage-hop" for s in stages[1:])
            assert len(stages) <= 2
            assert sum(len(s.steps) for s in stages[1:]) <= 4


def test_scan_to_cage_small_order_example():
    cls = Classifier(11)
    assert scan_to_cage((1, 1, 1), cls) == (1, 1, (1, 1, 2))


def test_scan_to_cage_exhaustive_to_61():
    # Every point of large enough order reaches the cage by scanning one
    # orbit; points whose largest order sits on a 2/3 coordinate are routed
    # by the closed-form parabolic exit instead and are skipped here.
    for p in (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61):
        cls = Classifier(p)
        for x in oracles.surface_points(p):
            if paths.point_order(x, cls) ** 2 <= p:
                continue
            if parabolic_axis(x, cls) is not None and not paths.is_maximal(x, cls):
                continue
            hit = scan_to_cage(x, cls)
            assert hit is not None, (p, x)
            axis, n, w = hit
            assert rotation_power(x, axis, n, p) == w
            assert paths.is_maximal(w, cls)
            if paths.is_maximal(x, cls):
                assert n == 0 and w == x


def test_climb_orders_strictly_increase():
    seen = 0
    for p in (31, 61, 101, 151, 199):
        cls = Classifier(p)
        for x in oracles.surface_points(p):
            base = paths.point_order(x, cls)
            if base * base > p:
                continue
            seen += 1
            moves = climb_orders(x, cls)
            assert moves is not None, (p, x)
            cur, prev_ord = x, base
            for axis, n, y in moves:
                assert rotation_power(cur, axis, n, p) == y
                assert paths.point_order(y, cls) > prev_ord
                cur, prev_ord = y, paths.point_order(y, cls)
            assert prev_ord * prev_ord > p
    assert seen > 0  # the sweep must actually exercise the climb


def test_parabolic_orbit_structure():
    # C_i(2/3) has 2p points and splits into two rotation orbits of length p;
    # C_i(-2/3) is a single orbit of length 2p.
    for p in (13, 17):
        cls = Classifier(p)
        g = SurfaceGraph.build(p)
        for axis in (1, 2, 3):
            plus = g.conic_ids(axis, cls.two_thirds)
            assert len(plus) == 2 * p
            first = g.orbit_ids(int(plus[0]), axis)
            assert len(first) == p
            rest = sorted(set(int(i) for i in plus) - set(first))
            second = g.orbit_ids(rest[0], axis)
            assert len(second) == p
            assert sorted(set(first) | set(second)) == [int(i) for i in plus]
            minus = g.conic_ids(axis, cls.minus_two_thirds)
            assert len(minus) == 2 * p
            assert len(g.orbit_ids(int(minus[0]), axis)) == 2 * p
    assert on_surface((5, 1, 0), 13) and Classifier(13).two_thirds == 5


def test_parabolic_exit_lands_in_cage():
    for p in (13, 17, 29):
        cls = Classifier(p)
        hit = 0
        for x in oracles.surface_points(p):
            i = parabolic_axis(x, cls)
            if i is None or paths.is_maximal(x, cls):
                continue
            hit += 1
            k, w = parabolic_exit(x, i, cls)
            assert 0 <= k < p
            assert oracles.orbit(x, i, p)[k] == w
            assert paths.is_maximal(w, cls)
        assert hit > 0


def test_construct_path_exhaustive_p31():
    p = 31
    cls = Classifier(p)
    tags = set()
    for x in oracles.surface_points(p):
        path = construct_path(p, x, cls=cls)
        assert not path.used_fallback
        assert oracles.replay_mod(path.word.steps, p) == x
        tags.update(path.stage_tags())
        for stage in path.stages:
            for _, n in stage.steps:
                assert 0 < abs(n) <= 2 * p
    assert tags <= {"seed", "cage-hop", "cage-entry", "order-climb", "parabolic-hop"}
    assert {"seed", "cage-hop", "cage-entry"} <= tags


def test_construct_path_sampled_primes():
    for p in (29, 37, 53, 101, 199):
        cls = Classifier(p)
        pts = oracles.surface_points(p) if p <= 53 else None
        rng = random.Random(p)
        for _ in range(40):
            if pts is not None:
                x = rng.choice(pts)
            else:
                x = _random_point(rng, p)
            path = construct_path(p, x, cls=cls)
            assert not path.used_fallback
            assert oracles.replay_mod(path.word.steps, p) == x


def _random_point(rng, p):
    # random nonzero surface point: pick x1, x2 and solve the quadratic in x3
    from markoff.field import sqrt_mod

    while True:
        a, b = rng.randrange(p), rng.randrange(p)
        disc = (9 * a * a * b * b - 4 * (a * a + b * b)) % p
        r = sqrt_mod(disc, p)
        if r is None:
            continue
        x = (a, b, (3 * a * b + r) * ((p + 1) // 2) % p)
        if x != (0, 0, 0) and on_surface(x, p):
            return x


def test_construct_path_seed_and_bad_targets():
    path = construct_path(11, (1, 1, 1))
    assert path.word.steps == () and path.stages == () and not path.used_fallback
    with pytest.raises(DomainError):
        construct_path(11, (1, 1, 3))
    with pytest.raises(DomainError):
        construct_path(11, (0, 0, 0))


def test_construct_path_parabolic_route():
    p = 13
    cls = Classifier(p)
    routed = 0
    for x in oracles.surface_points(p):
        if parabolic_axis(x, cls) is None or paths.is_maximal(x, cls):
            continue
        path = construct_path(p, x, cls=cls)
        assert "parabolic-hop" in path.stage_tags()
        assert not path.used_fallback
        routed += 1
    assert routed > 0


def test_bfs_fallback_stage_replays():
    p = 17
    g = SurfaceGraph.build(p)
    target = oracles.surface_points(p)[41]
    stage = paths._bfs_fallback_stage(p, target, g)
    assert stage.tag == "bfs-fallback"
    assert oracles.replay_mod(stage.steps, p) == target


def test_degenerate_zero_value_target_mod_5():
    # (0,3,4) mod 5 is maximal only through its value-0 coordinate, whose
    # conic splits in two orbits; the route must still land on it.
    cls = Classifier(5)
    assert [c for c in (0, 3, 4) if cls.is_max_value(c)] == [0]
    path = construct_path(5, (0, 3, 4), cls=cls)
    assert not path.used_fallback
    for x in oracles.surface_points(5):
        path = construct_path(5, x, cls=cls)
        assert not path.used_fallback
