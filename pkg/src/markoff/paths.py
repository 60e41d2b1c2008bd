"""Constructive paths from (1, 1, 1) to any point of the mod-p surface graph.

The construction lives in the cage: the set of points with at least one
coordinate whose rotation order is maximal (p - 1, p + 1 or 2p).  For a
maximal nonzero value the rotation orbit along that axis is the whole conic
section, so two cage points can be joined by walking three orbits: out along
the first point's maximal axis to a meet point, across a bridging conic whose
fixed value also has maximal order, and in along the second point's maximal
axis.  Points outside the cage are first pushed into it:

  * order above sqrt(p): scan one rotation orbit for a cage point,
  * a 2/3 coordinate (rotation order exactly p): closed-form exit, because
    both moved coordinates are affine functions of the step count,
  * tiny order: climb to strictly larger orders one orbit scan at a time,
    then reduce to the previous case.

Every route is replayed before it is returned.  Constructive misses raise
ConstructionError or, when allowed, fall back to breadth-first search; the
stage tags record which happened so callers can tell a pure construction
from a rescued one.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

from . import field
from .core import (
    Classifier,
    Triple,
    check_point,
    is_maximal,
    maximal_index,
    point_order,
    rot,
    rot_inv,
    rotation_order,
    rotation_power,
)
from .errors import ConstructionError
from .words import PathWord

SEED: Triple = (1, 1, 1)

# Stage tags, in the order a full route can use them.
SEED_STAGE = "seed"
CAGE_HOP = "cage-hop"
CAGE_ENTRY = "cage-entry"
ORDER_CLIMB = "order-climb"
PARABOLIC_HOP = "parabolic-hop"
BFS_FALLBACK = "bfs-fallback"


@dataclass(frozen=True)
class Stage:
    """One leg of a route: consecutive rotation steps and the point they reach."""

    tag: str
    steps: Tuple[Tuple[int, int], ...]  # (axis, signed exponent), zero exponents omitted
    endpoint: Triple


@dataclass(frozen=True)
class ConicBridge:
    """Witnesses joining two cage points through a third conic.

    meet_x lies on C_i(x_i) and C_k(z); meet_y lies on C_j(y_j) and C_k(z).
    z is a maximal nonzero value, so the rot_k orbit of meet_x covers the
    bridging conic and in particular reaches meet_y.
    """

    z: int
    meet_x: Triple
    meet_y: Triple
    i: int
    j: int
    k: int


@dataclass(frozen=True)
class CagePath:
    p: int
    target: Triple
    word: PathWord
    stages: Tuple[Stage, ...]
    used_fallback: bool

    def stage_tags(self) -> Tuple[str, ...]:
        return tuple(s.tag for s in self.stages)


def _signed(n: int, order: int) -> int:
    """Representative of n mod order with the smallest |.|, + on ties."""
    r = n % order
    return r if r <= order - r else r - order


def seed_to_cage(cls: Classifier, min_n: int = 0) -> Optional[Tuple[int, Triple]]:
    """Least n in [min_n, 5] with rot_1^n(1,1,1) in the cage, plus that point.

    Returns None when no power up to 5 lands in the cage.  min_n=1 matches the
    published table convention of always taking at least one step.
    """
    x = SEED
    for n in range(6):
        if n >= min_n and is_maximal(x, cls):
            return n, x
        x = rot(x, 1, cls.p)
    return None


def seed_table(primes, min_n: int = 1) -> List[Tuple[int, Optional[int], Tuple[Triple, ...]]]:
    """Rows (p, n, points) for the seed walk, points from (1,1,1) inclusive.

    n is None (with an empty walk) for a prime where no power up to 5 works.
    """
    rows = []
    for p in primes:
        cls = Classifier(p)
        hit = seed_to_cage(cls, min_n=min_n)
        if hit is None:
            rows.append((p, None, ()))
            continue
        n, _ = hit
        pts = [SEED]
        for _ in range(n):
            pts.append(rot(pts[-1], 1, p))
        rows.append((p, n, tuple(pts)))
    return rows


def orbit_exponent(src: Triple, axis: int, dst: Triple, cls: Classifier) -> Optional[int]:
    """Signed n of smallest |n| with rot_axis^n(src) = dst, or None if dst is
    not on the orbit.  Ties between n and n - order go to the positive side."""
    order = rotation_order(src, axis, cls)
    y = src
    hit = None
    for n in range(order):
        if y == dst:
            hit = n
            break
        y = rot(y, axis, cls.p)
    if hit is None:
        return None
    return _signed(hit, order)


def _meet_points(axis_a: int, val_a: int, axis_b: int, val_b: int, p: int) -> Tuple[Triple, ...]:
    """Surface points with the given values on two distinct axes.

    The free coordinate m solves m^2 - 3ab m + (a^2 + b^2) = 0; zero, one or
    two points come back depending on the discriminant.
    """
    disc = (9 * val_a * val_a * val_b * val_b - 4 * (val_a * val_a + val_b * val_b)) % p
    r = field.sqrt_mod(disc, p)
    if r is None:
        return ()
    inv2 = (p + 1) // 2
    axis_m = 6 - axis_a - axis_b
    out = []
    for root in ((3 * val_a * val_b + r) % p, (3 * val_a * val_b - r) % p):
        m = root * inv2 % p
        t = [0, 0, 0]
        t[axis_a - 1] = val_a
        t[axis_b - 1] = val_b
        t[axis_m - 1] = m
        pt = (t[0], t[1], t[2])
        if pt != (0, 0, 0) and pt not in out:
            out.append(pt)
    return tuple(out)


def conic_bridge(x: Triple, y: Triple, cls: Classifier) -> ConicBridge:
    """Join two cage points through a single conic with a maximal fixed value.

    Scans bridging values z by descending order class (the classifier's
    maximal_values order), skipping 0 because its conic is degenerate: empty
    or a pair of lines that the rotation orbits only half-cover.  For the
    same reason, when an endpoint's maximal value is 0 both intersection
    roots are tried and checked for orbit reachability before acceptance.

    Such a z does not always exist at small p: mod 19 no maximal value
    bridges the value pair (9, 4), every workable z having order 10 or 5.
    Routing therefore goes through cage_connect, which chains several
    bridges when the direct one is missing; this single-conic form is kept
    because it is the common case and the natural unit to verify.
    """
    p = cls.p
    i = maximal_index(x, cls)
    j = maximal_index(y, cls)
    a = x[i - 1]
    b = y[j - 1]
    for k in (ax for ax in (1, 2, 3) if ax != i and ax != j):
        for z in cls.maximal_values():
            if z == 0:
                continue
            meets_x = _meet_points(i, a, k, z, p)
            meets_y = _meet_points(j, b, k, z, p)
            if not meets_x or not meets_y:
                continue
            mx = _pick_meet(meets_x, x, i, cls, outgoing=True)
            my = _pick_meet(meets_y, y, j, cls, outgoing=False)
            if mx is None or my is None:
                continue
            return ConicBridge(z, mx, my, i, j, k)
    raise ConstructionError(
        f"no bridging value joins {x} and {y} mod {p} (maximal axes {i}, {j})"
    )


def _pick_meet(meets: Tuple[Triple, ...], endpoint: Triple, axis: int,
               cls: Classifier, outgoing: bool) -> Optional[Triple]:
    """Choose an intersection witness reachable from/to the endpoint.

    With a nonzero maximal value the whole conic is one orbit and the first
    (canonical-root) witness always works.  Value 0 splits the conic in two
    orbits, so each witness is checked."""
    if endpoint[axis - 1] != 0:
        return meets[0]
    for m in meets:
        src, dst = (endpoint, m) if outgoing else (m, endpoint)
        if orbit_exponent(src, axis, dst, cls) is not None:
            return m
    return None


def _maximal_value_mesh(cls: Classifier) -> dict:
    """Adjacency between maximal values: v -> sorted values w (0 excluded on
    the w side only by the caller) whose conics intersect, i.e. a surface
    point with the two values on two distinct axes exists.  Cached on the
    classifier since it only depends on p."""
    mesh = getattr(cls, "_paths_value_mesh", None)
    if mesh is not None:
        return mesh
    p = cls.p
    vals = cls.maximal_values()
    mesh = {v: [] for v in vals}
    for a in vals:
        for b in vals:
            disc = (9 * a * a * b * b - 4 * (a * a + b * b)) % p
            if field.legendre(disc, p) >= 0:
                mesh[a].append(b)
    for v in mesh:
        mesh[v].sort()
    cls._paths_value_mesh = mesh
    return mesh


def _conic_chain(start: Tuple[int, int], goal: Tuple[int, int],
                 cls: Classifier) -> Optional[List[Tuple[int, int]]]:
    """Shortest chain of (axis, maximal value) conics from start to goal.

    Consecutive conics use different axes and intersecting values, so every
    link carries a meet point.  Value 0 may appear only at the chain ends
    (its conic is degenerate and cannot be walked across).  Breadth-first
    with a fixed expansion order, so the chain is deterministic."""
    mesh = _maximal_value_mesh(cls)
    if start == goal:
        # Both endpoints on one split conic but on different halves: step out
        # to any intersecting whole conic and come back.
        ax, v = start
        for ax2 in (1, 2, 3):
            if ax2 == ax:
                continue
            for v2 in mesh.get(v, ()):
                if v2 != 0:
                    return [start, (ax2, v2), goal]
        return None
    parent = {start: None}
    queue = [start]
    while queue:
        nxt = []
        for node in queue:
            ax, v = node
            for ax2 in (1, 2, 3):
                if ax2 == ax:
                    continue
                for v2 in mesh.get(v, ()):
                    cand = (ax2, v2)
                    if cand in parent:
                        continue
                    if v2 == 0 and cand != goal:
                        continue
                    parent[cand] = node
                    if cand == goal:
                        chain = [cand]
                        while parent[chain[-1]] is not None:
                            chain.append(parent[chain[-1]])
                        chain.reverse()
                        return chain
                    nxt.append(cand)
        queue = nxt
    return None


def cage_connect(x: Triple, y: Triple, cls: Classifier) -> List[Tuple[int, int]]:
    """Rotation steps from one cage point to another, walking whole conics.

    Builds the shortest conic chain between the two maximal conics and walks
    it: each step moves along the current conic's axis to the meet point
    with the next conic.  Zero exponents are dropped.
    """
    if x == y:
        return []
    p = cls.p

    # Shared maximal coordinate: one orbit walk suffices.
    for ax in (1, 2, 3):
        v = y[ax - 1]
        if x[ax - 1] == v and cls.is_max_value(v):
            n = orbit_exponent(x, ax, y, cls)
            if n is None:
                continue  # split conic (v = 0) with the points on different halves
            return [(ax, n)] if n else []

    start = (maximal_index(x, cls), x[maximal_index(x, cls) - 1])
    goal = (maximal_index(y, cls), y[maximal_index(y, cls) - 1])
    chain = _conic_chain(start, goal, cls)
    if chain is None or len(chain) < 2:
        raise ConstructionError(
            f"no conic chain joins {x} and {y} mod {p} (conics {start}, {goal})"
        )

    steps: List[Tuple[int, int]] = []
    cur = x
    goal_ax = goal[0]
    for t in range(len(chain) - 1):
        ax_c, v_c = chain[t]
        ax_n, v_n = chain[t + 1]
        meets = _meet_points(ax_c, v_c, ax_n, v_n, p)
        chosen = None
        for m in meets:
            n_in = orbit_exponent(cur, ax_c, m, cls)
            if n_in is None:
                continue
            if t == len(chain) - 2 and orbit_exponent(m, goal_ax, y, cls) is None:
                continue  # split goal conic: this meet sits on the wrong half
            chosen = (m, n_in)
            break
        if chosen is None:
            raise ConstructionError(
                f"conic chain from {x} to {y} mod {p} lost its meet at {chain[t + 1]}"
            )
        cur = chosen[0]
        if chosen[1]:
            steps.append((ax_c, chosen[1]))
    n_fin = orbit_exponent(cur, goal_ax, y, cls)
    if n_fin is None:
        raise ConstructionError(f"conic chain from {x} to {y} mod {p} missed the target")
    if n_fin:
        steps.append((goal_ax, n_fin))
    return steps


def cage_route(target: Triple, cls: Classifier,
               seed: Optional[Tuple[int, Triple]] = None) -> List[Stage]:
    """Stages from (1,1,1) to a cage point: seed walk, then conic walks."""
    if seed is None:
        seed = seed_to_cage(cls)
    if seed is None:
        raise ConstructionError(f"no rot_1 power up to 5 reaches the cage mod {cls.p}")
    n0, anchor = seed
    stages = [Stage(SEED_STAGE, ((1, n0),) if n0 else (), anchor)]
    if target == anchor:
        return stages
    steps = cage_connect(anchor, target, cls)
    stages.append(Stage(CAGE_HOP, tuple(steps), target))
    return stages


def scan_to_cage(x: Triple, cls: Classifier) -> Optional[Tuple[int, int, Triple]]:
    """(axis, n, point) with rot_axis^n(x) in the cage, or None.

    Scans the largest-order axis first, then the others ascending; within an
    orbit |n| ascends with + tried before -.  Already-maximal x returns n=0."""
    if is_maximal(x, cls):
        return maximal_index(x, cls), 0, x
    first = maximal_index(x, cls)
    for ax in (first, *(a for a in (1, 2, 3) if a != first)):
        order = rotation_order(x, ax, cls)
        fwd = bwd = x
        for n in range(1, order // 2 + 1):
            fwd = rot(fwd, ax, cls.p)
            if is_maximal(fwd, cls):
                return ax, n, fwd
            if 2 * n == order:
                break
            bwd = rot_inv(bwd, ax, cls.p)
            if is_maximal(bwd, cls):
                return ax, -n, bwd
    return None


def climb_orders(x: Triple, cls: Classifier) -> Optional[List[Tuple[int, int, Triple]]]:
    """Greedy climb from a tiny-order point to one with order^2 > p.

    Each move (axis, n, point) strictly increases the point order; a
    parabolic or maximal coordinate anywhere in a scanned orbit ends the
    climb at once since those orders are at least p.  The number of moves is
    capped by the divisor count of p^2 - 1 (orders divide p-1, p+1 or 2p and
    strictly increase); hitting the cap or a stuck orbit returns None."""
    p = cls.p
    cap = field.tau(p * p - 1) + 1
    moves: List[Tuple[int, int, Triple]] = []
    cur = x
    while point_order(cur, cls) ** 2 <= p:
        if len(moves) >= cap:
            return None
        base = point_order(cur, cls)
        found = None
        first = maximal_index(cur, cls)
        for ax in (first, *(a for a in (1, 2, 3) if a != first)):
            order = rotation_order(cur, ax, cls)
            fwd = bwd = cur
            for n in range(1, order // 2 + 1):
                fwd = rot(fwd, ax, p)
                if point_order(fwd, cls) > base:
                    found = (ax, n, fwd)
                    break
                if 2 * n == order:
                    break
                bwd = rot_inv(bwd, ax, p)
                if point_order(bwd, cls) > base:
                    found = (ax, -n, bwd)
                    break
            if found:
                break
        if found is None:
            return None
        moves.append(found)
        cur = found[2]
    return moves


def parabolic_axis(x: Triple, cls: Classifier) -> Optional[int]:
    """Axis carrying a 2/3 coordinate (rotation order exactly p), if any."""
    for i in (1, 2, 3):
        if x[i - 1] == cls.two_thirds:
            return i
    return None


def parabolic_exit(x: Triple, i: int, cls: Classifier) -> Tuple[int, Triple]:
    """Closed-form k with rot_i^k(x) in the cage, for x with x_i = 2/3.

    On an order-p parabolic orbit the rotation matrix is unipotent, so both
    moved coordinates are affine in k: coord(k) = coord(0) + k * step.  Pick a
    moved axis whose step is nonzero (one always exists or the orbit would be
    a fixed point) and solve coord(k) = b for the first nonzero maximal b.
    """
    p = cls.p
    x1 = rot(x, i, p)
    for j in (ax for ax in (1, 2, 3) if ax != i):
        c = x[j - 1]
        d = (x1[j - 1] - c) % p
        if d == 0:
            continue
        dinv = pow(d, p - 2, p)
        for b in cls.maximal_values():
            if b == 0:
                continue
            k = (b - c) * dinv % p
            y = rotation_power(x, i, k, p)
            if y[j - 1] != b:
                raise ConstructionError(
                    f"parabolic orbit of {x} mod {p} is not affine in the step count"
                )
            return k, y
    raise ConstructionError(f"parabolic orbit of {x} mod {p} moves no coordinate")


def _constructive_stages(x: Triple, cls: Classifier) -> List[Stage]:
    """Dispatch on how far x is from the cage; raises ConstructionError on any miss."""
    p = cls.p
    if is_maximal(x, cls):
        return cage_route(x, cls)

    i = parabolic_axis(x, cls)
    if i is not None:
        k, w = parabolic_exit(x, i, cls)
        stages = cage_route(w, cls)
        stages.append(Stage(PARABOLIC_HOP, ((i, _signed(-k, p)),), x))
        return stages

    if point_order(x, cls) ** 2 > p:
        hit = scan_to_cage(x, cls)
        if hit is None:
            raise ConstructionError(f"no cage point found on the orbits of {x} mod {p}")
        ax, n, w = hit
        stages = cage_route(w, cls)
        stages.append(Stage(CAGE_ENTRY, ((ax, -n),), x))
        return stages

    moves = climb_orders(x, cls)
    if moves is None:
        raise ConstructionError(f"order climb stalled at {x} mod {p}")
    stages = _constructive_stages(moves[-1][2], cls)
    back = [x] + [m[2] for m in moves[:-1]]
    for (ax, n, _), prev in zip(reversed(moves), reversed(back)):
        stages.append(Stage(ORDER_CLIMB, ((ax, -n),), prev))
    return stages


def construct_path(p: int, target: Triple, cls: Optional[Classifier] = None,
                   graph=None, allow_fallback: bool = True) -> CagePath:
    """Rotation word taking (1,1,1) to the target mod p, with its stage trace.

    Constructive failures fall back to a BFS shortest path when allowed
    (used_fallback then reports True); the produced word is always replayed
    against the target before returning."""
    if cls is None:
        cls = Classifier(p)
    x = check_point(tuple(c % p for c in target), p)
    if x == SEED:
        return CagePath(p, x, PathWord.from_steps(()), (), False)

    used_fallback = False
    try:
        stages = _constructive_stages(x, cls)
    except ConstructionError:
        if not allow_fallback:
            raise
        stages = [_bfs_fallback_stage(p, x, graph)]
        used_fallback = True

    word = PathWord.from_steps(s for stage in stages for s in stage.steps)
    if word.apply_mod(SEED, p) != x:
        raise ConstructionError(f"replay of {word} mod {p} missed the target {x}")
    return CagePath(p, x, word, tuple(stages), used_fallback)


def _bfs_fallback_stage(p: int, target: Triple, graph) -> Stage:
    from .graph import SurfaceGraph, bfs, word_to

    g = graph if graph is not None else SurfaceGraph.build(p)
    tree = bfs(g, g.id_of(SEED))
    word = word_to(tree, g.id_of(target))
    return Stage(BFS_FALLBACK, word.steps, target)
