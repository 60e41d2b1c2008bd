"""Integer lifts of mod-p points and the size bounds that govern them.

A rotation word replayed from (1, 1, 1) over the integers produces a triple
on the surface x1^2 + x2^2 + x3^2 = 3 x1 x2 x3 whose reduction mod p is the
word's mod-p endpoint; that triple is a lift of the endpoint and its size is
its largest coordinate.  Vieta flips send positive solutions to positive
solutions (the flipped quadratic has positive root sum and product), so every
coordinate along a replay stays a positive integer and log-domain tracking is
well defined once the exact integers outgrow the digit cap.

Sizes obey one growth law and a family of evaluated exponents built on it:
a reduced word with s segments of exponents n_1..n_s satisfies

    ln size  <=  2^(s-1) * (|n_1|+1) * ... * (|n_s|+1) * ln(3*eps)

with eps = (3 + sqrt(5))/2.  The construction, order-climb and parabolic
routes give per-prime exponents of the polynomial kind 96(2p+1)^4,
96(2p+1)^(4+t/2) and 20(2p+1)^2, while the expander-style exponent
((p^3+3)/2)^(20/ln(1+h/3)) depends on a certified lower bound h for the
expansion constant.  All comparisons run in natural-log space with a small
relative guard band; nothing here attempts float rigor beyond that.
"""

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from . import field
from .errors import CapExceeded, DomainError
from .words import PathWord

Triple = Tuple[int, int, int]

SEED: Triple = (1, 1, 1)
GROWTH_EPS = (3 + math.sqrt(5)) / 2
LN_3EPS = math.log(3 * GROWTH_EPS)
LN2 = math.log(2)
LN10 = math.log(10)

DEFAULT_DIGIT_CAP = 10 ** 6
DEFAULT_LIFT_DEPTH = 25
REL_GUARD = 1e-9


def ln_big(x: int) -> float:
    """Natural log of a positive integer of any length."""
    if x <= 0:
        raise DomainError("ln_big wants a positive integer")
    bits = x.bit_length()
    if bits <= 53:
        return math.log(x)
    top = x >> (bits - 53)
    return math.log(top) + (bits - 53) * LN2


def _rot_int(x: Triple, i: int) -> Triple:
    x1, x2, x3 = x
    if i == 1:
        return (x1, x3, 3 * x1 * x3 - x2)
    if i == 2:
        return (x3, x2, 3 * x2 * x3 - x1)
    return (x2, 3 * x2 * x3 - x1, x3)


def _rot_inv_int(x: Triple, i: int) -> Triple:
    x1, x2, x3 = x
    if i == 1:
        return (x1, 3 * x1 * x2 - x3, x2)
    if i == 2:
        return (3 * x1 * x2 - x3, x2, x1)
    return (3 * x1 * x3 - x2, x1, x3)


def _ln_product_minus(ln_a: float, ln_b: float, ln_c: float) -> float:
    """ln(3*a*b - c) from ln a, ln b, ln c, for positive result.

    Positivity holds exactly on the surface; under float error the difference
    is clamped, and coordinates never drop below 1 so the result floor is 0.
    """
    big = math.log(3) + ln_a + ln_b
    delta = big - ln_c
    if delta <= 0:
        return 0.0
    return max(0.0, big + math.log1p(-math.exp(-delta)))


def _rot_log(l: Tuple[float, float, float], i: int, sign: int) -> Tuple[float, float, float]:
    l1, l2, l3 = l
    if sign > 0:
        if i == 1:
            return (l1, l3, _ln_product_minus(l1, l3, l2))
        if i == 2:
            return (l3, l2, _ln_product_minus(l2, l3, l1))
        return (l2, _ln_product_minus(l2, l3, l1), l3)
    if i == 1:
        return (l1, _ln_product_minus(l1, l2, l3), l2)
    if i == 2:
        return (_ln_product_minus(l1, l2, l3), l2, l1)
    return (_ln_product_minus(l1, l3, l2), l1, l3)


@dataclass(frozen=True)
class LiftTriple:
    """An integer surface triple, exact or tracked in natural logs only."""

    coords: Optional[Triple]
    log_coords: Tuple[float, float, float]
    exact: bool

    @property
    def log_size(self) -> float:
        return max(self.log_coords)

    @property
    def size(self) -> Optional[int]:
        return max(self.coords) if self.exact else None

    def reduce(self, p: int) -> Optional[Triple]:
        if not self.exact:
            return None
        return (self.coords[0] % p, self.coords[1] % p, self.coords[2] % p)


def replay_integer(word: PathWord, start: Triple = SEED,
                   digit_cap: int = DEFAULT_DIGIT_CAP,
                   exact_only: bool = False) -> LiftTriple:
    """Apply a rotation word to a positive integer triple, exactly while the
    coordinates stay under digit_cap decimal digits, in log-domain after.

    The switch-over clears the exactness flag; with exact_only the cap raises
    CapExceeded instead.
    """
    cap_bits = max(64, int(digit_cap * LN10 / LN2))
    cur: Optional[Triple] = start
    logs: Optional[Tuple[float, float, float]] = None
    exact = True
    for axis, n in word.steps:
        sign = 1 if n > 0 else -1
        for _ in range(abs(n)):
            if exact:
                cur = _rot_int(cur, axis) if sign > 0 else _rot_inv_int(cur, axis)
                if max(cur).bit_length() > cap_bits:
                    if exact_only:
                        raise CapExceeded(
                            f"lift outgrew {digit_cap} digits replaying {word}"
                        )
                    logs = tuple(ln_big(c) for c in cur)
                    cur, exact = None, False
            else:
                logs = _rot_log(logs, axis, sign)
    if exact:
        return LiftTriple(cur, tuple(ln_big(c) for c in cur), True)
    return LiftTriple(None, logs, False)


def on_integer_surface(x: Triple) -> bool:
    a, b, c = x
    return a * a + b * b + c * c == 3 * a * b * c


def growth_exponent(word: PathWord) -> float:
    """2^(s-1) * prod(|n_i| + 1) for the reduced word; 0 for the empty word."""
    if not word.steps:
        return 0.0
    out = 0.5
    for _, n in word.steps:
        out *= 2 * (abs(n) + 1)
    return out


def growth_bound_ln(word: PathWord) -> float:
    """Upper bound on ln(size) of the word's replay from (1,1,1)."""
    return growth_exponent(word) * LN_3EPS


def construction_exponent(p: int) -> int:
    """Size exponent 96(2p+1)^4 for the cage-route construction."""
    return 96 * (2 * p + 1) ** 4


def parabolic_exponent(p: int) -> int:
    """Size exponent 20(2p+1)^2 for the closed-form parabolic route."""
    return 20 * (2 * p + 1) ** 2


def climb_exponent_ln(p: int, t: Optional[int] = None) -> float:
    """ln of 96(2p+1)^(4+t/2), the order-climb route exponent.

    t defaults to the divisor count of p^2 - 1, the cap on how many strict
    order increases a climb can make.
    """
    if t is None:
        t = field.tau(p * p - 1)
    return math.log(96) + (4 + t / 2) * math.log(2 * p + 1)


def expander_alpha_ln(p: int, h: float, quadratic: bool = False) -> float:
    """ln of the expander-style exponent ((p^3+3)/2)^(20/ln(1+h/3)).

    The base as stated is cubic in p even though the vertex count is
    quadratic; quadratic=True evaluates the (p^2+3)/2 variant so reports can
    carry both.  h must be a positive lower bound for the expansion constant.
    """
    if h <= 0:
        raise DomainError("expander exponent needs a positive expansion bound")
    base = (p * p * p + 3) / 2 if not quadratic else (p * p + 3) / 2
    return 20 * math.log(base) / math.log1p(h / 3)


def bound_covers(ln_size: float, exponent_ln: float,
                 rel_guard: float = REL_GUARD) -> Optional[bool]:
    """Does a size bound (3*eps)^E with ln E = exponent_ln cover ln_size?

    Returns None when the two sides agree to within the relative guard band
    (the comparison is then float noise, not evidence).  Exponents too large
    to exponentiate cover everything representable.
    """
    try:
        bound_ln = math.exp(exponent_ln) * LN_3EPS
    except OverflowError:
        return True
    if math.isinf(bound_ln):
        return True
    scale = max(abs(ln_size), abs(bound_ln), 1.0)
    if abs(ln_size - bound_ln) <= rel_guard * scale:
        return None
    return ln_size < bound_ln


BOUND_CSV_HEADER = (
    "p,construction_log10,expander_cubic_log10,expander_quadratic_log10,"
    "climb_log10,parabolic_log10,h_lower"
)


@dataclass(frozen=True)
class BoundReport:
    """log10 of every route exponent at one prime, plus the certified h."""

    p: int
    construction_log10: float
    expander_cubic_log10: float
    expander_quadratic_log10: float
    climb_log10: float
    parabolic_log10: float
    h_lower: float

    def csv_row(self) -> str:
        return (
            f"{self.p},{self.construction_log10:.6f},{self.expander_cubic_log10:.6f},"
            f"{self.expander_quadratic_log10:.6f},{self.climb_log10:.6f},"
            f"{self.parabolic_log10:.6f},{self.h_lower:.6g}"
        )


def bound_report(p: int, h_lower: float) -> BoundReport:
    field.require_odd_prime(p)
    return BoundReport(
        p=p,
        construction_log10=ln_big(construction_exponent(p)) / LN10,
        expander_cubic_log10=expander_alpha_ln(p, h_lower) / LN10,
        expander_quadratic_log10=expander_alpha_ln(p, h_lower, quadratic=True) / LN10,
        climb_log10=climb_exponent_ln(p) / LN10,
        parabolic_log10=ln_big(parabolic_exponent(p)) / LN10,
        h_lower=h_lower,
    )


def minimal_lift_search(p: int, target: Triple,
                        max_depth: int = DEFAULT_LIFT_DEPTH) -> Optional[LiftTriple]:
    """Smallest congruent lift found by breadth-first search of the integer
    tree rooted at (1,1,1) with children rot_1, rot_2, rot_3.

    Every generated node is congruence-checked before the residue dedupe
    prunes its expansion, so a hit is never lost to an earlier visit of the
    same residue.  This is a search baseline: it reports the smallest lift
    seen on the first level that produced one, making no global minimality
    claim, and returns None past max_depth.  Nodes beyond ten thousand
    decimal digits are not expanded; their children only grow.
    """
    field.require_odd_prime(p)
    want = (target[0] % p, target[1] % p, target[2] % p)
    guard_bits = int(10 ** 4 * LN10 / LN2)
    best: Optional[Triple] = None
    seen = {SEED}
    frontier: List[Triple] = [SEED]
    if tuple(c % p for c in SEED) == want:
        best = SEED
    for _ in range(max_depth):
        if best is not None:
            break
        nxt: List[Triple] = []
        for x in frontier:
            for axis in (1, 2, 3):
                child = _rot_int(x, axis)
                if tuple(c % p for c in child) == want:
                    if best is None or max(child) < max(best):
                        best = child
                res = (child[0] % p, child[1] % p, child[2] % p)
                if res not in seen and max(child).bit_length() <= guard_bits:
                    seen.add(res)
                    nxt.append(child)
        frontier = nxt
        if not frontier:
            break
    if best is None:
        return None
    return LiftTriple(best, tuple(ln_big(c) for c in best), True)


def tree_level_log_sizes(level: int, digit_cap: int = DEFAULT_DIGIT_CAP) -> List[float]:
    """ln(size) for every node at the given level of the rotation tree.

    The tree applies rot_1, rot_2, rot_3 from (1,1,1) and never repeats the
    axis just used, so level L holds 3 * 2^(L-1) nodes.  Depth-first with a
    fixed axis order keeps the output deterministic; integers switch to
    log-domain past the digit cap.
    """
    if level < 1:
        raise DomainError("tree level starts at 1")
    cap_bits = max(64, int(digit_cap * LN10 / LN2))
    out: List[float] = []

    def descend(node, logs, exact, depth, last_axis):
        if depth == level:
            out.append(max(logs) if not exact else float(ln_big(max(node))))
            return
        for axis in (1, 2, 3):
            if axis == last_axis:
                continue
            if exact:
                child = _rot_int(node, axis)
                if max(child).bit_length() > cap_bits:
                    descend(None, tuple(ln_big(c) for c in child), False, depth + 1, axis)
                else:
                    descend(child, None, True, depth + 1, axis)
            else:
                descend(None, _rot_log(logs, axis, 1), False, depth + 1, axis)

    descend(SEED, None, True, 0, 0)
    return out


def tree_level_count(level: int) -> int:
    return 3 * 2 ** (level - 1)


def partition_max_product(ell: int) -> int:
    """Max over partitions n_1 + ... + n_s = ell of prod(n_i + 1).

    Dynamic programming over the first part; the all-ones partition wins and
    the value is 2^ell, comfortably below the 5^ell ceiling the growth
    argument uses.
    """
    if ell < 1:
        raise DomainError("partition length starts at 1")
    best = [1] * (ell + 1)
    for n in range(1, ell + 1):
        best[n] = max((k + 1) * best[n - k] for k in range(1, n + 1))
    return best[ell]


def histogram(values: Iterable[float], bins: int) -> List[Tuple[float, float, int]]:
    """Equal-width histogram rows (lo, hi, count) spanning the value range."""
    vals = sorted(values)
    if not vals or bins < 1:
        return []
    lo, hi = vals[0], vals[-1]
    if lo == hi:
        return [(lo, hi, len(vals))]
    width = (hi - lo) / bins
    rows = []
    idx = 0
    for b in range(bins):
        top = hi if b == bins - 1 else lo + (b + 1) * width
        start = idx
        while idx < len(vals) and (vals[idx] <= top or b == bins - 1):
            idx += 1
        rows.append((lo + b * width, top, idx - start))
    return rows
