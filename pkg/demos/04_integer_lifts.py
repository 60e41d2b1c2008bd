#!/usr/bin/env python3
"""From words back to integer triples, and how big those triples get.

Replaying a rotation word from (1,1,1) over the integers produces a lift
of the word's mod-p endpoint.  Sizes obey ln(size) <= E ln(3*eps) with
eps = (3+sqrt(5))/2 and E = 2^(s-1) prod(|n_i|+1) over the word's reduced
segments.  Coordinates past the digit cap switch to log tracking, so even
astronomically large lifts report their size.
"""

import math

from markoff import growth_bound_ln, minimal_lift_search, replay_integer
from markoff.lifts import tree_level_count, tree_level_log_sizes
from markoff.words import PathWord

# small exact replays: the first-axis powers are odd-index Fibonacci pairs
for text in ("r1^2", "r1^5", "r1^2.r2^-1", "r3^4.r1^2"):
    word = PathWord.parse(text)
    lift = replay_integer(word)
    print(f"{text:12s} -> {lift.coords}   ln(size) = {lift.log_size:8.3f}   "
          f"bound = {growth_bound_ln(word):9.3f}")

# a word that outgrows 60 thousand bits: exact and log tracking agree
word = PathWord.from_steps([(1, 2), (2, 2)] * 6)
exact = replay_integer(word)
rough = replay_integer(word, digit_cap=30)
print()
print(f"{word}: {max(exact.coords).bit_length()} bits")
print(f"  exact ln(size)  {exact.log_size:.6f}")
print(f"  logged ln(size) {rough.log_size:.6f} (exact = {rough.exact})")

# smallest congruent lift by forward search
print()
for p, target in ((29, (1, 1, 2)), (59, (1, 34, 30))):
    lift = minimal_lift_search(p, target)
    print(f"smallest found lift of {target} mod {p}: {lift.coords}")

# the rotation tree: 3 * 2^(L-1) nodes per level, sizes spread out fast
print()
for level in (1, 4, 8, 12):
    sizes = tree_level_log_sizes(level)
    assert len(sizes) == tree_level_count(level)
    print(f"level {level:2d}: {len(sizes):5d} nodes, "
          f"ln(size) in [{min(sizes):7.2f}, {max(sizes):7.2f}], "
          f"mean {sum(sizes)/len(sizes):7.2f}")
print(f"(the level-L maximum stays under (2^L - 1) ln 3 = "
      f"{(2**12 - 1) * math.log(3):.0f} at L = 12)")
