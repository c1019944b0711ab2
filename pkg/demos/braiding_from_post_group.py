"""From a post-group to a braided group, its solution, and both non-degeneracy readings."""

from dynbraid import (
    braided_to_solution,
    check_dybe,
    check_nondegenerate,
    check_nondegenerate_fibered,
    post_to_braided,
    post_to_skewbrace,
    sub_adjacent,
)
from dynbraid.fixtures import example_4_3

p = example_4_3()
b = post_to_braided(p)
R = braided_to_solution(b)
print("sub-adjacent product:\n", sub_adjacent(p).product)
print("skew brace circ:\n", post_to_skewbrace(p).circ)
print("R(l1)(1, 1) =", R(0, 1, 1))
print("DYBE:", check_dybe(R))
print("non-degenerate, fibered reading:", check_nondegenerate_fibered(R))
print("non-degenerate, literal reading:", check_nondegenerate(R))
