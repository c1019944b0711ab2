"""Walk through the three-element dynamical group: tables, groupoid, DOT."""

from dynbraid import functor_q, verify_dyn_group
from dynbraid.fixtures import example_2_7
from dynbraid.groupoid import export_dot

g = example_2_7()
print("phi:\n", g.phi)
for lam in range(g.lambda_size):
    print(f"product at l{lam + 1}:\n", g.product[lam])
print("verdict:", verify_dyn_group(g))

q = functor_q(g, ("l1", "l2", "l3"))
print(f"groupoid with {q.n_objects} objects and {q.n_morphisms} arrows")
print(export_dot(q))
