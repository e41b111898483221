"""
The twelve-vertex key instance with a type-1 vertex u
=====================================================

Total weight 6, no basic factor reaches it, and yet nothing positive is
even at u.  Retyping u as type-2 changes the picture.
"""

from collections import Counter

from factorum.generate import trap_key
from factorum.solver import main_solve
from factorum.structure import (
    even_at_u_candidates,
    enumerate_basic_factors,
    find_even_at_u_basic_factor,
)
from factorum.errors import PreconditionError

key, u = trap_key()
print("n =", key.n, "m =", key.m, "total =", sum(key.weights))

res = main_solve(key)
print("optimum", res.weight, "using", len(res.outcome.edges), "edges")

basics = list(enumerate_basic_factors(key))
print(Counter(b.shape.name for b in basics))
for b in sorted(basics, key=lambda b: -b.weight):
    deg_u = sum(1 for e, _ in key.graph.adj[u] if e in b.edges.members)
    print(f"{b.shape.name:9s} weight {str(b.weight):5s} deg at u {deg_u}")

print("positive and even at u:", even_at_u_candidates(key, u))
try:
    find_even_at_u_basic_factor(key, u)
except PreconditionError as exc:
    print("rejected:", exc)

key2, _ = trap_key(u_type=2)
bf = find_even_at_u_basic_factor(key2, u)
deg_u = sum(1 for e, _ in key2.graph.adj[u] if e in bf.edges.members)
print("type-2 u:", bf.shape.name, bf.weight, "deg at u", deg_u)
