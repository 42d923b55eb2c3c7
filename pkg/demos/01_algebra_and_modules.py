"""The algebra of the star with two special leaves, and its indecomposable projectives."""

from treecells import Algebra, is_self_injective, loewy_report, parse_tree_spec, projective_module, tensor_dim

SPEC = """
vertices 4
edge 1 2
edge 2 3
edge 2 4
special 3 4
"""

alg = Algebra(parse_tree_spec(SPEC))
print(f"dim A = {alg.dim} (4n - 2 - |S| = {4 * 4 - 2 - 2})")
print("basis:", " ".join(b.label() for b in alg.basis))
print("associative:", alg.check_associativity())

# Cartan entry (s, t) counts the paths from t to s that survive the relations
print("Cartan matrix:\n", alg.cartan_matrix())

for i in range(1, alg.n + 1):
    rep = loewy_report(projective_module(alg, i))
    layers = [dict(sorted(c.items())) for c in rep.layers]
    print(f"P{i}: Loewy layers {layers}, socle {dict(rep.socle)}")

# special leaves have non-injective projectives, so A is not self-injective
print("self-injective:", is_self_injective(alg))

# balanced tensor products e_j A (x) A e_k have the same size as e_j A e_k
print("tensor dims agree:", all(tensor_dim(alg, j, k) == alg.hom_dim(j, k)
                               for j in range(1, 5) for k in range(1, 5)))
