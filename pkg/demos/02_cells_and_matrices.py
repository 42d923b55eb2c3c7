"""Projective functors F_ij, their cells, and the matrices of the cell 2-representation."""

import numpy as np

from treecells import Algebra, OneMorphism, cell_rep_matrices, cells, compose, path_instance

alg = Algebra(path_instance(3))  # 1 - 2 - 3 with vertex 3 special
n = alg.n

# F_12 o F_23 has dim(e_2 A e_2) = 2 copies of F_13
f = compose(alg, OneMorphism.F(n, 1, 2), OneMorphism.F(n, 2, 3))
print("F(1,2) o F(2,3) =", f.summands())

cs = cells(alg)
print("two-sided cells:", cs.two_sided_cells)
print("left cells:", cs.left_cells)

mats = cell_rep_matrices(alg)
h = alg.cartan_matrix()
ok = all(np.array_equal(mats[i, j] @ mats[k, l], h[j - 1, k - 1] * mats[i, l])
         for (i, j) in mats for (k, l) in mats)
print("[F_ij][F_kl] = dim(e_j A e_k) [F_il]:", ok)
for i in range(1, n + 1):
    print(f"trace [F({i},{i})] = {np.trace(mats[i, i])}")
