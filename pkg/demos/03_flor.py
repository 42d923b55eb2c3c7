"""Block normal form of nonnegative (quasi-)idempotent matrices."""

from fractions import Fraction

import numpy as np

from treecells import Algebra, NotIdempotent, cell_rep_matrices, flor_decompose, path_instance, verify_flor
from treecells.flor import block_display

half = Fraction(1, 2)
m = np.array([[0, half, half, 0], [0, 1, 1, 0], [0, 0, 0, 0], [0, 0, 0, 1]], dtype=object)
form = flor_decompose(m)
print(block_display(m, form))
print("core classes:", [[i + 1 for i in c] for c in form.core_classes])
print("certificate checks:", verify_flor(m, form))

# [F_ii] of a cell 2-representation satisfies M^2 = k_i M
alg = Algebra(path_instance(3))
f22 = cell_rep_matrices(alg)[2, 2]
form = flor_decompose(f22)
print(f"[F(2,2)] has scale {form.scale}; JB block nonzero: {not form.blocks_absent()}")

try:
    flor_decompose([[0, 1], [0, 0]])
except NotIdempotent as exc:
    print("nilpotent input rejected:", exc)
