"""Exhaustive search for simple transitive 2-representations at the level of integer matrices."""

import time

from treecells import Algebra, SearchBounds, check_candidate, classify, parse_tree_spec, search

alg = Algebra(parse_tree_spec("vertices 3\nedge 1 2\nedge 2 3\nspecial 3\n"))
bounds = SearchBounds(r_max=alg.n + 1, entry_cap=2)

start = time.perf_counter()
sols = search(alg, bounds, require_faithful=True, require_diag_dichotomy=True)
print(f"{len(sols)} faithful solution(s) with the diagonal dichotomy in {time.perf_counter() - start:.1f}s")
for rep in sols:
    report = check_candidate(alg, rep)
    print(f"  r={rep.r}, cartanB={rep.cartan_b.tolist()}, cell tensor: {report.checks['cell_tensor']}")

verdict = classify(alg, bounds)
print("confirmed:", verdict.confirmed)
print(f"{len(verdict.extras)} further solutions without the dichotomy, for example:")
for rep, violated in verdict.extras[:3]:
    print(f"  r={rep.r} cartanB={rep.cartan_b.tolist()} violates {violated}")
