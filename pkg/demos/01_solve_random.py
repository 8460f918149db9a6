"""Solve one dense random instance and inspect the run report.

Generates G(100, 0.8), runs the solver with the dense profile for a few
seconds, and checks the returned witness really is a balanced biclique.
"""

from mbbp import SolverParams, gen_random, is_biclique, solve

g = gen_random(100, 0.8, seed=7)
print(f"instance: {g.n_u} x {g.n_v} vertices, {g.edge_count} edges")

report = solve(g, SolverParams.dense(time_limit=5.0, seed=1))

print(f"balanced biclique of size {report.omega} x {report.omega}")
print(f"  X = {sorted(report.best.x)}")
print(f"  Y = {sorted(v - g.n_u for v in report.best.y)}  (V-side ids)")
print(f"  proven optimal: {report.proven_optimal}")
print(f"  found after {report.time_to_best:.2f}s, "
      f"{report.restarts} restarts in {report.total_time:.2f}s")

# the report is self-checking material: verify against the original graph
assert is_biclique(g, report.best)
assert len(report.best.x) == len(report.best.y) == report.omega
print("witness verified against the instance")
