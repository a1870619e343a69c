"""Tabulate the point-count chain for two quadratics over GF(2).

#S_d grows like deg(f) q^d while the points where f and g can agree up to
Frobenius grow like d q^(d/2); the break depth is where the two cross.
"""

from frobrig import GF, counting_report, parse_poly

F2 = GF(2)
rep = counting_report(parse_poly("t^2+t", F2), parse_poly("t^2+t+1", F2), 6)
print(f"q = {rep.q}, slack B = {rep.slack_B}, break depth = {rep.break_depth}")
print(f"{'d':>2} {'#S_d':>6} {'lower':>6} {'upper^2':>9}  contained")
for row in rep.rows:
    print(f"{row.d:>2} {row.s_d:>6} {row.lower:>6} {row.upper_sq:>9}  {row.contained}")
first = next(row for row in rep.rows if not row.contained)
print(f"first disagreement at d = {first.d}: y = {first.witness.y}")
