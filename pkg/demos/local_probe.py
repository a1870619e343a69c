"""Watch f^n - g^n stop being of the form h - h^p near t = 0.

Over GF(4) with f = 1/t and g = 1/t + 1 the difference is locally of that form
for n = 1, 3, 5 and fails at n = 7, where v(x_n) drops below the bound.
"""

from frobrig import GF, LaurentSeries, as_solvable_local, parse_poly, prop41_probe

F4 = GF(2, 2)
f = LaurentSeries.from_lpoly(parse_poly("t^-1", F4))
g = LaurentSeries.from_lpoly(parse_poly("t^-1+1", F4))

rep = prop41_probe(f, g, 15)
print(f"case {rep.case}, slope c = {rep.c}")
print(f"{'n':>3} {'v(z_n)':>7} {'v(x_n)':>7} {'bound':>6}  verdict")
for r in rep.rows:
    mark = "*" if r.flagged else " "
    print(f"{r.n:>3} {r.v_z:>7} {r.v_x!s:>7} {r.bound!s:>6} {mark} {r.verdict}")

res = as_solvable_local(f**7 - g**7)
print("reduced principal part at n = 7:", res.reduced_principal)
