"""Compare a few pairs of maps of the affine line with every checker."""

from frobrig import MapPair, parse_field, parse_poly, theorem_crosscheck

PAIRS = [
    ("GF(2)", "t^3+t", "t^12+t^4"),
    ("GF(2)", "t^2+t", "t^2+t+1"),
    ("GF(3)", "t", "2t"),
    ("GF(2^2)", "w*t+1", "(w+1)*t^2+1"),
]


def describe(v):
    if v.kind == "equivalent":
        return f"equivalent, a={v.a} b={v.b}"
    if v.kind == "inconclusive":
        return f"no disagreement up to {v.depth}"
    w = v.witness
    if w is None:
        return "different Frobenius cores"
    if hasattr(w, "y"):
        return f"point y={w.y} of degree {w.degree}: f(y)={w.f_value}, g(y)={w.g_value}"
    return f"torsor t^{w.n} pulls back to different classes"


if __name__ == "__main__":
    for field, f, g in PAIRS:
        ctx = parse_field(field)
        rep = theorem_crosscheck(MapPair(parse_poly(f, ctx), parse_poly(g, ctx)), D=3, N=30, decide=True)
        print(f"{field}: f = {f}, g = {g}")
        for name in ("frobenius", "topological", "h1", "decided"):
            print(f"  {name:<12} {describe(getattr(rep, name))}")
