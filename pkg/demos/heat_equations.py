"""Walk through the heat-equation tableaux: characters, characteristic variety, reduction flag."""

from charspan.charvar import classify
from charspan.elemred import elem_flag
from charspan.fixtures import heat_1d, heat_2d
from charspan.tableau import b_matrix


def show(name, t):
    rep = classify(t)
    flag = elem_flag(t)
    print(f"== {name}")
    print(f"characters       {rep.characters}")
    print(f"(ell, L, nu, n)  {(rep.ell, rep.L, rep.nu, rep.n)}")
    print(f"char ideal       {[g.to_str() for g in rep.char_ideal.generators] or ['0']}")
    print(f"span of variety  {[tuple(map(str, v)) for v in rep.span.vectors]}")
    print(f"elementary       {rep.elementary}")
    print(f"flag dims        {flag.dims} (depth {flag.depth}, {flag.terminal_reason})")
    print()


if __name__ == "__main__":
    show("1D heat", heat_1d())
    t = heat_2d()
    show("2D heat", t)
    for lam, k in [(2, 3), (1, 3), (1, 2)]:
        print(f"B(u^{lam})(u_{k}) =", [[str(x) for x in row] for row in b_matrix(t, lam, k).rows])
