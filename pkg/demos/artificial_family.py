"""The (3, *, 5, 5) artificial family: where the characteristic variety really lives.

Prints the classification for z4 = 1 and z4 = 0, an explicit isolated characteristic
point, and the rank of the symbol there.  The isolated point is what pushes L to 5.
"""

from charspan.charvar import classify, variety_span
from charspan.elemred import elem_flag, elemchar_report
from charspan.fixtures import FixtureParams, artificial_355
from charspan.tableau import symbol_at

ISOLATED = (1, 1, 1, 1, 0)
ON_COMPONENT = (-1, 1, 0, 2, 1)


def main():
    for z4 in (1, 0):
        t = artificial_355(FixtureParams(z4=z4))
        rep = classify(t)
        print(f"== z4 = {z4}")
        print(f"(ell, L, nu, n)  {(rep.ell, rep.L, rep.nu, rep.n)}")
        print(f"S basis          {[tuple(map(str, v)) for v in rep.S.vectors]}")
        print(f"flag dims        {elem_flag(t).dims}")
        for xi in (ON_COMPONENT, ISOLATED):
            m = symbol_at(t, xi)
            print(f"symbol rank at {xi}: {m.rank()} of {t.r}")
        cd = variety_span(t)
        print("slicing log:")
        for rec in cd.slice_log:
            print(f"  stage {rec.stage} round {rec.round} cuts {rec.cuts}: {rec.status} ({rec.points} points)")
        rep7 = elemchar_report(t)
        print(f"elemchar repaired={rep7.repaired_holds} literal={rep7.literal_holds}")
        print()
    uncert = variety_span(artificial_355(), certify=False)
    print(f"top-dimensional slicing alone gives L = {uncert.L}; certification adds the isolated point")


if __name__ == "__main__":
    main()
