"""Type A3: characters with three mutable variables, and a one-sided vanishing.

For the cluster-tilting object T = 1 + 3 + 13/2 + projectives, stable maps
T -> ΣT vanish, while stable maps ΣT -> T do not: the suspension of the
simple 1 is 3/2, which maps onto the simple 3.
"""

from ccx import CharacterEngine, bundled_fixture, load_fixture
from ccx.frobenius import StableHom, suspend


def main():
    fx = load_fixture(bundled_fixture("a3_preprojective"))
    td = fx.tilting
    print(f"T = {' + '.join(td.names)}  (n = {td.n}, r = {td.r})")

    eng = CharacterEngine(fx)
    for name in ("1/2", "2/1", "2", "2/13"):
        print(f"  X({name}) = {eng.cluster_character(fx.module(name))}")

    pairs = eng.multiplication_pairs()
    ok = sum(eng.check_multiplication(fx.category.catalog[a], fx.category.catalog[b]).ok for a, b in pairs)
    print(f"\nmultiplication formula: {ok}/{len(pairs)} pairs")

    print("\ndim of stable Hom between summands of T and their suspensions:")
    print("         T_i -> ΣT_j    ΣT_i -> T_j")
    for Ti, ni in zip(td.T[:td.r], td.names):
        a = [StableHom(Ti, suspend(Tj)).dim for Tj in td.T[:td.r]]
        b = [StableHom(suspend(Ti), Tj).dim for Tj in td.T[:td.r]]
        print(f"  {ni:>5}   {a}      {b}")


if __name__ == "__main__":
    main()
