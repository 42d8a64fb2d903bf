"""Walk through the preprojective algebra of type A2 from modules to characters.

Run with ``python demos/a2_walkthrough.py``.
"""

from ccx import CharacterEngine, load_fixture
from ccx.algebra import cartan_matrix
from ccx.modules import ext1_dim


def main():
    fx = load_fixture()
    cat, td = fx.category, fx.tilting
    print(f"algebra {fx.algebra.name}: dimension {fx.algebra.dim} over F_{fx.prime}")
    print("catalog:", ", ".join(f"{n}{' (projective)' if p else ''}" for n, p in zip(cat.names, cat.projective)))

    # The only non-split extensions sit between the two simples.
    S1, S2 = fx.module("1"), fx.module("2")
    print(f"dim Ext^1(1, 2) = {ext1_dim(S1, S2)}, dim Ext^1(2, 1) = {ext1_dim(S2, S1)}")

    print(f"\nT = {' + '.join(td.names)} with r = {td.r} non-projective summand(s)")
    print("Cartan matrix of End(T):")
    for row in cartan_matrix(td.B).tolist():
        print("   ", row)

    print("\nindex of 2        :", td.index(S2))
    print("opposite index of 2:", td.op_index(S2))
    print("theta of 1         :", td.theta(S1))
    print("phi matrix         :", td.phi_matrix.ravel().tolist())

    eng = CharacterEngine(fx)
    print("\ncharacters:")
    for name in cat.names:
        M = fx.module(name)
        print(f"  X({name:>2}) = {eng.cluster_character(M)}")

    v = eng.check_multiplication(S1, S2)
    print(f"\nX(1) * X(2) = {v.product}")
    print(f"X({v.L}) + X({v.L_prime}) = {v.total}  -> {'equal' if v.ok else 'different'}")

    for name in ("1", "2"):
        s = eng.check_specialization(fx.module(name))
        print(f"set x2 = x3 = 1 for {name}: {s.x_value}, stable character of its suspension: {s.palu_value}")


if __name__ == "__main__":
    main()
