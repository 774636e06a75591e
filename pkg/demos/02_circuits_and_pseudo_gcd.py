"""Unmixed circuits: the zero identity, pseudo-gcd and simplification."""

from unmixedpit import (UnivariatePoly, UnmixedCircuit, UnmixedProduct, brute_force_is_zero,
                        common_factor_witness, expand_circuit, is_pseudo_simple, parse_circuit,
                        pseudo_gcd, serialize_circuit, simplify)

# (x1+1)(x2+1) - x1 x2 - x1 - x2 - 1 over F_101
C = parse_circuit("""\
vars 2
field 101
term 1 (x1: 1,1) (x2: 1,1)
term 100 (x1: 0,1) (x2: 0,1)
term 100 (x1: 0,1)
term 100 (x2: 0,1)
term 100
""")
print(serialize_circuit(C), end="")
print("expansion:", expand_circuit(C), "| zero:", brute_force_is_zero(C))

# two gates sharing the factor x1 + 2
p = 101
shared = UnivariatePoly([2, 1], 1, p)
g1 = UnmixedProduct(2, 3, {1: shared, 2: UnivariatePoly([0, 1], 2, p)}, p)
g2 = UnmixedProduct(2, 5, {1: shared}, p)
D = UnmixedCircuit(2, [g1, g2], field=p)
print("\npseudo-gcd factors:", pseudo_gcd(D.gates).factors)
print("witness found:", common_factor_witness(D.gates) is not None)
print("pseudo-simple before:", is_pseudo_simple(D))
gcd, reduced = simplify(D)
print("pseudo-simple after:", is_pseudo_simple(reduced))
print(serialize_circuit(reduced), end="")
