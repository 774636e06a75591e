"""Black-box identity testing with the generator-based hitting set.

Full-strength parameters are far too large for anything but tiny
circuits, so the identity below is run with explicit overrides. Every
verdict reached that way is tagged EXPERIMENTAL.
"""

from unmixedpit import (ResourceError, UnivariatePoly, UnmixedCircuit, UnmixedProduct,
                        black_box_pit, build_hitting_set, evaluate_circuit, random_zero_circuit)

C = random_zero_circuit(1, 2, seed=3)
try:
    build_hitting_set(C)
except ResourceError as exc:
    print("default parameters:", exc)

H = build_hitting_set(C, m=2, u_size=3)
print(f"|H| = {len(H)}, tag {H.meta['tag']}")
res = black_box_pit(C, H)
print("verdict", res.verdict.name, res.tag)

# drop one gate: now the circuit is nonzero and a witness turns up
D = UnmixedCircuit(C.n, C.gates[:-1], field=C.field, degree_cap=C.degree_cap)
res = black_box_pit(D, build_hitting_set(D, m=2, u_size=3))
print("verdict", res.verdict.name, "witness value", evaluate_circuit(D, res.witness))

# a single linear gate is small enough for the certified parameters
tiny = UnmixedCircuit(1, [UnmixedProduct(1, 1, {1: UnivariatePoly([4, 1], 1)})])
res = black_box_pit(tiny, build_hitting_set(tiny))
print("tiny circuit:", res.verdict.name, res.tag, f"after {res.checked} points")
