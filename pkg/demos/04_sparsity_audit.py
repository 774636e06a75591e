"""Audit planted zero circuits against the gate-sparsity bound."""

from unmixedpit import random_zero_circuit, simplify, sparsity_audit

print("sparsities\tbound\tzero\tpseudo_simple\tminimal\tresult")
for seed in range(8):
    _, C = simplify(random_zero_circuit(1 + seed % 2, 3, seed=seed))
    report = sparsity_audit(C)
    print(report.to_tsv())
