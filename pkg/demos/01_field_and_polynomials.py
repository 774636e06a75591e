"""Field arithmetic, sparse polynomials and the projected-sparsity inequality."""

from unmixedpit import PrimeField, parse_poly, projected_sparsity, restrict, sparsity

F = PrimeField(101)
print(f"57 + 50 = {F(57) + F(50)} in F_101, 1/7 = {F(7).inverse()}")

P = parse_poly("x1*x2 + 3*x1^2 + x2 + 1", 2, F)
print("P =", P)
print("sparsity", sparsity(P), "| projected on {x1}:", projected_sparsity(P, {1}))
print("P(x1, 2) =", restrict(P, {2: 2}))

# for any partition of the variables into k blocks,
# sparsity^(k-1) is at most the product of the projected sparsities
Q = P * P
lhs = sparsity(Q)
rhs = projected_sparsity(Q, {1}) * projected_sparsity(Q, {2})
print(f"P^2 has {lhs} terms; {lhs} <= {rhs}")
