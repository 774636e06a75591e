import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from unmixedpit import (FieldMismatchError, PolynomialMap, ResourceError, SparsePoly, UnivariatePoly,
                        compose, d_operator, evaluate, parse_poly, poly_ring_ops, projected_sparsity,
                        restrict, sparsity, var_set)
from unmixedpit.ff import DEFAULT_FIELD
from unmixedpit.poly import interpolate, lagrange_basis

from conftest import P61, elements, from_sympy, sparse_polys, to_sympy


def poly(text, n=3, p=P61):
    return parse_poly(text, n, p)


# The running example: x1^2 x2^5 x3 + x1^3 x2 x3^6 + x1 - x1.
EXAMPLE = "x1^2*x2^5*x3 + x1^3*x2*x3^6"


def test_example_with_cancelling_pair_has_sparsity_two():
    x1 = SparsePoly.variable(1, 3)
    P = poly(EXAMPLE) + x1 - x1
    assert sparsity(P) == 2
    assert poly_ring_ops(poly(EXAMPLE) + x1, x1, "sub") == poly(EXAMPLE)


def test_projected_sparsity_examples():
    P = poly(EXAMPLE)
    assert projected_sparsity(P, {2, 3}) == 2
    assert projected_sparsity(P, set()) == sparsity(P)
    assert projected_sparsity(poly("x1*x2 + x1*x3"), {2, 3}) == 1


def test_projected_sparsity_does_not_merge_coefficients():
    # x1*x2 - x1*x3 collapses onto x1 twice; the pattern still counts once, not zero
    P = poly("x1*x2") - poly("x1*x3")
    assert projected_sparsity(P, {2, 3}) == 1


def test_ring_op_examples():
    x1 = SparsePoly.variable(1, 1)
    assert poly_ring_ops(x1 + 1, x1 - 1, "mul") == poly("x1^2", 1) - 1
    P = poly(EXAMPLE)
    assert poly_ring_ops(P, -P, "add").is_zero()
    with pytest.raises(ValueError):
        poly_ring_ops(P, P, "div")


def test_ring_ops_reject_mismatches():
    with pytest.raises(ValueError):
        poly_ring_ops(poly("x1", 1), poly("x1", 2), "add")
    with pytest.raises(FieldMismatchError):
        poly_ring_ops(poly("x1", 1, 101), poly("x1", 1, 103), "mul")


def test_evaluate_examples():
    x1 = SparsePoly.variable(1, 1)
    assert evaluate(x1 * x1 - 1, (1,)) == 0
    assert evaluate(SparsePoly.zero(3), (4, 5, 6)) == 0
    assert evaluate(poly(EXAMPLE), (1, 1, 1)) == 2
    with pytest.raises(ValueError):
        evaluate(poly(EXAMPLE), (1, 1))


def test_restrict_examples():
    assert restrict(poly("x1*x2 + x2", 2), {1: 0}) == poly("x2", 2)
    P = poly(EXAMPLE)
    assert restrict(P, {}) == P
    assert restrict(P, {2: 1, 3: 1}) == poly("x1^3 + x1^2")
    with pytest.raises(ValueError):
        restrict(P, {4: 1})


def test_sparsity_and_var_set_examples():
    assert sparsity(SparsePoly.zero(2)) == 0
    assert sparsity(SparsePoly.constant(5, 2)) == 1
    assert var_set(poly("x1*x3 + 1")) == {1, 3}
    assert var_set(SparsePoly.constant(7, 3)) == frozenset()
    x1, x2 = SparsePoly.variable(1, 2), SparsePoly.variable(2, 2)
    assert var_set(x2 * (x2 - x2) + x1) == {1}


def test_d_operator_examples():
    x1, x2 = SparsePoly.variable(1, 2), SparsePoly.variable(2, 2)
    assert d_operator(x1, x2, {1: 3}) == x1 * x2 - x2.scale(3)
    assert d_operator(x1 + 1, (x1 + 1) * x2, {1: 0}).is_zero()
    P = poly(EXAMPLE)
    assert d_operator(P, P, {2: 5}).is_zero()


def test_compose_examples():
    t = SparsePoly.variable(1, 1)
    x = parse_poly("x1 + x2", 2)
    assert compose(x, PolynomialMap(1, (t, t), 1)) == t.scale(2)
    xy = parse_poly("x1*x2", 2)
    assert compose(xy, PolynomialMap(1, (t**2, t**3), 3)) == t**5
    P = poly(EXAMPLE)
    assert compose(P, PolynomialMap.identity(3)) == P
    with pytest.raises(ValueError):
        compose(P, PolynomialMap.identity(2))


def test_compose_respects_the_term_budget():
    y = [SparsePoly.variable(i, 4) for i in range(1, 5)]
    M = PolynomialMap(4, (sum(y, SparsePoly.zero(4)),), 1)
    with pytest.raises(ResourceError):
        compose(parse_poly("x1^6", 1), M, budget=50)


def test_canonical_text():
    assert str(poly("1 + 3*x3*x1^2")) == "3*x1^2*x3 + 1"
    assert str(SparsePoly.zero(2)) == "0"
    assert str(poly("x2 + x1 + x1*x2 + x1^2", 2)) == "x1^2 + x1*x2 + x1 + x2"
    assert str(SparsePoly.constant(-1, 1, 101)) == "100"


@given(sparse_polys())
def test_text_round_trip(P):
    assert parse_poly(str(P), P.n, P.field) == P


@settings(max_examples=60)
@given(st.data())
def test_ring_ops_agree_with_sympy(data):
    n = data.draw(st.integers(1, 3))
    P = data.draw(sparse_polys(n=n, max_terms=5))
    Q = data.draw(sparse_polys(n=n, max_terms=5))
    sP, sQ = to_sympy(P), to_sympy(Q)
    assert poly_ring_ops(P, Q, "add") == from_sympy(sP + sQ, n, P61)
    assert poly_ring_ops(P, Q, "sub") == from_sympy(sP - sQ, n, P61)
    assert poly_ring_ops(P, Q, "mul") == from_sympy(sP * sQ, n, P61)


@given(st.data())
def test_evaluation_is_a_ring_homomorphism(data):
    n = data.draw(st.integers(1, 4))
    P = data.draw(sparse_polys(n=n))
    Q = data.draw(sparse_polys(n=n))
    pt = data.draw(st.tuples(*[elements() for _ in range(n)]))
    F = DEFAULT_FIELD
    a, b = evaluate(P, pt), evaluate(Q, pt)
    assert evaluate(poly_ring_ops(P, Q, "add"), pt) == F.add(a, b)
    assert evaluate(poly_ring_ops(P, Q, "sub"), pt) == F.sub(a, b)
    assert evaluate(poly_ring_ops(P, Q, "mul"), pt) == F.mul(a, b)


@given(st.data())
def test_restriction_commutes_over_disjoint_sets(data):
    n = data.draw(st.integers(2, 4))
    P = data.draw(sparse_polys(n=n))
    left = data.draw(st.sets(st.integers(1, n), min_size=1))
    right = data.draw(st.sets(st.integers(1, n).filter(lambda i: i not in left)))
    a = {i: data.draw(elements()) for i in left}
    b = {i: data.draw(elements()) for i in right}
    both = restrict(P, {**a, **b})
    assert restrict(restrict(P, a), b) == both
    assert restrict(restrict(P, b), a) == both
    assert not var_set(both) & (left | right)


@given(st.data())
def test_full_restriction_is_evaluation(data):
    n = data.draw(st.integers(1, 4))
    P = data.draw(sparse_polys(n=n))
    pt = data.draw(st.tuples(*[elements() for _ in range(n)]))
    R = restrict(P, dict(enumerate(pt, 1)))
    assert R.is_constant()
    assert R.coefficient((0,) * n) == evaluate(P, pt)


@given(sparse_polys())
def test_projected_sparsity_edge_cases(P):
    assert projected_sparsity(P, set()) == sparsity(P)
    assert projected_sparsity(P, set(range(1, P.n + 1))) == (0 if P.is_zero() else 1)


@settings(max_examples=200)
@given(st.data())
def test_shearer_inequality(data):
    n = data.draw(st.integers(2, 6))
    P = data.draw(sparse_polys(n=n, max_terms=12, max_exp=2))
    k = data.draw(st.integers(2, 4))
    labels = data.draw(st.lists(st.integers(0, k), min_size=n, max_size=n))
    parts = [{i + 1 for i, lab in enumerate(labels) if lab == j} for j in range(k)]
    bound = 1
    for A in parts:
        bound *= projected_sparsity(P, A)
    assert sparsity(P) ** (k - 1) <= bound


@given(st.data())
def test_d_operator_matches_pointwise_definition(data):
    n = data.draw(st.integers(1, 3))
    P = data.draw(sparse_polys(n=n, max_terms=4))
    Q = data.draw(sparse_polys(n=n, max_terms=4))
    A = data.draw(st.sets(st.integers(1, n), min_size=1))
    a = {i: data.draw(elements()) for i in A}
    D = d_operator(P, Q, a)
    assert D == poly_ring_ops(P, restrict(Q, a), "mul") - poly_ring_ops(restrict(P, a), Q, "mul")
    # pointwise: D(x) = P(x) Q(x|a) - P(x|a) Q(x), evaluated without any symbolic product
    p = P61
    for _ in range(3):
        x = [data.draw(elements()) for _ in range(n)]
        xa = [a.get(i + 1, v) for i, v in enumerate(x)]
        want = (evaluate(P, x) * evaluate(Q, xa) - evaluate(P, xa) * evaluate(Q, x)) % p
        assert evaluate(D, x) == want


@settings(max_examples=40)
@given(st.data())
def test_compose_agrees_with_pointwise_substitution(data):
    n = data.draw(st.integers(1, 3))
    q = data.draw(st.integers(1, 3))
    P = data.draw(sparse_polys(n=n, max_terms=4, max_exp=2))
    coords = tuple(data.draw(sparse_polys(n=q, max_terms=3, max_exp=2)) for _ in range(n))
    M = PolynomialMap(q, coords, 2)
    C = compose(P, M)
    seed = data.draw(st.tuples(*[elements() for _ in range(q)]))
    assert evaluate(C, seed) == evaluate(P, M.evaluate(seed))


@given(st.data())
def test_composition_is_multiplicative(data):
    P = data.draw(sparse_polys(n=2, max_terms=3, max_exp=2))
    Q = data.draw(sparse_polys(n=2, max_terms=3, max_exp=2))
    t = SparsePoly.variable(1, 1)
    M = PolynomialMap(1, (t + 2, t**2 + t), 2)
    assert compose(P * Q, M) == compose(P, M) * compose(Q, M)


def test_univariate_basics():
    f = UnivariatePoly([4, 0, 2], var=2, field=101)
    assert f.degree == 2 and f.leading == 2 and not f.is_monic()
    lc, g = f.monic()
    assert lc == 2 and g == UnivariatePoly([2, 0, 1], 2, 101)
    assert g.evaluate(3) == 11
    assert f.sparsity() == 2
    assert f.to_sparse(3) == parse_poly("2*x2^2 + 4", 3, 101)
    assert UnivariatePoly([0, 0], field=101).is_zero()
    assert UnivariatePoly([5], field=101).is_constant()


def test_lagrange_interpolation_hits_its_nodes():
    rng = random.Random(3)
    nodes = [rng.randrange(P61) for _ in range(5)]
    values = [rng.randrange(P61) for _ in range(5)]
    f = interpolate(nodes, values)
    assert f.degree <= 4
    assert [f.evaluate(x) for x in nodes] == values
    basis = lagrange_basis(nodes)
    assert len(basis) == 5
    with pytest.raises(ValueError):
        lagrange_basis([1, 2, 1])


@given(st.lists(elements(), min_size=1, max_size=4), st.lists(elements(), min_size=1, max_size=4))
def test_univariate_ops_match_sparse(a, b):
    f, g = UnivariatePoly(a), UnivariatePoly(b)
    assume(not f.is_zero() or not g.is_zero())
    for op in ("__add__", "__sub__", "__mul__"):
        assert getattr(f, op)(g).to_sparse(1) == getattr(f.to_sparse(1), op)(g.to_sparse(1))
