"""Unmixed depth-4 circuits: sums of products of univariates in distinct variables.

A gate is ``beta * f_1(x_1) * ... * f_n(x_n)`` with every stored ``f_j``
monic and non-constant; constants and leading coefficients are folded into
``beta`` at construction, so factor-set comparisons (pseudo-gcd, the
common-factor witness) reduce to exact equality of coefficient tuples.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping, Sequence
from itertools import combinations, product
from math import prod

from .errors import CircuitError, FieldMismatchError, InvariantError, ResourceError
from .ff import resolve_field
from .poly import DEFAULT_TERM_BUDGET, SparsePoly, UnivariatePoly, d_operator


class UnmixedProduct:
    """One multiplication gate ``beta * prod_j f_j(x_j)``.

    ``factors`` maps a variable index to a :class:`UnivariatePoly` or to a
    plain coefficient list (constant term first). Non-monic factors are
    normalised; a zero factor or ``beta == 0`` yields the zero gate.
    """

    __slots__ = ("n", "beta", "factors", "field")

    def __init__(self, n: int, beta: int = 1, factors: Mapping | None = None, field=None):
        self.field = resolve_field(field)
        self.n = n
        p = self.field.p
        beta %= p
        stored = {}
        for var, f in (factors or {}).items():
            if not 1 <= var <= n:
                raise CircuitError(f"factor variable x{var} outside 1..{n}")
            if not isinstance(f, UnivariatePoly):
                f = UnivariatePoly(f, var, self.field)
            if f.var != var:
                raise CircuitError(f"factor stored at x{var} is univariate in x{f.var}")
            self.field.check_same(f.field)
            if f.is_zero():
                beta = 0
                continue
            lc, monic = f.monic()
            beta = beta * lc % p
            if not monic.is_constant():
                stored[var] = monic
        self.beta = beta
        self.factors = dict(sorted(stored.items())) if beta else {}

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.factors.values())

    def is_zero(self) -> bool:
        return self.beta == 0

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.field.p
        acc = self.beta
        for var, f in self.factors.items():
            if not acc:
                break
            acc = acc * f.evaluate(point[var - 1]) % p
        return acc

    def with_beta(self, beta: int) -> "UnmixedProduct":
        return UnmixedProduct(self.n, beta, self.factors, self.field)

    def __eq__(self, other):
        if not isinstance(other, UnmixedProduct):
            return NotImplemented
        return (self.n, self.beta, self.factors, self.field) == (other.n, other.beta, other.factors, other.field)

    def __hash__(self):
        return hash((self.n, self.beta, tuple(self.factors.items())))

    def __repr__(self):
        fs = " ".join(f"({f})" for f in self.factors.values())
        return f"UnmixedProduct({self.beta} {fs})".replace(" )", ")")


class UnmixedCircuit:
    """``C = F_1 + ... + F_k`` over ``n`` variables with a total-degree cap (default ``n``)."""

    __slots__ = ("n", "gates", "degree_cap", "field")

    def __init__(self, n: int, gates: Iterable[UnmixedProduct], degree_cap: int | None = None, field=None):
        gates = tuple(gates)
        if not gates:
            raise CircuitError("a circuit needs at least one gate")
        self.field = resolve_field(field if field is not None else gates[0].field)
        self.n = n
        self.degree_cap = n if degree_cap is None else degree_cap
        for i, g in enumerate(gates, 1):
            if g.n != n:
                raise FieldMismatchError(f"gate {i} has n={g.n}, circuit has n={n}")
            self.field.check_same(g.field)
            if g.degree > self.degree_cap:
                raise CircuitError(f"gate {i} has degree {g.degree} > cap {self.degree_cap}")
        self.gates = gates

    @property
    def k(self) -> int:
        return len(self.gates)

    def __eq__(self, other):
        if not isinstance(other, UnmixedCircuit):
            return NotImplemented
        return (self.n, self.gates, self.degree_cap, self.field) == (
            other.n, other.gates, other.degree_cap, other.field)

    def __hash__(self):
        return hash((self.n, self.gates, self.degree_cap))

    def __repr__(self):
        return f"UnmixedCircuit(n={self.n}, k={self.k}, gates={list(self.gates)})"


def expand_gate(F: UnmixedProduct, budget: int = DEFAULT_TERM_BUDGET) -> SparsePoly:
    """Sparse expansion of a gate.

    Factors live in distinct variables, so monomials never collide and the
    term count is exactly the product of the factor sparsities.
    """
    if F.is_zero():
        return SparsePoly.zero(F.n, F.field)
    size = prod(f.sparsity() for f in F.factors.values())
    if size > budget:
        raise ResourceError(f"gate expansion needs {size} terms (budget {budget})")
    p = F.field.p
    per_var = [[(d, c) for d, c in enumerate(f.coeffs) if c] for f in F.factors.values()]
    vars_ = list(F.factors)
    terms = {}
    for combo in product(*per_var):
        e = [0] * F.n
        c = F.beta
        for var, (d, cf) in zip(vars_, combo):
            e[var - 1] = d
            c = c * cf % p
        terms[tuple(e)] = c
    return SparsePoly._raw(F.n, terms, F.field)


def expand_circuit(C: UnmixedCircuit, budget: int = DEFAULT_TERM_BUDGET) -> SparsePoly:
    total = SparsePoly.zero(C.n, C.field)
    for g in C.gates:
        total = total + expand_gate(g, budget)
    return total


def evaluate_circuit(C: UnmixedCircuit, point: Sequence[int]) -> int:
    """Black-box evaluation, gate by gate with Horner on each factor; never expands."""
    if len(point) != C.n:
        raise ValueError(f"point has arity {len(point)}, expected {C.n}")
    p = C.field.p
    pt = [int(v) % p for v in point]
    return sum(g.evaluate(pt) for g in C.gates) % p


def subcircuit(C: UnmixedCircuit, A: Iterable[int]) -> UnmixedCircuit:
    """Gates whose 1-based indices are in ``A``, original order kept."""
    idx = sorted(set(A))
    if not idx:
        raise CircuitError("subcircuit index set must be nonempty")
    if idx[0] < 1 or idx[-1] > C.k:
        raise CircuitError(f"gate indices must lie in 1..{C.k}")
    return UnmixedCircuit(C.n, [C.gates[i - 1] for i in idx], C.degree_cap, C.field)


def _require_nonzero(gates):
    for i, g in enumerate(gates, 1):
        if g.is_zero():
            raise CircuitError(f"gate {i} is identically zero; pseudo-gcd is undefined")


def pseudo_gcd(gates: Sequence[UnmixedProduct]) -> UnmixedProduct:
    """Product of the monic factors stored identically in every gate."""
    gates = list(gates)
    if not gates:
        raise CircuitError("pseudo-gcd of an empty gate list")
    _require_nonzero(gates)
    first = gates[0]
    common = {
        var: f for var, f in first.factors.items()
        if all(g.factors.get(var) == f for g in gates[1:])
    }
    return UnmixedProduct(first.n, 1, common, first.field)


def is_pseudo_simple(C: UnmixedCircuit) -> bool:
    # k == 1: the single gate is its own pseudo-gcd.
    return not pseudo_gcd(C.gates).factors


def simplify(C: UnmixedCircuit) -> tuple:
    """``(G, C')`` with ``G`` the pseudo-gcd and ``C'`` every gate divided by it."""
    G = pseudo_gcd(C.gates)
    reduced = [
        UnmixedProduct(g.n, g.beta, {v: f for v, f in g.factors.items() if v not in G.factors}, g.field)
        for g in C.gates
    ]
    return G, UnmixedCircuit(C.n, reduced, C.degree_cap, C.field)


ZeroOracle = Callable[[UnmixedCircuit], bool]


def is_minimal(C: UnmixedCircuit, zero_test: ZeroOracle) -> bool:
    """No proper nonempty subcircuit is identically zero (``2^k - 2`` oracle calls).

    A single-gate circuit is minimal by convention.
    """
    _require_nonzero(C.gates)
    k = C.k
    for size in range(1, k):
        for A in combinations(range(1, k + 1), size):
            if zero_test(subcircuit(C, A)):
                return False
    return True


def difference_product(g: UnivariatePoly, gate: UnmixedProduct, budget: int = DEFAULT_TERM_BUDGET) -> SparsePoly:
    """``prod_{j=1..n} (g - g_j)`` with ``g_j`` the gate's factor at ``x_j`` (1 if absent)."""
    n = gate.n
    G = g.to_sparse(n)
    one = SparsePoly.constant(1, n, gate.field)
    out = one
    for j in range(1, n + 1):
        gj = gate.factors[j].to_sparse(n) if j in gate.factors else one
        out = out * (G - gj)
        if len(out) > budget:
            raise ResourceError(f"difference product exceeds {budget} terms")
    return out


def common_factor_witness(gates: Sequence[UnmixedProduct]):
    """A factor ``(var, g)`` of gate 1 such that every other gate's difference product vanishes.

    Returns ``None`` when no factor of gate 1 qualifies. Ties go to the
    smallest variable index.
    """
    gates = list(gates)
    if not gates:
        raise CircuitError("witness search over an empty gate list")
    _require_nonzero(gates)
    for var, g in gates[0].factors.items():
        if all(difference_product(g, other).is_zero() for other in gates[1:]):
            return var, g
    return None


def divides_by_d_operator(f: UnivariatePoly, Q: SparsePoly) -> bool:
    """Indecomposable divisibility via the vanishing of ``D_{x_i=c}(f, Q)`` with ``f(c) != 0``."""
    if f.is_constant():
        raise CircuitError("divisor must be non-constant")
    c = 0
    while f.evaluate(c) == 0:
        c += 1
    return d_operator(f.to_sparse(Q.n), Q, {f.var: c}).is_zero()


def divides_by_division(f: UnivariatePoly, Q: SparsePoly) -> bool:
    """Indecomposable divisibility by matching ``Q = f * H`` slice by slice in ``x_i``."""
    if f.is_constant():
        raise CircuitError("divisor must be non-constant")
    f.field.check_same(Q.field)
    i = f.var - 1
    if i >= Q.n:
        raise CircuitError(f"x{f.var} outside 1..{Q.n}")
    slices: dict = {}
    for e, c in Q.terms.items():
        rest = e[:i] + (0,) + e[i + 1:]
        slices.setdefault(e[i], {})[rest] = c
    deg = f.degree
    if any(d > deg for d in slices):
        return False
    p = Q.field.p
    inv_lc = Q.field.inv(f.leading)
    H = {r: c * inv_lc % p for r, c in slices.get(deg, {}).items()}
    for d in range(deg + 1):
        fd = f.coeffs[d]
        expected = {r: c * fd % p for r, c in H.items()} if fd else {}
        if expected != slices.get(d, {}):
            return False
    return True


def divides_indecomposably(f: UnivariatePoly, Q: SparsePoly) -> bool:
    """True iff ``Q = f * H`` with ``H`` free of ``f``'s variable; both routes must agree."""
    a = divides_by_d_operator(f, Q)
    b = divides_by_division(f, Q)
    if a != b:
        raise InvariantError(f"D-operator route says {a}, division route says {b} for f={f}, Q={Q}")
    return a


def circuit_size(C: UnmixedCircuit) -> int:
    """``max(2, largest factor sparsity, k, n)``.

    Every bound the construction states in terms of the size is monotone in
    it, so taking the maximum of the candidate readings keeps them all valid.
    """
    fac = max((f.sparsity() for g in C.gates for f in g.factors.values()), default=0)
    return max(2, fac, C.k, C.n)
