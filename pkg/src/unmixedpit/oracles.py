"""Ground truth for cross-checking the hitting-set test.

* :func:`brute_force_is_zero` expands every gate and sums canonically.
* :func:`schwartz_zippel_is_zero` evaluates at uniformly random points.
* :func:`random_unmixed_circuit` / :func:`random_zero_circuit` generate
  reproducible instances, the latter from the distributive-law identity
  ``prod_j (a_j + b_j) - sum_T prod_{j in T} a_j prod_{j not in T} b_j = 0``.
* :func:`sparsity_audit` checks the gate-sparsity bound for zero circuits
  that are pseudo-simple and minimal.

All randomness goes through :class:`FieldRNG`: Python's MT19937
(``random.Random``) seeded with an integer, with field elements drawn by
rejection sampling below the largest multiple of ``p`` that fits in the
drawn bit width, so every seed reproduces bit for bit on any platform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import prod

from .circuit import (UnmixedCircuit, UnmixedProduct, circuit_size, evaluate_circuit,
                      expand_circuit, expand_gate, is_minimal, is_pseudo_simple)
from .errors import CircuitError, InvariantError
from .ff import PrimeField, resolve_field
from .poly import DEFAULT_TERM_BUDGET, UnivariatePoly


class FieldRNG:
    def __init__(self, seed: int, field: PrimeField | None = None):
        self.field = resolve_field(field)
        self._rng = random.Random(seed)
        p = self.field.p
        self._bits = 64 * -(-p.bit_length() // 64)
        self._limit = ((1 << self._bits) // p) * p

    def element(self) -> int:
        while True:
            x = self._rng.getrandbits(self._bits)
            if x < self._limit:
                return x % self.field.p

    def nonzero(self) -> int:
        while True:
            x = self.element()
            if x:
                return x

    def random(self) -> float:
        return self._rng.random()

    def randint(self, a: int, b: int) -> int:
        return self._rng.randint(a, b)

    def shuffle(self, seq: list) -> None:
        self._rng.shuffle(seq)

    def monic(self, var: int, degree: int) -> UnivariatePoly:
        return UnivariatePoly([self.element() for _ in range(degree)] + [1], var, self.field)


def brute_force_is_zero(C: UnmixedCircuit, budget: int = DEFAULT_TERM_BUDGET) -> bool:
    return expand_circuit(C, budget).is_zero()


def schwartz_zippel_witness(C: UnmixedCircuit, trials: int = 20, seed: int = 0):
    """First of ``trials`` uniform random points where ``C`` is nonzero, or ``None``."""
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = FieldRNG(seed, C.field)
    for _ in range(trials):
        pt = tuple(rng.element() for _ in range(C.n))
        if evaluate_circuit(C, pt):
            return pt
    return None


def schwartz_zippel_is_zero(C: UnmixedCircuit, trials: int = 20, seed: int = 0) -> bool:
    """One-sided: a nonzero circuit of degree D survives each trial with probability <= D/p."""
    return schwartz_zippel_witness(C, trials, seed) is None


def _expansion_identity(rng: FieldRNG, variables: list, n: int, max_factor_degree: int,
                        retries: int = 100):
    """Gates of ``prod_j (a_j + b_j) - sum_T ...`` over ``variables``."""
    pairs = []
    for j in variables:
        for _ in range(retries):
            a = rng.monic(j, rng.randint(0, max_factor_degree))
            b = rng.monic(j, rng.randint(0, max_factor_degree))
            if a != b and not (a + b).is_constant():
                break
        else:
            raise CircuitError(f"could not draw a usable factor pair for x{j}")
        pairs.append((a, b))
    r = len(variables)
    gates = [UnmixedProduct(n, 1, {j: a + b for j, (a, b) in zip(variables, pairs)}, rng.field)]
    for size in range(r, -1, -1):
        for T in combinations(range(r), size):
            chosen = {variables[t]: pairs[t][0] if t in T else pairs[t][1] for t in range(r)}
            gates.append(UnmixedProduct(n, -1, chosen, rng.field))
    return gates


def random_zero_circuit(r: int, n: int, seed: int = 0, max_factor_degree: int = 2,
                        field=None) -> UnmixedCircuit:
    """Planted identically-zero circuit with ``k = 2^r + 1`` gates.

    The degree cap is the larger of ``n`` and the biggest gate degree.
    Zero-ness is re-verified by expansion before returning.
    """
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= n")
    rng = FieldRNG(seed, field)
    gates = _expansion_identity(rng, list(range(1, r + 1)), n, max_factor_degree)
    C = UnmixedCircuit(n, gates, max(n, max(g.degree for g in gates)), rng.field)
    if not brute_force_is_zero(C):
        raise InvariantError("planted circuit is not identically zero")
    return C


def _split_gates(rng: FieldRNG, gates: list, k: int) -> list:
    """Split gates ``beta F`` into ``beta1 F + beta2 F`` until there are ``k`` of them."""
    gates = list(gates)
    while len(gates) < k:
        i = rng.randint(0, len(gates) - 1)
        g = gates[i]
        b1 = rng.nonzero()
        if b1 == g.beta:
            continue
        gates[i:i + 1] = [g.with_beta(b1), g.with_beta(g.beta - b1)]
    return gates


def _planted_zero(rng: FieldRNG, n: int, k: int, max_factor_degree: int, degree_cap: int) -> list:
    if k == 1:
        return [UnmixedProduct(n, 0, None, rng.field)]
    if k == 2:
        g = _random_gate(rng, n, max_factor_degree, 1.0, degree_cap)
        return [g, g.with_beta(-g.beta)]
    r = 1
    while 2 ** (r + 1) + 1 <= k and r + 1 <= min(n, degree_cap):
        r += 1
    variables = list(range(1, n + 1))
    rng.shuffle(variables)
    used, spare = sorted(variables[:r]), variables[r:]
    per_factor = max(1, min(max_factor_degree, degree_cap // r))
    gates = _expansion_identity(rng, used, n, per_factor)
    room = degree_cap - max(g.degree for g in gates)
    if spare and room >= 1 and rng.random() < 0.5:
        # shared factor in an unused variable: still zero, no longer pseudo-simple
        var = spare[0]
        common = rng.monic(var, rng.randint(1, min(max_factor_degree, room)))
        gates = [UnmixedProduct(n, g.beta, {**g.factors, var: common}, rng.field) for g in gates]
    return _split_gates(rng, gates, k)


def _random_gate(rng: FieldRNG, n: int, max_factor_degree: int, density: float,
                 degree_cap: int) -> UnmixedProduct:
    order = list(range(1, n + 1))
    rng.shuffle(order)
    room = degree_cap
    factors = {}
    for var in order:
        if room >= 1 and rng.random() < density:
            deg = rng.randint(1, min(max_factor_degree, room))
            factors[var] = rng.monic(var, deg)
            room -= deg
    return UnmixedProduct(n, rng.nonzero(), factors, rng.field)


def random_unmixed_circuit(n: int, k: int, max_factor_degree: int = 2, factor_density: float = 0.7,
                           zero_fraction: float = 0.0, seed: int = 0, field=None,
                           degree_cap: int | None = None) -> UnmixedCircuit:
    """Reproducible random circuit; with probability ``zero_fraction`` a planted zero one.

    ``degree_cap`` defaults to ``n * max_factor_degree`` and is respected by
    every emitted gate.
    """
    if n < 1 or k < 1 or max_factor_degree < 1:
        raise ValueError("need n, k, max_factor_degree >= 1")
    rng = FieldRNG(seed, field)
    cap = n * max_factor_degree if degree_cap is None else degree_cap
    if rng.random() < zero_fraction:
        gates = _planted_zero(rng, n, k, max_factor_degree, cap)
    else:
        gates = [_random_gate(rng, n, max_factor_degree, factor_density, cap) for _ in range(k)]
    return UnmixedCircuit(n, gates, cap, rng.field)


@dataclass(frozen=True)
class AuditReport:
    sparsities: tuple
    bound: int
    pseudo_simple: bool
    minimal: bool
    zero: bool
    passed: bool

    def to_tsv(self) -> str:
        flag = lambda b: "true" if b else "false"  # noqa: E731
        return "\t".join([
            ",".join(map(str, self.sparsities)), str(self.bound), flag(self.pseudo_simple),
            flag(self.minimal), flag(self.zero), "pass" if self.passed else "FAIL",
        ])


def sparsity_audit(C: UnmixedCircuit, budget: int = DEFAULT_TERM_BUDGET) -> AuditReport:
    """Check ``max_i ||F_i|| <= s^(5k^2)`` whenever ``C`` is zero, pseudo-simple and minimal."""
    sparsities = tuple(len(expand_gate(g, budget)) for g in C.gates)
    s = circuit_size(C)
    bound = s ** (5 * C.k * C.k)
    zero = brute_force_is_zero(C, budget)
    if any(g.is_zero() for g in C.gates):
        pseudo_simple = minimal = False
    else:
        pseudo_simple = is_pseudo_simple(C)
        minimal = is_minimal(C, lambda sub: brute_force_is_zero(sub, budget))
    passed = not (zero and pseudo_simple and minimal) or max(sparsities) <= bound
    return AuditReport(sparsities, bound, pseudo_simple, minimal, zero, passed)


def gate_sparsity_product(g: UnmixedProduct) -> int:
    """``prod ||f_j||`` without expanding; 0 for the zero gate."""
    return 0 if g.is_zero() else prod(f.sparsity() for f in g.factors.values())
