"""Hitting sets for unmixed depth-4 circuits with ``k`` top-level gates.

The generator ``S_{l,m}`` splices ``l`` independent copies of the sparse
generator ``L_m`` coordinate by coordinate, steered by step polynomials
``W_i(z)`` that switch from 0 to 1 as ``z`` runs through the anchors
``c_0 .. c_n``::

    S^i_0 = 0
    S^i_l = S^i_{l-1} * W_i(z_l) + L^i(y_l) * (1 - W_i(z_l))

Seed variables are ordered ``y_1[1..q], ..., y_l[1..q], z_1, ..., z_l``.
The circuit hitting set is the image of ``S_{k,m}`` over ``U^(qk + k)``.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .circuit import UnmixedCircuit, circuit_size, evaluate_circuit, expand_gate
from .errors import CircuitError, ResourceError
from .ff import PrimeField, resolve_field
from .poly import DEFAULT_TERM_BUDGET, SparsePoly, compose, interpolate
from .sparsegen import (DEFAULT_POINT_BUDGET, HittingSet, PolynomialMap, enumerate_image,
                        l_generator)

CERTIFIED = "CERTIFIED"
EXPERIMENTAL = "EXPERIMENTAL"


def theorem_sparsity(s: int, k: int) -> int:
    """The sparsity parameter ``s^(5k^2 + 2)`` the hitting-set guarantee needs."""
    return s ** (5 * k * k + 2)


def theorem_u_size(n: int) -> int:
    return n ** 3 + 1


@dataclass(frozen=True)
class StepFamily:
    """``W_1 .. W_n`` with ``W_i(c_j) = 1`` for ``j >= i`` and 0 otherwise."""

    anchors: tuple
    steps: tuple

    @property
    def n(self) -> int:
        return len(self.steps)

    def values(self, z: int) -> tuple:
        return tuple(w.evaluate(z) for w in self.steps)


def step_polynomials(anchors: Sequence[int], field=None) -> StepFamily:
    """Interpolate the ``n`` step polynomials (degree <= n) through ``n + 1`` anchors."""
    field = resolve_field(field)
    anchors = tuple(a % field.p for a in anchors)
    if len(set(anchors)) != len(anchors):
        raise ValueError("anchors must be distinct")
    n = len(anchors) - 1
    if n < 1:
        raise ValueError("need at least two anchors")
    steps = []
    for i in range(1, n + 1):
        table = [1 if j >= i else 0 for j in range(n + 1)]
        w = interpolate(anchors, table, 1, field)
        if [w.evaluate(c) for c in anchors] != table:
            raise AssertionError(f"W_{i} misses its value table")
        steps.append(w)
    return StepFamily(anchors, tuple(steps))


@dataclass
class SGenerator:
    l: int
    m: int
    n: int
    d: int
    base: PolynomialMap
    steps: StepFamily
    field: PrimeField
    budget: int = DEFAULT_TERM_BUDGET
    _lcache: dict = dc_field(default_factory=dict, repr=False, compare=False)
    _wcache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def arity(self) -> int:
        return self.q * self.l + self.l

    def y_positions(self, j: int) -> list:
        """1-based seed indices of block ``y_j``."""
        return list(range((j - 1) * self.q + 1, j * self.q + 1))

    def z_position(self, j: int) -> int:
        return self.q * self.l + j

    def evaluate(self, seed: Sequence[int]) -> tuple:
        """Numeric evaluation by running the recursion on field values."""
        if len(seed) != self.arity:
            raise ValueError(f"seed has {len(seed)} entries, expected {self.arity}")
        q, p = self.q, self.field.p
        vals = (0,) * self.n
        for j in range(self.l):
            y = tuple(seed[j * q:(j + 1) * q])
            z = seed[q * self.l + j]
            lv = self._lcache.get(y)
            if lv is None:
                lv = self._lcache[y] = self.base.evaluate(y)
            wv = self._wcache.get(z)
            if wv is None:
                wv = self._wcache[z] = self.steps.values(z)
            vals = tuple((s * w + b * (1 - w)) % p for s, b, w in zip(vals, lv, wv))
        return vals

    __call__ = evaluate

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_lcache"], state["_wcache"] = {}, {}
        state.pop("levels", None)
        return state

    def base_block(self, i: int, j: int) -> SparsePoly:
        """``L^i(y_j)`` placed in the full seed space."""
        return self.base.coords[i - 1].embed(self.arity, self.y_positions(j))

    def step_at(self, i: int, j: int) -> SparsePoly:
        """``W_i(z_j)`` placed in the full seed space."""
        return self.steps.steps[i - 1].to_sparse(self.arity, self.z_position(j))

    @cached_property
    def levels(self) -> list:
        """Symbolic coordinates of ``S_0 .. S_l``, all in the level-``l`` seed space."""
        zero = SparsePoly.zero(self.arity, self.field)
        one = SparsePoly.constant(1, self.arity, self.field)
        levels = [tuple(zero for _ in range(self.n))]
        for j in range(1, self.l + 1):
            row = []
            for i in range(1, self.n + 1):
                w = self.step_at(i, j)
                coord = levels[-1][i - 1] * w + self.base_block(i, j) * (one - w)
                if len(coord) > self.budget:
                    raise ResourceError(f"S^{i}_{j} has {len(coord)} terms (budget {self.budget})")
                row.append(coord)
            levels.append(tuple(row))
        return levels

    @property
    def coords(self) -> tuple:
        return self.levels[self.l]

    def as_map(self) -> PolynomialMap:
        bound = max(self.base.individual_degree_bound, self.n)
        return PolynomialMap(self.arity, self.coords, bound, self.field,
                             {"l": self.l, "m": self.m, "q": self.q})


def s_generator(l: int, m: int, n: int, d: int, anchors: Sequence[int] | None = None, field=None,
                method: str = "kronecker", grid_anchors: Sequence[int] | None = None,
                budget: int = DEFAULT_TERM_BUDGET, max_points: int = DEFAULT_POINT_BUDGET) -> SGenerator:
    """Depth-``l`` splice of ``L_m`` for ``n`` variables and degree bound ``d``.

    ``anchors`` are ``c_0..c_n`` (default ``0..n``); ``grid_anchors`` are the
    interpolation nodes of ``L_m`` (default ``1..max(n, 2)``).
    """
    if l < 1:
        raise ValueError("recursion depth must be >= 1")
    field = resolve_field(field)
    anchors = tuple(range(n + 1)) if anchors is None else tuple(anchors)
    if len(anchors) != n + 1:
        raise ValueError(f"need {n + 1} anchors c_0..c_n")
    base = l_generator(n, m, d, field, method, grid_anchors, max_points)
    return SGenerator(l, m, n, d, base, step_polynomials(anchors, field), field, budget)


def restriction_identity_check(S: SGenerator, d: int) -> bool:
    """Whether ``S_l`` with ``z_l := c_d`` equals ``(S^1_{l-1}..S^d_{l-1}, L^{d+1}(y_l)..L^n(y_l))``
    coordinate by coordinate, compared on canonical text."""
    if not 0 <= d <= S.n:
        raise ValueError(f"d must lie in 0..{S.n}")
    l = S.l
    cd = S.steps.anchors[d]
    restricted = [c.restrict({S.z_position(l): cd}) for c in S.levels[l]]
    spliced = [S.levels[l - 1][i - 1] if i <= d else S.base_block(i, l) for i in range(1, S.n + 1)]
    return all(str(a) == str(b) for a, b in zip(restricted, spliced))


class _ImageSource:
    """Picklable ``(start, stop) -> iterator`` over the generator image."""

    def __init__(self, S: SGenerator, U: Sequence[int]):
        self.S = S
        self.U = tuple(U)

    def __call__(self, start, stop):
        return enumerate_image(self.S, self.U, budget=math.inf, start=start, stop=stop)


def hitting_set_for(n: int, k: int, s: int, d: int, field=None, *, m: int | None = None,
                    u_size: int | None = None, method: str = "auto",
                    anchors: Sequence[int] | None = None,
                    max_points: int = DEFAULT_POINT_BUDGET,
                    budget: int = DEFAULT_TERM_BUDGET) -> HittingSet:
    """Hitting set for every circuit with at most ``k`` gates, size <= ``s`` and
    total degree <= ``d`` in ``n`` variables.

    With ``m`` and ``u_size`` left unset the theorem-grade parameters are used
    and the set is tagged CERTIFIED; any override tags it EXPERIMENTAL.
    """
    field = resolve_field(field)
    certified = m is None and u_size is None
    m = theorem_sparsity(s, k) if m is None else m
    u_size = theorem_u_size(n) if u_size is None else u_size
    if u_size >= field.p:
        raise ResourceError(f"|U| = {u_size} does not fit in F_{field.p}")
    S = s_generator(k, m, n, d, anchors, field, method, budget=budget, max_points=max_points)
    size = u_size ** S.arity
    meta = {
        "n": n, "k": k, "s": s, "d": d, "m": m, "q": S.q, "u_size": u_size,
        "seed_arity": S.arity, "construction": S.base.meta["construction"],
        "sparse_size": S.base.meta["hitting_set_size"],
        "tag": CERTIFIED if certified else EXPERIMENTAL,
    }
    if size > max_points:
        hint = "" if not certified else "; pass m/u_size overrides for a desk-scale EXPERIMENTAL run"
        raise ResourceError(f"hitting set has {size} points (budget {max_points}){hint}")
    U = tuple(range(u_size))
    return HittingSet(n, meta=meta, source=_ImageSource(S, U), size=size, field=field)


def build_hitting_set(C: UnmixedCircuit, **overrides) -> HittingSet:
    """The hitting set for ``C``'s parameter class; see :func:`hitting_set_for`."""
    return hitting_set_for(C.n, C.k, circuit_size(C), C.degree_cap, C.field, **overrides)


class Verdict(enum.Enum):
    ZERO = "ZERO"
    NONZERO = "NONZERO"


@dataclass(frozen=True)
class PITResult:
    verdict: Verdict
    witness: tuple | None
    tag: str
    checked: int

    @property
    def is_zero(self) -> bool:
        return self.verdict is Verdict.ZERO

    @property
    def certified(self) -> bool:
        return self.tag == CERTIFIED


def _check_meta(C: UnmixedCircuit, H: HittingSet):
    meta = H.meta
    if H.n != C.n:
        raise CircuitError(f"hitting set is for n={H.n}, circuit has n={C.n}")
    if H.field != C.field:
        raise CircuitError("hitting set and circuit live over different fields")
    if "k" in meta and meta["k"] < C.k:
        raise CircuitError(f"hitting set covers k <= {meta['k']}, circuit has k={C.k}")
    if "k" in meta and meta["s"] < circuit_size(C):
        raise CircuitError(f"hitting set covers size <= {meta['s']}, circuit has size {circuit_size(C)}")
    if "k" in meta and meta["d"] < C.degree_cap:
        raise CircuitError(f"hitting set covers degree <= {meta['d']}, circuit cap is {C.degree_cap}")


def _scan(C: UnmixedCircuit, H: HittingSet, start: int, stop: int):
    for rank, pt in enumerate(H.iter_range(start, stop), start):
        if evaluate_circuit(C, pt):
            return rank, pt
    return None


def black_box_pit(C: UnmixedCircuit, H: HittingSet, jobs: int = 1, chunk: int = 4096) -> PITResult:
    """Evaluate ``C`` on every point of ``H``; NONZERO carries the first witness in rank order.

    With ``jobs > 1`` rank windows are scanned in worker processes and the
    earliest window holding a witness wins, so the result matches ``jobs=1``.
    """
    _check_meta(C, H)
    tag = H.meta.get("tag", EXPERIMENTAL)
    if jobs <= 1 or H.size <= chunk:
        hit = _scan(C, H, 0, H.size)
    else:
        hit = None
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_scan, C, H, a, min(a + chunk, H.size))
                       for a in range(0, H.size, chunk)]
            for fut in futures:
                hit = fut.result()
                if hit is not None:
                    for rest in futures:
                        rest.cancel()
                    break
    if hit is None:
        return PITResult(Verdict.ZERO, None, tag, H.size)
    rank, pt = hit
    if not evaluate_circuit(C, pt):
        raise AssertionError("witness does not re-evaluate to nonzero")
    return PITResult(Verdict.NONZERO, tuple(pt), tag, rank + 1)


def compose_circuit_with_generator(C: UnmixedCircuit, S: SGenerator,
                                   budget: int = DEFAULT_TERM_BUDGET) -> SparsePoly:
    """The circuit polynomial pulled back through ``S``, in ``S.arity`` seed variables."""
    if C.n != S.n:
        raise CircuitError(f"generator has {S.n} outputs, circuit has {C.n} variables")
    M = S.as_map()
    total = SparsePoly.zero(S.arity, C.field)
    for g in C.gates:
        total = total + compose(expand_gate(g, budget), M, budget)
        if len(total) > budget:
            raise ResourceError(f"composition exceeds {budget} terms")
    return total


def composition_profile(P: SparsePoly) -> dict:
    """Term count, total degree and per-seed-variable degrees of a composition."""
    return {"terms": len(P), "total_degree": P.degree(), "individual_degrees": P.degree_profile()}
