"""Sparse multivariate and dense univariate polynomials over a prime field.

A :class:`SparsePoly` stores its terms as ``{exponent tuple: coefficient}``
where the exponent tuple is the full multi-index ``(i_1, ..., i_n)`` and the
coefficient is a nonzero residue. Zero coefficients never survive an
operation, so two polynomials are equal exactly when their term dicts are,
and the canonical text form (terms in descending graded-lex order) is a
faithful fingerprint.

Variables are 1-based in every public signature: ``x1`` is index 1.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence

from .errors import FieldMismatchError, ResourceError
from .ff import PrimeField, resolve_field

DEFAULT_TERM_BUDGET = 10**7


def _grlex_key(exps):
    return (sum(exps), exps)


def _clean(raw: dict, p: int) -> dict:
    out = {}
    for e, c in raw.items():
        c %= p
        if c:
            out[e] = c
    return out


def _power_table(values: Mapping[int, int], maxdeg: Mapping[int, int], p: int):
    """``table[i][e] = values[i]**e mod p`` for every e up to ``maxdeg[i]``."""
    table = {}
    for i, v in values.items():
        row = [1]
        for _ in range(maxdeg.get(i, 0)):
            row.append(row[-1] * v % p)
        table[i] = row
    return table


class SparsePoly:
    """Immutable canonical sparse polynomial in ``n`` variables over ``field``."""

    __slots__ = ("n", "field", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping | None = None, field: PrimeField | int | None = None):
        if n < 0:
            raise ValueError("variable count must be non-negative")
        self.n = n
        self.field = resolve_field(field)
        raw = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad multi-index {e} for n={n}")
            raw[e] = raw.get(e, 0) + int(c)
        self._terms = _clean(raw, self.field.p)
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict, field: PrimeField) -> "SparsePoly":
        # Trusted constructor: terms already reduced, nonzero, well-shaped.
        obj = cls.__new__(cls)
        obj.n = n
        obj.field = field
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, n: int, field=None) -> "SparsePoly":
        return cls._raw(n, {}, resolve_field(field))

    @classmethod
    def constant(cls, c: int, n: int, field=None) -> "SparsePoly":
        return cls(n, {(0,) * n: c}, field)

    @classmethod
    def variable(cls, i: int, n: int, field=None) -> "SparsePoly":
        if not 1 <= i <= n:
            raise ValueError(f"variable x{i} outside 1..{n}")
        e = [0] * n
        e[i - 1] = 1
        return cls._raw(n, {tuple(e): 1}, resolve_field(field))

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict:
        """Read-only view is not enforced; do not mutate."""
        return self._terms

    def sorted_terms(self) -> list:
        """``(multi-index, coefficient)`` pairs in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def coefficient(self, exps: Sequence[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i - 1] for e in self._terms), default=0)

    def degree_profile(self) -> tuple:
        """Per-variable (individual) degrees."""
        return tuple(self.degree_in(i) for i in range(1, self.n + 1))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "SparsePoly"):
        if self.n != other.n:
            raise FieldMismatchError(f"variable counts differ: {self.n} vs {other.n}")
        self.field.check_same(other.field)

    def _lift(self, other):
        if isinstance(other, SparsePoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return SparsePoly.constant(other, self.n, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePoly._raw(self.n, _clean(out, self.field.p), self.field)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return SparsePoly._raw(self.n, {e: p - c for e, c in self._terms.items()}, self.field)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> "SparsePoly":
        p = self.field.p
        c %= p
        if not c:
            return SparsePoly.zero(self.n, self.field)
        return SparsePoly._raw(self.n, {e: v * c % p for e, v in self._terms.items()}, self.field)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return SparsePoly._raw(self.n, _clean(out, self.field.p), self.field)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "SparsePoly":
        if e < 0:
            raise ValueError("negative exponent")
        result = SparsePoly.constant(1, self.n, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.n == other.n and self.field == other.field and self._terms == other._terms
        if isinstance(other, int):
            return self == SparsePoly.constant(other, self.n, self.field)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.field.p, frozenset(self._terms.items())))
        return self._hash

    # -- evaluation and substitution ---------------------------------------

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.n:
            raise ValueError(f"point has arity {len(point)}, expected {self.n}")
        p = self.field.p
        values = {i: int(v) % p for i, v in enumerate(point)}
        table = _power_table(values, {i: self.degree_in(i + 1) for i in range(self.n)}, p)
        total = 0
        for e, c in self._terms.items():
            t = c
            for i, x in enumerate(e):
                if x:
                    t = t * table[i][x] % p
            total += t
        return total % p

    __call__ = evaluate

    def restrict(self, assignment: Mapping[int, int]) -> "SparsePoly":
        """Substitute ``x_i := assignment[i]``; the result keeps all ``n`` slots."""
        for i in assignment:
            if not 1 <= i <= self.n:
                raise ValueError(f"assignment to x{i} outside 1..{self.n}")
        if not assignment:
            return self
        p = self.field.p
        idx = {i - 1: int(v) % p for i, v in assignment.items()}
        table = _power_table(idx, {i: self.degree_in(i + 1) for i in idx}, p)
        out: dict = {}
        for e, c in self._terms.items():
            ne = list(e)
            for i in idx:
                if e[i]:
                    c = c * table[i][e[i]] % p
                    ne[i] = 0
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + c
        return SparsePoly._raw(self.n, _clean(out, p), self.field)

    def embed(self, n_new: int, positions: Sequence[int]) -> "SparsePoly":
        """Rename variable ``x_i`` to ``x_{positions[i-1]}`` in an ``n_new``-variable ring."""
        if len(positions) != self.n or len(set(positions)) != self.n:
            raise ValueError("positions must be n distinct target indices")
        if any(not 1 <= t <= n_new for t in positions):
            raise ValueError("target index out of range")
        out = {}
        for e, c in self._terms.items():
            ne = [0] * n_new
            for i, x in enumerate(e):
                ne[positions[i] - 1] = x
            out[tuple(ne)] = c
        return SparsePoly._raw(n_new, out, self.field)

    # -- text --------------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" if x == 1 else f"x{i + 1}^{x}" for i, x in enumerate(e) if x
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"SparsePoly(n={self.n}, p={self.field.p}, {self})"


_FACTOR_RE = re.compile(r"^(?:(\d+)|x(\d+)(?:\^(\d+))?)$")


def parse_poly(text: str, n: int, field=None) -> SparsePoly:
    """Inverse of ``str(SparsePoly)``; also accepts repeated factors like ``2*x1*x1``."""
    field = resolve_field(field)
    text = text.strip()
    if text == "0":
        return SparsePoly.zero(n, field)
    terms: dict = {}
    for raw in text.split("+"):
        raw = raw.strip()
        if not raw:
            raise ValueError(f"empty term in {text!r}")
        coeff, exps = 1, [0] * n
        for factor in raw.split("*"):
            m = _FACTOR_RE.match(factor.strip())
            if not m:
                raise ValueError(f"cannot parse factor {factor!r}")
            if m.group(1) is not None:
                coeff *= int(m.group(1))
            else:
                i = int(m.group(2))
                if not 1 <= i <= n:
                    raise ValueError(f"x{i} outside 1..{n}")
                exps[i - 1] += int(m.group(3) or 1)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return SparsePoly(n, terms, field)


# -- operations on sparse polynomials ---------------------------------------

_RING_OPS = {"add": SparsePoly.__add__, "sub": SparsePoly.__sub__, "mul": SparsePoly.__mul__}


def poly_ring_ops(P: SparsePoly, Q: SparsePoly, op: str) -> SparsePoly:
    if op not in _RING_OPS:
        raise ValueError(f"unknown ring operation {op!r}")
    P._check(Q)
    return _RING_OPS[op](P, Q)


def evaluate(P: SparsePoly, point: Sequence[int]) -> int:
    return P.evaluate(point)


def restrict(P: SparsePoly, assignment: Mapping[int, int]) -> SparsePoly:
    return P.restrict(assignment)


def sparsity(P: SparsePoly) -> int:
    """Number of nonzero monomials."""
    return len(P.terms)


def projected_sparsity(P: SparsePoly, A: Iterable[int]) -> int:
    """Number of distinct multi-indices once the exponents of variables in ``A`` are zeroed.

    Coefficients are not merged: two monomials that collapse onto the same
    pattern count once regardless of whether their coefficients would cancel.
    """
    drop = {i - 1 for i in A}
    return len({tuple(0 if i in drop else x for i, x in enumerate(e)) for e in P.terms})


def var_set(P: SparsePoly) -> frozenset:
    """Variables occurring in the canonical form.

    Over F_p with p above every degree in play this coincides with semantic
    dependence; the package never works with degrees near p.
    """
    return frozenset(i + 1 for e in P.terms for i, x in enumerate(e) if x)


def d_operator(P: SparsePoly, Q: SparsePoly, assignment: Mapping[int, int]) -> SparsePoly:
    """``P * Q|_a - P|_a * Q``."""
    P._check(Q)
    return P * Q.restrict(assignment) - P.restrict(assignment) * Q


def compose(P: SparsePoly, M, budget: int = DEFAULT_TERM_BUDGET) -> SparsePoly:
    """Substitute ``x_i := M.coords[i-1]``; the result lives in ``M.q`` variables.

    ``M`` is anything with ``q``, ``coords`` and ``field`` (a
    :class:`~unmixedpit.sparsegen.PolynomialMap` in practice).
    """
    coords = tuple(M.coords)
    if len(coords) != P.n:
        raise ValueError(f"map has {len(coords)} coordinates, polynomial has {P.n} variables")
    P.field.check_same(M.field)
    q, field = M.q, P.field
    powers = [[SparsePoly.constant(1, q, field)] for _ in coords]

    def power(i, e):
        row = powers[i]
        while len(row) <= e:
            nxt = row[-1] * coords[i]
            if len(nxt) > budget:
                raise ResourceError(f"composition power x{i + 1}^{len(row)} exceeds {budget} terms")
            row.append(nxt)
        return row[e]

    out: dict = {}
    for e, c in P.terms.items():
        t = None
        for i, x in enumerate(e):
            if x:
                f = power(i, x)
                t = f if t is None else t * f
                if len(t) > budget:
                    raise ResourceError(f"composition intermediate exceeds {budget} terms")
        if t is None:
            key = (0,) * q
            out[key] = out.get(key, 0) + c
            continue
        for te, tc in t.terms.items():
            out[te] = out.get(te, 0) + c * tc
        if len(out) > budget:
            raise ResourceError(f"composition exceeds {budget} terms")
    return SparsePoly._raw(q, _clean(out, field.p), field)


# -- univariate polynomials -------------------------------------------------


def _trim(coeffs: list) -> tuple:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _umul(a: Sequence[int], b: Sequence[int], p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [c % p for c in out]


class UnivariatePoly:
    """Dense univariate polynomial in ``x_var``; ``coeffs[0]`` is the constant term."""

    __slots__ = ("var", "coeffs", "field")

    def __init__(self, coeffs: Sequence[int], var: int = 1, field=None):
        if var < 1:
            raise ValueError("variable index must be >= 1")
        self.field = resolve_field(field)
        self.var = var
        self.coeffs = _trim([int(c) % self.field.p for c in coeffs])

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return self.leading == 1

    def sparsity(self) -> int:
        return sum(1 for c in self.coeffs if c)

    def monic(self) -> tuple:
        """``(leading coefficient, monic polynomial)``; the zero polynomial is rejected."""
        lc = self.leading
        if not lc:
            raise ZeroDivisionError("zero polynomial has no monic normalisation")
        inv = self.field.inv(lc)
        p = self.field.p
        return lc, UnivariatePoly([c * inv % p for c in self.coeffs], self.var, self.field)

    def evaluate(self, x: int) -> int:
        p = self.field.p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc

    __call__ = evaluate

    def to_sparse(self, n: int, var: int | None = None) -> SparsePoly:
        """Lift into ``n`` variables, optionally placing it at a different index."""
        var = self.var if var is None else var
        if not 1 <= var <= n:
            raise ValueError(f"x{var} outside 1..{n}")
        terms = {}
        for d, c in enumerate(self.coeffs):
            if c:
                e = [0] * n
                e[var - 1] = d
                terms[tuple(e)] = c
        return SparsePoly._raw(n, terms, self.field)

    def __add__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        self._check(other)
        a, b = list(self.coeffs), other.coeffs
        a += [0] * (len(b) - len(a))
        return UnivariatePoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)], self.var, self.field)

    def __sub__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        self._check(other)
        return self + other.scale(-1)

    def __mul__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        self._check(other)
        return UnivariatePoly(_umul(self.coeffs, other.coeffs, self.field.p), self.var, self.field)

    def scale(self, c: int) -> "UnivariatePoly":
        return UnivariatePoly([x * c for x in self.coeffs], self.var, self.field)

    def _check(self, other):
        if self.var != other.var:
            raise FieldMismatchError(f"x{self.var} vs x{other.var}")
        self.field.check_same(other.field)

    def __eq__(self, other):
        if not isinstance(other, UnivariatePoly):
            return NotImplemented
        return self.var == other.var and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs, self.field.p))

    def __str__(self):
        return str(self.to_sparse(self.var))

    def __repr__(self):
        return f"UnivariatePoly(x{self.var}, {list(self.coeffs)}, p={self.field.p})"


def lagrange_basis(nodes: Sequence[int], field=None) -> list:
    """Coefficient lists of the Lagrange basis polynomials over distinct ``nodes``."""
    field = resolve_field(field)
    p = field.p
    xs = [x % p for x in nodes]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    master = [1]
    for x in xs:
        master = _umul(master, [-x % p, 1], p)
    basis = []
    for j, xj in enumerate(xs):
        # master / (z - xj) by synthetic division
        quot = [0] * (len(master) - 1)
        carry = 0
        for d in range(len(master) - 1, 0, -1):
            carry = (master[d] + carry * xj) % p
            quot[d - 1] = carry
        denom = 1
        for m, xm in enumerate(xs):
            if m != j:
                denom = denom * (xj - xm) % p
        inv = field.inv(denom)
        basis.append([c * inv % p for c in quot])
    return basis


def interpolate(nodes: Sequence[int], values: Sequence[int], var: int = 1, field=None) -> UnivariatePoly:
    """The unique polynomial of degree < len(nodes) through ``(nodes[j], values[j])``."""
    field = resolve_field(field)
    if len(nodes) != len(values):
        raise ValueError("nodes and values differ in length")
    p = field.p
    acc = [0] * len(nodes)
    for v, b in zip(values, lagrange_basis(nodes, field)):
        if v % p:
            for d, c in enumerate(b):
                acc[d] += v * c
    return UnivariatePoly(acc, var, field)
