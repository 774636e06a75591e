"""Hitting sets and generators for sparse low-degree polynomials.

Two point-set constructions are available for ``sparse_hitting_set``:

``kronecker``
    ``(t, t^(d+1), ..., t^((d+1)^(n-1)))`` for ``t = 1 .. (d+1)^n``. Distinct
    monomials of individual degree <= d map to distinct powers of ``t``, so a
    nonzero polynomial becomes a nonzero univariate of degree < (d+1)^n.
``geometric``
    The same Kronecker map evaluated at ``t = g^0 .. g^(s-1)`` where ``g`` has
    multiplicative order >= (d+1)^n. An s-sparse image evaluated at s powers
    of ``g`` is a Vandermonde system in distinct nodes, hence not all zero.
    Its size depends on ``s`` and is the one to use when ``s`` is small.

``auto`` picks whichever is smaller. The generator is obtained by Lagrange
interpolation of the point list over a grid ``{c_1..c_b}^q``.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field as dc_field

from .errors import ResourceError
from .ff import PrimeField, resolve_field
from .poly import SparsePoly, lagrange_basis, parse_poly

DEFAULT_POINT_BUDGET = 10**7

METHODS = ("kronecker", "geometric", "auto")


def ceil_log(value: int, base: int) -> int:
    """Smallest ``q >= 0`` with ``base**q >= value``, in exact integer arithmetic."""
    if base < 2:
        raise ValueError("base must be >= 2")
    q, acc = 0, 1
    while acc < value:
        acc *= base
        q += 1
    return q


class HittingSet:
    """A finite point set in F^n with provenance metadata.

    Small sets hold their points in a tuple. Large ones (the images built in
    :mod:`unmixedpit.sgen`) are streamed from ``source(start, stop)`` and only
    materialised when :attr:`points` is accessed.
    """

    def __init__(self, n: int, points: Sequence | None = None, meta: dict | None = None,
                 *, source=None, size: int | None = None, field=None):
        self.n = n
        self.field = resolve_field(field)
        self.meta = dict(meta or {})
        if points is not None:
            self._points = tuple(tuple(pt) for pt in points)
            for pt in self._points:
                if len(pt) != n:
                    raise ValueError(f"point {pt} does not have arity {n}")
            self.size = len(self._points)
            self._source = None
        else:
            if source is None or size is None:
                raise ValueError("need either points or (source, size)")
            self._points = None
            self._source = source
            self.size = size
        self.meta.setdefault("size", self.size)

    def __len__(self):
        return self.size

    def iter_range(self, start: int = 0, stop: int | None = None) -> Iterator[tuple]:
        stop = self.size if stop is None else min(stop, self.size)
        if self._points is not None:
            return iter(self._points[start:stop])
        return self._source(start, stop)

    def __iter__(self):
        return self.iter_range()

    @property
    def points(self) -> tuple:
        if self._points is None:
            self._points = tuple(self.iter_range())
        return self._points

    def to_csv(self, fp) -> int:
        """One point per row as decimal residues; returns the row count."""
        count = 0
        for pt in self:
            fp.write(",".join(str(v) for v in pt) + "\n")
            count += 1
        return count

    def __repr__(self):
        return f"HittingSet(n={self.n}, size={self.size}, meta={self.meta})"


def read_hitting_set_csv(text: str, field=None) -> HittingSet:
    rows = [tuple(int(v) for v in line.split(",")) for line in text.splitlines() if line.strip()]
    if not rows:
        raise ValueError("empty hitting-set CSV")
    return HittingSet(len(rows[0]), rows, {"construction": "csv"}, field=field)


def _element_of_order_at_least(order: int, field: PrimeField) -> int:
    p = field.p
    if p - 1 < order:
        raise ResourceError(f"F_{p} has no element of order >= {order}")
    for g in range(2, p):
        x = 1
        for _ in range(1, order):
            x = x * g % p
            if x == 1:
                break
        else:
            return g
    raise ResourceError(f"no element of order >= {order} found in F_{p}")


def sparse_hitting_set(n: int, s: int, d: int, field=None, method: str = "kronecker",
                       max_points: int = DEFAULT_POINT_BUDGET) -> HittingSet:
    """Points on which every nonzero ``n``-variate, ``s``-sparse polynomial of
    individual degree <= ``d`` is nonzero somewhere."""
    if n < 1 or s < 1 or d < 1:
        raise ValueError("n, s and d must all be >= 1")
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    field = resolve_field(field)
    p = field.p
    span = (d + 1) ** n
    if method == "auto":
        method = "geometric" if s < span else "kronecker"
    if method == "kronecker":
        count = span
        if count > max_points:
            raise ResourceError(f"Kronecker hitting set needs {count} points (budget {max_points})")
        if count >= p:
            raise ResourceError(f"Kronecker hitting set needs {count} distinct nonzero elements of F_{p}")
        ts = range(1, count + 1)
    else:
        count = min(s, span)
        if count > max_points:
            raise ResourceError(f"geometric hitting set needs {count} points (budget {max_points})")
        g = _element_of_order_at_least(span, field)
        ts = [pow(g, j, p) for j in range(count)]
    steps = [(d + 1) ** j for j in range(n)]
    points = [tuple(pow(t, e, p) for e in steps) for t in ts]
    meta = {"n": n, "s": s, "d": d, "construction": method}
    return HittingSet(n, points, meta, field=field)


@dataclass(frozen=True)
class PolynomialMap:
    """``(G_1, ..., G_n)``, each a polynomial in ``q`` seed variables."""

    q: int
    coords: tuple
    individual_degree_bound: int
    field: PrimeField = dc_field(default_factory=resolve_field)
    meta: dict = dc_field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        for i, c in enumerate(self.coords, 1):
            if c.n != self.q:
                raise ValueError(f"coordinate {i} lives in {c.n} variables, expected {self.q}")
            self.field.check_same(c.field)
            if any(x > self.individual_degree_bound for x in c.degree_profile()):
                raise ValueError(f"coordinate {i} exceeds individual degree {self.individual_degree_bound}")

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def arity(self) -> int:
        """Seed-variable count; ``enumerate_image`` relies on this name."""
        return self.q

    @classmethod
    def identity(cls, n: int, field=None) -> "PolynomialMap":
        field = resolve_field(field)
        return cls(n, tuple(SparsePoly.variable(i, n, field) for i in range(1, n + 1)), 1, field)

    def evaluate(self, seed: Sequence[int]) -> tuple:
        return tuple(c.evaluate(seed) for c in self.coords)

    __call__ = evaluate

    def to_text(self) -> str:
        head = f"map q={self.q} n={self.n} bound={self.individual_degree_bound} field={self.field.p}"
        return "\n".join([head, *(str(c) for c in self.coords)]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PolynomialMap":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = dict(kv.split("=") for kv in lines[0].split()[1:])
        q, n, bound = int(head["q"]), int(head["n"]), int(head["bound"])
        field = PrimeField(int(head["field"]))
        coords = tuple(parse_poly(ln, q, field) for ln in lines[1:])
        if len(coords) != n:
            raise ValueError(f"header says {n} coordinates, found {len(coords)}")
        return cls(q, coords, bound, field)


def _grid_coefficients(values: list, base: int, q: int, basis: list, p: int) -> list:
    """Change of basis from grid values to monomial coefficients, one axis at a time."""
    for axis in range(q):
        stride = base ** (q - 1 - axis)
        out = [0] * len(values)
        for start in range(len(values)):
            if (start // stride) % base:
                continue
            column = [values[start + a * stride] for a in range(base)]
            for e in range(base):
                out[start + e * stride] = sum(v * basis[a][e] for a, v in enumerate(column)) % p
        values = out
    return values


def hitting_set_to_generator(H: HittingSet, anchors: Sequence[int] | None = None) -> PolynomialMap:
    """Interpolate the points of ``H`` over the grid ``{c_1..c_b}^q``.

    ``b = max(n, 2)``, ``q = max(1, ceil(log_b |H|))``. Grid tuples are ranked
    lexicographically; rank ``r`` carries point ``H[r]`` and ranks past the
    end repeat the last point. Each coordinate has individual degree <= b-1
    and the grid image of the map contains ``H``.
    """
    field = H.field
    p = field.p
    n = H.n
    base = max(n, 2)
    anchors = list(range(1, base + 1)) if anchors is None else [a % p for a in anchors]
    if len(anchors) != base:
        raise ValueError(f"need {base} anchors, got {len(anchors)}")
    if len(set(anchors)) != base:
        raise ValueError("anchors must be distinct")
    pts = H.points
    q = max(1, ceil_log(len(pts), base))
    grid = base ** q
    basis = lagrange_basis(anchors, field)
    coords = []
    for i in range(n):
        values = [pts[min(r, len(pts) - 1)][i] for r in range(grid)]
        coeffs = _grid_coefficients(values, base, q, basis, p)
        terms = {}
        for r, c in enumerate(coeffs):
            if c:
                e, rest = [], r
                for _ in range(q):
                    e.append(rest % base)
                    rest //= base
                terms[tuple(reversed(e))] = c
        coords.append(SparsePoly._raw(q, terms, field))
    meta = dict(H.meta)
    meta.update(q=q, anchors=tuple(anchors), hitting_set_size=len(pts))
    return PolynomialMap(q, tuple(coords), base - 1, field, meta)


def l_generator(n: int, m: int, d: int, field=None, method: str = "kronecker",
                anchors: Sequence[int] | None = None,
                max_points: int = DEFAULT_POINT_BUDGET) -> PolynomialMap:
    """Generator for ``m``-sparse polynomials of individual degree <= ``d``."""
    H = sparse_hitting_set(n, m, d, field, method, max_points)
    G = hitting_set_to_generator(H, anchors)
    G.meta.update(m=m)
    return G


def seed_tuple(rank: int, U: Sequence[int], q: int) -> tuple:
    """The ``rank``-th element of ``U^q`` in lexicographic order."""
    b = len(U)
    digits = [0] * q
    for j in range(q - 1, -1, -1):
        rank, digits[j] = divmod(rank, b)
    return tuple(U[x] for x in digits)


def enumerate_image(M, U: Sequence[int], budget: int = DEFAULT_POINT_BUDGET,
                    start: int = 0, stop: int | None = None) -> Iterator[tuple]:
    """Stream ``M(u)`` for ``u`` in ``U^arity`` in lexicographic seed order.

    ``start``/``stop`` select a rank range so disjoint workers can split the
    enumeration and still concatenate deterministically.
    """
    U = list(U)
    q = M.arity
    total = len(U) ** q
    if total > budget:
        raise ResourceError(f"image enumeration needs {total} points (budget {budget})")
    stop = total if stop is None else min(stop, total)
    if start == 0 and stop == total:
        return (M.evaluate(u) for u in itertools.product(U, repeat=q))
    return (M.evaluate(seed_tuple(r, U, q)) for r in range(start, stop))
