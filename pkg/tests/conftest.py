import sympy
from hypothesis import strategies as st

from unmixedpit import SparsePoly
from unmixedpit.ff import DEFAULT_MODULUS

P61 = DEFAULT_MODULUS

# Acceptance criteria record (number, title, passed, detail) here; the
# terminal summary prints one line per criterion.
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {title} -- {detail}")


def elements(p=P61):
    return st.integers(min_value=0, max_value=p - 1)


@st.composite
def sparse_polys(draw, n=None, max_terms=6, max_exp=3, p=P61, small_coeffs=False):
    n = draw(st.integers(1, 4)) if n is None else n
    exps = st.tuples(*[st.integers(0, max_exp) for _ in range(n)])
    coeff = st.integers(0, 3) if small_coeffs else elements(p)
    terms = draw(st.dictionaries(exps, coeff, max_size=max_terms))
    return SparsePoly(n, terms, p)


def to_sympy(P: SparsePoly):
    """``P`` as a sympy ``Poly`` over GF(p), built from the raw term dict."""
    gens = sympy.symbols(f"x1:{P.n + 1}")
    expr = sum((c * sympy.prod(g ** e for g, e in zip(gens, exps)) for exps, c in P.terms.items()),
               sympy.Integer(0))
    return sympy.Poly(expr, *gens, modulus=P.field.p)


def from_sympy(poly, n: int, p: int) -> SparsePoly:
    return SparsePoly(n, {e: int(c) % p for e, c in poly.terms()}, p)
