"""Line-oriented text format for unmixed circuits (``.upc`` files).

::

    # (x1+1)(x2+1) - x1 x2 - x1 - x2 - 1 over F_101
    vars 2
    field 101
    degcap 2              # optional, defaults to vars
    term 1 (x1: 1,1) (x2: 1,1)
    term 100 (x1: 0,1) (x2: 0,1)
    term 100 (x1: 0,1)
    term 100 (x2: 0,1)
    term 100

A factor group ``(xi: c0,c1,...,cd)`` is ``c0 + c1*xi + ... + cd*xi^d`` with
``cd != 0``. Literals are non-negative decimal integers reduced mod p; write
``p - 1`` for -1. Parsing normalises every factor to monic form, so
serialising a parsed circuit gives its canonical text.
"""

from __future__ import annotations

import re

from .circuit import UnmixedCircuit, UnmixedProduct
from .errors import CircuitParseError
from .ff import PrimeField
from .poly import UnivariatePoly

_TOKEN = re.compile(r"\s*(?:(\()|(\))|(:)|(,)|([^\s(),:]+))")
_VAR = re.compile(r"x(\d+)$")


def _int(tok: str, line: int, col: int, what: str) -> int:
    if not tok.isdigit():
        raise CircuitParseError(f"expected non-negative integer {what}, got {tok!r}", line, col)
    return int(tok)


def _tokens(text: str, line: int, offset: int):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        tok = next(g for g in m.groups() if g is not None)
        out.append((tok, offset + m.start(m.lastindex) + 1))
        pos = m.end()
    return out


def _parse_term(tokens, line, n, field):
    """``term <beta> (x<i>: c0,...,cd) ...`` -> UnmixedProduct."""
    if len(tokens) < 2:
        raise CircuitParseError("term needs a coefficient", line, tokens[0][1] + 4)
    beta_tok, beta_col = tokens[1]
    beta = _int(beta_tok, line, beta_col, "coefficient")
    factors = {}
    i = 2
    while i < len(tokens):
        tok, col = tokens[i]
        if tok != "(":
            raise CircuitParseError(f"expected '(' to open a factor, got {tok!r}", line, col)
        if i + 2 >= len(tokens):
            raise CircuitParseError("unterminated factor group", line, col)
        var_tok, var_col = tokens[i + 1]
        m = _VAR.match(var_tok)
        if not m:
            raise CircuitParseError(f"expected variable name like x1, got {var_tok!r}", line, var_col)
        var = int(m.group(1))
        if not 1 <= var <= n:
            raise CircuitParseError(f"variable x{var} outside 1..{n}", line, var_col)
        if var in factors:
            raise CircuitParseError(f"duplicate variable x{var} in one term", line, var_col)
        if tokens[i + 2][0] != ":":
            raise CircuitParseError("expected ':' after variable", line, tokens[i + 2][1])
        i += 3
        coeffs, expect_value = [], True
        last_col = var_col
        while True:
            if i >= len(tokens):
                raise CircuitParseError("unterminated factor group", line, last_col)
            tok, col = tokens[i]
            last_col = col
            i += 1
            if expect_value:
                coeffs.append((_int(tok, line, col, "factor coefficient"), col))
                expect_value = False
            elif tok == ",":
                expect_value = True
            elif tok == ")":
                break
            else:
                raise CircuitParseError(f"expected ',' or ')', got {tok!r}", line, col)
        lead, lead_col = coeffs[-1]
        if lead % field.p == 0:
            raise CircuitParseError(f"leading coefficient of x{var} factor is zero mod p", line, lead_col)
        factors[var] = UnivariatePoly([c for c, _ in coeffs], var, field)
    return UnmixedProduct(n, beta, factors, field)


def parse_circuit(text: str, field: PrimeField | int | None = None) -> UnmixedCircuit:
    """Parse ``.upc`` text.

    ``field`` supplies the modulus when the file has no ``field`` line; when
    both are present they must agree.
    """
    if isinstance(field, int):
        field = PrimeField(field)
    n = cap = None
    file_field = None
    gates = []
    last_line = 1
    for lineno, raw in enumerate(text.splitlines(), 1):
        last_line = lineno
        body = raw.split("#", 1)[0]
        tokens = _tokens(body, lineno, 0)
        if not tokens:
            if body.strip():
                raise CircuitParseError("unreadable line", lineno, 1)
            continue
        kw, kw_col = tokens[0]
        if kw in ("vars", "field", "degcap"):
            if len(tokens) != 2:
                raise CircuitParseError(f"'{kw}' takes exactly one integer", lineno, kw_col)
            if gates:
                raise CircuitParseError(f"'{kw}' must precede the first term", lineno, kw_col)
            val = _int(tokens[1][0], lineno, tokens[1][1], kw)
            if kw == "vars":
                if n is not None:
                    raise CircuitParseError("duplicate 'vars' line", lineno, kw_col)
                if val < 1:
                    raise CircuitParseError("vars must be >= 1", lineno, tokens[1][1])
                n = val
            elif kw == "field":
                if file_field is not None:
                    raise CircuitParseError("duplicate 'field' line", lineno, kw_col)
                try:
                    file_field = PrimeField(val)
                except ValueError as exc:
                    raise CircuitParseError(str(exc), lineno, tokens[1][1]) from None
                if field is not None and field != file_field:
                    raise CircuitParseError(
                        f"file declares field {val} but {field.p} was requested", lineno, tokens[1][1])
            else:
                if cap is not None:
                    raise CircuitParseError("duplicate 'degcap' line", lineno, kw_col)
                cap = val
        elif kw == "term":
            if n is None:
                raise CircuitParseError("missing header: 'vars' must precede terms", lineno, kw_col)
            active = file_field or field
            if active is None:
                raise CircuitParseError("missing header: 'field' must precede terms", lineno, kw_col)
            gate = _parse_term(tokens, lineno, n, active)
            limit = n if cap is None else cap
            if gate.degree > limit:
                raise CircuitParseError(f"term degree {gate.degree} exceeds degree cap {limit}", lineno, kw_col)
            gates.append(gate)
        else:
            raise CircuitParseError(f"unknown keyword {kw!r}", lineno, kw_col)
    if n is None:
        raise CircuitParseError("missing header: 'vars'", last_line, 1)
    if not gates:
        raise CircuitParseError("circuit has no 'term' lines", last_line, 1)
    return UnmixedCircuit(n, gates, cap, file_field or field)


def serialize_circuit(C: UnmixedCircuit) -> str:
    lines = [f"vars {C.n}", f"field {C.field.p}", f"degcap {C.degree_cap}"]
    for g in C.gates:
        groups = "".join(
            f" (x{var}: {','.join(str(c) for c in f.coeffs)})" for var, f in sorted(g.factors.items()))
        lines.append(f"term {g.beta}{groups}")
    return "\n".join(lines) + "\n"


def read_circuit(path, field=None) -> UnmixedCircuit:
    with open(path, encoding="utf-8") as fh:
        return parse_circuit(fh.read(), field)


def write_circuit(C: UnmixedCircuit, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_circuit(C))
