"""Command-line entry point: ``unmixedpit <command> ...``.

Results go to stdout in ``key: value`` lines (or CSV/TSV/circuit text);
diagnostics go to stderr. ``check`` exits 0 for ZERO, 1 for NONZERO and 2
on any error.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
import time

from .circfmt import read_circuit, serialize_circuit
from .circuit import circuit_size, simplify
from .errors import PITError
from .ff import DEFAULT_MODULUS, PrimeField
from .oracles import (brute_force_is_zero, gate_sparsity_product, random_unmixed_circuit,
                      random_zero_circuit, schwartz_zippel_witness, sparsity_audit)
from .poly import DEFAULT_TERM_BUDGET
from .sgen import (black_box_pit, build_hitting_set, composition_profile,
                   compose_circuit_with_generator, s_generator, theorem_sparsity, theorem_u_size)


@contextlib.contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _field(args):
    return None if args.field is None else PrimeField(args.field)


def _load(args):
    return read_circuit(args.file, _field(args))


def _overrides(args) -> dict:
    out = {"method": args.sparse_method, "budget": args.budget_terms}
    if args.m_override is not None:
        out["m"] = args.m_override
    if args.u_size is not None:
        out["u_size"] = args.u_size
    return out


def cmd_check(args) -> int:
    C = _load(args)
    method = args.method
    if method == "auto":
        cost = sum(gate_sparsity_product(g) for g in C.gates)
        method = "bruteforce" if cost <= args.budget_terms else "sz"
    start = time.perf_counter()
    witness = None
    if method == "bruteforce":
        zero = brute_force_is_zero(C, args.budget_terms)
        tag = "EXACT"
        if not zero:
            witness = schwartz_zippel_witness(C, args.trials, args.seed)
    elif method == "sz":
        witness = schwartz_zippel_witness(C, args.trials, args.seed)
        zero = witness is None
        tag = "PROBABILISTIC"
    else:
        H = build_hitting_set(C, **_overrides(args))
        result = black_box_pit(C, H, jobs=args.jobs)
        zero, witness, tag = result.is_zero, result.witness, result.tag
    elapsed = time.perf_counter() - start
    with _output(args.out) as out:
        print(f"verdict: {'ZERO' if zero else 'NONZERO'}", file=out)
        print(f"method: {method}", file=out)
        print(f"tag: {tag}", file=out)
        if witness is not None:
            print(f"witness: {','.join(map(str, witness))}", file=out)
        print(f"time: {elapsed:.6f}", file=out)
    return 0 if zero else 1


def cmd_hitting_set(args) -> int:
    C = _load(args)
    H = build_hitting_set(C, **_overrides(args))
    with _output(args.out) as out:
        count = H.to_csv(out)
    for key in ("tag", "k", "s", "d", "m", "q", "u_size", "seed_arity"):
        print(f"{key}: {H.meta[key]}", file=sys.stderr)
    print(f"count: {count}", file=sys.stderr)
    return 0


def cmd_audit(args) -> int:
    circuits = [(path, read_circuit(path, _field(args))) for path in args.files]
    for i in range(args.planted):
        circuits.append((f"planted-{args.seed + i}",
                         random_zero_circuit(args.r, args.n, args.seed + i, args.max_degree, _field(args))))
    failures = 0
    with _output(args.out) as out:
        for name, C in circuits:
            if args.simplify:
                C = simplify(C)[1]
            report = sparsity_audit(C, args.budget_terms)
            failures += not report.passed
            print(report.to_tsv(), file=out)
    if failures:
        print(f"{failures} audit failure(s): sparsity bound violated", file=sys.stderr)
        return 1
    return 0


def cmd_random(args) -> int:
    C = random_unmixed_circuit(args.n, args.k, args.max_degree, args.density, args.zero_fraction,
                               args.seed, PrimeField(args.field or DEFAULT_MODULUS), args.degcap)
    with _output(args.out) as out:
        out.write(serialize_circuit(C))
    return 0


def cmd_compose(args) -> int:
    C = _load(args)
    s = circuit_size(C)
    m = theorem_sparsity(s, C.k) if args.m_override is None else args.m_override
    S = s_generator(C.k, m, C.n, C.degree_cap, field=C.field, method=args.sparse_method,
                    budget=args.budget_terms)
    P = compose_circuit_with_generator(C, S, args.budget_terms)
    prof = composition_profile(P)
    u = theorem_u_size(C.n)
    with _output(args.out) as out:
        print(f"terms: {prof['terms']}", file=out)
        print(f"total_degree: {prof['total_degree']}", file=out)
        print(f"individual_degrees: {','.join(map(str, prof['individual_degrees']))}", file=out)
        print(f"max_individual_degree: {max(prof['individual_degrees'], default=0)}", file=out)
        print(f"below_u_size: {'true' if max(prof['individual_degrees'], default=0) < u else 'false'} "
              f"(|U| = {u})", file=out)
        print(f"tag: {'CERTIFIED' if args.m_override is None else 'EXPERIMENTAL'}", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=int, help="prime modulus (must match any 'field' line)")
    common.add_argument("--out", help="write results here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-terms", type=int, default=DEFAULT_TERM_BUDGET,
                        help="term budget for symbolic expansion")

    gen = argparse.ArgumentParser(add_help=False)
    gen.add_argument("--m-override", type=int, help="sparsity parameter m (taints results EXPERIMENTAL)")
    gen.add_argument("--u-size", type=int, help="|U| (taints results EXPERIMENTAL)")
    gen.add_argument("--sparse-method", choices=("auto", "kronecker", "geometric"), default="auto")

    parser = argparse.ArgumentParser(prog="unmixedpit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common, gen], help="decide whether a circuit is identically zero")
    p.add_argument("file")
    p.add_argument("--method", choices=("auto", "bruteforce", "sz", "hitting-set"), default="auto")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("hitting-set", parents=[common, gen], help="stream the hitting set as CSV")
    p.add_argument("file")
    p.set_defaults(func=cmd_hitting_set)

    p = sub.add_parser("audit-sparsity", parents=[common], help="gate-sparsity audit, one TSV line per circuit")
    p.add_argument("files", nargs="*")
    p.add_argument("--planted", type=int, default=0, help="also audit this many planted zero circuits")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--simplify", action="store_true", help="audit the pseudo-gcd-reduced circuit")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("random", parents=[common], help="emit a random circuit")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--density", type=float, default=0.7)
    p.add_argument("--zero-fraction", type=float, default=0.0)
    p.add_argument("--degcap", type=int)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("compose", parents=[common, gen], help="degree profile of C composed with S_{k,m}")
    p.add_argument("file")
    p.set_defaults(func=cmd_compose)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PITError, ValueError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
