"""Deterministic black-box identity testing for low-degree unmixed depth-4 circuits."""

from .circfmt import parse_circuit, read_circuit, serialize_circuit, write_circuit
from .circuit import (UnmixedCircuit, UnmixedProduct, circuit_size, common_factor_witness,
                      divides_indecomposably, evaluate_circuit, expand_circuit, expand_gate,
                      is_minimal, is_pseudo_simple, pseudo_gcd, simplify, subcircuit)
from .errors import (CircuitError, CircuitParseError, FieldMismatchError, InvariantError,
                     PITError, ResourceError)
from .ff import DEFAULT_FIELD, DEFAULT_MODULUS, FieldElement, PrimeField, field_arith
from .oracles import (AuditReport, FieldRNG, brute_force_is_zero, random_unmixed_circuit,
                      random_zero_circuit, schwartz_zippel_is_zero, sparsity_audit)
from .poly import (SparsePoly, UnivariatePoly, compose, d_operator, evaluate, parse_poly,
                   poly_ring_ops, projected_sparsity, restrict, sparsity, var_set)
from .sgen import (CERTIFIED, EXPERIMENTAL, PITResult, SGenerator, Verdict, black_box_pit,
                   build_hitting_set, compose_circuit_with_generator, hitting_set_for,
                   restriction_identity_check, s_generator, step_polynomials)
from .sparsegen import (HittingSet, PolynomialMap, enumerate_image, hitting_set_to_generator,
                        l_generator, sparse_hitting_set)

__version__ = "0.1.0"
