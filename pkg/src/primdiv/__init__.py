"""Primitive divisors of Lucas and Lehmer sequences in the complex case.

Exact cyclotomic screening, certified ball-arithmetic bounds and a
self-validating continued-fraction search, combined per pair (p, q) into a
verification that every term u_n with n > 30 has a primitive divisor.
"""

from .ball import RealBall, Undecidable
from .sequences import Kind, SequencePair, element, has_primitive_divisor, make_pair
from .verifier import VerificationReport, compute_nq, lemma10_certify, scan, table1, verify_pair

__all__ = ["RealBall", "Undecidable", "Kind", "SequencePair", "element", "has_primitive_divisor",
           "make_pair", "VerificationReport", "compute_nq", "lemma10_certify", "scan", "table1",
           "verify_pair"]
__version__ = "0.1.0"
