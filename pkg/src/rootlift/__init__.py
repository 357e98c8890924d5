"""Exact computation of least primitive roots modulo p and p^2.

The package computes g(p) and h(p), the least primitive roots modulo an odd
prime p and modulo p^2, scans prime ranges for the rare primes where the two
differ, and mechanically verifies the explicit character-sum and sieve
inequalities that certify h(p) < p^alpha for exponents alpha < 1.
"""

from rootlift.arith import (
    Factorization,
    divisors,
    factorize,
    is_prime,
    mobius,
    mul_mod,
    omega,
    phi,
    pow_mod,
    primorial,
    tau,
)
from rootlift.primroot import (
    PrimeContext,
    ScanRecord,
    is_primitive_root_mod_p,
    is_primitive_root_mod_p2,
    least_primitive_root,
    least_primitive_root_mod_p2,
    lift_failure_count,
    scan,
)

__version__ = "0.1.0"

__all__ = [
    "Factorization",
    "PrimeContext",
    "ScanRecord",
    "divisors",
    "factorize",
    "is_prime",
    "is_primitive_root_mod_p",
    "is_primitive_root_mod_p2",
    "least_primitive_root",
    "least_primitive_root_mod_p2",
    "lift_failure_count",
    "mobius",
    "mul_mod",
    "omega",
    "phi",
    "pow_mod",
    "primorial",
    "scan",
    "tau",
]
