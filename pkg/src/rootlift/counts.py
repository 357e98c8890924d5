"""Exact counts of sieved primitive roots and p-th power residues, the
closed-form bounds they are compared against, and brute-force checks of
the two combinatorial facts behind the count upper bound.

The central objects, for an odd prime p and a cutoff X < p^2:

  * integers n <= X coprime to a squarefree modulus u whose residue mod p
    is a primitive root (the count the lower bound speaks about);
  * integers n <= X coprime to u that are p-th powers mod p^2, i.e. that
    satisfy n^(p-1) = 1 (mod p^2), membership in the unique subgroup of
    order p-1 of the units mod p^2.

Anything in the first set but not the second is a primitive root mod p^2,
so whenever the exact counts (or their proven bounds) separate, a
primitive root mod p^2 below X exists.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from rootlift import arith
from rootlift.characters import SievePlan
from rootlift.primroot import (
    PrimeContext,
    is_primitive_root_mod_p,
    primitive_root_flags,
)
from rootlift.report import CheckReport

DENSE_FLAGS_LIMIT = 4_000_000


@dataclass(frozen=True)
class CountParams:
    """Inputs shared by the sieved counts: prime context, real cutoff X,
    sieve level z, and the coprimality modulus u (the product of the primes
    up to z unless given explicitly; z < 2 means no constraint)."""

    ctx: PrimeContext
    X: float
    z: float
    u: int

    @classmethod
    def create(
        cls, ctx: PrimeContext, X: float, z: float, u: int | None = None
    ) -> "CountParams":
        if X < 0:
            raise ValueError("X must be nonnegative")
        if u is None:
            u = 1 if z < 2 else arith.primorial(z)
        if u < 1 or arith.mobius(u) == 0:
            raise ValueError("u must be a squarefree positive integer")
        return cls(ctx, X, z, u)


def _primitive_root_tester(ctx: PrimeContext, limit: int):
    """Membership test for 'n mod p is a primitive root', picking a dense
    flag table when the scan is long enough to amortize building it."""
    cost_per_test = len(ctx.prime_divisors) + 1
    if ctx.p <= DENSE_FLAGS_LIMIT and limit * cost_per_test >= ctx.p:
        flags = primitive_root_flags(ctx)
        p = ctx.p
        return lambda n: flags[n % p] == 1
    return lambda n: is_primitive_root_mod_p(n, ctx)


def count_coprime_primitive_roots(X: float, u: int, ctx: PrimeContext) -> int:
    """#{n <= X : gcd(n, u) = 1, n mod p is a primitive root mod p}."""
    limit = math.floor(X)
    if limit >= ctx.p_squared:
        raise ValueError("cutoff must stay below p^2")
    is_pr = _primitive_root_tester(ctx, limit)
    count = 0
    for n in range(1, limit + 1):
        if math.gcd(n, u) == 1 and is_pr(n):
            count += 1
    return count


def count_rough_primitive_roots(params: CountParams) -> int:
    """Primitive roots among the integers <= X with no prime factor <= z."""
    return count_coprime_primitive_roots(params.X, params.u, params.ctx)


def count_rough_power_residues(params: CountParams) -> int:
    """#{n <= X : gcd(n, u) = 1, n^(p-1) = 1 (mod p^2)}.

    The order test replaces enumerating the p-th powers themselves; the
    two characterizations agree (tested exhaustively at small p) and the
    order test costs O(log p) per candidate.  Multiples of p fail the
    order test automatically.
    """
    ctx = params.ctx
    limit = math.floor(params.X)
    if limit >= ctx.p_squared:
        raise ValueError("cutoff must stay below p^2")
    p, pp, u = ctx.p, ctx.p_squared, params.u
    count = 0
    for n in range(1, limit + 1):
        if math.gcd(n, u) == 1 and pow(n, p - 1, pp) == 1:
            count += 1
    return count


def power_residue_upper_bound(p: int, X: float, epsilon: float, z: float) -> float:
    """The bound sqrt(p) * X^epsilon on the rough power-residue count,
    valid whenever 0 < epsilon < 1 and z >= 2^(1/epsilon)."""
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if z < 2.0 ** (1.0 / epsilon):
        raise ValueError("bound requires z >= 2^(1/epsilon)")
    return math.sqrt(p) * X**epsilon


def mertens_sum(u: int) -> Fraction:
    """sum_{d|u} mu(d)/d, exactly; equals phi(u)/u for squarefree u."""
    fu = arith.factorize(u)
    total = Fraction(0)
    for d in arith.divisors(fu):
        total += Fraction(arith.mobius(d), d)
    return total


def primitive_root_lower_bound(
    ctx: PrimeContext, X: float, u: int, plan: SievePlan, A: float
) -> float:
    """Closed-form lower bound for the count of primitive roots mod p that
    are <= X and coprime to u:

        delta * theta(e) * { X * sum_{d|u} mu(d)/d
            - 2^omega(u) * [ A (2 + (s-1)/delta) 2^(omega(p-1)-s)
                             sqrt(p) log(p) + 1 ] }

    evaluated verbatim with the plan's exact delta and theta(e) = phi(e)/e.
    A must be a Polya-Vinogradov constant valid at p.  The value may be
    negative, in which case it says nothing.
    """
    if plan.ctx.p != ctx.p:
        raise ValueError("plan built for a different prime")
    if plan.delta <= 0:
        raise ValueError("plan requires delta > 0")
    om_p = arith.omega(ctx.fact_p_minus_1)
    om_u = arith.omega(u)
    s = plan.s
    bracket = (
        A * (2.0 + (s - 1) / plan.delta) * 2.0 ** (om_p - s)
        * math.sqrt(ctx.p) * math.log(ctx.p) + 1.0
    )
    return plan.delta * plan.theta_e * (
        X * float(mertens_sum(u)) - 2.0**om_u * bracket
    )


def quadruple_count(T) -> int:
    """Ordered quadruples (t1, t2, t3, t4) in T^4 with t1*t2 == t3*t4 as
    integers: the sum of squared multiplicities of the pair products."""
    elems = list(T)
    products = Counter(a * b for a in elems for b in elems)
    return sum(c * c for c in products.values())


def power_residues_below_p(ctx: PrimeContext) -> list[int]:
    """The p-th powers mod p^2 that happen to lie in [1, p)."""
    p, pp = ctx.p, ctx.p_squared
    return [n for n in range(1, p) if pow(n, p - 1, pp) == 1]


def check_quadruple_bound(p: int, subsets: int = 100, seed: int = 0) -> CheckReport:
    """Verify |T|^4 / p <= quadruple_count(T) for the full set of p-th
    powers mod p^2 in [1, p) and for random subsets of it, and verify the
    step it rests on: products of elements congruent mod p are equal as
    integers."""
    if p > 500:
        raise ValueError("desk-scale check capped at p <= 500")
    ctx = PrimeContext.create(p)
    full = power_residues_below_p(ctx)
    rng = random.Random(seed)
    falsifications = 0
    cases = 0
    worst = (0.0, 0)

    def examine(T: list[int]) -> None:
        nonlocal falsifications, cases, worst
        cases += 1
        qc = quadruple_count(T)
        lhs = len(T) ** 4 / p
        if lhs > qc:
            falsifications += 1
        if qc and lhs / qc > worst[0]:
            worst = (lhs / qc, len(T))

    examine(full)
    # congruence mod p forces equality of integer products
    residue_to_products: dict[int, set[int]] = {}
    for a in full:
        for b in full:
            residue_to_products.setdefault(a * b % p, set()).add(a * b)
    collisions = sum(1 for vals in residue_to_products.values() if len(vals) > 1)
    falsifications += collisions

    for _ in range(subsets):
        examine([t for t in full if rng.random() < 0.5])

    return CheckReport(
        lemma="quadruple",
        parameters={"p": p, "subsets": subsets, "seed": seed, "full_size": len(full)},
        cases_tested=cases,
        falsifications=falsifications,
        max_ratio=worst[0],
        extremal={"subset_size": worst[1], "product_collisions": collisions},
    )


def check_tau_bound(n_max: int, z: float, epsilon: float) -> CheckReport:
    """Verify tau(n) <= n^epsilon for every n <= n_max free of prime
    factors below z; requires z >= 2^(1/epsilon)."""
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if z < 2.0 ** (1.0 / epsilon):
        raise ValueError("bound requires z >= 2^(1/epsilon)")
    import numpy as np

    taus = arith.tau_sieve(n_max)
    rough = np.ones(n_max + 1, dtype=bool)
    rough[0] = False
    for q in arith.sieve_primes(math.ceil(z) - 1):
        rough[q::q] = False
    n = np.arange(n_max + 1, dtype=np.float64)
    ratios = taus[rough] / n[rough] ** epsilon
    idx = int(np.argmax(ratios))
    ns = np.nonzero(rough)[0]
    falsifications = int(np.count_nonzero(ratios > 1.0))
    return CheckReport(
        lemma="tau",
        parameters={"n_max": n_max, "z": z, "epsilon": epsilon},
        cases_tested=int(rough.sum()),
        falsifications=falsifications,
        max_ratio=float(ratios[idx]),
        extremal={"n": int(ns[idx]), "tau": int(taus[ns[idx]])},
    )
