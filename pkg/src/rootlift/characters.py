"""Dirichlet characters mod p in discrete-log form, and the machinery
built on them: partial character sums, empirical certification of explicit
Polya-Vinogradov constants, and the character-sum lower bound for the
primitive-root indicator.

A character mod p is represented by an exponent t in [0, p-2]: its value
at n is the root of unity exp(2*pi*i * t * ind(n) / (p-1)), where ind(n)
is the index of n with respect to a fixed primitive root.  Keeping t and
ind(n) as integers keeps orders and orthogonality exact; floating point
enters only when values are summed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from rootlift import arith
from rootlift.analytic import pv_constant
from rootlift.primroot import PrimeContext, least_primitive_root, primitive_root_flags
from rootlift.report import CheckReport

DEFAULT_TABLE_LIMIT = 10**7

IMAG_TOL = 1e-6


class CharacterTable:
    """Index table of the multiplicative group mod p.

    dlog[n] is the exponent t with generator^t = n (mod p) for 1 <= n < p
    (dlog[0] is a -1 sentinel).  Sums of all characters of a fixed order,
    as functions of the index, are cached after first use since every
    sieve evaluation reuses them.
    """

    def __init__(self, ctx: PrimeContext, generator: int, dlog: np.ndarray):
        self.ctx = ctx
        self.generator = generator
        self.dlog = dlog
        order = ctx.p - 1
        angles = 2.0 * np.pi * np.arange(order) / order
        self._roots = np.exp(1j * angles)  # e(t / (p-1)) for t = 0..p-2
        self._order_sums: dict[int, np.ndarray] = {}

    @property
    def p(self) -> int:
        return self.ctx.p

    def root_of_unity(self, t: int) -> complex:
        return complex(self._roots[t % (self.p - 1)])

    def order_sum(self, d: int) -> np.ndarray:
        """S[a] = sum of chi(g^a) over the phi(d) characters of exact order d."""
        if (self.p - 1) % d != 0:
            raise ValueError(f"{d} does not divide p-1 = {self.p - 1}")
        cached = self._order_sums.get(d)
        if cached is not None:
            return cached
        order = self.p - 1
        step = order // d
        a = np.arange(order, dtype=np.int64)
        total = np.zeros(order, dtype=np.complex128)
        for k in range(1, d + 1):
            if math.gcd(k, d) == 1:
                total += self._roots[(step * k) * a % order]
        self._order_sums[d] = total
        return total


def build_table(ctx: PrimeContext, max_p: int = DEFAULT_TABLE_LIMIT) -> CharacterTable:
    """Dense discrete-log table for p, generator = least primitive root."""
    if ctx.p > max_p:
        raise ValueError(f"p = {ctx.p} exceeds the dense-table budget {max_p}")
    p = ctx.p
    g = least_primitive_root(ctx)
    dlog = np.full(p, -1, dtype=np.int64)
    acc = 1
    for t in range(p - 1):
        dlog[acc] = t
        acc = acc * g % p
    return CharacterTable(ctx, g, dlog)


@dataclass(frozen=True)
class Character:
    """The character with exponent t on the table's group."""

    table: CharacterTable
    t: int

    @property
    def order(self) -> int:
        n = self.table.p - 1
        return n // math.gcd(n, self.t)

    @property
    def is_principal(self) -> bool:
        return self.t % (self.table.p - 1) == 0

    def value(self, n: int) -> complex:
        p = self.table.p
        n %= p
        if n == 0:
            return 0j
        return self.table.root_of_unity(self.t * int(self.table.dlog[n]))


def characters_of_order(table: CharacterTable, d: int) -> list[Character]:
    """The phi(d) characters of exact order d; d must divide p-1."""
    order = table.p - 1
    if d < 1 or order % d != 0:
        raise ValueError(f"order {d} does not divide p-1 = {order}")
    step = order // d
    return [Character(table, step * k) for k in range(1, d + 1) if math.gcd(k, d) == 1]


def char_sum(chi: Character, M: int) -> complex:
    """sum_{n <= M} chi(n), with chi zero on multiples of p.

    Values outside one period follow from periodicity; non-principal
    characters have zero period sums.
    """
    if M < 0:
        raise ValueError("M must be nonnegative")
    p = chi.table.p
    full, rest = divmod(M, p)
    total = 0j
    if full:
        period = (p - 1) if chi.is_principal else 0
        total += full * period
    for n in range(1, rest + 1):
        total += chi.value(n)
    return total


@dataclass(frozen=True)
class PvReport:
    """Outcome of certifying one explicit character-sum bound at p."""

    p: int
    variant: str
    characters_tested: int
    max_ratio: float
    argmax_chi_t: int
    argmax_M: int

    def to_record(self) -> dict:
        return {
            "p": self.p,
            "variant": self.variant,
            "characters_tested": self.characters_tested,
            "max_ratio": self.max_ratio,
            "argmax_chi_t": self.argmax_chi_t,
            "argmax_M": self.argmax_M,
        }


def pv_bound(p: int, variant: str, q0: float | None = None) -> float:
    """The explicit partial-sum bound checked by certify_pv."""
    if variant == "frolenkov_sound":
        if p < 1200:
            raise ValueError("frolenkov_sound bound requires p >= 1200")
        return math.sqrt(p) * ((2.0 / math.pi**2) * math.log(p) + 1.0)
    if variant == "lapkova":
        if q0 is None:
            raise ValueError("lapkova variant needs q0")
        if not 1 < q0 <= p:
            raise ValueError("lapkova bound requires 1 < q0 <= p")
        return pv_constant(q0) * math.sqrt(p) * math.log(p)
    raise ValueError(f"unknown variant {variant!r}")


def certify_pv(p: int, variant: str, q0: float | None = None) -> PvReport:
    """Check |sum_{n<=M} chi(n)| <= bound for every non-principal chi mod p
    and every M in [1, p]; report the worst ratio observed.

    Prefix sums make the whole (chi, M) sweep O(p) per character.
    """
    ctx = PrimeContext.create(p)
    table = build_table(ctx)
    bound = pv_bound(p, variant, q0)
    order = p - 1
    dl = table.dlog[1:p]  # indices of 1..p-1
    best = (-1.0, 0, 0)
    for t in range(1, order):
        vals = table._roots[(t * dl) % order]
        mags = np.abs(np.cumsum(vals))
        i = int(np.argmax(mags))
        ratio = float(mags[i]) / bound
        if ratio > best[0]:
            best = (ratio, t, i + 1)
    return PvReport(p, variant, order - 1, best[0], best[1], best[2])


@dataclass(frozen=True)
class SievePlan:
    """Sieve parameters derived from an even divisor e of p-1.

    The excluded primes are exactly the primes dividing p-1 but not e;
    delta = 1 - sum(1/q) over them must be positive for the plan to be
    usable, and theta(e) = phi(e)/e.
    """

    ctx: PrimeContext
    e: int
    excluded: tuple[int, ...]
    delta: float
    theta_e: float

    @classmethod
    def create(cls, ctx: PrimeContext, e: int) -> "SievePlan":
        if e < 2 or e % 2 != 0:
            raise ValueError("e must be an even divisor of p-1")
        if (ctx.p - 1) % e != 0:
            raise ValueError(f"{e} does not divide p-1 = {ctx.p - 1}")
        excluded = tuple(q for q in ctx.prime_divisors if e % q != 0)
        delta = 1.0 - sum(1.0 / q for q in excluded)
        fe = arith.factorize(e)
        theta_e = arith.phi(fe) / e
        return cls(ctx, e, excluded, delta, theta_e)

    @property
    def s(self) -> int:
        return len(self.excluded)


def all_sieve_plans(ctx: PrimeContext, require_positive_delta: bool = True):
    """Every plan obtainable from an even divisor of p-1, ascending in e."""
    plans = []
    for e in arith.divisors(ctx.fact_p_minus_1):
        if e % 2 != 0:
            continue
        plan = SievePlan.create(ctx, e)
        if require_positive_delta and plan.delta <= 0:
            continue
        plans.append(plan)
    return plans


def sieve_indicator_rhs(n: int, plan: SievePlan, table: CharacterTable) -> float:
    """Character-sum lower bound for f(n) / (delta * theta(e)), where f is
    the primitive-root indicator mod p.

    Evaluates, with theta(m) = phi(m)/m:

        1 + (1/delta) * sum_i theta(q_i) * sum_{d|e} mu(q_i d)/phi(q_i d)
                          * (sum of chi(n) over chi of order q_i d)
          + sum_{d|e, d>1} mu(d)/phi(d) * (sum of chi(n) over chi of order d)

    The total is a real number; its imaginary part must vanish to within
    1e-6 or the evaluation is rejected as numerically unsound.
    """
    ctx = plan.ctx
    if table.ctx.p != ctx.p:
        raise ValueError("plan and table disagree on p")
    if plan.delta <= 0:
        raise ValueError("plan requires delta > 0")
    if math.gcd(n, ctx.p) != 1:
        raise ValueError("n must be coprime to p")
    a = int(table.dlog[n % ctx.p])
    div_data = []
    for d in arith.divisors(plan.e):
        fd = arith.factorize(d)
        div_data.append((d, arith.mobius(fd), arith.phi(fd)))

    total = 1.0 + 0.0j
    for q in plan.excluded:
        theta_q = 1.0 - 1.0 / q
        for d, mu_d, phi_d in div_data:
            if mu_d == 0 or d % q == 0:
                continue  # mu(q*d) vanishes unless d is squarefree and q does not divide d
            mu_qd = -mu_d
            phi_qd = (q - 1) * phi_d
            total += theta_q / plan.delta * mu_qd / phi_qd * table.order_sum(q * d)[a]
    for d, mu_d, phi_d in div_data:
        if d == 1 or mu_d == 0:
            continue
        total += mu_d / phi_d * table.order_sum(d)[a]

    if abs(total.imag) > IMAG_TOL:
        raise ArithmeticError(f"imaginary part {total.imag} exceeds tolerance")
    return float(total.real)


def check_sieve_inequality(p_max: int = 200, tol: float = IMAG_TOL) -> CheckReport:
    """Exhaustively verify the indicator inequality f(n)/(delta*theta(e))
    >= RHS for every odd prime p <= p_max, every sieve plan with positive
    delta, and every n in [1, p-1]; the e = p-1 plan must achieve equality.

    Falsifications count inequality breaches beyond tol plus equality-case
    errors beyond tol.
    """
    falsifications = 0
    cases = 0
    min_slack = math.inf
    max_eq_err = 0.0
    max_ratio = 0.0
    worst: dict = {}
    for p in arith.sieve_primes(p_max):
        if p == 2:
            continue
        ctx = PrimeContext.create(p)
        table = build_table(ctx)
        flags = primitive_root_flags(ctx)
        for plan in all_sieve_plans(ctx):
            scale = plan.delta * plan.theta_e
            full_plan = plan.s == 0  # e = p-1: the classical identity
            for n in range(1, p):
                rhs = sieve_indicator_rhs(n, plan, table)
                lhs = flags[n] / scale
                cases += 1
                slack = lhs - rhs
                if slack < min_slack:
                    min_slack = slack
                    worst = {"p": p, "e": plan.e, "n": n}
                if slack < -tol:
                    falsifications += 1
                if lhs > 0 and rhs / lhs > max_ratio:
                    max_ratio = rhs / lhs
                if full_plan:
                    err = abs(slack)
                    max_eq_err = max(max_eq_err, err)
                    if err > tol:
                        falsifications += 1
    return CheckReport(
        lemma="sieve",
        parameters={"p_max": p_max, "tol": tol},
        cases_tested=cases,
        falsifications=falsifications,
        max_ratio=max_ratio,
        extremal={"min_slack": min_slack, "max_equality_error": max_eq_err, **worst},
    )
