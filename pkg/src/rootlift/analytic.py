"""Explicit-constant evaluators and the case-analysis engine that certifies
h(p) < p^alpha on a prime range.

The engine checks, case by case, the sufficient inequality

    delta * (phi(e)/e) * { 0.1918 p^alpha
        - 2^6 [ A (2 + (s-1)/delta) 2^(omega(p-1)-s) sqrt(p) log(p) + 1 ] }
    >  p^(1/2 + alpha/4)

whose truth guarantees that more rough integers below p^alpha are primitive
roots mod p than are p-th power residues mod p^2, hence that a primitive
root mod p^2 below p^alpha exists.  The constants: 0.1918 is the density of
integers coprime to 30030 (truncated downward), 2^6 counts its prime
factors, and A is an explicit Polya-Vinogradov constant (0.16 is valid for
all moduli >= 10^12).

Quantities the inequality needs but a whole prime range cannot pin down are
replaced by worst-case bounds: omega(p-1) via Robin's bound or an assumed
exact value, delta via consecutive-prime lower bounds on the excluded
primes, and phi(e)/e via the Rosser-Schoenfeld totient bounds.  All real
arithmetic is double precision; a relative slack of 1e-12 is subtracted
from the left side before comparing, so rounding can only make the verdict
more conservative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from rootlift import arith
from rootlift.report import CheckReport

EULER_GAMMA = 0.5772156649015329
E_TO_GAMMA = math.exp(EULER_GAMMA)

STRONG_TOTIENT_CUTOFF = 1e12
FLOAT_SLACK = 1e-12

ROBIN_COEFF = 1.3841
RS_ADDEND = 2.51

DEFAULT_PV_A = 0.16  # valid for all moduli >= 1e12, monotone decreasing
DEFAULT_U = 30030  # product of the primes up to 16
DEFAULT_Z = 16.0
DEFAULT_EPSILON = 0.25

ROBIN_SEARCH_MAX_EXP = 40
AUDIT_CAP = 1e40


def pv_constant(q0: float) -> float:
    """Explicit Polya-Vinogradov constant valid for all moduli q >= q0:

        A(q0) = 1/(2 pi) + 0.8204 / sqrt(q0) + 1.0285 / (sqrt(q0) log(q0))

    Decreasing in q0 with limit 1/(2 pi)."""
    if q0 <= 1:
        raise ValueError("q0 must exceed 1")
    rt = math.sqrt(q0)
    return 1.0 / (2.0 * math.pi) + 0.8204 / rt + 1.0285 / (rt * math.log(q0))


def rs_upper(n: float, strong: bool = False) -> float:
    """Upper bound for n/phi(n).

    General form: e^gamma * loglog(n) * (1 + 2.51/loglog(n)), rejected
    below 16 where loglog is too small to trust.  Strong form (factor 1.8
    instead of the 2.51 correction) requires n >= 10^12.
    """
    if strong:
        if n < STRONG_TOTIENT_CUTOFF:
            raise ValueError("strong totient bound requires n >= 1e12")
        return 1.8 * E_TO_GAMMA * math.log(math.log(n))
    if n < 16:
        raise ValueError("general totient bound is used only for n >= 16")
    ll = math.log(math.log(n))
    return E_TO_GAMMA * ll * (1.0 + RS_ADDEND / ll)


def robin_omega_upper(n: float) -> float:
    """Upper bound 1.3841 * log(n)/loglog(n) for the number of distinct
    prime factors of n; valid for n >= 3."""
    if n < 3:
        raise ValueError("omega bound requires n >= 3")
    return ROBIN_COEFF * math.log(n) / math.log(math.log(n))


def _totient_ratio_lower(argument: float) -> float:
    """Worst-case lower bound for phi(m)/m when m <= argument, via the
    strongest Rosser-Schoenfeld form valid at that size."""
    return 1.0 / rs_upper(argument, strong=argument >= STRONG_TOTIENT_CUTOFF)


def check_totient_bound(n_max: int = 10**6) -> CheckReport:
    """Verify n/phi(n) <= e^gamma * loglog(n) * (1 + 2.51/loglog(n)) for
    every 2 <= n <= n_max against a sieved totient table.

    The bound is evaluated in the expanded form e^gamma*(loglog(n) + 2.51),
    identical algebraically and well defined at n = 2 where loglog < 0.
    """
    import numpy as np

    phis = arith.phi_sieve(n_max)
    n = np.arange(2, n_max + 1, dtype=np.float64)
    bound = E_TO_GAMMA * (np.log(np.log(n)) + RS_ADDEND)
    ratios = (n / phis[2:]) / bound
    idx = int(np.argmax(ratios))
    return CheckReport(
        lemma="rs",
        parameters={"n_max": n_max},
        cases_tested=n_max - 1,
        falsifications=int(np.count_nonzero(ratios > 1.0)),
        max_ratio=float(ratios[idx]),
        extremal={"n": idx + 2, "n_over_phi": float(n[idx] / phis[idx + 2])},
    )


def check_omega_bound(n_max: int = 10**6) -> CheckReport:
    """Verify omega(n) <= 1.3841 log(n)/loglog(n) for every 3 <= n <= n_max
    against a sieved omega table."""
    import numpy as np

    omegas = arith.omega_sieve(n_max)
    n = np.arange(3, n_max + 1, dtype=np.float64)
    bound = ROBIN_COEFF * np.log(n) / np.log(np.log(n))
    ratios = omegas[3:] / bound
    idx = int(np.argmax(ratios))
    return CheckReport(
        lemma="robin",
        parameters={"n_max": n_max},
        cases_tested=n_max - 2,
        falsifications=int(np.count_nonzero(ratios > 1.0)),
        max_ratio=float(ratios[idx]),
        extremal={"n": idx + 3, "omega": int(omegas[idx + 3])},
    )


def coprime_density_coefficient(u: int) -> float:
    """sum_{d|u} mu(d)/d = phi(u)/u for squarefree u, truncated to four
    decimals so the coefficient errs on the conservative side
    (0.1918 for u = 30030)."""
    fu = arith.factorize(u)
    exact = Fraction(arith.phi(fu), u)
    return math.floor(exact * 10_000) / 10_000.0


@dataclass(frozen=True)
class BoundCase:
    """One case of the verification: evaluate the sufficient inequality at
    primes p >= p_low assuming omega(p-1) is exactly (or at most) omega."""

    alpha: float
    z: float
    epsilon: float
    u: int
    A: float
    p_low: float
    omega: float
    omega_flag: str  # "exact" or "upper"
    s: int

    def __post_init__(self) -> None:
        if not 0 < self.alpha <= 1:
            raise ValueError("alpha must lie in (0, 1]")
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.z < 2.0 ** (1.0 / self.epsilon):
            raise ValueError("need z >= 2^(1/epsilon) for the count upper bound")
        if self.omega_flag not in ("exact", "upper"):
            raise ValueError("omega_flag must be 'exact' or 'upper'")
        if self.s < 0:
            raise ValueError("s must be nonnegative")
        if self.omega_flag == "exact" and self.s > self.omega:
            raise ValueError("cannot exclude more primes than omega provides")
        if self.omega_flag == "upper" and self.s != 0:
            raise ValueError("excluded primes need an exact omega")


@dataclass(frozen=True)
class CaseReport:
    """Evaluation of one case at one p, with the worst-case factors used."""

    alpha: float
    omega: float
    omega_flag: str
    s: int
    p: float
    delta_lower: float
    phi_e_over_e_lower: float
    two_omega: float
    lhs: float
    rhs: float
    holds: bool
    vacuous: bool = False
    optional: bool = False

    def to_record(self) -> dict:
        return {
            "alpha": self.alpha,
            "omega": self.omega,
            "omega_flag": self.omega_flag,
            "s": self.s,
            "p": self.p,
            "delta_lower": self.delta_lower,
            "phi_e_over_e_lower": self.phi_e_over_e_lower,
            "two_omega": self.two_omega,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
            "vacuous": self.vacuous,
            "optional": self.optional,
        }


def gap_condition(p: float, case: BoundCase) -> CaseReport:
    """Evaluate the sufficient inequality at p under the case's worst-case
    bounds.  A nonpositive delta lower bound is reported as a failing case,
    not an error."""
    if p < case.p_low:
        raise ValueError(f"p = {p} below the case threshold {case.p_low}")

    w_u = arith.omega(case.u)
    coeff = coprime_density_coefficient(case.u)

    if case.s == 0:
        delta_lower = 1.0
        # e = p-1 when nothing is excluded
        phi_lower = _totient_ratio_lower(p - 1)
        omega_val = robin_omega_upper(p) if case.omega_flag == "upper" else case.omega
        two_omega = 2.0**omega_val
        two_omega_minus_s = two_omega
    else:
        omega_val = case.omega
        k = int(case.omega)
        qs = arith.first_primes(k)[k - case.s :]
        delta_lower = 1.0 - sum(1.0 / q for q in qs)
        two_omega = 2.0**omega_val
        two_omega_minus_s = 2.0 ** (omega_val - case.s)
        if delta_lower <= 0:
            return CaseReport(
                case.alpha, omega_val, case.omega_flag, case.s, p,
                delta_lower, 0.0, two_omega, float("-inf"), p, False,
            )
        e_max = p / math.prod(qs)
        phi_lower = _totient_ratio_lower(e_max)

    pv_factor = case.A * (2.0 + (case.s - 1) / delta_lower) * two_omega_minus_s
    braces = coeff * p**case.alpha - (2.0**w_u) * (
        pv_factor * math.sqrt(p) * math.log(p) + 1.0
    )
    lhs = delta_lower * phi_lower * braces
    rhs = p ** (0.5 + case.alpha * case.epsilon)
    holds = lhs * (1.0 - FLOAT_SLACK) > rhs
    return CaseReport(
        case.alpha, omega_val, case.omega_flag, case.s, p,
        delta_lower, phi_lower, two_omega, lhs, rhs, holds,
    )


# Descriptions of where each worst-case factor comes from, for reports.
BOUND_SOURCES = {
    "coprime_coefficient": "density of integers coprime to u, truncated downward",
    "count_upper": "power-residue count bound sqrt(p) * X^epsilon",
    "pv_constant": "explicit partial-character-sum constant (0.16 for moduli >= 1e12)",
    "omega_cap": "distinct-prime-factor bound 1.3841 log n / loglog n",
    "excluded_primes": "s largest prime divisors of p-1 bounded below by consecutive primes",
    "totient_lower": "phi(m)/m bounded via e^gamma loglog upper bounds on m/phi(m)",
    "omega_floor": "omega(p-1) = k forces p > product of the first k primes",
}


@dataclass(frozen=True)
class AnalysisResult:
    """Verdict of the full case schedule for one exponent."""

    alpha: float
    p_threshold: float
    robin_threshold: float | None
    omega_cap: int | None
    reports: tuple[CaseReport, ...]
    proven: bool
    failing: CaseReport | None
    bound_sources: dict = field(default_factory=lambda: dict(BOUND_SOURCES))

    def to_record(self) -> dict:
        return {
            "alpha": self.alpha,
            "p_threshold": self.p_threshold,
            "robin_threshold": self.robin_threshold,
            "omega_cap": self.omega_cap,
            "proven": self.proven,
            "cases": [r.to_record() for r in self.reports],
            "failing_case": self.failing.to_record() if self.failing else None,
            "bound_sources": self.bound_sources,
        }


def _log_spaced(lo: float, hi: float, count: int) -> list[float]:
    if hi <= lo:
        return [lo]
    la, lb = math.log(lo), math.log(hi)
    pts = [math.exp(la + (lb - la) * i / (count - 1)) for i in range(count)]
    pts[0], pts[-1] = lo, hi  # pin the endpoints exactly
    return pts


def _audit_case(case: BoundCase, p_hi: float, samples: int) -> tuple[bool, CaseReport]:
    """Evaluate the case at log-spaced samples across [p_low, p_hi].

    Monotonicity in p is not proven symbolically; this dense sampling is an
    audit.  Returns (all hold, report at the lower endpoint or the first
    failure)."""
    first = None
    for p in _log_spaced(case.p_low, p_hi, samples):
        rep = gap_condition(p, case)
        if first is None:
            first = rep
        if not rep.holds:
            return False, rep
    return True, first


def _primorial_floor(k: int) -> float:
    """Smallest possible p with omega(p-1) = k: the product of the first k
    primes, plus one."""
    return float(math.prod(arith.first_primes(k)) + 1)


def verify_exponent_bound(
    alpha: float,
    p_threshold: float,
    include_omega14: bool = False,
    samples: int = 20,
    audit_cap: float = AUDIT_CAP,
) -> AnalysisResult:
    """Run the full case schedule certifying h(p) < p^alpha for all primes
    p >= p_threshold.

    Schedule: (i) find the smallest power of ten at or above p_threshold
    where the s = 0 case with the Robin omega bound holds for all larger p
    (audited by sampling up to audit_cap); (ii) cap omega(p-1) below that
    threshold via the Robin bound; (iii) for each exact omega up to the cap,
    certify the interval [max(p_threshold, omega floor), robin threshold]
    with the first choice of s that survives the sampled audit, preferring
    s = 0, then s = 7, then the remaining values.  A case whose omega floor
    exceeds the robin threshold is vacuous: no prime in range can have that
    many distinct factors in p-1.

    The optional (omega = 14, s = 8) case is appended for inspection when
    include_omega14 is set; it does not affect the verdict.
    """
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    if p_threshold < 1e12:
        raise ValueError("the pinned constants require p_threshold >= 1e12")

    def make_case(p_low: float, omega: float, flag: str, s: int) -> BoundCase:
        return BoundCase(
            alpha=alpha, z=DEFAULT_Z, epsilon=DEFAULT_EPSILON, u=DEFAULT_U,
            A=DEFAULT_PV_A, p_low=p_low, omega=omega, omega_flag=flag, s=s,
        )

    reports: list[CaseReport] = []

    # (i) the open-ended case: s = 0, omega capped by the Robin bound
    robin_threshold = None
    robin_report = None
    k0 = math.ceil(math.log10(p_threshold))
    for k in range(k0, ROBIN_SEARCH_MAX_EXP + 1):
        T = 10.0**k
        case = make_case(T, robin_omega_upper(T), "upper", 0)
        ok, rep = _audit_case(case, audit_cap, samples)
        if ok:
            robin_threshold = T
            robin_report = rep
            break
    if robin_threshold is None:
        case = make_case(p_threshold, robin_omega_upper(p_threshold), "upper", 0)
        rep = gap_condition(p_threshold, case)
        return AnalysisResult(
            alpha, p_threshold, None, None, (rep,), False, rep,
        )
    reports.append(robin_report)

    # (ii) below the robin threshold omega(p-1) is bounded
    omega_cap = math.floor(robin_omega_upper(robin_threshold))

    # (iii) one case per exact omega, s chosen by first surviving audit
    proven = True
    failing = None
    for w in range(1, omega_cap + 1):
        p_eff = max(p_threshold, _primorial_floor(w))
        if p_eff > robin_threshold:
            reports.append(
                CaseReport(alpha, float(w), "exact", 0, p_eff,
                           1.0, 1.0, 2.0**w, float("inf"), 0.0,
                           holds=True, vacuous=True)
            )
            continue
        chosen = None
        for s in [0, 7] + [x for x in range(1, w + 1) if x not in (0, 7)]:
            if s > w:
                continue
            case = make_case(p_eff, float(w), "exact", s)
            ok, rep = _audit_case(case, robin_threshold, samples)
            if ok:
                chosen = rep
                break
        if chosen is not None:
            reports.append(chosen)
        else:
            proven = False
            case = make_case(p_eff, float(w), "exact", min(7, w))
            rep = gap_condition(p_eff, case)
            reports.append(rep)
            if failing is None:
                failing = rep

    if include_omega14:
        p_eff = max(p_threshold, _primorial_floor(14))
        if p_eff > robin_threshold:
            reports.append(
                CaseReport(alpha, 14.0, "exact", 8, p_eff, 1.0, 1.0, 2.0**14,
                           float("inf"), 0.0, holds=True, vacuous=True, optional=True)
            )
        else:
            case = make_case(p_eff, 14.0, "exact", 8)
            ok, rep = _audit_case(case, robin_threshold, samples)
            reports.append(
                CaseReport(rep.alpha, rep.omega, rep.omega_flag, rep.s, rep.p,
                           rep.delta_lower, rep.phi_e_over_e_lower, rep.two_omega,
                           rep.lhs, rep.rhs, rep.holds, optional=True)
            )

    return AnalysisResult(
        alpha, p_threshold, robin_threshold, omega_cap,
        tuple(reports), proven, failing,
    )
