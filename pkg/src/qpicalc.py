"""
The (q,π)-binomial calculus and its identity suites.

Generic values are PiLaurent; specialized values are CycNumber. Generic
binomials come from the (q,π)-Pascal rule

    binom(n,t) = (πq)^t binom(n−1,t) + q^{−(n−t)} binom(n−1,t−1),

which holds for every integer n and agrees with the defining quotient
∏[a+1−i]/[t]^!. The specialized table is computed with the same rule in
ℚ(ζ_N), since specialization is a ring homomorphism.
"""
import logging
from functools import lru_cache
from math import comb, factorial, gcd
from typing import Callable, Dict, List, Optional

from src.constants import (
    ALL_SUITES,
    CLASSICAL_RANGE,
    DIAMOND_MULTIPLE,
    POSITIVITY_RANGE,
    SUITE_ALTERNATING_SUM,
    SUITE_BINOMIAL_FACTORIZATION,
    SUITE_BINOMIAL_MULTIPLE,
    SUITE_BINOMIAL_VANISHING,
    SUITE_CLASSICAL_LIMIT,
    SUITE_DIAMOND_BINOMIAL,
    SUITE_FACTORIAL_RATIO,
    SUITE_ORDER,
    SUITE_POSITIVITY,
    SUITE_SIGN_POWER,
    SUITE_V_IDENTIFICATION,
    VQ_RANGE,
)
from src.models import IdentityReport, SweepRanges
from src.scalars import (
    CycNumber,
    PiLaurent,
    RootContext,
    laurent_trim,
    specialize,
)

logger = logging.getLogger(__name__)


# --- Generic calculus --------------------------------------------------------

@lru_cache(maxsize=None)
def qpi_integer(a: int, d: int = 1) -> PiLaurent:
    """[a]_{q^d, π^d} = ((πq)^a − q^{−a})/(πq − q^{−1}) with (q, π) ↦ (q^d, π^d)."""
    if d != 1:
        return qpi_integer(a, 1).substitute(d)
    if a == 0:
        return PiLaurent()
    if a < 0:
        return -(PiLaurent.pi_q_power(-a, 0) * qpi_integer(-a))
    plus: Dict[int, int] = {}
    minus: Dict[int, int] = {}
    for k in range(a):
        deg = a - 1 - 2 * k
        plus[deg] = plus.get(deg, 0) + 1
        minus[deg] = minus.get(deg, 0) + (-1) ** (a - 1 - k)
    return PiLaurent.from_components(plus, minus)


@lru_cache(maxsize=None)
def qpi_factorial(n: int, d: int = 1) -> PiLaurent:
    """[n]^!_{q^d, π^d} = [1][2]···[n]."""
    if n < 0:
        raise ValueError(f"factorial of a negative integer: {n}")
    result = PiLaurent.constant(1)
    for k in range(1, n + 1):
        result = result * qpi_integer(k, d)
    return result


@lru_cache(maxsize=None)
def qpi_binomial(a: int, n: int, d: int = 1) -> PiLaurent:
    """The (q,π)-binomial binom(a, n) at (q^d, π^d), for any integer a and n ≥ 0.

    Raises:
        ValueError: If n < 0.
    """
    if n < 0:
        raise ValueError(f"binomial lower index must be nonnegative, got {n}")
    if d != 1:
        return qpi_binomial(a, n, 1).substitute(d)
    if n == 0:
        return PiLaurent.constant(1)
    if a == 0:
        return PiLaurent()
    if a > 0:
        if n > a:
            return PiLaurent()
        return (PiLaurent.pi_q_power(n, n) * qpi_binomial(a - 1, n)
                + PiLaurent.q_power(n - a) * qpi_binomial(a - 1, n - 1))
    # a < 0: solve the Pascal rule at (a + 1, n) for binom(a, n)
    upper = qpi_binomial(a + 1, n) - PiLaurent.q_power(n - a - 1) * qpi_binomial(a, n - 1)
    return PiLaurent.pi_q_power(n, -n) * upper


def qpi_binomial_by_quotient(a: int, n: int) -> PiLaurent:
    """The defining quotient ∏_{i=1}^n [a+1−i] / [n]^!, by exact Laurent division."""
    numerator = PiLaurent.constant(1)
    for i in range(1, n + 1):
        numerator = numerator * qpi_integer(a + 1 - i)
    return numerator.exact_div(qpi_factorial(n))


# --- Specialized calculus ----------------------------------------------------

@lru_cache(maxsize=None)
def specialized_binomial(a: int, n: int, ctx: RootContext, d: int = 1) -> CycNumber:
    """binom(a, n) evaluated at (q̃^d, π^d) in ctx, by the Pascal rule in ℚ(ζ_N)."""
    if n < 0:
        raise ValueError(f"binomial lower index must be nonnegative, got {n}")
    if n == 0:
        return ctx.scalar(1)
    if a == 0 or (a > 0 and n > a):
        return ctx.scalar(0)
    pi_n = ctx.pi_power(d * n)
    if a > 0:
        return (ctx.q_tilde_power(d * n) * pi_n * specialized_binomial(a - 1, n, ctx, d)
                + ctx.q_tilde_power(d * (n - a)) * specialized_binomial(a - 1, n - 1, ctx, d))
    upper = (specialized_binomial(a + 1, n, ctx, d)
             - ctx.q_tilde_power(d * (n - a - 1)) * specialized_binomial(a, n - 1, ctx, d))
    return ctx.q_tilde_power(-d * n) * pi_n * upper


@lru_cache(maxsize=None)
def specialized_integer(a: int, ctx: RootContext, d: int = 1) -> CycNumber:
    return specialized_binomial(a, 1, ctx, d)


@lru_cache(maxsize=None)
def specialized_factorial(n: int, ctx: RootContext, d: int = 1) -> CycNumber:
    result = ctx.scalar(1)
    for k in range(1, n + 1):
        result = result * specialized_integer(k, ctx, d)
    return result


def classical_binomial(n: int, t: int) -> int:
    """C(n, t) for any integer n and t ≥ 0."""
    if t < 0:
        return 0
    if n >= 0:
        return comb(n, t)
    return (-1) ** t * comb(t - n - 1, t)


def _pi_q(ctx: RootContext, pi_exp: int, q_exp: int) -> CycNumber:
    return ctx.q_tilde_power(q_exp) * ctx.pi_power(pi_exp)


# --- Identity suites ---------------------------------------------------------

def _suite_binomial_vanishing(ctx: RootContext, ranges: SweepRanges, report: IdentityReport) -> None:
    ell = ctx.ell
    for n in range(-ranges.n_max, ranges.n_max + 1):
        if n % ell:
            continue
        for t in range(ranges.t_max + 1):
            if t % ell == 0:
                continue
            report.record(specialized_binomial(n, t, ctx) == 0, n=n, t=t)


def _suite_binomial_multiple(ctx: RootContext, ranges: SweepRanges, report: IdentityReport) -> None:
    ell = ctx.ell
    for n1 in range(-(ranges.n_max // ell), ranges.n_max // ell + 1):
        for t1 in range(ranges.t_max // ell + 1):
            # exponent ℓ²t₁(n₁ − (t₁−1)/2), kept integral
            pi_exp = ell * ell * (t1 * n1 - t1 * (t1 - 1) // 2)
            q_exp = ell * ell * t1 * (n1 + 1)
            rhs = _pi_q(ctx, pi_exp, q_exp) * classical_binomial(n1, t1)
            report.record(specialized_binomial(ell * n1, ell * t1, ctx) == rhs, n1=n1, t1=t1)


def _suite_binomial_factorization(ctx: RootContext, ranges: SweepRanges, report: IdentityReport) -> None:
    ell = ctx.ell
    for n in range(-ranges.n_max, ranges.n_max + 1):
        n1, n0 = divmod(n, ell)
        for t in range(ranges.t_max + 1):
            t1, t0 = divmod(t, ell)
            pi_exp = ell * (n0 - t0) * t1 + ell * ell * (n1 * t1 - t1 * (t1 - 1) // 2)
            q_exp = ell * (n0 * t1 - n1 * t0) + ell * ell * (n1 + 1) * t1
            rhs = (_pi_q(ctx, pi_exp, q_exp) * specialized_binomial(n0, t0, ctx)
                   * classical_binomial(n1, t1))
            report.record(specialized_binomial(n, t, ctx) == rhs, n=n, t=t)


def _suite_sign_power(ctx: RootContext, ranges: SweepRanges, report: IdentityReport) -> None:
    ell = ctx.ell
    expected = (-1) ** (ell + 1)
    report.record(ctx.v ** (ell * ell + ell) == expected, form="v")
    report.record(_pi_q(ctx, (ell + 1) * ell // 2, ell * ell + ell) == expected, form="pi-q")


def _suite_factorial_ratio(ctx: RootContext, ranges: SweepRanges, report: IdentityReport) -> None:
    ell = ctx.ell
    for b in range(ranges.b_max + 1):
        # [ℓb]^!/([ℓ]^!)^b = ∏_{k=1}^{b} binom(ℓk, ℓ)
        ratio = ctx.scalar(1)
        for k in range(1, b + 1):
            ratio = ratio * specialized_binomial(ell * k, ell, ctx)
        exp = ell * ell * b * (b - 1) // 2
        rhs = _pi_q(ctx, exp, exp) * factorial(b)
        report.record(ratio == rhs, b=b)


def _suite_alternating_sum(ctx: RootContext, ranges: SweepRanges, report: IdentityReport) -> None:
    ell = ctx.ell
    for a in range(ell):
        for r in range(a + 1):
            lhs = ctx.scalar(0)
            for s in range(ell - a):
                sign = (-1) ** (ell - r + 1 + s)
                pi_exp = s * (s + 1) // 2 + s * (r - ell)
                q_exp = -(ell - r) * (a - ell + 1 + s) + s
                lhs = lhs + _pi_q(ctx, pi_exp, q_exp) * sign * specialized_binomial(ell - r, s, ctx)
            pi_exp = r * (r - 1) // 2 - ell * (ell - 1) // 2 - a * (r - ell)
            rhs = _pi_q(ctx, pi_exp, ell * (a - r)) * specialized_binomial(a, r, ctx)
            report.record(lhs == rhs, a=a, r=r)


def _suite_order(ctx: RootContext, ranges: SweepRanges, report: IdentityReport) -> None:
    ell = ctx.ell
    report.record(ctx.v ** (2 * ell) == 1, t=ell)
    for t in range(1, ell):
        report.record(ctx.v ** (2 * t) != 1, t=t)
    report.record(ctx.q_tilde == ctx.sqrt_pi * ctx.epsilon, form="q-tilde")
    report.record(ctx.sqrt_pi * ctx.sqrt_pi == ctx.pi_sign, form="sqrt-pi")
    report.record((ctx.q_tilde * ctx.q_tilde * ctx.pi_sign) ** (2 * ell) == 1, form="pi-q-squared")


def _suite_v_identification(ctx: RootContext, ranges: SweepRanges, report: IdentityReport) -> None:
    # Generic check in ℚ(ζ₄)[q^{±1}]: √s ∈ {1, i} embedded as ζ₄^0 or ζ₄^1.
    for pi_sign in (1, -1):
        root = CycNumber.root_of_unity(4, 0 if pi_sign == 1 else 1)
        for n in range(VQ_RANGE + 1):
            for t in range(n + 1):
                lhs = qpi_binomial(n, t).component(pi_sign)
                v_form = qpi_binomial(n, t).component(1)
                rhs = {k: root ** k * c for k, c in v_form.items()}
                prefactor = root ** ((n - t) * t)
                ok = set(laurent_trim(lhs)) == set(k for k, c in rhs.items() if c) and all(
                    prefactor * rhs[k] == c for k, c in lhs.items())
                report.record(ok, pi=pi_sign, n=n, t=t, form="binomial")
            factorial_lhs = qpi_factorial(n).component(pi_sign)
            factorial_v = qpi_factorial(n).component(1)
            prefactor = root ** (n * (n - 1) // 2)
            ok = all(prefactor * root ** k * c == factorial_lhs.get(k, 0) for k, c in factorial_v.items()) \
                and set(factorial_lhs) <= set(factorial_v)
            report.record(ok, pi=pi_sign, n=n, form="factorial")


def _suite_positivity(ctx: RootContext, ranges: SweepRanges, report: IdentityReport) -> None:
    for n in range(POSITIVITY_RANGE + 1):
        even, odd = qpi_integer(n).to_pi_basis()
        report.record(all(c >= 0 for c in list(even.values()) + list(odd.values())), n=n, form="integer")
        for t in range(n + 1):
            even, odd = qpi_binomial(n, t).to_pi_basis()
            report.record(all(c >= 0 for c in list(even.values()) + list(odd.values())), n=n, t=t,
                          form="binomial")


def _suite_classical_limit(ctx: RootContext, ranges: SweepRanges, report: IdentityReport) -> None:
    # q̃ = ±1 here; binom(a,n) = q̃^{n(a−n)} C(a,n)
    for a in range(CLASSICAL_RANGE + 1):
        for n in range(a + 1):
            expected = ctx.q_tilde_power(n * (a - n)) * comb(a, n)
            report.record(specialize(qpi_binomial(a, n), ctx) == expected, a=a, n=n)


def diamond_binomial_suite(ctx: RootContext, datum, index: int, report: IdentityReport,
                           n_max: Optional[int] = None, t_max: Optional[int] = None) -> None:
    """binom(n,t) at (q̃_i, π_i) equals binom(n/ℓ_i, t/ℓ_i) at (q̃_i⋄, π_i⋄) when ℓ_i | n, t."""
    d_i = datum.d(index)
    ell_i = ctx.ell // gcd(ctx.ell, d_i)
    d_diamond = d_i * ell_i * ell_i
    n_max = DIAMOND_MULTIPLE * ell_i if n_max is None else n_max
    t_max = n_max if t_max is None else t_max
    for n in range(-n_max, n_max + 1):
        if n % ell_i:
            continue
        for t in range(0, t_max + 1, ell_i):
            lhs = specialized_binomial(n, t, ctx, d_i)
            rhs = specialized_binomial(n // ell_i, t // ell_i, ctx, d_diamond)
            report.record(lhs == rhs, i=index, n=n, t=t)


_SUITES: Dict[str, Callable[[RootContext, SweepRanges, IdentityReport], None]] = {
    SUITE_BINOMIAL_VANISHING: _suite_binomial_vanishing,
    SUITE_BINOMIAL_MULTIPLE: _suite_binomial_multiple,
    SUITE_BINOMIAL_FACTORIZATION: _suite_binomial_factorization,
    SUITE_SIGN_POWER: _suite_sign_power,
    SUITE_FACTORIAL_RATIO: _suite_factorial_ratio,
    SUITE_ALTERNATING_SUM: _suite_alternating_sum,
    SUITE_ORDER: _suite_order,
    SUITE_V_IDENTIFICATION: _suite_v_identification,
    SUITE_POSITIVITY: _suite_positivity,
    SUITE_CLASSICAL_LIMIT: _suite_classical_limit,
}


def run_identity_suite(suite_id: str, ctx: RootContext, ranges: Optional[SweepRanges] = None,
                       datum=None, index: Optional[int] = None) -> IdentityReport:
    """Runs one exhaustive identity sweep.

    Args:
        suite_id: One of the suite identifiers in src.constants.
        ctx: The root-of-unity context.
        ranges: Sweep bounds; defaults to the acceptance bounds.
        datum: Required for the diamond-binomial suite.
        index: Node for the diamond-binomial suite; all nodes when omitted.

    Returns:
        IdentityReport: Checked count and every counterexample.

    Raises:
        ValueError: On an unknown suite, a diamond suite without datum, or the
            classical-limit suite outside ℓ = 1, π = +1.
    """
    if suite_id not in ALL_SUITES:
        raise ValueError(f"unknown suite {suite_id!r}")
    ranges = ranges or SweepRanges()
    params = dict(ctx.describe(), n_max=ranges.n_max, t_max=ranges.t_max, b_max=ranges.b_max)
    report = IdentityReport(suite_id, params)
    if suite_id == SUITE_DIAMOND_BINOMIAL:
        if datum is None:
            raise ValueError("the diamond-binomial suite needs a datum")
        indices = range(datum.rank) if index is None else [index]
        report.parameters.update(datum=datum.label, index=None if index is None else index)
        for i in indices:
            diamond_binomial_suite(ctx, datum, i, report)
    else:
        if suite_id == SUITE_CLASSICAL_LIMIT and (ctx.ell != 1 or ctx.pi_sign != 1):
            raise ValueError("the classical-limit suite needs ell = 1 and pi = +1")
        _SUITES[suite_id](ctx, ranges, report)
    level = logging.INFO if report.passed else logging.WARNING
    logger.log(level, f"Suite {suite_id} {ctx.describe()}: checked={report.checked} failures={len(report.failures)}")
    return report


def run_qpi_suites(ctx: RootContext, ranges: Optional[SweepRanges] = None) -> List[IdentityReport]:
    """All ℓ-level suites for one context (the classical limit only at ℓ = 1, π = +1)."""
    suites = [s for s in ALL_SUITES if s != SUITE_DIAMOND_BINOMIAL]
    if ctx.ell != 1 or ctx.pi_sign != 1:
        suites.remove(SUITE_CLASSICAL_LIMIT)
    return [run_identity_suite(s, ctx, ranges) for s in suites]
