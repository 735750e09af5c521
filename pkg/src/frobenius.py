"""
Frobenius-Lusztig homomorphisms between f and the quasi-classical algebra f⋄.

Fr′: f⋄ → ₍R₎f sends θ_i^{(n)} to θ_i^{(nℓ_i)}; Fr: ₍R₎f → f⋄ sends θ_i^{(n)}
to θ_i^{(n/ℓ_i)} when ℓ_i divides n and to 0 otherwise. Both are evaluated
factorwise on divided monomials, so every homomorphism statement is a check
rather than a construction.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.constants import HOMOMORPHISM_MAX_DEGREE
from src.datum import (
    DiamondDatum,
    bar_consistent,
    derive_diamond,
    require_frobenius_assumptions,
)
from src.halfalg import (
    DividedPowerHalf,
    FreeElement,
    KernelHalf,
    Vector,
    multiply,
    serre_relations,
    specialized_half,
    v_lambda_dims,
)
from src.linalg import rank
from src.models import (
    DimensionTable,
    DividedMonomial,
    Factors,
    GradedElement,
    IdentityReport,
    Weight,
    weight_sub,
    weights_of_degree,
    weights_up_to,
)
from src.qpicalc import specialized_binomial, specialized_factorial, specialized_integer
from src.scalars import CycNumber, PiLaurent, RootContext, specialize

logger = logging.getLogger(__name__)


class DiamondHalf(DividedPowerHalf):
    """f⋄ over ℚ(ζ_N), presented by its Serre relations at (q̃_i⋄, π_i⋄).

    Every [n]_{q̃_i⋄, π_i⋄}^! is a nonzero multiple of n!, so the divided powers
    are honest quotients θ_i^n/[n]^! here.
    """
    kind = "diamond"

    def __init__(self, diamond: DiamondDatum, ctx: RootContext):
        self.ctx = ctx
        super().__init__(diamond, ctx.scalar(1), f"f<>[{diamond.label}, pi={ctx.pi_sign}]")

    def scalar(self, x: PiLaurent) -> CycNumber:
        return specialize(x, self.ctx)

    def quantum_integer(self, a: int, i: int) -> CycNumber:
        return specialized_integer(a, self.ctx, self.datum.d(i))

    def relations(self) -> List[FreeElement]:
        return serre_relations(self.datum, quasi_classical=True)


@lru_cache(maxsize=None)
def diamond_half(d, ctx: RootContext) -> DiamondHalf:
    return DiamondHalf(derive_diamond(d, ctx), ctx)


def _deflate(dd: DiamondDatum, nu: Sequence[int]) -> Optional[Weight]:
    if any(n % l for n, l in zip(nu, dd.ell_i)):
        return None
    return tuple(n // l for n, l in zip(nu, dd.ell_i))


# --- The two homomorphisms ---------------------------------------------------------

def fr_prime(x: GradedElement, d, ctx: RootContext) -> GradedElement:
    """Fr′ on an element of f⋄: each θ_i^{(n)} becomes θ_i^{(nℓ_i)} in ₍R₎f.

    Raises:
        ValueError: If x is not an element of f⋄.
    """
    if x.kind != "diamond":
        raise ValueError(f"Fr' is defined on f<> elements, got a {x.kind} element")
    source = diamond_half(d, ctx)
    target = specialized_half(d, ctx)
    dd = source.datum
    result = GradedElement({}, target.kind)
    for mu, vec in x.terms.items():
        nu = dd.inflate(mu)
        out = [target.zero] * target.dim(nu)
        for coeff, mono in zip(vec, source.basis(mu)):
            if not coeff:
                continue
            _, image = target.monomial_vector(fr_prime_factors(dd, mono.factors))
            out = [a + coeff * b if b else a for a, b in zip(out, image)]
        result = result + GradedElement.homogeneous(nu, out, target.kind)
    return result


def fr_prime_factors(dd: DiamondDatum, factors: Factors) -> Factors:
    return tuple((i, n * dd.ell_i[i]) for i, n in factors)


def fr(m: DividedMonomial, d, ctx: RootContext) -> GradedElement:
    """Fr on a divided monomial of ₍R₎f, as an element of f⋄."""
    target = diamond_half(d, ctx)
    dd = target.datum
    factors = []
    for i, n in m.factors:
        if n % dd.ell_i[i]:
            return GradedElement({}, target.kind)
        factors.append((i, n // dd.ell_i[i]))
    weight, vec = target.monomial_vector(tuple(factors))
    return GradedElement.homogeneous(weight, vec, target.kind)


def fr_element(x: GradedElement, d, ctx: RootContext) -> GradedElement:
    """Fr extended linearly over the integral basis of ₍R₎f."""
    if x.kind != "specialized":
        raise ValueError(f"Fr is defined on R_f elements, got a {x.kind} element")
    source = specialized_half(d, ctx)
    result = GradedElement({}, "diamond")
    for nu, vec in x.terms.items():
        for coeff, mono in zip(vec, source.basis(nu)):
            if coeff:
                result = result + fr(mono, d, ctx).scale(coeff)
    return result


# --- Well-definedness certificates ---------------------------------------------------

def fr_prime_serre_element(d, ctx: RootContext, i: int, j: int) -> FreeElement:
    """Σ (−1)^{n′} π_i^{ℓ_i²(np(j)+binom(n,2))} θ_i^{(ℓ_i n)} θ_j^{(ℓ_j)} θ_i^{(ℓ_i n′)}, n+n′ = 1−⟨i,j′⟩ℓ_j/ℓ_i.

    Raises:
        ValueError: If i == j or ⟨i,j′⟩ℓ_j/ℓ_i is not an integer.
    """
    if i == j:
        raise ValueError(f"need distinct indices, got i = j = {i}")
    dd = derive_diamond(d, ctx)
    li, lj = dd.ell_i[i], dd.ell_i[j]
    if (d.cartan(i, j) * lj) % li:
        raise ValueError(f"<{i},{j}'>ell_j/ell_i = {d.cartan(i, j)}*{lj}/{li} is not an integer")
    top = 1 - d.cartan(i, j) * lj // li
    di, pj = d.d(i), d.parity_of(j)
    terms = []
    for n2 in range(top + 1):
        n = top - n2
        pi_exp = di * li * li * (n * pj + n * (n - 1) // 2)
        coeff = PiLaurent.constant(-1 if n2 % 2 else 1) * PiLaurent.pi_q_power(pi_exp, 0)
        factors = tuple(f for f in ((i, li * n), (j, lj), (i, li * n2)) if f[1] > 0)
        terms.append((coeff, DividedMonomial(factors)))
    return FreeElement(tuple(terms), d.rank)


def verify_fr_prime_serre(d, ctx: RootContext) -> IdentityReport:
    """The Frobenius images of the Serre relations of f⋄ vanish in ₍R₎f.

    Raises:
        AssumptionViolation: If the Frobenius assumptions fail for d at ℓ.
    """
    require_frobenius_assumptions(d, ctx)
    report = IdentityReport("fr-prime-serre", {"datum": d.label, **ctx.describe()})
    if ctx.pi_sign == -1 and not bar_consistent(d):
        report.skipped.append("Frobenius Serre certificate at pi=-1 requires a bar-consistent datum")
        return report
    half = specialized_half(d, ctx)
    for i in range(d.rank):
        for j in range(d.rank):
            if i == j:
                continue
            element = fr_prime_serre_element(d, ctx, i, j)
            _, vec = half.element(element)
            report.record(not any(vec), i=i, j=j, weight=element.weight())
    logger.info(f"Fr' Serre certificate for {d.label} at ell={ctx.ell}, pi={ctx.pi_sign}: "
                f"{report.checked} pairs, {len(report.failures)} nonzero")
    return report


def verify_divided_power_identities(d, ctx: RootContext, b_max: int = 4, n_max: int = 10) -> IdentityReport:
    """Divided-power identities behind the Frobenius maps, per node.

    * θ_i^{(a+ℓ_i b)} = q̃_i^{ℓ_i ab} θ_i^{(a)} θ_i^{(ℓ_i b)} for a < ℓ_i, b ≤ b_max;
    * θ_i^{(a)} = ([a]_i^!)^{−1} θ_i^a for a < ℓ_i;
    * θ_i^{(ℓ_i b)} = (b!)^{−1} (π_i q̃_i)^{−ℓ_i² binom(b,2)} (θ_i^{(ℓ_i)})^b;
    * [n]^!_{q̃_i⋄, π_i⋄} = (π_i q̃_i)^{ℓ_i² binom(n,2)} n! for n ≤ n_max;
    * Σ_t (−1)^t π_i^{binom(t,2)} q̃_i^{t(a−1)} binom(a,t)_i = δ_{a,0} for a < ℓ_i;
    * π_i^{binom(ℓ_i,2)} q̃_i^{ℓ_i²−ℓ_i} = (−1)^{ℓ_i+1}.
    """
    report = IdentityReport("divided-powers", {"datum": d.label, **ctx.describe(), "b_max": b_max})
    half = specialized_half(d, ctx)
    dd = derive_diamond(d, ctx)

    def pq(pi_exp: int, q_exp: int) -> CycNumber:
        return ctx.q_tilde_power(q_exp) * ctx.pi_power(pi_exp)

    for i in range(d.rank):
        di, li = d.d(i), dd.ell_i[i]
        for a in range(li):
            for b in range(b_max + 1):
                if a + li * b == 0:
                    continue
                _, lhs = half.monomial_vector(((i, a + li * b),))
                _, rhs = half.monomial_vector(tuple(f for f in ((i, a), (i, li * b)) if f[1]))
                scale = ctx.q_tilde_power(di * li * a * b)
                report.record(lhs == [scale * x for x in rhs], identity="merge", i=i, a=a, b=b)
            if a:
                _, lhs = half.monomial_vector(((i, a),))
                _, rhs = half.monomial_vector(((i, 1),) * a)
                inv = 1 / specialized_factorial(a, ctx, di)
                report.record(lhs == [inv * x for x in rhs], identity="rescale", i=i, a=a)
        for b in range(1, b_max + 1):
            _, lhs = half.monomial_vector(((i, li * b),))
            _, rhs = half.monomial_vector(((i, li),) * b)
            e = li * li * comb(b, 2)
            scale = pq(-di * e, -di * e) / factorial(b)
            report.record(lhs == [scale * x for x in rhs], identity="power", i=i, b=b)
        for n in range(n_max + 1):
            e = li * li * comb(n, 2)
            expected = pq(di * e, di * e) * factorial(n)
            report.record(specialized_factorial(n, ctx, dd.d(i)) == expected, identity="factorial", i=i, n=n)
        for a in range(li):
            total = ctx.scalar(0)
            for t in range(a + 1):
                sign = -1 if t % 2 else 1
                total = total + pq(di * comb(t, 2), di * t * (a - 1)) * sign * specialized_binomial(a, t, ctx, di)
            report.record(total == (1 if a == 0 else 0), identity="collapse", i=i, a=a)
        report.record(pq(di * comb(li, 2), di * (li * li - li)) == (-1) ** (li + 1), identity="sign", i=i)
    return report


# --- Homomorphism sweeps -----------------------------------------------------------

def _basis_vectors(half, nu: Weight) -> List[Vector]:
    size = half.dim(nu)
    return [[half.one if k == index else half.zero for k in range(size)] for index in range(size)]


def _weights_to(rank_: int, max_degree: int) -> List[Weight]:
    return [w for deg in range(max_degree + 1) for w in weights_of_degree(rank_, deg)]


def verify_fr_homomorphism(d, ctx: RootContext, max_degree: int = HOMOMORPHISM_MAX_DEGREE) -> IdentityReport:
    """Fr(xy) = Fr(x)Fr(y) on pairs of basis monomials of ₍R₎f with total degree ≤ max_degree."""
    require_frobenius_assumptions(d, ctx)
    source = specialized_half(d, ctx)
    target = diamond_half(d, ctx)
    dd = target.datum
    report = IdentityReport("fr-homomorphism", {"datum": d.label, **ctx.describe(), "max_degree": max_degree})
    report.skipped.append("pairs whose total weight is not in the image lattice map to 0 on both sides")
    weights = _weights_to(d.rank, max_degree)
    for wx in weights:
        for wy in weights:
            total = tuple(a + b for a, b in zip(wx, wy))
            if sum(total) > max_degree or _deflate(dd, total) is None:
                continue
            for x, mx in zip(_basis_vectors(source, wx), source.basis(wx)):
                for y, my in zip(_basis_vectors(source, wy), source.basis(wy)):
                    w, xy = source.multiply(wx, x, wy, y)
                    lhs = fr_element(GradedElement.homogeneous(w, xy, source.kind), d, ctx)
                    fx, fy = fr(mx, d, ctx), fr(my, d, ctx)
                    rhs = multiply(fx, fy, target)
                    report.record(lhs == rhs, x=str(mx), y=str(my))
    logger.info(f"Fr homomorphism sweep on {d.label}, ell={ctx.ell}: {report.checked} pairs, "
                f"{len(report.failures)} failures")
    return report


def _diamond_weights(dd: DiamondDatum, max_degree: int) -> List[Weight]:
    return [mu for mu in _weights_to(dd.rank, max_degree) if sum(dd.inflate(mu)) <= max_degree]


def verify_fr_prime_homomorphism(d, ctx: RootContext, max_degree: int = HOMOMORPHISM_MAX_DEGREE) -> IdentityReport:
    """Fr′(xy) = Fr′(x)Fr′(y) on basis monomials of f⋄ whose images have total degree ≤ max_degree."""
    require_frobenius_assumptions(d, ctx)
    source = diamond_half(d, ctx)
    target = specialized_half(d, ctx)
    dd = source.datum
    report = IdentityReport("fr-prime-homomorphism",
                            {"datum": d.label, **ctx.describe(), "max_degree": max_degree})
    weights = _diamond_weights(dd, max_degree)
    for wx in weights:
        for wy in weights:
            if sum(dd.inflate(wx)) + sum(dd.inflate(wy)) > max_degree:
                continue
            for x, mx in zip(_basis_vectors(source, wx), source.basis(wx)):
                for y, my in zip(_basis_vectors(source, wy), source.basis(wy)):
                    w, xy = source.multiply(wx, x, wy, y)
                    lhs = fr_prime(GradedElement.homogeneous(w, xy, source.kind), d, ctx)
                    fx = fr_prime(GradedElement.homogeneous(wx, x, source.kind), d, ctx)
                    fy = fr_prime(GradedElement.homogeneous(wy, y, source.kind), d, ctx)
                    rhs = multiply(fx, fy, target)
                    report.record(lhs == rhs, x=str(mx), y=str(my))
    logger.info(f"Fr' homomorphism sweep on {d.label}, ell={ctx.ell}: {report.checked} pairs, "
                f"{len(report.failures)} failures")
    return report


def verify_fr_fr_prime_identity(d, ctx: RootContext, max_degree: int = HOMOMORPHISM_MAX_DEGREE) -> IdentityReport:
    """Fr(Fr′(x)) = x for basis monomials x of f⋄."""
    require_frobenius_assumptions(d, ctx)
    source = diamond_half(d, ctx)
    report = IdentityReport("fr-fr-prime", {"datum": d.label, **ctx.describe(), "max_degree": max_degree})
    for mu in _diamond_weights(source.datum, max_degree):
        for x, mx in zip(_basis_vectors(source, mu), source.basis(mu)):
            element = GradedElement.homogeneous(mu, x, source.kind)
            back = fr_element(fr_prime(element, d, ctx), d, ctx)
            report.record(back == element, x=str(mx))
    return report


def verify_generation(d, ctx: RootContext, max_degree: int = HOMOMORPHISM_MAX_DEGREE) -> IdentityReport:
    """₍R₎f_ν is spanned by products of θ_i^{(ℓ_i)} and of θ_i with ℓ_i ≥ 2."""
    require_frobenius_assumptions(d, ctx)
    half = specialized_half(d, ctx)
    dd = derive_diamond(d, ctx)
    generators = [half.monomial_vector(((i, dd.ell_i[i]),)) for i in range(d.rank)]
    generators += [half.monomial_vector(((i, 1),)) for i in range(d.rank) if dd.ell_i[i] >= 2]
    span = KernelHalf(half, generators)
    report = IdentityReport("generation", {"datum": d.label, **ctx.describe(), "max_degree": max_degree})
    for nu in _weights_to(d.rank, max_degree):
        report.record(span.dim(nu) == half.dim(nu), nu=nu, span=span.dim(nu), dim=half.dim(nu))
    return report


# --- Tensor decomposition and the V(λ) comparison ---------------------------------------

@dataclass
class ChiVerdict:
    """Outcome of the per-weight check of x ⊗ y ↦ Fr′(x)y.

    Attributes:
        weight (Weight): ν.
        rows (int): Number of pairs (basis of f⋄_μ) × (basis of 𝔨f_{ν−μ}).
        columns (int): dim ₍R₎f_ν.
        invertible (bool): Square and of full rank over ℚ(ζ_N).
        matrix (List[List[Any]]): The images in the ₍R₎f_ν basis, one row per pair.
    """
    weight: Weight
    rows: int
    columns: int
    invertible: bool
    matrix: List[List[Any]]

    def to_dict(self) -> Dict[str, Any]:
        return {"weight": list(self.weight), "rows": self.rows, "columns": self.columns,
                "invertible": self.invertible}


def chi_weight_check(d, ctx: RootContext, nu: Sequence[int], kernel: Optional[KernelHalf] = None) -> ChiVerdict:
    """Matrix of χ: f⋄ ⊗ 𝔨f → ₍R₎f at weight ν.

    Raises:
        AssumptionViolation: If d fails the Frobenius assumptions at this ℓ.
    """
    require_frobenius_assumptions(d, ctx)
    nu = tuple(nu)
    half = specialized_half(d, ctx)
    source = diamond_half(d, ctx)
    dd = source.datum
    kernel = kernel or KernelHalf(half)
    matrix: List[List[Any]] = []
    mu_bound = tuple(n // l for n, l in zip(nu, dd.ell_i))
    for mu in weights_up_to(mu_bound):
        inflated = dd.inflate(mu)
        rest = weight_sub(nu, inflated)
        ys = kernel.span(rest)
        if not ys:
            continue
        for mono in source.basis(mu):
            wx, x = half.monomial_vector(fr_prime_factors(dd, mono.factors))
            for y in ys:
                matrix.append(half.multiply(wx, x, rest, y)[1])
    size = half.dim(nu)
    invertible = len(matrix) == size and (size == 0 or rank(matrix, size) == size)
    return ChiVerdict(nu, len(matrix), size, invertible, matrix)


def verify_tensor_decomposition(d, ctx: RootContext, max_degree: int = HOMOMORPHISM_MAX_DEGREE) -> IdentityReport:
    """χ is bijective at every weight of total degree ≤ max_degree."""
    require_frobenius_assumptions(d, ctx)
    kernel = KernelHalf(specialized_half(d, ctx))
    report = IdentityReport("tensor", {"datum": d.label, **ctx.describe(), "max_degree": max_degree})
    for nu in _weights_to(d.rank, max_degree):
        verdict = chi_weight_check(d, ctx, nu, kernel)
        report.record(verdict.invertible, **verdict.to_dict())
    logger.info(f"Tensor decomposition on {d.label}, ell={ctx.ell}: {report.checked} weights, "
                f"{len(report.failures)} failures")
    return report


def verify_kernel_module_dims(d, ctx: RootContext, max_weight: Optional[Sequence[int]] = None) -> Tuple[IdentityReport, DimensionTable, DimensionTable]:
    """dim 𝔨f_ν = dim ₍R₎V(λ)_{λ−ν} for ⟨i,λ⟩ = ℓ_i − 1.

    Raises:
        ValueError: If d is not on the weight lattice.
        AssumptionViolation: If the Frobenius assumptions fail.
    """
    if d.lattice != "weight":
        raise ValueError(f"the V(lambda) comparison needs the weight lattice, got {d.lattice}")
    require_frobenius_assumptions(d, ctx)
    dd = derive_diamond(d, ctx)
    pairings = [l - 1 for l in dd.ell_i]
    if d.weight_with_pairings(pairings) is None:
        raise ValueError(f"no weight with pairings {pairings} in X")
    kernel = KernelHalf(specialized_half(d, ctx))
    kf = DimensionTable(f"kf ({d.label})", d.rank, kernel.dims(max_weight), ctx.describe())
    depth = None if max_weight is None else sum(max_weight)
    vl = v_lambda_dims(d, ctx, pairings, depth)
    report = IdentityReport("kf-vs-v-lambda", {"datum": d.label, **ctx.describe(), "pairings": pairings})
    for nu in sorted(set(kf.dims) | set(vl.dims), key=lambda w: (sum(w), w)):
        if max_weight is not None and any(a > b for a, b in zip(nu, max_weight)):
            continue
        a, b = kf.dims.get(nu, 0), vl.dims.get(nu, 0)
        report.record(a == b, nu=nu, kf=a, v_lambda=b)
    report.parameters.update(kf_total=kf.total, v_lambda_total=vl.total)
    logger.info(f"kf vs V(lambda) on {d.label}, ell={ctx.ell}: totals {kf.total} / {vl.total}")
    return report, kf, vl


def run_frobenius_suites(d, ctx: RootContext, max_degree: int = HOMOMORPHISM_MAX_DEGREE) -> List[IdentityReport]:
    """Every Frobenius check for one datum and context, in a fixed order."""
    require_frobenius_assumptions(d, ctx)
    reports = [
        verify_fr_prime_serre(d, ctx),
        verify_divided_power_identities(d, ctx),
        verify_fr_homomorphism(d, ctx, max_degree),
        verify_fr_prime_homomorphism(d, ctx, max_degree),
        verify_fr_fr_prime_identity(d, ctx, max_degree),
        verify_generation(d, ctx, max_degree),
        verify_tensor_decomposition(d, ctx, max_degree),
    ]
    if d.lattice == "weight":
        reports.append(verify_kernel_module_dims(d, ctx)[0])
    return reports
