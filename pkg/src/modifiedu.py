"""The modified quantum covering group U̇ at a root of unity.

Elements are finite sums of x⁺1_λx′⁻ (plus-left) or x′⁻1_λx⁺ (minus-left)
with x, x′ running over the integral basis of ₍R₎f (or of f⋄ for the
quasi-classical algebra U̇⋄). Products are computed by writing terms as
words in divided-power generators and straightening adjacent pairs that are
out of order.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.constants import ASSOCIATIVITY_TRIPLES, COPRODUCT_WINDOW, DEFAULT_SEED
from src.datum import derive_diamond, pairing_classes, require_frobenius_assumptions
from src.frobenius import diamond_half
from src.halfalg import specialized_half
from src.models import DividedMonomial, IdentityReport, XWeight, weight_add, weight_scale, weight_sub
from src.qpicalc import specialized_binomial
from src.scalars import CycNumber, RootContext, ell_tilde

logger = logging.getLogger(__name__)

PLUS_LEFT = "plus_left"
MINUS_LEFT = "minus_left"

# (sign, i, n): sign +1 for E_i^{(n)}, −1 for F_i^{(n)}
Letter = Tuple[int, int, int]
TermKey = Tuple[DividedMonomial, XWeight, DividedMonomial]

_ONE = DividedMonomial(())


@dataclass(frozen=True)
class Generator:
    """E_i^{(n)}1_λ or F_i^{(n)}1_λ; n = 0 stands for 1_λ.

    Attributes:
        kind (str): "E" or "F".
        i (int): Node.
        n (int): Divided-power exponent.
        weight (XWeight): λ, the source weight.
    """
    kind: str
    i: int
    n: int
    weight: XWeight

    @property
    def sign(self) -> int:
        return 1 if self.kind == "E" else -1

    def target(self, datum) -> XWeight:
        return weight_add(self.weight, weight_scale(datum.root(self.i), self.sign * self.n))

    def __str__(self) -> str:
        if self.n == 0:
            return f"1_{list(self.weight)}"
        return f"{self.kind}{self.i}^({self.n})1_{list(self.weight)}"


@dataclass
class UdotElement:
    """A finite sum of normal-form terms.

    Attributes:
        terms (Dict[TermKey, CycNumber]): (first, λ, second) → coefficient. For
            plus-left terms ``first`` is x⁺ and ``second`` is x′⁻; minus-left swaps them.
        orientation (str): ``plus_left`` or ``minus_left``.
    """
    terms: Dict[TermKey, CycNumber] = field(default_factory=dict)
    orientation: str = PLUS_LEFT

    def pruned(self) -> "UdotElement":
        return UdotElement({k: c for k, c in self.terms.items() if c}, self.orientation)

    def is_zero(self) -> bool:
        return not any(self.terms.values())

    def __add__(self, other: "UdotElement") -> "UdotElement":
        if self.orientation != other.orientation:
            raise ValueError(f"cannot add {self.orientation} and {other.orientation} elements")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return UdotElement(terms, self.orientation).pruned()

    def scale(self, c) -> "UdotElement":
        return UdotElement({k: c * v for k, v in self.terms.items()}, self.orientation).pruned()

    def __sub__(self, other: "UdotElement") -> "UdotElement":
        return self + other.scale(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UdotElement):
            return NotImplemented
        return (self - other).is_zero()

    def translated(self, shift: Sequence[int]) -> "UdotElement":
        """The same element with every idempotent weight moved by ``shift``."""
        return UdotElement({(a, weight_add(lam, shift), b): c for (a, lam, b), c in self.terms.items()},
                           self.orientation)

    def to_dict(self) -> Dict[str, object]:
        left, right = ("E", "F") if self.orientation == PLUS_LEFT else ("F", "E")
        rows = []
        for (a, lam, b), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0].factors, kv[0][2].factors)):
            rows.append({left: str(a), "weight": list(lam), right: str(b), "coeff": str(c)})
        return {"orientation": self.orientation, "terms": rows}

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        left, right = ("E", "F") if self.orientation == PLUS_LEFT else ("F", "E")
        return " + ".join(f"({c})*{left}[{a}]1_{list(lam)}{right}[{b}]" for (a, lam, b), c in self.terms.items())


@dataclass
class UdotTensor:
    """A finite sum of a ⊗ b with a, b plus-left terms."""
    terms: Dict[Tuple[TermKey, TermKey], CycNumber] = field(default_factory=dict)

    @classmethod
    def product(cls, a: UdotElement, b: UdotElement) -> "UdotTensor":
        out: Dict[Tuple[TermKey, TermKey], CycNumber] = {}
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                out[(ka, kb)] = ca * cb
        return cls(out).pruned()

    def pruned(self) -> "UdotTensor":
        return UdotTensor({k: c for k, c in self.terms.items() if c})

    def is_zero(self) -> bool:
        return not any(self.terms.values())

    def __add__(self, other: "UdotTensor") -> "UdotTensor":
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return UdotTensor(terms).pruned()

    def scale(self, c) -> "UdotTensor":
        return UdotTensor({k: c * v for k, v in self.terms.items()}).pruned()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UdotTensor):
            return NotImplemented
        return (self + other.scale(-1)).is_zero()


class UdotAlgebra:
    """U̇ over a datum, with the half algebra supplying the x± bases.

    ``datum`` provides pair, root, d and parity_of; ``half`` provides basis and
    monomial_vector on the same node set. For U̇⋄ the datum is the diamond
    datum and every idempotent must lie in X⋄.
    """

    def __init__(self, datum, half, ctx: RootContext, label: str):
        self.datum = datum
        self.half = half
        self.ctx = ctx
        self.label = label
        self.one = ctx.scalar(1)

    # --- weights ---------------------------------------------------------------

    def allows(self, weight: Sequence[int]) -> bool:
        return self.datum.contains(weight)

    def _shift(self, weight: XWeight, i: int, amount: int) -> XWeight:
        return weight_add(weight, weight_scale(self.datum.root(i), amount))

    def _degree_weight(self, factors) -> XWeight:
        out = self.datum.zero_weight()
        for i, n in factors:
            out = self._shift(out, i, n)
        return out

    def source(self, key: TermKey, orientation: str) -> XWeight:
        first, lam, second = key
        if orientation == PLUS_LEFT:
            return weight_add(lam, self._degree_weight(second.factors))
        return weight_sub(lam, self._degree_weight(second.factors))

    def target(self, key: TermKey, orientation: str) -> XWeight:
        first, lam, second = key
        if orientation == PLUS_LEFT:
            return weight_add(lam, self._degree_weight(first.factors))
        return weight_sub(lam, self._degree_weight(first.factors))

    def letters(self, key: TermKey, orientation: str) -> Tuple[Letter, ...]:
        first, _, second = key
        s1, s2 = (1, -1) if orientation == PLUS_LEFT else (-1, 1)
        return tuple((s1, i, n) for i, n in first.factors) + tuple((s2, i, n) for i, n in second.factors)

    def _weight_left_of(self, word: Sequence[Letter], source: XWeight) -> XWeight:
        at = source
        for sign, i, n in reversed(word):
            at = self._shift(at, i, sign * n)
        return at

    # --- straightening -----------------------------------------------------------

    def _pi_i(self, i: int, k: int) -> int:
        return self.ctx.pi_power(self.datum.d(i) * k)

    def _swap(self, left: Letter, right: Letter, junction: XWeight, orientation: str) -> List[Tuple[CycNumber, Tuple[Letter, ...]]]:
        (sl, i, nl), (sr, j, nr) = left, right
        if i != j:
            sign = self.ctx.pi_power(nl * nr * self.datum.parity_of(i) * self.datum.parity_of(j))
            return [(self.one * sign, (right, left))]
        a = self.datum.pair(i, junction)
        di = self.datum.d(i)
        out = []
        if orientation == PLUS_LEFT:
            # F^{(N)} 1_λ E^{(M)}
            big_n, big_m = nl, nr
            for t in range(min(big_n, big_m) + 1):
                c = specialized_binomial(big_m + big_n - a, t, self.ctx, di) * self._pi_i(i, big_m * big_n + t * a - t * (t - 1) // 2)
                word = tuple(x for x in ((1, i, big_m - t), (-1, i, big_n - t)) if x[2] > 0)
                out.append((c, word))
        else:
            # E^{(N)} 1_λ F^{(M)}
            big_n, big_m = nl, nr
            for t in range(min(big_n, big_m) + 1):
                c = specialized_binomial(big_m + big_n + a, t, self.ctx, di) * self._pi_i(i, big_m * big_n - t * (t + 1) // 2)
                word = tuple(x for x in ((-1, i, big_m - t), (1, i, big_n - t)) if x[2] > 0)
                out.append((c, word))
        return [(c, w) for c, w in out if c]

    @staticmethod
    def _inversion(word: Sequence[Letter], orientation: str) -> Optional[int]:
        bad = (-1, 1) if orientation == PLUS_LEFT else (1, -1)
        for p in range(len(word) - 1):
            if (word[p][0], word[p + 1][0]) == bad:
                return p
        return None

    def _reduce(self, factors) -> List[Tuple[DividedMonomial, CycNumber]]:
        if not factors:
            return [(_ONE, self.one)]
        weight, vec = self.half.monomial_vector(tuple(factors))
        return [(label, c) for label, c in zip(self.half.basis(weight), vec) if c]

    def straighten(self, coeff, word: Sequence[Letter], source: XWeight, orientation: str = PLUS_LEFT) -> UdotElement:
        """Normal form of coeff·(word)1_source.

        Raises:
            ValueError: If an idempotent along the word leaves the weight lattice
                of this algebra.
        """
        out: Dict[TermKey, CycNumber] = {}
        stack = [(coeff, tuple(w for w in word if w[2] > 0))]
        while stack:
            c, w = stack.pop()
            p = self._inversion(w, orientation)
            if p is not None:
                junction = self._weight_left_of(w[p + 1:], source)
                for c2, replacement in self._swap(w[p], w[p + 1], junction, orientation):
                    stack.append((c * c2, w[:p] + replacement + w[p + 2:]))
                continue
            lead = 1 if orientation == PLUS_LEFT else -1
            first = tuple((i, n) for s, i, n in w if s == lead)
            second = tuple((i, n) for s, i, n in w if s != lead)
            junction = self._weight_left_of(tuple((-lead, i, n) for i, n in second), source)
            if not self.allows(junction):
                raise ValueError(f"idempotent weight {junction} is outside the weight lattice of {self.label}")
            for a, ca in self._reduce(first):
                for b, cb in self._reduce(second):
                    key = (a, junction, b)
                    value = c * ca * cb
                    out[key] = out[key] + value if key in out else value
        return UdotElement(out, orientation).pruned()

    def reorient(self, x: UdotElement, orientation: str) -> UdotElement:
        """Rewrite x with the other side leading."""
        result = UdotElement({}, orientation)
        for key, c in x.terms.items():
            result = result + self.straighten(c, self.letters(key, x.orientation), self.source(key, x.orientation), orientation)
        return result

    # --- elements ----------------------------------------------------------------

    def idempotent(self, weight: Sequence[int]) -> UdotElement:
        weight = tuple(weight)
        if not self.allows(weight):
            return UdotElement()
        return UdotElement({(_ONE, weight, _ONE): self.one})

    def generator(self, g: Generator) -> UdotElement:
        if not self.allows(g.weight):
            return UdotElement()
        return self.straighten(self.one, ((g.sign, g.i, g.n),), g.weight)

    def multiply(self, a: UdotElement, b: UdotElement) -> UdotElement:
        """a·b in plus-left normal form; terms with mismatched weights multiply to zero."""
        result = UdotElement()
        for ka, ca in a.terms.items():
            src = self.source(ka, a.orientation)
            wa = self.letters(ka, a.orientation)
            for kb, cb in b.terms.items():
                if self.target(kb, b.orientation) != src:
                    continue
                result = result + self.straighten(ca * cb, wa + self.letters(kb, b.orientation),
                                                  self.source(kb, b.orientation))
        return result

    def product(self, elements: Iterable[UdotElement]) -> UdotElement:
        out = None
        for x in elements:
            out = x if out is None else self.multiply(out, x)
        return out if out is not None else UdotElement()

    # --- coproduct ----------------------------------------------------------------

    def coproduct_component(self, g: Generator, lam1: Sequence[int], mu1: Sequence[int],
                            lam2: Sequence[int], mu2: Sequence[int]) -> UdotTensor:
        """The (λ₁, μ₁, λ₂, μ₂) component of Δ̇(g).

        Raises:
            ValueError: If μ₁ + μ₂ is not the source of g or λ₁ + λ₂ is not its target.
        """
        lam1, mu1, lam2, mu2 = tuple(lam1), tuple(mu1), tuple(lam2), tuple(mu2)
        if weight_add(mu1, mu2) != g.weight:
            raise ValueError(f"mu1 + mu2 = {weight_add(mu1, mu2)} is not the source weight {g.weight}")
        if weight_add(lam1, lam2) != g.target(self.datum):
            raise ValueError(f"lambda1 + lambda2 = {weight_add(lam1, lam2)} is not the target weight {g.target(self.datum)}")
        if not all(self.allows(w) for w in (lam1, mu1, lam2, mu2)):
            return UdotTensor()
        if g.n == 0:
            if lam1 != mu1:
                return UdotTensor()
            return UdotTensor.product(self.idempotent(mu1), self.idempotent(mu2))
        split = None
        for p in range(g.n + 1):
            if self._shift(mu1, g.i, g.sign * p) == lam1:
                split = p
                break
        if split is None:
            return UdotTensor()
        p, r = split, g.n - split
        di = self.datum.d(g.i)
        if g.kind == "E":
            k = p * r + r * self.datum.pair(g.i, mu1)
            scalar = self.ctx.q_tilde_power(di * k) * self.ctx.pi_power(di * k)
        else:
            k = p * r
            scalar = self.ctx.q_tilde_power(di * (k - p * self.datum.pair(g.i, mu2))) * self.ctx.pi_power(di * k)
        left = self.generator(Generator(g.kind, g.i, p, mu1))
        right = self.generator(Generator(g.kind, g.i, r, mu2))
        return UdotTensor.product(left, right).scale(scalar)


@lru_cache(maxsize=None)
def udot_algebra(d, ctx: RootContext) -> UdotAlgebra:
    return UdotAlgebra(d, specialized_half(d, ctx), ctx, f"Udot[{d.label}, ell={ctx.ell}, pi={ctx.pi_sign}]")


@lru_cache(maxsize=None)
def diamond_udot_algebra(d, ctx: RootContext) -> UdotAlgebra:
    dd = derive_diamond(d, ctx)
    return UdotAlgebra(dd, diamond_half(d, ctx), ctx, f"Udot<>[{dd.label}, pi={ctx.pi_sign}]")


# --- Public operations -------------------------------------------------------------

def straighten_rank1(i: int, big_n: int, lam: Sequence[int], big_m: int, order: str, ctx: RootContext, d) -> UdotElement:
    """One rank-one commutation.

    ``order="plus_then_minus"`` rewrites E_i^{(N)}1_λF_i^{(M)} in minus-left form;
    ``order="minus_then_plus"`` rewrites F_i^{(N)}1_λE_i^{(M)} in plus-left form.

    Raises:
        ValueError: On an unknown order or negative exponents.
    """
    if big_n < 0 or big_m < 0:
        raise ValueError(f"exponents must be nonnegative, got N={big_n}, M={big_m}")
    algebra = udot_algebra(d, ctx)
    lam = tuple(lam)
    if order == "plus_then_minus":
        source = algebra._shift(lam, i, big_m)
        return algebra.straighten(algebra.one, ((1, i, big_n), (-1, i, big_m)), source, MINUS_LEFT)
    if order == "minus_then_plus":
        source = algebra._shift(lam, i, -big_m)
        return algebra.straighten(algebra.one, ((-1, i, big_n), (1, i, big_m)), source, PLUS_LEFT)
    raise ValueError(f"unknown order {order!r}; expected plus_then_minus or minus_then_plus")


def multiply_udot(a: UdotElement, b: UdotElement, d, ctx: RootContext) -> UdotElement:
    return udot_algebra(d, ctx).multiply(a, b)


def fr_generator(g: Generator, d, ctx: RootContext) -> UdotElement:
    """Fr on a generator, landing in U̇⋄.

    E_i^{(n)}1_λ ↦ π_i^{binom(ℓ_i,2)·n/ℓ_i} E_i^{(n/ℓ_i)}1_λ when ℓ_i | n and λ ∈ X⋄,
    F_i^{(n)}1_λ ↦ F_i^{(n/ℓ_i)}1_λ under the same conditions, 0 otherwise.
    """
    target = diamond_udot_algebra(d, ctx)
    dd = target.datum
    li = dd.ell_i[g.i]
    if g.n % li or not dd.contains(g.weight):
        return UdotElement()
    image = target.generator(Generator(g.kind, g.i, g.n // li, g.weight))
    return image.scale(_fr_twist(g, d, ctx))


def _fr_twist(g: Generator, d, ctx: RootContext) -> int:
    if g.kind != "E":
        return 1
    li = derive_diamond(d, ctx).ell_i[g.i]
    return ctx.pi_power(d.d(g.i) * (li * (li - 1) // 2) * (g.n // li))


def _term_generators(algebra: UdotAlgebra, key: TermKey) -> List[Generator]:
    """A plus-left term written as a product of generators, left to right."""
    plus, lam, minus = key
    gens: List[Generator] = []
    at = lam
    for i, n in reversed(plus.factors):
        gens.insert(0, Generator("E", i, n, at))
        at = algebra._shift(at, i, n)
    at = lam
    for i, n in minus.factors:
        at = algebra._shift(at, i, n)
        gens.append(Generator("F", i, n, at))
    if not gens:
        gens.append(Generator("E", 0, 0, lam))
    return gens


def fr_udot(x: UdotElement, d, ctx: RootContext) -> UdotElement:
    """Fr: U̇ → U̇⋄ on a plus-left element."""
    source = udot_algebra(d, ctx)
    target = diamond_udot_algebra(d, ctx)
    if x.orientation != PLUS_LEFT:
        x = source.reorient(x, PLUS_LEFT)
    result = UdotElement()
    for key, c in x.terms.items():
        images = [fr_generator(g, d, ctx) for g in _term_generators(source, key)]
        if any(im.is_zero() for im in images):
            continue
        result = result + target.product(images).scale(c)
    return result


def fr_tensor(t: UdotTensor, d, ctx: RootContext) -> UdotTensor:
    """Fr ⊗ Fr."""
    out = UdotTensor()
    for (ka, kb), c in t.terms.items():
        left = fr_udot(UdotElement({ka: c}), d, ctx)
        right = fr_udot(UdotElement({kb: ctx.scalar(1)}), d, ctx)
        out = out + UdotTensor.product(left, right)
    return out


def coproduct_component(g: Generator, lam1: Sequence[int], mu1: Sequence[int], lam2: Sequence[int],
                        mu2: Sequence[int], d, ctx: RootContext) -> UdotTensor:
    return udot_algebra(d, ctx).coproduct_component(g, lam1, mu1, lam2, mu2)


# --- Sweeps -------------------------------------------------------------------------

def weight_sweep(d, modulus: int) -> List[XWeight]:
    """Representatives for idempotent sweeps.

    Rank one gives every residue in [0, modulus). Higher ranks take every
    residue along each coordinate axis, the diagonal, and one weight from
    each class of pairings modulo ``modulus``.
    """
    rank = d.x_rank
    if rank == 1:
        return [(k,) for k in range(modulus)]
    out = set(pairing_classes(d, modulus).values())
    for axis in range(rank):
        for k in range(modulus):
            out.add(tuple(k if c == axis else 0 for c in range(rank)))
    for k in range(modulus):
        out.add(tuple(k for _ in range(rank)))
    return sorted(out)


def _generators(d, weight: XWeight, max_power: Sequence[int]) -> List[Generator]:
    out = [Generator("E", 0, 0, weight)]
    for i in range(d.rank):
        for n in range(1, max_power[i] + 1):
            out.append(Generator("E", i, n, weight))
            out.append(Generator("F", i, n, weight))
    return out


def _params(d, ctx: RootContext, **extra) -> Dict[str, object]:
    params = {"datum": d.label, **ctx.describe()}
    params.update(extra)
    return params


def verify_udot_relations(d, ctx: RootContext, n_max: Optional[int] = None,
                          weights: Optional[Sequence[XWeight]] = None) -> IdentityReport:
    """Both rank-one relations are inverse to each other.

    E^{(N)}1_λF^{(M)} taken to minus-left form by one relation and back by the
    other returns to itself, and symmetrically for F^{(N)}1_λE^{(M)}.
    """
    algebra = udot_algebra(d, ctx)
    modulus = 2 * ell_tilde(ctx)
    weights = list(weights) if weights is not None else weight_sweep(d, modulus)
    report = IdentityReport("udot-relations", _params(d, ctx, n_max=n_max, weights=len(weights)))
    for i in range(d.rank):
        bound = n_max if n_max is not None else max(2, ctx.ell)
        for big_n in range(bound + 1):
            for big_m in range(bound + 1):
                for lam in weights:
                    plus = algebra.straighten(algebra.one, ((1, i, big_n), (-1, i, big_m)),
                                              algebra._shift(lam, i, big_m), PLUS_LEFT)
                    there = algebra.reorient(plus, MINUS_LEFT)
                    back = algebra.reorient(there, PLUS_LEFT)
                    report.record(back == plus, node=i, N=big_n, M=big_m, weight=lam, form="E1F")
                    minus = algebra.straighten(algebra.one, ((-1, i, big_n), (1, i, big_m)),
                                               algebra._shift(lam, i, -big_m), MINUS_LEFT)
                    there = algebra.reorient(minus, PLUS_LEFT)
                    back = algebra.reorient(there, MINUS_LEFT)
                    report.record(back == minus, node=i, N=big_n, M=big_m, weight=lam, form="F1E")
    logger.info(f"udot-relations on {d.label}: {report.checked} checks, {len(report.failures)} failures")
    return report


def _random_chain(d, rng: np.random.Generator, weights: Sequence[XWeight], max_power: Sequence[int],
                  length: int) -> List[Generator]:
    """Generators g₁, ..., g_k with source(g_t) = target(g_{t+1})."""
    at = weights[int(rng.integers(len(weights)))]
    chain: List[Generator] = []
    for _ in range(length):
        i = int(rng.integers(d.rank))
        n = int(rng.integers(max_power[i] + 1))
        kind = "E" if rng.integers(2) == 0 else "F"
        g = Generator(kind, i, n, at)
        chain.insert(0, g)
        at = g.target(d)
    return chain


def verify_udot_associativity(d, ctx: RootContext, triples: int = ASSOCIATIVITY_TRIPLES,
                              seed: int = DEFAULT_SEED) -> IdentityReport:
    """(ab)c = a(bc) on random composable generator triples with exponents ≤ 2ℓ_i."""
    algebra = udot_algebra(d, ctx)
    li = derive_diamond(d, ctx).ell_i
    max_power = [2 * l for l in li]
    weights = weight_sweep(d, 2 * ell_tilde(ctx))
    rng = np.random.default_rng(seed)
    report = IdentityReport("udot-associativity", _params(d, ctx, triples=triples, seed=seed))
    for _ in range(triples):
        a, b, c = (algebra.generator(g) for g in _random_chain(d, rng, weights, max_power, 3))
        left = algebra.multiply(algebra.multiply(a, b), c)
        right = algebra.multiply(a, algebra.multiply(b, c))
        report.record(left == right, a=str(a), b=str(b), c=str(c))
    logger.info(f"udot-associativity on {d.label}: {report.checked} triples, {len(report.failures)} failures")
    return report


def verify_fr_udot_homomorphism(d, ctx: RootContext, weights: Optional[Sequence[XWeight]] = None) -> IdentityReport:
    """Fr(g₁g₂) = Fr(g₁)Fr(g₂) on composable generator pairs with exponents ≤ 2ℓ_i."""
    require_frobenius_assumptions(d, ctx)
    algebra = udot_algebra(d, ctx)
    target = diamond_udot_algebra(d, ctx)
    li = target.datum.ell_i
    max_power = [2 * l for l in li]
    weights = list(weights) if weights is not None else weight_sweep(d, 2 * ell_tilde(ctx))
    report = IdentityReport("fr-udot-homomorphism", _params(d, ctx, weights=len(weights)))
    for lam in weights:
        for g2 in _generators(d, lam, max_power):
            for g1 in _generators(d, g2.target(d), max_power):
                product = algebra.multiply(algebra.generator(g1), algebra.generator(g2))
                left = fr_udot(product, d, ctx)
                right = target.multiply(fr_generator(g1, d, ctx), fr_generator(g2, d, ctx))
                report.record(left == right, g1=str(g1), g2=str(g2))
    logger.info(f"fr-udot-homomorphism on {d.label}: {report.checked} pairs, {len(report.failures)} failures")
    return report


def verify_fr_coproduct(d, ctx: RootContext, n_max: Optional[int] = None,
                        weights: Optional[Sequence[XWeight]] = None) -> IdentityReport:
    """Δ̇⋄(Fr(g)) and (Fr ⊗ Fr)(Δ̇(g)) agree componentwise.

    μ₁ sweeps the idempotent representatives shifted by fewer than
    COPRODUCT_WINDOW periods of 2ℓ̃ and p sweeps the splits n = p + r.
    """
    require_frobenius_assumptions(d, ctx)
    base = udot_algebra(d, ctx)
    diamond = diamond_udot_algebra(d, ctx)
    li = diamond.datum.ell_i
    modulus = 2 * ell_tilde(ctx)
    weights = list(weights) if weights is not None else weight_sweep(d, modulus)
    window = [weight_add(w, tuple(k * modulus for _ in w))
              for k in range(1 - COPRODUCT_WINDOW, COPRODUCT_WINDOW) for w in weights]
    report = IdentityReport("fr-coproduct", _params(d, ctx, n_max=n_max, weights=len(weights)))
    for lam in weights:
        for i in range(d.rank):
            top = n_max if n_max is not None else 2 * li[i]
            for n in range(top + 1):
                for kind in ("E", "F"):
                    if n == 0 and (kind == "F" or i > 0):
                        continue
                    g = Generator(kind, i, n, lam)
                    lifted = not (n % li[i]) and diamond.allows(lam)
                    for mu1 in window:
                        mu2 = weight_sub(lam, mu1)
                        for p in range(n + 1):
                            lam1 = base._shift(mu1, i, g.sign * p)
                            lam2 = base._shift(mu2, i, g.sign * (n - p))
                            rhs = fr_tensor(base.coproduct_component(g, lam1, mu1, lam2, mu2), d, ctx)
                            lhs = UdotTensor()
                            if lifted:
                                g_diamond = Generator(kind, i, n // li[i], lam)
                                lhs = diamond.coproduct_component(g_diamond, lam1, mu1, lam2, mu2)
                                lhs = lhs.scale(_fr_twist(g, d, ctx))
                            report.record(lhs == rhs, g=str(g), mu1=mu1, p=p)
    logger.info(f"fr-coproduct on {d.label}: {report.checked} components, {len(report.failures)} failures")
    return report


def verify_psi_twist(d, ctx: RootContext, multiples: int = 2) -> IdentityReport:
    """Compares the E-side twist of Fr with ψ: θ_i^{(n)} ↦ π_i^n θ_i^{(n)} on f⋄.

    Fr carries π_i^{binom(ℓ_i,2)·n/ℓ_i}, so in the π = −1 component the two
    disagree on odd multiples whenever d_i·(binom(ℓ_i,2) − 1) is odd. Each
    disagreement is recorded as a failure.
    """
    target = diamond_udot_algebra(d, ctx)
    dd = target.datum
    origin = dd.zero_weight()
    report = IdentityReport("psi-twist", _params(d, ctx, multiples=multiples))
    for i in range(d.rank):
        li = dd.ell_i[i]
        for k in range(1, multiples + 1):
            image = fr_generator(Generator("E", i, k * li, origin), d, ctx)
            plain = target.generator(Generator("E", i, k, origin))
            report.record(image == plain.scale(ctx.pi_power(d.d(i) * k)), node=i, k=k, ell_i=li)
    return report


def run_udot_suites(d, ctx: RootContext, seed: int = DEFAULT_SEED) -> List[IdentityReport]:
    """Every U̇ check on one datum and π-component."""
    reports = [
        verify_udot_relations(d, ctx),
        verify_udot_associativity(d, ctx, seed=seed),
        verify_fr_udot_homomorphism(d, ctx),
        verify_fr_coproduct(d, ctx),
        verify_psi_twist(d, ctx),
    ]
    return reports
