"""
The half quantum covering group f as a graded Serre quotient.

f_ν is built weight by weight: every element of positive weight is a sum of
θ_i·b with b in a basis of f_{ν−i}, so f_ν is the quotient of
V_ν = ⊕_i θ_i f_{ν−i} by the images of s·b for Serre elements s. Each layer
is one exact row reduction; the non-pivot columns give the basis of f_ν and
the reduction of column (i, b) is the matrix of left multiplication by θ_i.

Three algebras share this machinery:

* ``GenericHalf`` - f over ℚ(q) in one π-component (sympy fraction field).
* ``SpecializedHalf`` - the integral form ₍R₎f at a root of unity, obtained
  from the generic algebra through an integral basis made of divided
  monomials, then specialized coefficientwise.
* ``DiamondHalf`` (in ``src.frobenius``) - f⋄ directly at the specialized
  parameters.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ, cyclotomic_poly
from sympy.polys.fields import field

from src.constants import (
    ASSOCIATIVITY_TRIPLES,
    DEFAULT_SEED,
    KOSTANT_MAX_DEGREE,
    SPAN_DEGREE_CAP,
)
from src.datum import bar_consistent, ell_i_table, kostant_table
from src.exceptions import IntegralityViolation
from src.linalg import Matrix, inverse, rank, rref
from src.models import (
    DimensionTable,
    DividedMonomial,
    Factors,
    GradedElement,
    IdentityReport,
    Weight,
    unit_weight,
    weight_add,
    weight_sub,
    weights_of_degree,
    weights_up_to,
)
from src.qpicalc import qpi_integer
from src.scalars import CycNumber, PiLaurent, RootContext, specialize

logger = logging.getLogger(__name__)

Vector = List[Any]


def row_times(vec: Sequence[Any], matrix: Sequence[Sequence[Any]], zero: Any) -> Vector:
    """The row vector vec·matrix."""
    width = len(matrix[0]) if matrix else 0
    out = [zero] * width
    for x, row in zip(vec, matrix):
        if not x:
            continue
        for k, y in enumerate(row):
            if y:
                out[k] = out[k] + x * y
    return out


# --- Free algebra elements -----------------------------------------------------

@dataclass(frozen=True)
class FreeElement:
    """A sum Σ c·m of divided monomials in the free algebra, with generic coefficients.

    Attributes:
        terms (Tuple[Tuple[PiLaurent, DividedMonomial], ...]): Coefficient and monomial pairs.
        rank (int): Number of generators.
    """
    terms: Tuple[Tuple[PiLaurent, DividedMonomial], ...]
    rank: int

    def weight(self) -> Weight:
        if not self.terms:
            return (0,) * self.rank
        return self.terms[0][1].weight(self.rank)

    def __str__(self) -> str:
        return " + ".join(f"({c})*{m}" for c, m in self.terms) or "0"


def serre_element(d, i: int, j: int, quasi_classical: bool = False) -> FreeElement:
    """Σ_{n+n′=1−⟨i,j′⟩} (−1)^{n′} π_i^{k·p(j)+binom(k,2)} θ_i^{(n)} θ_j θ_i^{(n′)}.

    k = n′ for f; with ``quasi_classical`` k = n, the form taken by the
    relations of f⋄ and by the Frobenius image of the Serre relation.

    Raises:
        ValueError: If i == j.
    """
    if i == j:
        raise ValueError(f"Serre element needs distinct indices, got i = j = {i}")
    top = 1 - d.cartan(i, j)
    di, pj = d.d(i), d.parity_of(j)
    terms = []
    for n2 in range(top + 1):
        n = top - n2
        k = n if quasi_classical else n2
        coeff = PiLaurent.constant(-1 if n2 % 2 else 1) * PiLaurent.pi_q_power(di * (k * pj + k * (k - 1) // 2), 0)
        factors = tuple(f for f in ((i, n), (j, 1), (i, n2)) if f[1] > 0)
        terms.append((coeff, DividedMonomial(factors)))
    return FreeElement(tuple(terms), d.rank)


def higher_serre_element(d, i: int, j: int, n: int, m: int, e: int = -1) -> FreeElement:
    """Σ_{r+s=m} (−1)^r π_i^{n·r·p(j)+binom(r,2)} q_i^{r(m−1−nα)} θ_i^{(r)} θ_j^{(n)} θ_i^{(s)}, α = −⟨i,j′⟩.

    e = +1 gives the bar image, with q_i^{k} replaced by π_i^{k} q_i^{−k}.

    Raises:
        ValueError: If i == j, n < 1, m ≤ αn or e ∉ {±1}.
    """
    if i == j:
        raise ValueError(f"higher Serre element needs distinct indices, got i = j = {i}")
    alpha = -d.cartan(i, j)
    if n < 1 or m <= alpha * n:
        raise ValueError(f"higher Serre element needs n >= 1 and m > {alpha}n, got n={n}, m={m}")
    if e not in (1, -1):
        raise ValueError(f"e must be +1 or -1, got {e}")
    di, pj = d.d(i), d.parity_of(j)
    shift = m - 1 - n * alpha
    terms = []
    for r in range(m + 1):
        s = m - r
        pi_exp = n * r * pj + r * (r - 1) // 2
        q_exp = r * shift
        if e == 1:
            pi_exp, q_exp = pi_exp + q_exp, -q_exp
        coeff = PiLaurent.constant(-1 if r % 2 else 1) * PiLaurent.pi_q_power(di * pi_exp, di * q_exp)
        factors = tuple(f for f in ((i, r), (j, n), (i, s)) if f[1] > 0)
        terms.append((coeff, DividedMonomial(factors)))
    return FreeElement(tuple(terms), d.rank)


def serre_relations(d, quasi_classical: bool = False) -> List[FreeElement]:
    return [serre_element(d, i, j, quasi_classical)
            for i in range(d.rank) for j in range(d.rank) if i != j]


# --- Graded Serre quotient over a field -------------------------------------------

@dataclass
class _Layer:
    words: List[Tuple[int, ...]]
    columns: List[Tuple[int, int]]
    basis_position: Dict[int, int]
    pivot_rows: Dict[int, Vector]


class SerreQuotient:
    """The quotient of the free algebra on rank generators by a two-sided ideal.

    Relations are given in word form: (weight, [(word, coefficient), ...]).
    Vectors are row vectors over the basis words of a weight.
    """

    def __init__(self, rank: int, relations: Sequence[Tuple[Weight, Sequence[Tuple[Tuple[int, ...], Any]]]],
                 one: Any, label: str = "f"):
        self.rank = rank
        self.one = one
        self.zero = one - one
        self.label = label
        self._relations = [(tuple(w), list(terms)) for w, terms in relations]
        self._layers: Dict[Weight, _Layer] = {}
        self._left: Dict[Tuple[int, Weight], Matrix] = {}

    def layer(self, nu: Sequence[int]) -> _Layer:
        nu = tuple(nu)
        cached = self._layers.get(nu)
        if cached is not None:
            return cached
        if any(x < 0 for x in nu):
            raise ValueError(f"weight {nu} has a negative coordinate")
        if not any(nu):
            result = _Layer([()], [], {}, {})
        else:
            result = self._compute_layer(nu)
        self._layers[nu] = result
        return result

    def _compute_layer(self, nu: Weight) -> _Layer:
        entries = []
        for i in range(self.rank):
            if nu[i] == 0:
                continue
            for b, word in enumerate(self.layer(weight_sub(nu, unit_weight(self.rank, i))).words):
                entries.append(((i,) + word, i, b))
        entries.sort()
        columns = [(i, b) for _, i, b in entries]
        column_of = {c: k for k, c in enumerate(columns)}

        rows = []
        for rel_weight, terms in self._relations:
            rest = weight_sub(nu, rel_weight)
            if any(x < 0 for x in rest):
                continue
            for b in range(self.dim(rest)):
                row = [self.zero] * len(columns)
                for word, coeff in terms:
                    vec = [self.one if k == b else self.zero for k in range(self.dim(rest))]
                    at = rest
                    for letter in reversed(word[1:]):
                        vec = self.apply_letter(letter, vec, at)
                        at = weight_add(at, unit_weight(self.rank, letter))
                    for k, x in enumerate(vec):
                        if x:
                            col = column_of[(word[0], k)]
                            row[col] = row[col] + coeff * x
                if any(row):
                    rows.append(row)
        reduced, pivots = rref(rows, len(columns))
        pivot_set = set(pivots)
        basis_cols = [c for c in range(len(columns)) if c not in pivot_set]
        layer = _Layer(
            words=[entries[c][0] for c in basis_cols],
            columns=columns,
            basis_position={c: k for k, c in enumerate(basis_cols)},
            pivot_rows={p: [row[c] for c in basis_cols] for row, p in zip(reduced, pivots)},
        )
        logger.debug(f"{self.label}: weight {nu} has {len(columns)} columns, {len(rows)} relations, "
                     f"dim {len(basis_cols)}")
        return layer

    def dim(self, nu: Sequence[int]) -> int:
        return len(self.layer(nu).words)

    def words(self, nu: Sequence[int]) -> List[Tuple[int, ...]]:
        return list(self.layer(nu).words)

    def left_matrix(self, i: int, mu: Sequence[int]) -> Matrix:
        """Matrix of x ↦ θ_i·x from f_μ to f_{μ+i}."""
        key = (i, tuple(mu))
        cached = self._left.get(key)
        if cached is not None:
            return cached
        target = weight_add(mu, unit_weight(self.rank, i))
        layer = self.layer(target)
        width = len(layer.words)
        column_of = {c: k for k, c in enumerate(layer.columns)}
        matrix = []
        for b in range(self.dim(mu)):
            col = column_of[(i, b)]
            if col in layer.basis_position:
                matrix.append([self.one if k == layer.basis_position[col] else self.zero for k in range(width)])
            else:
                matrix.append([-x if x else self.zero for x in layer.pivot_rows[col]])
        self._left[key] = matrix
        return matrix

    def apply_letter(self, i: int, vec: Sequence[Any], mu: Sequence[int]) -> Vector:
        return row_times(vec, self.left_matrix(i, mu), self.zero)


# --- Divided-power view ------------------------------------------------------------

class DividedPowerHalf:
    """A Serre quotient over a field where every [n]_i^! is invertible.

    Basis elements are the divided monomials of the quotient's basis words,
    and coordinates refer to them.
    """
    kind = "generic"

    def __init__(self, datum, one: Any, label: str):
        self.datum = datum
        self.rank = datum.rank
        self.one = one
        self.zero = one - one
        self.label = label
        self._act: Dict[Tuple[int, int, Weight], Matrix] = {}
        self._factorials: Dict[Tuple[int, int], Any] = {}
        self.quotient = SerreQuotient(self.rank, self._word_relations(), one, label)

    # hooks
    def scalar(self, x: PiLaurent) -> Any:
        raise NotImplementedError

    def quantum_integer(self, a: int, i: int) -> Any:
        raise NotImplementedError

    def relations(self) -> List[FreeElement]:
        raise NotImplementedError

    def factorial(self, n: int, i: int) -> Any:
        key = (n, i)
        if key not in self._factorials:
            value = self.one
            for k in range(1, n + 1):
                value = value * self.quantum_integer(k, i)
            self._factorials[key] = value
        return self._factorials[key]

    def _monomial_scale(self, factors: Factors) -> Any:
        value = self.one
        for i, n in factors:
            value = value * self.factorial(n, i)
        return value

    def _word_relations(self):
        out = []
        for rel in self.relations():
            combined: Dict[Tuple[int, ...], Any] = {}
            for coeff, mono in rel.terms:
                c = self.scalar(coeff) / self._monomial_scale(mono.factors)
                word = mono.word()
                combined[word] = combined.get(word, self.zero) + c
            out.append((rel.weight(), [(w, c) for w, c in combined.items() if c]))
        return out

    def basis(self, nu: Sequence[int]) -> List[DividedMonomial]:
        return [DividedMonomial.from_word(w) for w in self.quotient.words(nu)]

    def dim(self, nu: Sequence[int]) -> int:
        return self.quotient.dim(nu)

    def _scales(self, nu: Sequence[int]) -> List[Any]:
        return [self._monomial_scale(m.factors) for m in self.basis(nu)]

    def act_matrix(self, i: int, n: int, mu: Sequence[int]) -> Matrix:
        """Matrix of x ↦ θ_i^{(n)}·x from f_μ to f_{μ+ni} in divided-monomial coordinates."""
        key = (i, n, tuple(mu))
        cached = self._act.get(key)
        if cached is not None:
            return cached
        size = self.dim(mu)
        words = [[self.one if r == c else self.zero for c in range(size)] for r in range(size)]
        at = tuple(mu)
        for _ in range(n):
            step = self.quotient.left_matrix(i, at)
            words = [row_times(row, step, self.zero) for row in words]
            at = weight_add(at, unit_weight(self.rank, i))
        inner = self._scales(mu)
        outer = self._scales(at)
        fact = self.factorial(n, i)
        matrix = [[x * outer[c] / (inner[r] * fact) if x else self.zero for c, x in enumerate(row)]
                  for r, row in enumerate(words)]
        self._act[key] = matrix
        return matrix

    def act(self, factors: Factors, vec: Sequence[Any], weight: Sequence[int]) -> Tuple[Weight, Vector]:
        """Left multiplication of the weight-homogeneous vec by a divided monomial."""
        out = list(vec)
        at = tuple(weight)
        for i, n in reversed(factors):
            out = row_times(out, self.act_matrix(i, n, at), self.zero)
            at = weight_add(at, unit_weight(self.rank, i, n))
        return at, out

    def unit(self) -> Tuple[Weight, Vector]:
        return (0,) * self.rank, [self.one]

    def monomial_vector(self, factors: Factors) -> Tuple[Weight, Vector]:
        weight, vec = self.unit()
        return self.act(factors, vec, weight)

    def multiply(self, wa: Sequence[int], va: Sequence[Any], wb: Sequence[int], vb: Sequence[Any]) -> Tuple[Weight, Vector]:
        """Product of homogeneous elements a·b."""
        target = weight_add(wa, wb)
        out = [self.zero] * self.dim(target)
        for coeff, mono in zip(va, self.basis(wa)):
            if not coeff:
                continue
            _, part = self.act(mono.factors, vb, wb)
            out = [x + coeff * y if y else x for x, y in zip(out, part)]
        return target, out

    def element(self, free: FreeElement) -> Tuple[Weight, Vector]:
        """Image of a free-algebra element of a single weight."""
        weight = free.weight()
        out = [self.zero] * self.dim(weight)
        for coeff, mono in free.terms:
            c = self.scalar(coeff)
            if not c:
                continue
            _, vec = self.monomial_vector(mono.factors)
            out = [x + c * y if y else x for x, y in zip(out, vec)]
        return weight, out

    def graded(self, weight: Sequence[int], vec: Sequence[Any]) -> GradedElement:
        return GradedElement.homogeneous(tuple(weight), list(vec), self.kind)


@lru_cache(maxsize=None)
def generic_field():
    """ℚ(q) and its generator."""
    return field("q", QQ)


class GenericHalf(DividedPowerHalf):
    """f over ℚ(q) in the π-component pi_sign."""
    kind = "generic"

    def __init__(self, datum, pi_sign: int):
        if pi_sign not in (1, -1):
            raise ValueError(f"pi_sign must be +1 or -1, got {pi_sign}")
        self.pi_sign = pi_sign
        self.field, self.q = generic_field()
        super().__init__(datum, self.field.one, f"f[{datum.label}, pi={pi_sign}]")

    def scalar(self, x: PiLaurent) -> Any:
        component = x.laurent(self.pi_sign)
        return self.field(component.poly.as_expr()) * self.q ** component.shift

    def quantum_integer(self, a: int, i: int) -> Any:
        return self.scalar(qpi_integer(a, self.datum.d(i)))

    def relations(self) -> List[FreeElement]:
        return serre_relations(self.datum)


@lru_cache(maxsize=None)
def generic_half(datum, pi_sign: int) -> GenericHalf:
    return GenericHalf(datum, pi_sign)


# --- Specialization of ℚ(q) at q̃ -------------------------------------------------

class Specializer:
    """Evaluation of elements of ℚ(q) without a pole at q = q̃."""

    def __init__(self, ctx: RootContext):
        self.ctx = ctx
        ring = generic_field()[0].ring
        self.phi = ring(cyclotomic_poly(ctx.q_tilde_order, ring.symbols[0]))
        self.zero = ctx.scalar(0)

    def valuation(self, x: Any) -> Optional[int]:
        """Order of vanishing of x at q̃, or None for x = 0."""
        if not x:
            return None
        return self._poly_valuation(x.numer)[0] - self._poly_valuation(x.denom)[0]

    def _poly_valuation(self, p):
        count = 0
        while True:
            quotient, remainder = p.div(self.phi)
            if remainder:
                return count, p
            p = quotient
            count += 1

    def _evaluate(self, p) -> CycNumber:
        value = self.zero
        for (k,), c in p.terms():
            value = value + self.ctx.q_tilde_power(k) * c
        return value

    def __call__(self, x: Any) -> CycNumber:
        if not x:
            return self.zero
        vn, num = self._poly_valuation(x.numer)
        vd, den = self._poly_valuation(x.denom)
        if vn < vd:
            raise IntegralityViolation(f"coefficient {x} has a pole at the root of unity (ell={self.ctx.ell})")
        if vn > vd:
            return self.zero
        return self._evaluate(num) / self._evaluate(den)


class SpecializedHalf:
    """The integral form ₍R₎f at the root of unity of ctx.

    Each weight carries a basis of divided monomials that is a basis of the
    integral form after localizing at q̃: candidates θ_i^{(a)}·b, with b in the
    basis of weight ν − a·i, are selected column by column with minimal order
    of vanishing at q̃. Coordinates are generic coordinates against that basis,
    specialized at q̃.
    """
    kind = "specialized"

    def __init__(self, datum, ctx: RootContext):
        self.datum = datum
        self.ctx = ctx
        self.rank = datum.rank
        self.generic = generic_half(datum, ctx.pi_sign)
        self.specializer = Specializer(ctx)
        self.one = ctx.scalar(1)
        self.zero = ctx.scalar(0)
        self.label = f"R_f[{datum.label}, ell={ctx.ell}, pi={ctx.pi_sign}]"
        self._local: Dict[Weight, Tuple[List[DividedMonomial], Matrix, Matrix]] = {}
        self._act: Dict[Tuple[int, int, Weight], Matrix] = {}

    def _local_basis(self, nu: Weight) -> Tuple[List[DividedMonomial], Matrix, Matrix]:
        cached = self._local.get(nu)
        if cached is not None:
            return cached
        gen = self.generic
        if not any(nu):
            result = ([DividedMonomial(())], [[gen.one]], [[gen.one]])
            self._local[nu] = result
            return result
        size = gen.dim(nu)
        labels: List[DividedMonomial] = []
        vectors: List[Vector] = []
        for i in range(self.rank):
            for a in range(1, nu[i] + 1):
                mu = weight_sub(nu, unit_weight(self.rank, i, a))
                for b in self.basis(mu):
                    factors = ((i, a),) + b.factors
                    labels.append(DividedMonomial(factors))
                    vectors.append(gen.monomial_vector(factors)[1])
        work = [list(v) for v in vectors]
        chosen: List[int] = []
        free = set(range(len(work)))
        for col in range(size):
            best, best_val = None, None
            for r in sorted(free):
                val = self.specializer.valuation(work[r][col])
                if val is not None and (best_val is None or val < best_val):
                    best, best_val = r, val
            if best is None:
                continue
            free.discard(best)
            chosen.append(best)
            pivot = work[best]
            for r in free:
                x = work[r][col]
                if x:
                    factor = x / pivot[col]
                    work[r] = [u - factor * v if v else u for u, v in zip(work[r], pivot)]
        if len(chosen) != size:
            raise RuntimeError(f"divided monomials span rank {len(chosen)} < {size} at weight {nu}")
        chosen.sort()
        basis_labels = [labels[r] for r in chosen]
        matrix = [vectors[r] for r in chosen]
        result = (basis_labels, matrix, inverse(matrix, gen.one))
        self._local[nu] = result
        logger.debug(f"{self.label}: integral basis at {nu} from {len(labels)} candidates")
        return result

    def basis(self, nu: Sequence[int]) -> List[DividedMonomial]:
        return list(self._local_basis(tuple(nu))[0])

    def dim(self, nu: Sequence[int]) -> int:
        return self.generic.dim(nu)

    def generic_vector(self, nu: Sequence[int], index: int) -> Vector:
        """Generic divided-monomial coordinates of the index-th basis element."""
        return list(self._local_basis(tuple(nu))[1][index])

    def from_generic(self, nu: Sequence[int], vec: Sequence[Any]) -> Vector:
        """Specialized coordinates of an integral generic vector.

        Raises:
            IntegralityViolation: If vec is not in the integral form.
        """
        inv = self._local_basis(tuple(nu))[2]
        local = row_times(vec, inv, self.generic.zero)
        return [self.specializer(x) for x in local]

    def act_matrix(self, i: int, n: int, mu: Sequence[int]) -> Matrix:
        key = (i, n, tuple(mu))
        cached = self._act.get(key)
        if cached is not None:
            return cached
        target = weight_add(mu, unit_weight(self.rank, i, n))
        matrix = []
        for index in range(self.dim(mu)):
            _, image = self.generic.act(((i, n),), self.generic_vector(mu, index), mu)
            matrix.append(self.from_generic(target, image))
        self._act[key] = matrix
        return matrix

    def act(self, factors: Factors, vec: Sequence[Any], weight: Sequence[int]) -> Tuple[Weight, Vector]:
        out = list(vec)
        at = tuple(weight)
        for i, n in reversed(factors):
            out = row_times(out, self.act_matrix(i, n, at), self.zero)
            at = weight_add(at, unit_weight(self.rank, i, n))
        return at, out

    def unit(self) -> Tuple[Weight, Vector]:
        return (0,) * self.rank, [self.one]

    def monomial_vector(self, factors: Factors) -> Tuple[Weight, Vector]:
        weight, vec = self.unit()
        return self.act(factors, vec, weight)

    def multiply(self, wa: Sequence[int], va: Sequence[Any], wb: Sequence[int], vb: Sequence[Any]) -> Tuple[Weight, Vector]:
        target = weight_add(wa, wb)
        out = [self.zero] * self.dim(target)
        for coeff, mono in zip(va, self.basis(wa)):
            if not coeff:
                continue
            _, part = self.act(mono.factors, vb, wb)
            out = [x + coeff * y if y else x for x, y in zip(out, part)]
        return target, out

    def element(self, free: FreeElement) -> Tuple[Weight, Vector]:
        """Specialized image of a free-algebra element with integral coefficients."""
        weight = free.weight()
        out = [self.zero] * self.dim(weight)
        for coeff, mono in free.terms:
            c = specialize(coeff, self.ctx)
            if not c:
                continue
            _, vec = self.monomial_vector(mono.factors)
            out = [x + c * y if y else x for x, y in zip(out, vec)]
        return weight, out

    def graded(self, weight: Sequence[int], vec: Sequence[Any]) -> GradedElement:
        return GradedElement.homogeneous(tuple(weight), list(vec), self.kind)


@lru_cache(maxsize=None)
def specialized_half(datum, ctx: RootContext) -> SpecializedHalf:
    return SpecializedHalf(datum, ctx)


# --- Public operations ----------------------------------------------------------------

@dataclass
class WeightBasis:
    """A basis of f_ν and the expansion of every word of weight ν in it.

    Attributes:
        weight (Weight): ν.
        basis_monomials (List[DividedMonomial]): The chosen normal set.
        words (List[Tuple[int, ...]]): All words of weight ν, in lexicographic order.
        expansion (Matrix): Row k expresses words[k] in basis_monomials.
    """
    weight: Weight
    basis_monomials: List[DividedMonomial]
    words: List[Tuple[int, ...]]
    expansion: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis_monomials)


def _words_of_weight(nu: Weight) -> List[Tuple[int, ...]]:
    letters = [i for i, n in enumerate(nu) for _ in range(n)]
    return sorted(set(itertools.permutations(letters)))


def weight_basis(d, nu: Sequence[int], pi_sign: int) -> WeightBasis:
    """Basis of f_ν in divided-monomial form over ℚ(q), with word expansions."""
    half = generic_half(d, pi_sign)
    nu = tuple(nu)
    words = _words_of_weight(nu)
    expansion = [half.monomial_vector(tuple((letter, 1) for letter in w))[1] for w in words]
    return WeightBasis(nu, half.basis(nu), words, expansion)


def multiply(a: GradedElement, b: GradedElement, half) -> GradedElement:
    """Product of two graded elements of the algebra half.

    Raises:
        ValueError: If the element kinds differ from the algebra's.
    """
    if a.kind != half.kind or b.kind != half.kind:
        raise ValueError(f"cannot multiply {a.kind} and {b.kind} elements in a {half.kind} algebra")
    result = GradedElement({}, half.kind)
    for wa, va in a.terms.items():
        for wb, vb in b.terms.items():
            w, v = half.multiply(wa, va, wb, vb)
            result = result + GradedElement.homogeneous(w, v, half.kind)
    return result


def generic_dims(d, pi_sign: int, max_degree: int) -> DimensionTable:
    half = generic_half(d, pi_sign)
    dims = {}
    for degree in range(max_degree + 1):
        for nu in weights_of_degree(d.rank, degree):
            dims[nu] = half.dim(nu)
    return DimensionTable(f"dim f ({d.label})", d.rank, dims, {"pi": pi_sign, "max_degree": max_degree})


def verify_generic_dims(d, max_degree: int = KOSTANT_MAX_DEGREE) -> IdentityReport:
    """dim f_ν against Kostant partition counts, in both π-components, and the two components against each other."""
    report = IdentityReport("generic-dimensions", {"datum": d.label, "max_degree": max_degree})
    kostant = kostant_table(d, max_degree)
    plus = generic_dims(d, 1, max_degree)
    minus = generic_dims(d, -1, max_degree)
    for nu in sorted(plus.dims, key=lambda w: (sum(w), w)):
        expected = kostant[nu]
        report.record(plus.dims[nu] == expected, nu=nu, pi=1, dim=plus.dims[nu], kostant=expected)
        report.record(minus.dims[nu] == expected, nu=nu, pi=-1, dim=minus.dims[nu], kostant=expected)
        report.record(plus.dims[nu] == minus.dims[nu], nu=nu, plus=plus.dims[nu], minus=minus.dims[nu])
    logger.info(f"Generic dimensions of {d.label} up to degree {max_degree}: "
                f"{report.checked} checks, {len(report.failures)} failures")
    return report


def verify_higher_serre(d, ctx: RootContext) -> IdentityReport:
    """Serre elements and the higher Serre elements g_t reduce to 0 in f.

    For each ordered pair i ≠ j and 0 ≤ t ≤ ℓ_i − 1 the element with n = ℓ_j,
    m = ℓ_j·α + ℓ_i − t is reduced, for both bar orientations.
    """
    report = IdentityReport("higher-serre", {"datum": d.label, **ctx.describe()})
    half = generic_half(d, ctx.pi_sign)
    for rel in serre_relations(d):
        _, vec = half.element(rel)
        report.record(not any(vec), element=str(rel), kind="serre")
    if ctx.pi_sign == -1 and not bar_consistent(d):
        report.skipped.append("higher Serre relations at pi=-1 require a bar-consistent datum")
        return report
    ell_i = ell_i_table(d, ctx.ell)
    for i in range(d.rank):
        for j in range(d.rank):
            if i == j:
                continue
            alpha = -d.cartan(i, j)
            for t in range(ell_i[i]):
                n, m = ell_i[j], ell_i[j] * alpha + ell_i[i] - t
                for e in (-1, 1):
                    _, vec = half.element(higher_serre_element(d, i, j, n, m, e))
                    report.record(not any(vec), i=i, j=j, t=t, n=n, m=m, e=e)
    logger.info(f"Higher Serre check for {d.label} at ell={ctx.ell}, pi={ctx.pi_sign}: "
                f"{report.checked} elements, {len(report.failures)} nonzero")
    return report


def verify_associativity(half, max_degree: int = 8, samples: int = ASSOCIATIVITY_TRIPLES,
                         seed: int = DEFAULT_SEED) -> IdentityReport:
    """(ab)c = a(bc) on random homogeneous triples with total degree ≤ max_degree."""
    rng = np.random.default_rng(seed)
    report = IdentityReport("associativity", {"algebra": half.label, "max_degree": max_degree,
                                              "samples": samples, "seed": seed})
    weights = [w for deg in range(max_degree + 1) for w in weights_of_degree(half.rank, deg)]
    for _ in range(samples):
        picks = []
        budget = max_degree
        for _ in range(3):
            allowed = [w for w in weights if sum(w) <= budget and half.dim(w)]
            w = allowed[int(rng.integers(len(allowed)))]
            budget -= sum(w)
            vec = [half.one * int(c) for c in rng.integers(-2, 3, size=half.dim(w))]
            picks.append((w, vec))
        (wa, a), (wb, b), (wc, c) = picks
        left = half.multiply(*half.multiply(wa, a, wb, b), wc, c)
        right = half.multiply(wa, a, *half.multiply(wb, b, wc, c))
        report.record(left[1] == right[1], weights=(wa, wb, wc))
    return report


# --- Spans of generated subalgebras and the modules V(λ) ---------------------------------

def _extend_span(half, nu: Weight, rows: List[Vector]) -> List[Vector]:
    reduced, _ = rref(rows, half.dim(nu))
    return reduced


class KernelHalf:
    """The subalgebra of ₍R₎f generated by given homogeneous elements.

    The default generators are θ_i for ℓ_i ≥ 2, the Frobenius kernel half 𝔨f.
    Span layers are row-reduced and kept per weight.
    """

    def __init__(self, half: SpecializedHalf, generators: Optional[Sequence[Tuple[Weight, Vector]]] = None):
        self.half = half
        self.rank = half.rank
        if generators is None:
            ell_i = ell_i_table(half.datum, half.ctx.ell)
            generators = [half.monomial_vector(((i, 1),)) for i in range(self.rank) if ell_i[i] >= 2]
        self.generators = [(tuple(w), list(v)) for w, v in generators]
        self._spans: Dict[Weight, List[Vector]] = {(0,) * self.rank: [[half.one]]}

    def span(self, nu: Sequence[int]) -> List[Vector]:
        """Row-reduced spanning rows of the subalgebra at weight ν."""
        nu = tuple(nu)
        cached = self._spans.get(nu)
        if cached is not None:
            return cached
        if any(x < 0 for x in nu):
            return []
        rows: List[Vector] = []
        for gw, gv in self.generators:
            rest = weight_sub(nu, gw)
            if any(x < 0 for x in rest) or not any(gw):
                continue
            for s in self.span(rest):
                rows.append(self.half.multiply(gw, gv, rest, s)[1])
        result = _extend_span(self.half, nu, rows) if rows else []
        self._spans[nu] = result
        return result

    def dim(self, nu: Sequence[int]) -> int:
        return len(self.span(nu))

    def dims(self, max_weight: Optional[Sequence[int]] = None) -> Dict[Weight, int]:
        """Dimensions per weight, up to max_weight or until the span vanishes."""
        if max_weight is not None:
            return {nu: self.dim(nu) for nu in weights_up_to(max_weight)}
        step = max((sum(w) for w, _ in self.generators), default=0)
        dims: Dict[Weight, int] = {(0,) * self.rank: 1}
        empty_run = 0
        for degree in range(1, SPAN_DEGREE_CAP + 1):
            layer = {nu: self.dim(nu) for nu in weights_of_degree(self.rank, degree)}
            dims.update(layer)
            empty_run = 0 if any(layer.values()) else empty_run + 1
            if step == 0 or empty_run >= step:
                break
        else:
            raise RuntimeError(f"span of {self.half.label} does not vanish below degree {SPAN_DEGREE_CAP}")
        return dims

    def top_degree(self) -> int:
        nonzero = [sum(w) for w, d in self.dims().items() if d]
        return max(nonzero) if nonzero else 0


def specialized_span_dims(ctx: RootContext, d, generators: Sequence[GradedElement],
                          max_weight: Optional[Sequence[int]] = None) -> DimensionTable:
    """Dimensions of the subalgebra of ₍R₎f generated by homogeneous elements."""
    half = specialized_half(d, ctx)
    gens = []
    for g in generators:
        if len(g.terms) != 1:
            raise ValueError("span generators must be homogeneous and nonzero")
        (w, v), = g.terms.items()
        gens.append((w, v))
    kernel = KernelHalf(half, gens)
    dims = kernel.dims(max_weight)
    return DimensionTable(f"span ({d.label})", d.rank, dims,
                          {**ctx.describe(), "generators": len(gens)})


def kernel_dims(d, ctx: RootContext, max_weight: Optional[Sequence[int]] = None) -> DimensionTable:
    """Dimensions of 𝔨f, generated by θ_i with ℓ_i ≥ 2."""
    kernel = KernelHalf(specialized_half(d, ctx))
    dims = kernel.dims(max_weight)
    return DimensionTable(f"kf ({d.label})", d.rank, dims, ctx.describe())


def v_lambda_dims(d, ctx: RootContext, pairings: Sequence[int], max_depth: Optional[int] = None) -> DimensionTable:
    """dim ₍R₎V(λ)_{λ−ν} for the dominant weight with ⟨i,λ⟩ = pairings[i].

    M(λ) is identified with ₍R₎f; the left submodule J_λ is spanned at weight
    ν by b·θ_i^{(n)} with n ≥ ⟨i,λ⟩ + 1. Without max_depth the table runs until
    a whole degree layer vanishes.

    Raises:
        ValueError: If λ is not dominant.
    """
    if any(p < 0 for p in pairings):
        raise ValueError(f"lambda must be dominant, got pairings {tuple(pairings)}")
    half = specialized_half(d, ctx)
    dims: Dict[Weight, int] = {}
    cap = SPAN_DEGREE_CAP if max_depth is None else max_depth
    for degree in range(cap + 1):
        layer = {}
        for nu in weights_of_degree(d.rank, degree):
            rows = []
            for i in range(d.rank):
                for n in range(pairings[i] + 1, nu[i] + 1):
                    rest = weight_sub(nu, unit_weight(d.rank, i, n))
                    wt, theta = half.monomial_vector(((i, n),))
                    for index in range(half.dim(rest)):
                        basis_vec = [half.one if k == index else half.zero for k in range(half.dim(rest))]
                        rows.append(half.multiply(rest, basis_vec, wt, theta)[1])
            layer[nu] = half.dim(nu) - (rank(rows, half.dim(nu)) if rows else 0)
        dims.update(layer)
        if max_depth is None and degree > 0 and not any(layer.values()):
            break
    return DimensionTable(f"V(lambda) ({d.label})", d.rank, dims, {**ctx.describe(), "pairings": list(pairings)})
