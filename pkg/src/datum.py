"""
Super Cartan data, root data and the derived datum at a root of unity.

A ``SuperDatum`` stores the symmetric matrix (i·j), the parity vector and a
root datum given in coordinates: weights λ ∈ X are integer vectors, the
pairing ⟨i, λ⟩ is row i of ``pairing`` applied to λ, and the simple root i′
is ``simple_roots[i]``. The weight lattice of a finite-type datum has
pairing = identity; the root lattice has pairing = Cartan matrix.
"""
import itertools
import json
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from src.constants import KOSTANT_MAX_DEGREE
from src.exceptions import AssumptionViolation
from src.linalg import integer_determinant, integer_row_basis, particular_solution, rank, solve_left
from src.models import DatumFile, ValidationReport, Weight, XWeight, weight_add
from src.scalars import RootContext

logger = logging.getLogger(__name__)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class SuperDatum:
    """A super Cartan datum together with a root datum in coordinates.

    Attributes:
        names (Tuple[str, ...]): The index set I, in order.
        dot (Tuple[Tuple[int, ...], ...]): The symmetric matrix (i·j).
        parity (Tuple[int, ...]): p(i) ∈ {0, 1}.
        pairing (Tuple[Tuple[int, ...], ...]): Row i gives λ ↦ ⟨i, λ⟩ on X-coordinates.
        simple_roots (Tuple[Tuple[int, ...], ...]): X-coordinates of i′.
        lattice (str): "weight", "root" or "explicit".
        is_super (bool): Whether the datum is flagged super.
        label (str): Display name.
    """
    names: Tuple[str, ...]
    dot: Tuple[Tuple[int, ...], ...]
    parity: Tuple[int, ...]
    pairing: Tuple[Tuple[int, ...], ...]
    simple_roots: Tuple[Tuple[int, ...], ...]
    lattice: str = "weight"
    is_super: bool = True
    label: str = "datum"

    @property
    def rank(self) -> int:
        return len(self.names)

    @property
    def x_rank(self) -> int:
        return len(self.simple_roots[0]) if self.simple_roots else 0

    def d(self, i: int) -> int:
        """d_i = (i·i)/2."""
        return self.dot[i][i] // 2

    def q_exponent(self, i: int) -> int:
        return self.d(i)

    def cartan(self, i: int, j: int) -> int:
        """⟨i, j′⟩ = 2(i·j)/(i·i)."""
        return 2 * self.dot[i][j] // self.dot[i][i]

    def cartan_matrix(self) -> List[List[int]]:
        return [[self.cartan(i, j) for j in range(self.rank)] for i in range(self.rank)]

    def parity_of(self, i: int) -> int:
        return self.parity[i]

    def pair(self, i: int, weight: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.pairing[i], weight))

    def pairings(self, weight: Sequence[int]) -> Tuple[int, ...]:
        return tuple(self.pair(i, weight) for i in range(self.rank))

    def root(self, i: int) -> XWeight:
        return tuple(self.simple_roots[i])

    def contains(self, weight: Sequence[int]) -> bool:
        return True

    def zero_weight(self) -> XWeight:
        return (0,) * self.x_rank

    def root_combination(self, nu: Sequence[int]) -> XWeight:
        """Σ ν_i i′ ∈ X."""
        out = [0] * self.x_rank
        for i, n in enumerate(nu):
            for k, c in enumerate(self.simple_roots[i]):
                out[k] += n * c
        return tuple(out)

    def weight_with_pairings(self, targets: Sequence[int]) -> Optional[XWeight]:
        """Some λ ∈ X with ⟨i, λ⟩ = targets[i] for all i, or None if there is none."""
        solution = particular_solution(self.pairing, list(targets), 1)
        if solution is None or any(x.denominator != 1 for x in solution):
            return None
        return tuple(int(x) for x in solution)


@dataclass(frozen=True)
class DiamondDatum:
    """The derived datum (I, ⋄) at a root of unity.

    Used directly as the datum of the quasi-classical algebras: ``pair``,
    ``root``, ``q_exponent`` and ``parity_of`` describe (Y⋄, X⋄, i⋄, i′⋄) on
    the ambient coordinates of X.

    Attributes:
        base (SuperDatum): The datum (I, ·).
        ell (int): ℓ.
        ell_i (Tuple[int, ...]): ℓ_i per node.
        diamond (Tuple[Tuple[int, ...], ...]): i⋄j = (i·j)ℓ_iℓ_j.
        is_super (bool): True iff ℓ is odd and the base is super.
        x_basis (Tuple[Tuple[int, ...], ...]): A ℤ-basis of X⋄ in X-coordinates.
        index (int): [X : X⋄].
    """
    base: SuperDatum
    ell: int
    ell_i: Tuple[int, ...]
    diamond: Tuple[Tuple[int, ...], ...]
    is_super: bool
    x_basis: Tuple[Tuple[int, ...], ...] = ()
    index: int = 1
    facts: Dict[str, object] = field(default_factory=dict, compare=False, hash=False)

    @property
    def rank(self) -> int:
        return self.base.rank

    @property
    def x_rank(self) -> int:
        return self.base.x_rank

    @property
    def label(self) -> str:
        return f"{self.base.label}<>ell={self.ell}"

    @property
    def names(self) -> Tuple[str, ...]:
        return self.base.names

    def d(self, i: int) -> int:
        """i⋄i/2 = d_iℓ_i²."""
        return self.diamond[i][i] // 2

    def q_exponent(self, i: int) -> int:
        return self.d(i)

    def cartan(self, i: int, j: int) -> int:
        return 2 * self.diamond[i][j] // self.diamond[i][i]

    def cartan_matrix(self) -> List[List[int]]:
        return [[self.cartan(i, j) for j in range(self.rank)] for i in range(self.rank)]

    def parity_of(self, i: int) -> int:
        return self.base.parity[i] if self.is_super else 0

    @property
    def parity(self) -> Tuple[int, ...]:
        return tuple(self.parity_of(i) for i in range(self.rank))

    def contains(self, weight: Sequence[int]) -> bool:
        """Membership in X⋄."""
        return all(self.base.pair(i, weight) % self.ell_i[i] == 0 for i in range(self.rank))

    def pair(self, i: int, weight: Sequence[int]) -> int:
        """⟨i⋄, ζ⟩ = ⟨i, ζ⟩/ℓ_i for ζ ∈ X⋄."""
        value = self.base.pair(i, weight)
        if value % self.ell_i[i]:
            raise ValueError(f"weight {tuple(weight)} is not in X<> at node {i}")
        return value // self.ell_i[i]

    def pairings(self, weight: Sequence[int]) -> Tuple[int, ...]:
        return tuple(self.pair(i, weight) for i in range(self.rank))

    def root(self, i: int) -> XWeight:
        """i′⋄ = ℓ_i i′."""
        return tuple(self.ell_i[i] * c for c in self.base.simple_roots[i])

    def zero_weight(self) -> XWeight:
        return self.base.zero_weight()

    def root_combination(self, nu: Sequence[int]) -> XWeight:
        out = [0] * self.x_rank
        for i, n in enumerate(nu):
            for k, c in enumerate(self.root(i)):
                out[k] += n * c
        return tuple(out)

    def inflate(self, nu: Sequence[int]) -> Weight:
        """The f-weight Σ ν_i ℓ_i i of an f⋄-weight ν."""
        return tuple(n * l for n, l in zip(nu, self.ell_i))

    def as_super_datum(self) -> SuperDatum:
        """(I, ⋄) as a datum in its own right, on the X⋄ basis coordinates."""
        basis = self.x_basis
        pairing = tuple(tuple(self.pair(i, b) for b in basis) for i in range(self.rank))
        roots = []
        for i in range(self.rank):
            target = self.root(i)
            coords = _coordinates_in_basis(basis, target)
            roots.append(tuple(coords))
        return SuperDatum(
            names=self.base.names,
            dot=self.diamond,
            parity=self.parity,
            pairing=pairing,
            simple_roots=tuple(roots),
            lattice="explicit",
            is_super=self.is_super,
            label=self.label,
        )


def _coordinates_in_basis(basis: Sequence[Sequence[int]], target: Sequence[int]) -> List[int]:
    coeffs = solve_left(basis, list(target), 1)
    if coeffs is None or any(c.denominator != 1 for c in coeffs):
        raise ValueError(f"{tuple(target)} is not in the lattice spanned by the basis")
    return [int(c) for c in coeffs]


# --- Construction ------------------------------------------------------------

def _lattice_matrices(cartan: List[List[int]], lattice: str) -> Tuple[List[List[int]], List[List[int]]]:
    n = len(cartan)
    identity = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if lattice == "weight":
        # X spanned by fundamental weights; i′ = Σ_k ⟨k, i′⟩ ϖ_k
        roots = [[cartan[k][i] for k in range(n)] for i in range(n)]
        return identity, roots
    if lattice == "root":
        return [list(r) for r in cartan], identity
    raise ValueError(f"unknown lattice {lattice!r}")


def make_datum(names: Sequence[str], dot: Sequence[Sequence[int]], parity: Sequence[int],
               lattice="weight", is_super: Optional[bool] = None, label: str = "datum") -> SuperDatum:
    """Builds a SuperDatum; ⟨i, j′⟩ is always derived from the dot matrix.

    Args:
        lattice: "weight", "root", or a mapping with "pairing" and "simple_roots".
        is_super: The super flag; defaults to whether some node is odd.
    """
    n = len(names)
    dot_t = tuple(tuple(int(x) for x in row) for row in dot)
    if any(dot_t[i][i] <= 0 for i in range(n)):
        raise ValueError(f"diagonal of the dot matrix must be positive, got {[dot_t[i][i] for i in range(n)]}")
    if any(2 * dot_t[i][j] % dot_t[i][i] for i in range(n) for j in range(n)):
        raise ValueError("2(i.j)/(i.i) must be an integer for all i, j")
    cartan_int = [[2 * dot_t[i][j] // dot_t[i][i] for j in range(n)] for i in range(n)]
    if isinstance(lattice, str):
        pairing, roots = _lattice_matrices(cartan_int, lattice)
        lattice_name = lattice
    else:
        pairing = [list(r) for r in lattice["pairing"]]
        roots = [list(r) for r in lattice["simple_roots"]]
        lattice_name = "explicit"
    if is_super is None:
        is_super = any(parity)
    return SuperDatum(
        names=tuple(names),
        dot=dot_t,
        parity=tuple(int(p) for p in parity),
        pairing=tuple(tuple(r) for r in pairing),
        simple_roots=tuple(tuple(r) for r in roots),
        lattice=lattice_name,
        is_super=bool(is_super),
        label=label,
    )


@lru_cache(maxsize=None)
def osp_datum(n: int, lattice: str = "weight") -> SuperDatum:
    """The osp(1|2n) datum: chain 1 - 2 - … - n, node n odd with n·n = 2, others i·i = 4.

    Raises:
        ValueError: If n < 1 or the lattice name is unknown.
    """
    if n < 1:
        raise ValueError(f"osp rank must be positive, got {n}")
    dot = [[0] * n for _ in range(n)]
    for i in range(n):
        dot[i][i] = 2 if i == n - 1 else 4
        if i + 1 < n:
            dot[i][i + 1] = dot[i + 1][i] = -2
    parity = [1 if i == n - 1 else 0 for i in range(n)]
    names = [str(i + 1) for i in range(n)]
    return make_datum(names, dot, parity, lattice, True, f"osp(1|{2 * n})-{lattice}")


@lru_cache(maxsize=None)
def even_rank2_datum(lattice: str = "weight") -> SuperDatum:
    """The non-super rank-2 datum with 1·1 = 2·2 = 2 and 1·2 = −1 (type A2)."""
    return make_datum(["1", "2"], [[2, -1], [-1, 2]], [0, 0], lattice, False, f"even-A2-{lattice}")


def datum_from_file(path: str) -> SuperDatum:
    """Loads and validates a datum JSON file.

    Raises:
        ValueError: If the file is not a valid datum description.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
        parsed = DatumFile.model_validate(raw)
    except (OSError, json.JSONDecodeError, ValidationError) as e:
        logger.error(f"Failed to load datum file {path}: {e}")
        raise ValueError(f"invalid datum file {path}: {e}") from e
    lattice = parsed.lattice if isinstance(parsed.lattice, str) else parsed.lattice.model_dump()
    return make_datum(parsed.I, parsed.dot, parsed.parity, lattice, parsed.super, label=path)


# --- Validation ----------------------------------------------------------------

def validate_super_datum(d: SuperDatum) -> ValidationReport:
    """Checks the datum axioms; every violation becomes a report entry.

    Conditions: symmetry, (a) d_i ∈ ℤ_{>0}, (b) ⟨i, j′⟩ ∈ −ℕ off the diagonal,
    (c) I₁ nonempty for a super-flagged datum, (d) ⟨i, j′⟩ even for odd i,
    (e) bar-consistency d_i ≡ p(i) mod 2 for a super-flagged datum, the
    pairing identity ⟨i, j′⟩ = 2(i·j)/(i·i), and X-regularity.
    """
    report = ValidationReport(d.label)
    n = d.rank
    for i in range(n):
        for j in range(i + 1, n):
            if d.dot[i][j] != d.dot[j][i]:
                report.add("symmetry", (i, j), f"i.j = {d.dot[i][j]} but j.i = {d.dot[j][i]}")
    for i in range(n):
        if d.dot[i][i] <= 0 or d.dot[i][i] % 2:
            report.add("(a)", (i,), f"(i.i)/2 = {d.dot[i][i]}/2 is not a positive integer")
    for i in range(n):
        for j in range(n):
            if i == j or d.dot[i][i] <= 0:
                continue
            value, rest = divmod(2 * d.dot[i][j], d.dot[i][i])
            if rest or value > 0:
                report.add("(b)", (i, j), f"2(i.j)/(i.i) = {2 * d.dot[i][j]}/{d.dot[i][i]} is not in -N")
            elif d.parity[i] == 1 and value % 2:
                report.add("(d)", (i, j), f"odd node {i} has odd <i,j'> = {value}")
    if d.is_super and not any(d.parity):
        report.add("(c)", (), "datum is flagged super but I_1 is empty")
    if d.is_super:
        for i in range(n):
            if d.dot[i][i] % 2 == 0 and d.d(i) % 2 != d.parity[i]:
                report.add("(e)", (i,), f"(i.i)/2 = {d.d(i)} is not congruent to p(i) = {d.parity[i]} mod 2")
    for i in range(n):
        for j in range(n):
            if d.dot[i][i] > 0 and d.pair(i, d.root(j)) * d.dot[i][i] != 2 * d.dot[i][j]:
                report.add("pairing", (i, j), f"<i,j'> = {d.pair(i, d.root(j))} disagrees with 2(i.j)/(i.i)")
    root_rank = rank(d.simple_roots, d.x_rank)
    if root_rank != n:
        report.add("x-regular", tuple(range(n)), f"simple roots span rank {root_rank} < {n}")
    report.facts.update(
        rank=n,
        d=[d.dot[i][i] // 2 for i in range(n)],
        odd_nodes=[i for i in range(n) if d.parity[i]],
        is_super=d.is_super,
        lattice=d.lattice,
    )
    if report.valid:
        report.facts["cartan"] = d.cartan_matrix()
    return report


def bar_consistent(d: SuperDatum) -> bool:
    """d_i ≡ p(i) mod 2 for all i."""
    return all(d.d(i) % 2 == d.parity[i] for i in range(d.rank))


# --- Derived datum ------------------------------------------------------------

def pairing_classes(d, modulus: int) -> Dict[Tuple[int, ...], XWeight]:
    """One weight per class of X modulo {λ : ⟨i, λ⟩ ≡ 0 mod modulus for all i}, keyed by residues.

    The residue vectors form the subgroup of (ℤ/modulus)^I generated by the
    pairing columns of a basis of X; it is walked breadth-first from 0.
    """
    start = tuple(0 for _ in range(d.rank))
    found: Dict[Tuple[int, ...], XWeight] = {start: d.zero_weight()}
    columns = []
    for k in range(d.x_rank):
        unit = tuple(1 if c == k else 0 for c in range(d.x_rank))
        columns.append((unit, tuple(p % modulus for p in d.pairings(unit))))
    queue = deque([start])
    while queue:
        res = queue.popleft()
        for unit, col in columns:
            nxt = tuple((a + b) % modulus for a, b in zip(res, col))
            if nxt not in found:
                found[nxt] = weight_add(found[res], unit)
                queue.append(nxt)
    return found


def ell_i_table(d: SuperDatum, ell: int) -> Tuple[int, ...]:
    """ℓ_i = min{r > 0 : r·d_i ∈ ℓℤ} = ℓ/gcd(ℓ, d_i)."""
    return tuple(ell // gcd(ell, d.d(i)) for i in range(d.rank))


def _x_diamond_basis(d: SuperDatum, ell_i: Sequence[int]) -> List[List[int]]:
    m = d.x_rank
    modulus = 1
    for l in ell_i:
        modulus = _lcm(modulus, l)
    generators = [[modulus if k == c else 0 for k in range(m)] for c in range(m)]
    for point in itertools.product(range(modulus), repeat=m):
        if any(point) and all(d.pair(i, point) % ell_i[i] == 0 for i in range(d.rank)):
            generators.append(list(point))
    return integer_row_basis(generators)


def derive_diamond(d: SuperDatum, ctx: RootContext) -> DiamondDatum:
    """The derived datum i⋄j = (i·j)ℓ_iℓ_j with X⋄ = {ζ : ⟨i, ζ⟩ ∈ ℓ_iℤ}.

    Records the parity transfer: for ℓ odd the derived datum is super with the
    same parity, for ℓ even it is non-super.
    """
    ell = ctx.ell
    ell_i = ell_i_table(d, ell)
    n = d.rank
    diamond = tuple(tuple(d.dot[i][j] * ell_i[i] * ell_i[j] for j in range(n)) for i in range(n))
    is_super = d.is_super and ell % 2 == 1
    basis = _x_diamond_basis(d, ell_i)
    index = abs(integer_determinant(basis)) if len(basis) == d.x_rank else 0
    facts = {
        "ell_i": list(ell_i),
        "parity_of_ell_i_on_odd_nodes": all(ell_i[i] % 2 == ell % 2 for i in range(n) if d.parity[i]),
        "same_cartan": [[2 * diamond[i][j] // diamond[i][i] for j in range(n)] for i in range(n)]
        == d.cartan_matrix(),
    }
    result = DiamondDatum(d, ell, ell_i, diamond, is_super, tuple(tuple(b) for b in basis), index, facts)
    logger.debug(f"Derived datum of {d.label} at ell={ell}: ell_i={ell_i} index={index} super={is_super}")
    return result


def quasi_classical_check(dd: DiamondDatum, ctx: RootContext) -> bool:
    """π_i⋄ q̃_i⋄² = 1 for every i."""
    return all(ctx.pi_power(dd.d(i)) * ctx.q_tilde_power(2 * dd.d(i)) == 1 for i in range(dd.rank))


def check_frobenius_assumptions(d: SuperDatum, ctx: RootContext) -> ValidationReport:
    """Standing assumptions for the Frobenius maps.

    (a) ℓ_i ≥ −⟨i, j′⟩ + 1 for every ordered pair i ≠ j with ℓ_j ≥ 2;
    (b) the graph on I with edges i·j ≠ 0 has no cycle of odd length.
    """
    ell_i = ell_i_table(d, ctx.ell)
    report = ValidationReport(f"{d.label} at ell={ctx.ell}")
    for i in range(d.rank):
        for j in range(d.rank):
            if i == j or ell_i[j] < 2:
                continue
            bound = -d.cartan(i, j) + 1
            if ell_i[i] < bound:
                report.add("frobenius-a", (i, j),
                           f"ell_{i + 1} = {ell_i[i]} < -<{i + 1},{j + 1}'> + 1 = {bound} while ell_{j + 1} = {ell_i[j]}")
    odd_cycle = _odd_cycle(d)
    if odd_cycle:
        report.add("frobenius-b", odd_cycle, "the diagram has an odd cycle")
    report.facts["ell_i"] = list(ell_i)
    return report


def _odd_cycle(d: SuperDatum) -> Tuple[int, ...]:
    """Nodes of some odd cycle (two-colouring conflict), or () if bipartite."""
    colour: Dict[int, int] = {}
    for start in range(d.rank):
        if start in colour:
            continue
        colour[start] = 0
        queue = [start]
        while queue:
            u = queue.pop(0)
            for v in range(d.rank):
                if v == u or d.dot[u][v] == 0:
                    continue
                if v not in colour:
                    colour[v] = 1 - colour[u]
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return (u, v)
    return ()


def require_frobenius_assumptions(d: SuperDatum, ctx: RootContext) -> ValidationReport:
    """Raises AssumptionViolation unless the assumptions hold."""
    report = check_frobenius_assumptions(d, ctx)
    if not report.valid:
        message = "; ".join(issue.message for issue in report.issues)
        logger.error(f"Frobenius assumptions fail for {d.label}, ell={ctx.ell}: {message}")
        raise AssumptionViolation(f"assumption violated for {d.label} at ell={ctx.ell}: {message}", report)
    return report


# --- Positive roots and Kostant partitions -------------------------------------

@lru_cache(maxsize=None)
def _positive_roots(cartan: Tuple[Tuple[int, ...], ...], max_height: int) -> Tuple[Weight, ...]:
    n = len(cartan)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    for _ in range(max_height):
        new_layer = []
        for beta in layer:
            for i in range(n):
                # i-string through beta: β − p·α_i, …, β + q·α_i with p − q = ⟨i, β⟩
                pairing = sum(cartan[i][k] * beta[k] for k in range(n))
                p = 0
                while True:
                    down = tuple(b - (p + 1) * (1 if k == i else 0) for k, b in enumerate(beta))
                    if down in roots:
                        p += 1
                    else:
                        break
                q = p - pairing
                if q > 0:
                    up = tuple(b + (1 if k == i else 0) for k, b in enumerate(beta))
                    if up not in roots:
                        roots.add(up)
                        new_layer.append(up)
        if not new_layer:
            break
        layer = new_layer
    return tuple(sorted(roots, key=lambda r: (sum(r), r)))


def positive_roots(d: SuperDatum, max_height: int = 64) -> List[Weight]:
    """Positive roots of a finite-type Cartan matrix, by root strings.

    Raises:
        ValueError: If the root system does not close up within max_height (infinite type).
    """
    cartan = tuple(tuple(row) for row in d.cartan_matrix())
    roots = _positive_roots(cartan, max_height)
    if max(sum(r) for r in roots) >= max_height:
        raise ValueError(f"{d.label} is not of finite type")
    return list(roots)


def kostant_count(d: SuperDatum, nu: Sequence[int]) -> int:
    """Number of ways to write ν as an ℕ-combination of positive roots."""
    roots = positive_roots(d)
    target = tuple(nu)
    table: Dict[Weight, int] = {tuple(0 for _ in target): 1}
    for beta in roots:
        # coin-change in lexicographic weight order
        for w in sorted(_weights_below(target), key=lambda w: (sum(w), w)):
            prev = tuple(a - b for a, b in zip(w, beta))
            if all(x >= 0 for x in prev) and prev in table:
                table[w] = table.get(w, 0) + table[prev]
    return table.get(target, 0)


def _weights_below(target: Sequence[int]) -> List[Weight]:
    return [tuple(w) for w in itertools.product(*(range(t + 1) for t in target))]


def kostant_table(d: SuperDatum, max_degree: int = KOSTANT_MAX_DEGREE) -> Dict[Weight, int]:
    """Kostant partition counts for all ν with |ν| ≤ max_degree."""
    roots = positive_roots(d)
    n = d.rank
    weights = [w for w in itertools.product(range(max_degree + 1), repeat=n) if sum(w) <= max_degree]
    table: Dict[Weight, int] = {w: 0 for w in weights}
    table[(0,) * n] = 1
    for beta in roots:
        for w in sorted(weights, key=lambda w: (sum(w), w)):
            prev = tuple(a - b for a, b in zip(w, beta))
            if all(x >= 0 for x in prev):
                table[w] += table[prev]
    return table
