from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from src.constants import (
    DEFAULT_B_RANGE,
    DEFAULT_MAX_DEGREE,
    DEFAULT_N_RANGE,
    DEFAULT_SEED,
    DEFAULT_T_RANGE,
)

Weight = Tuple[int, ...]
XWeight = Tuple[int, ...]
Factors = Tuple[Tuple[int, int], ...]


def weight_add(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def weight_sub(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def weight_scale(a: Sequence[int], k: int) -> Tuple[int, ...]:
    return tuple(k * x for x in a)


def unit_weight(rank: int, i: int, n: int = 1) -> Weight:
    return tuple(n if k == i else 0 for k in range(rank))


def weights_up_to(bound: Sequence[int]) -> List[Weight]:
    """All ν with 0 ≤ ν ≤ bound coordinatewise, ordered by total degree then lexicographically."""
    out: List[Weight] = [()]
    for b in bound:
        out = [w + (k,) for w in out for k in range(b + 1)]
    return sorted(out, key=lambda w: (sum(w), w))


def weights_of_degree(rank: int, degree: int) -> List[Weight]:
    """All ν ∈ ℕ^rank with |ν| = degree, in lexicographic order."""
    if rank == 0:
        return [()] if degree == 0 else []
    if rank == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in weights_of_degree(rank - 1, degree - first):
            out.append((first,) + rest)
    return out


@dataclass(frozen=True)
class DividedMonomial:
    """A product θ_{i₁}^{(n₁)}···θ_{i_k}^{(n_k)} of divided powers.

    Adjacent factors with the same index are kept apart; merging them changes
    the coefficient.

    Attributes:
        factors (Factors): Pairs (i, n) with n > 0.
    """
    factors: Factors = ()

    def weight(self, rank: int) -> Weight:
        w = [0] * rank
        for i, n in self.factors:
            w[i] += n
        return tuple(w)

    def word(self) -> Tuple[int, ...]:
        """The underlying word i₁^{n₁}···i_k^{n_k}."""
        return tuple(i for i, n in self.factors for _ in range(n))

    @classmethod
    def from_word(cls, word: Sequence[int]) -> "DividedMonomial":
        """Run-length form of a word: consecutive equal letters become one factor."""
        factors: List[Tuple[int, int]] = []
        for letter in word:
            if factors and factors[-1][0] == letter:
                factors[-1] = (letter, factors[-1][1] + 1)
            else:
                factors.append((letter, 1))
        return cls(tuple(factors))

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "".join(f"t{i + 1}^({n})" for i, n in self.factors)


@dataclass
class GradedElement:
    """An element of f (or f⋄) split into homogeneous components.

    Attributes:
        terms (Dict[Weight, List[Any]]): Weight → coordinate vector over that weight's basis.
        kind (str): "generic", "specialized" or "diamond".
    """
    terms: Dict[Weight, List[Any]] = field(default_factory=dict)
    kind: str = "specialized"

    @classmethod
    def homogeneous(cls, weight: Weight, vector: List[Any], kind: str = "specialized") -> "GradedElement":
        return cls({weight: list(vector)}, kind).pruned()

    def pruned(self) -> "GradedElement":
        return GradedElement({w: v for w, v in self.terms.items() if any(v)}, self.kind)

    def is_zero(self) -> bool:
        return not any(any(v) for v in self.terms.values())

    def __add__(self, other: "GradedElement") -> "GradedElement":
        if self.kind != other.kind:
            raise ValueError(f"cannot add {self.kind} and {other.kind} elements")
        terms = {w: list(v) for w, v in self.terms.items()}
        for w, v in other.terms.items():
            if w in terms:
                terms[w] = [a + b for a, b in zip(terms[w], v)]
            else:
                terms[w] = list(v)
        return GradedElement(terms, self.kind).pruned()

    def scale(self, c: Any) -> "GradedElement":
        return GradedElement({w: [c * x for x in v] for w, v in self.terms.items()}, self.kind).pruned()

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + other.scale(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedElement):
            return NotImplemented
        return (self - other).is_zero()


@dataclass
class IdentityReport:
    """Result of an exhaustive identity sweep.

    Attributes:
        suite_id (str): Identifier of the suite.
        parameters (Dict[str, Any]): The (ℓ, ℓ′, π, ranges, ...) swept.
        checked (int): Number of instances evaluated.
        failures (List[Dict[str, Any]]): Counterexample parameter tuples.
        skipped (List[str]): Parts not evaluated, with the reason.
    """
    suite_id: str
    parameters: Dict[str, Any]
    checked: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, **instance: Any) -> None:
        self.checked += 1
        if not ok:
            self.failures.append({k: _jsonable(v) for k, v in instance.items()})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite_id,
            "params": {k: _jsonable(v) for k, v in self.parameters.items()},
            "checked": self.checked,
            "failures": self.failures,
            "skipped": self.skipped,
            "passed": self.passed,
        }


@dataclass
class ValidationIssue:
    """One violated axiom or assumption.

    Attributes:
        condition (str): Short label, e.g. "(b)" or "frobenius-a".
        indices (Tuple[int, ...]): Offending node indices (0-based).
        message (str): Human-readable description.
    """
    condition: str
    indices: Tuple[int, ...]
    message: str


@dataclass
class ValidationReport:
    """Outcome of a datum validation or an assumption check.

    Attributes:
        subject (str): What was validated.
        issues (List[ValidationIssue]): Violations; empty iff valid.
        facts (Dict[str, Any]): Derived facts recorded along the way.
    """
    subject: str
    issues: List[ValidationIssue] = field(default_factory=list)
    facts: Dict[str, Any] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return not self.issues

    def add(self, condition: str, indices: Sequence[int], message: str) -> None:
        self.issues.append(ValidationIssue(condition, tuple(indices), message))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subject": self.subject,
            "valid": self.valid,
            "issues": [{"condition": i.condition, "indices": list(i.indices), "message": i.message}
                       for i in self.issues],
            "facts": {k: _jsonable(v) for k, v in self.facts.items()},
        }


@dataclass
class DimensionTable:
    """Per-weight dimensions.

    Attributes:
        name (str): Table label.
        rank (int): Number of weight coordinates.
        dims (Dict[Weight, int]): ν → dimension.
        parameters (Dict[str, Any]): Context of the computation.
    """
    name: str
    rank: int
    dims: Dict[Weight, int] = field(default_factory=dict)
    parameters: Dict[str, Any] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def rows(self) -> List[Tuple[int, ...]]:
        return [w + (d,) for w, d in sorted(self.dims.items(), key=lambda kv: (sum(kv[0]), kv[0]))]

    def nonzero(self) -> Dict[Weight, int]:
        return {w: d for w, d in self.dims.items() if d}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "params": {k: _jsonable(v) for k, v in self.parameters.items()},
            "rows": [list(r) for r in self.rows()],
            "total": self.total,
        }


@dataclass
class SmallUDimension:
    """Closed-form versus computed dimension of the small quantum covering group.

    Attributes:
        n (int): Rank of osp(1|2n).
        ell (int): ℓ.
        ell_prime (int): ℓ′.
        lattice (str): "weight" or "root".
        formula (int): Value of the closed formula.
        computed (int): (dim 𝔨f)² × number of cosets.
        kf_dim (int): dim 𝔨f.
        cosets (int): Number of nonempty cosets.
    """
    n: int
    ell: int
    ell_prime: int
    lattice: str
    formula: int
    computed: int
    kf_dim: int
    cosets: int

    @property
    def match(self) -> bool:
        return self.formula == self.computed

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "ell": self.ell, "ell_prime": self.ell_prime, "lattice": self.lattice,
                "formula": self.formula, "computed": self.computed, "kf_dim": self.kf_dim,
                "cosets": self.cosets, "match": self.match}


@dataclass(frozen=True)
class Coset:
    """A coset c_a = {λ : ⟨i,λ⟩ ≡ a_i mod 2ℓ̃}.

    Attributes:
        residues (Tuple[int, ...]): The a_i, each in [0, 2ℓ̃).
        modulus (int): 2ℓ̃.
        representative (XWeight): Some λ in the coset.
    """
    residues: Tuple[int, ...]
    modulus: int
    representative: XWeight

    def contains(self, pairings: Sequence[int]) -> bool:
        """Membership given the pairings (⟨i,λ⟩)_i of a weight λ."""
        return all(p % self.modulus == a for p, a in zip(pairings, self.residues))


@dataclass
class SweepRanges:
    """Integer bounds for identity sweeps.

    Attributes:
        n_max (int): |n| bound.
        t_max (int): t bound.
        b_max (int): b bound for factorial ratios.
    """
    n_max: int = DEFAULT_N_RANGE
    t_max: int = DEFAULT_T_RANGE
    b_max: int = DEFAULT_B_RANGE


def _jsonable(value: Any) -> Any:
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


# --- Validated user input ----------------------------------------------------

class ExplicitLattice(BaseModel):
    """A lattice given by its pairing matrix and simple-root coordinates."""
    pairing: List[List[int]]
    simple_roots: List[List[int]]


class DatumFile(BaseModel):
    """Datum JSON schema: dot matrix, parity vector and lattice choice."""
    I: List[str]
    dot: List[List[int]]
    parity: List[int]
    lattice: Union[str, ExplicitLattice] = "weight"
    super: Optional[bool] = None

    @field_validator("parity")
    @classmethod
    def _parity_bits(cls, value: List[int]) -> List[int]:
        if any(p not in (0, 1) for p in value):
            raise ValueError(f"parity entries must be 0 or 1, got {value}")
        return value

    @field_validator("lattice")
    @classmethod
    def _lattice_name(cls, value):
        if isinstance(value, str) and value not in ("weight", "root"):
            raise ValueError(f"lattice must be 'weight', 'root' or an explicit pairing, got {value!r}")
        return value

    @model_validator(mode="after")
    def _shapes(self) -> "DatumFile":
        n = len(self.I)
        if len(self.dot) != n or any(len(row) != n for row in self.dot):
            raise ValueError(f"dot must be a {n}x{n} matrix")
        if len(self.parity) != n:
            raise ValueError(f"parity must have {n} entries")
        return self


class AntipodeConfig(BaseModel):
    """Antipode images of the generators.

    S(E_i) = e_sign·(J̃_iK̃_i)^{e_jk_power}·E_i and S(F_i) = f_sign·F_i·K̃_i^{f_k_power};
    S(K_i) = K_i^{-1} and S(J_i) = J_i.
    """
    e_sign: int = Field(-1)
    e_jk_power: int = Field(-1)
    f_sign: int = Field(-1)
    f_k_power: int = Field(1)

    @field_validator("e_sign", "f_sign")
    @classmethod
    def _unit_sign(cls, value: int) -> int:
        if value not in (1, -1):
            raise ValueError(f"signs must be +1 or -1, got {value}")
        return value


class RunConfig(BaseModel):
    """Validated command-line configuration."""
    command: str
    ell: int = 3
    ell_prime: str = "default"
    pi: str = "both"
    osp: Optional[int] = None
    datum: Optional[str] = None
    lattice: str = "weight"
    max_degree: int = DEFAULT_MAX_DEGREE
    range: int = DEFAULT_N_RANGE
    seed: int = DEFAULT_SEED
    format: str = "json"
    out: Optional[str] = None
    antipode: Optional[str] = None

    @field_validator("ell")
    @classmethod
    def _positive_ell(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"--ell must be positive, got {value}")
        return value

    @field_validator("osp")
    @classmethod
    def _positive_osp(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ValueError(f"--osp must be positive, got {value}")
        return value

    @field_validator("max_degree", "range", "seed")
    @classmethod
    def _nonnegative(cls, value: int) -> int:
        if value < 0:
            raise ValueError(f"bounds must be nonnegative, got {value}")
        return value

    @model_validator(mode="after")
    def _consistent(self) -> "RunConfig":
        if self.osp is not None and self.datum is not None:
            raise ValueError("--osp and --datum are mutually exclusive")
        if self.ell_prime == "ell" and self.ell % 2 == 0:
            raise ValueError(f"--ell-prime ell requires odd ell, got {self.ell}")
        return self

    @property
    def ell_prime_choice(self) -> str:
        return {"default": "default", "ell": "ell", "2ell": "two_ell"}[self.ell_prime]

    @property
    def pi_signs(self) -> Tuple[int, ...]:
        return {"plus": (1,), "minus": (-1,), "both": (1, -1)}[self.pi]
