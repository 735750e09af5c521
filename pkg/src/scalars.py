"""
Exact scalars for quantum covering groups.

Two scalar kinds live here:

* ``PiLaurent`` - generic elements of ℤ[q, q⁻¹, π]/(π² − 1), stored as the pair
  of integer Laurent polynomials obtained by setting π = +1 and π = −1. Each
  component is a ``LaurentPolynomial``: a power of q times an element of
  sympy's ℤ[q].
* ``CycNumber`` - elements of the cyclotomic field ℚ(ζ_N), held as elements of
  sympy's ``QQ.cyclotomic_field(N)``.

``RootContext`` bundles the root-of-unity data derived from ℓ, and
``specialize`` is the ring homomorphism q ↦ q̃ on a chosen π-component.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Dict, Tuple, Union

from sympy import QQ, ZZ, cyclotomic_poly
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, ring

from src.constants import CONDUCTOR_BASE, ELL_PRIME_CHOICES, PI_COMPONENTS

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]

LAURENT_RING, Q = ring("q", ZZ)


def laurent_trim(d: Dict[int, Any]) -> Dict[int, Any]:
    """Removes zero coefficients."""
    return {k: v for k, v in d.items() if v != 0}


# --- Integer Laurent polynomials ----------------------------------------------

@dataclass(frozen=True)
class LaurentPolynomial:
    """q^shift · poly with poly ∈ ℤ[q] prime to q (shift is 0 for the zero polynomial).

    Attributes:
        shift (int): The q-adic valuation.
        poly (PolyElement): Element of ``LAURENT_RING`` with nonzero constant term.
    """
    shift: int
    poly: PolyElement

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls(0, LAURENT_RING.zero)

    @classmethod
    def normalized(cls, shift: int, poly: PolyElement) -> "LaurentPolynomial":
        if not poly:
            return cls.zero()
        low = min(m[0] for m in poly.monoms())
        if low:
            poly = poly.quo_term(((low,), ZZ.one))
        return cls(shift + low, poly)

    @classmethod
    def from_dict(cls, coeffs: Dict[int, int]) -> "LaurentPolynomial":
        coeffs = laurent_trim(coeffs)
        if not coeffs:
            return cls.zero()
        low = min(coeffs)
        return cls(low, LAURENT_RING.from_dict({(k - low,): int(c) for k, c in coeffs.items()}))

    def to_dict(self) -> Dict[int, int]:
        return {m[0] + self.shift: int(c) for m, c in self.poly.terms()}

    def __bool__(self) -> bool:
        return bool(self.poly)

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        if not other:
            return self
        if not self:
            return other
        low = min(self.shift, other.shift)
        total = self.poly.mul_monom((self.shift - low,)) + other.poly.mul_monom((other.shift - low,))
        return LaurentPolynomial.normalized(low, total)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(self.shift, -self.poly)

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        if not self or not other:
            return LaurentPolynomial.zero()
        return LaurentPolynomial(self.shift + other.shift, self.poly * other.poly)

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if n == 0:
            return LaurentPolynomial(0, LAURENT_RING.one)
        return LaurentPolynomial(n * self.shift, self.poly ** n) if self else self

    def halve(self) -> "LaurentPolynomial":
        """Divides every coefficient by 2 (coefficients must be even)."""
        return LaurentPolynomial.normalized(self.shift, self.poly.quo_ground(2))

    def substitute(self, power: int) -> "LaurentPolynomial":
        """Applies q ↦ q^power for power ≥ 1."""
        if power < 1:
            raise ValueError(f"substitution power must be positive, got {power}")
        if not self:
            return self
        return LaurentPolynomial(self.shift * power, self.poly.compose(Q, Q ** power))

    def exact_div(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """Exact quotient in ℤ[q^{±1}].

        Raises:
            ZeroDivisionError: If ``other`` is zero.
            ArithmeticError: If the division leaves a remainder or non-integer coefficients.
        """
        if not other:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self:
            return self
        try:
            quotient = self.poly.exquo(other.poly)
        except ExactQuotientFailed as e:
            raise ArithmeticError(f"Laurent division is not exact: {e}") from e
        return LaurentPolynomial.normalized(self.shift - other.shift, quotient)

    def as_expr(self):
        return self.poly.as_expr() * LAURENT_RING.symbols[0] ** self.shift

    def __str__(self) -> str:
        return str(self.as_expr())


# --- PiLaurent ---------------------------------------------------------------

@dataclass(frozen=True)
class PiLaurent:
    """Generic scalar of ℤ[q^{±1}, π]/(π² − 1).

    Attributes:
        plus (LaurentPolynomial): f|_{π=1}.
        minus (LaurentPolynomial): f|_{π=−1}.
    """
    plus: LaurentPolynomial = field(default_factory=LaurentPolynomial.zero)
    minus: LaurentPolynomial = field(default_factory=LaurentPolynomial.zero)

    @classmethod
    def from_components(cls, plus: Dict[int, int], minus: Dict[int, int]) -> "PiLaurent":
        return cls(LaurentPolynomial.from_dict(plus), LaurentPolynomial.from_dict(minus))

    @classmethod
    def from_pi_basis(cls, even: Dict[int, int], odd: Dict[int, int]) -> "PiLaurent":
        """Builds a + b·π from the coefficient polynomials a and b."""
        a, b = LaurentPolynomial.from_dict(even), LaurentPolynomial.from_dict(odd)
        return cls(a + b, a - b)

    @classmethod
    def constant(cls, c: int) -> "PiLaurent":
        return cls.from_components({0: c}, {0: c})

    @classmethod
    def q_power(cls, k: int) -> "PiLaurent":
        return cls.from_components({k: 1}, {k: 1})

    @classmethod
    def pi(cls) -> "PiLaurent":
        return cls.from_components({0: 1}, {0: -1})

    @classmethod
    def pi_q_power(cls, pi_exp: int, q_exp: int) -> "PiLaurent":
        """The monomial π^pi_exp q^q_exp."""
        return cls.from_components({q_exp: 1}, {q_exp: (-1) ** (pi_exp % 2)})

    def laurent(self, pi_sign: int) -> LaurentPolynomial:
        if pi_sign not in (1, -1):
            raise ValueError(f"pi_sign must be +1 or -1, got {pi_sign}")
        return self.plus if pi_sign == 1 else self.minus

    def component(self, pi_sign: int) -> Dict[int, int]:
        return self.laurent(pi_sign).to_dict()

    def to_pi_basis(self) -> Tuple[Dict[int, int], Dict[int, int]]:
        """Returns (a, b) with self = a + b·π; both have integer coefficients."""
        return (self.plus + self.minus).halve().to_dict(), (self.plus - self.minus).halve().to_dict()

    def is_zero(self) -> bool:
        return not self.plus and not self.minus

    def substitute(self, d: int) -> "PiLaurent":
        """Applies (q, π) ↦ (q^d, π^d)."""
        return PiLaurent(self.plus.substitute(d), self.laurent(1 if d % 2 == 0 else -1).substitute(d))

    def exact_div(self, other: "PiLaurent") -> "PiLaurent":
        return PiLaurent(self.plus.exact_div(other.plus), self.minus.exact_div(other.minus))

    def _coerce(self, other) -> "PiLaurent":
        if isinstance(other, PiLaurent):
            return other
        if isinstance(other, int):
            return PiLaurent.constant(other)
        return NotImplemented

    def __add__(self, other) -> "PiLaurent":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PiLaurent(self.plus + other.plus, self.minus + other.minus)

    __radd__ = __add__

    def __neg__(self) -> "PiLaurent":
        return PiLaurent(-self.plus, -self.minus)

    def __sub__(self, other) -> "PiLaurent":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "PiLaurent":
        return (-self) + other

    def __mul__(self, other) -> "PiLaurent":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PiLaurent(self.plus * other.plus, self.minus * other.minus)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PiLaurent":
        if n < 0:
            raise ValueError("PiLaurent powers must be nonnegative")
        return PiLaurent(self.plus ** n, self.minus ** n)

    def __str__(self) -> str:
        even, odd = self.to_pi_basis()
        if not even and not odd:
            return "0"
        even_text, odd_text = str(LaurentPolynomial.from_dict(even)), str(LaurentPolynomial.from_dict(odd))
        if not odd:
            return even_text
        odd_text = f"π*({odd_text})"
        return odd_text if not even else f"{even_text} + {odd_text}"


# --- Cyclotomic polynomials and ℚ(ζ_N) --------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> Tuple[int, ...]:
    """Returns Φ_m as ascending integer coefficients (constant term first).

    Raises:
        ValueError: If m < 1.
    """
    if m < 1:
        raise ValueError(f"cyclotomic order must be positive, got {m}")
    return tuple(int(c) for c in reversed(cyclotomic_poly(m, polys=True).all_coeffs()))


@lru_cache(maxsize=None)
def cyclotomic_field(conductor: int):
    """sympy's ℚ(ζ_N) with generator ``zeta{N}`` and minimal polynomial Φ_N."""
    if conductor < 1:
        raise ValueError(f"conductor must be positive, got {conductor}")
    logger.debug(f"Building the cyclotomic field of conductor {conductor}")
    return QQ.cyclotomic_field(conductor, ss=True)


@lru_cache(maxsize=None)
def _zeta_powers(conductor: int) -> Tuple[Any, ...]:
    """ζ_N^k for 0 ≤ k < N as field elements."""
    field_ = cyclotomic_field(conductor)
    powers = [field_.one]
    for _ in range(conductor - 1):
        powers.append(powers[-1] * field_.unit)
    return tuple(powers)


def _rational(x: Any) -> Any:
    if QQ.of_type(x):
        return x
    return QQ(int(x.numerator), int(x.denominator))


def _is_rational(x: Any) -> bool:
    return isinstance(x, (int, Fraction)) or QQ.of_type(x)


class CycNumber:
    """Element of the cyclotomic field ℚ(ζ_N).

    Attributes:
        conductor (int): N.
        value (ANP): The element of ``cyclotomic_field(N)``.
    """
    __slots__ = ("conductor", "value")

    def __init__(self, conductor: int, value: Any):
        self.conductor = conductor
        self.value = value

    @classmethod
    def from_int(cls, conductor: int, x: Rational) -> "CycNumber":
        return cls(conductor, cyclotomic_field(conductor)([_rational(x)]))

    @classmethod
    def zero(cls, conductor: int) -> "CycNumber":
        return cls(conductor, cyclotomic_field(conductor).zero)

    @classmethod
    def one(cls, conductor: int) -> "CycNumber":
        return cls(conductor, cyclotomic_field(conductor).one)

    @classmethod
    def root_of_unity(cls, conductor: int, k: int) -> "CycNumber":
        """Returns ζ_N^k."""
        return cls(conductor, _zeta_powers(conductor)[k % conductor])

    @classmethod
    def from_residue_counts(cls, conductor: int, counts: Dict[int, Rational]) -> "CycNumber":
        """Returns Σ_r counts[r]·ζ_N^r."""
        powers = _zeta_powers(conductor)
        value = cyclotomic_field(conductor).zero
        for r, c in counts.items():
            if c:
                value = value + powers[r % conductor] * _rational(c)
        return cls(conductor, value)

    def coefficients(self) -> Tuple[Any, ...]:
        """Rational coefficients of 1, ζ, …, ζ^{φ(N)−1}."""
        field_ = cyclotomic_field(self.conductor)
        coeffs = list(reversed(self.value.to_list()))
        return tuple(coeffs + [QQ.zero] * (field_.mod.degree() - len(coeffs)))

    def _coerce(self, other) -> "CycNumber":
        if isinstance(other, CycNumber):
            if other.conductor != self.conductor:
                raise ValueError(f"conductor mismatch: {self.conductor} vs {other.conductor}")
            return other
        if _is_rational(other):
            return CycNumber.from_int(self.conductor, other)
        return NotImplemented

    def __add__(self, other) -> "CycNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycNumber(self.conductor, self.value + other.value)

    __radd__ = __add__

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.conductor, -self.value)

    def __sub__(self, other) -> "CycNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycNumber(self.conductor, self.value - other.value)

    def __rsub__(self, other) -> "CycNumber":
        return (-self) + other

    def __mul__(self, other) -> "CycNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycNumber(self.conductor, self.value * other.value)

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        """Multiplicative inverse modulo Φ_N.

        Raises:
            ZeroDivisionError: If self is zero.
        """
        if not self:
            raise ZeroDivisionError("inverse of zero in the cyclotomic field")
        return CycNumber(self.conductor, self.value ** -1)

    def __truediv__(self, other) -> "CycNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "CycNumber":
        return CycNumber.from_int(self.conductor, other) * self.inverse()

    def __pow__(self, n: int) -> "CycNumber":
        if n < 0:
            return self.inverse() ** -n
        return CycNumber(self.conductor, self.value ** n)

    def __bool__(self) -> bool:
        return bool(self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, CycNumber):
            return self.conductor == other.conductor and self.value == other.value
        if _is_rational(other):
            return self.value == CycNumber.from_int(self.conductor, other).value
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.conductor, self.value))

    def __repr__(self) -> str:
        return f"CycNumber({self.conductor}, {self})"

    def __str__(self) -> str:
        return str(cyclotomic_field(self.conductor).to_sympy(self.value))


# --- Root-of-unity context ---------------------------------------------------

@dataclass(frozen=True)
class RootContext:
    """Everything derived from ℓ and the π-component.

    Attributes:
        ell (int): ℓ.
        ell_prime (int): ℓ′, the order of ε.
        pi_sign (int): The π-component, +1 or −1.
        conductor (int): N = lcm(ℓ′, 4).
        sqrt_pi (CycNumber): √π with sqrt_pi² = pi_sign.
        epsilon (CycNumber): Primitive ℓ′-th root of unity ζ_N^{N/ℓ′}.
        q_tilde (CycNumber): q̃ = √π·ε.
        v (CycNumber): v = √π·q̃ = π·ε.
        q_tilde_exponent (int): e with q̃ = ζ_N^e.
        ell_prime_choice (str): The configured ℓ′ choice.
    """
    ell: int
    ell_prime: int
    pi_sign: int
    conductor: int
    sqrt_pi: CycNumber
    epsilon: CycNumber
    q_tilde: CycNumber
    v: CycNumber
    q_tilde_exponent: int
    ell_prime_choice: str = "default"

    @property
    def q_tilde_order(self) -> int:
        """Multiplicative order of q̃."""
        return self.conductor // gcd(self.conductor, self.q_tilde_exponent)

    def zeta_power(self, k: int) -> CycNumber:
        return CycNumber.root_of_unity(self.conductor, k)

    def q_tilde_power(self, k: int) -> CycNumber:
        """q̃^k for any integer k."""
        return self.zeta_power(self.q_tilde_exponent * k)

    def pi_power(self, k: int) -> int:
        """π^k in this component, as ±1."""
        return -1 if self.pi_sign == -1 and k % 2 else 1

    def scalar(self, x: Rational) -> CycNumber:
        return CycNumber.from_int(self.conductor, x)

    def describe(self) -> Dict[str, object]:
        return {"ell": self.ell, "ell_prime": self.ell_prime, "pi": self.pi_sign,
                "ell_prime_choice": self.ell_prime_choice}

    def other_component(self) -> "RootContext":
        return make_root_context(self.ell, self.ell_prime_choice, -self.pi_sign)


@lru_cache(maxsize=None)
def make_root_context(ell: int, ell_prime_choice: str = "default", pi_sign: int = 1) -> RootContext:
    """Builds the root-of-unity context for ℓ.

    Args:
        ell: ℓ ≥ 1.
        ell_prime_choice: ``default`` (ℓ′ = 2ℓ), ``ell`` (ℓ′ = ℓ, odd ℓ only) or ``two_ell``.
        pi_sign: The π-component, ±1.

    Returns:
        RootContext: The context with q̃ = √π·ε and v = π·ε.

    Raises:
        ValueError: On ℓ < 1, unknown choice, π ∉ {±1} or ℓ′ = ℓ for even ℓ.
    """
    if ell < 1:
        raise ValueError(f"ell must be a positive integer, got {ell}")
    if ell_prime_choice not in ELL_PRIME_CHOICES:
        raise ValueError(f"unknown ell_prime choice {ell_prime_choice!r}")
    if pi_sign not in (1, -1):
        raise ValueError(f"pi_sign must be +1 or -1, got {pi_sign}")
    if ell_prime_choice == "ell" and ell % 2 == 0:
        raise ValueError(f"ell_prime = ell is only legal for odd ell, got ell={ell}")

    ell_prime = ell if ell_prime_choice == "ell" else 2 * ell
    conductor = ell_prime * CONDUCTOR_BASE // gcd(ell_prime, CONDUCTOR_BASE)
    eps_exp = conductor // ell_prime
    sqrt_exp = 0 if pi_sign == 1 else conductor // 4
    q_exp = (sqrt_exp + eps_exp) % conductor
    ctx = RootContext(
        ell=ell,
        ell_prime=ell_prime,
        pi_sign=pi_sign,
        conductor=conductor,
        sqrt_pi=CycNumber.root_of_unity(conductor, sqrt_exp),
        epsilon=CycNumber.root_of_unity(conductor, eps_exp),
        q_tilde=CycNumber.root_of_unity(conductor, q_exp),
        v=CycNumber.root_of_unity(conductor, 2 * sqrt_exp + eps_exp),
        q_tilde_exponent=q_exp,
        ell_prime_choice=ell_prime_choice,
    )
    if ctx.v ** (2 * ell) != 1 or any(ctx.v ** (2 * t) == 1 for t in range(1, ell)):
        raise RuntimeError(f"v has the wrong order for ell={ell}, ell_prime={ell_prime}")
    logger.debug(f"Root context ell={ell} ell'={ell_prime} pi={pi_sign} N={conductor} q~=z^{q_exp}")
    return ctx


def specialize(x: PiLaurent, ctx: RootContext) -> CycNumber:
    """Evaluates the ctx.pi_sign component of x at q = q̃."""
    counts: Dict[int, int] = {}
    for k, c in x.component(ctx.pi_sign).items():
        r = (ctx.q_tilde_exponent * k) % ctx.conductor
        counts[r] = counts.get(r, 0) + c
    return CycNumber.from_residue_counts(ctx.conductor, counts)


def ell_tilde(ctx: RootContext) -> int:
    """ℓ̃, where 2ℓ̃ is the least common order of q̃ over both π-components.

    This gives ℓ̃ = 2ℓ for odd ℓ and ℓ̃ = ℓ for even ℓ.
    """
    orders = [make_root_context(ctx.ell, ctx.ell_prime_choice, s).q_tilde_order for s in PI_COMPONENTS]
    common = orders[0] * orders[1] // gcd(orders[0], orders[1])
    return max(common // 2, 1)
