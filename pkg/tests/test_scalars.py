import pytest
from sympy import cyclotomic_poly

from src.scalars import (
    CycNumber,
    LaurentPolynomial,
    PiLaurent,
    cyclotomic_field,
    cyclotomic_polynomial,
    ell_tilde,
    make_root_context,
    specialize,
)


@pytest.mark.parametrize("m, expected", [
    (1, (-1, 1)),
    (2, (1, 1)),
    (4, (1, 0, 1)),
    (6, (1, -1, 1)),
    (12, (1, 0, -1, 0, 1)),
])
def test_cyclotomic_polynomial(m, expected):
    assert cyclotomic_polynomial(m) == expected


def test_cyclotomic_polynomial_rejects_zero():
    with pytest.raises(ValueError):
        cyclotomic_polynomial(0)


def test_pi_squares_to_one():
    pi = PiLaurent.pi()
    assert pi * pi == PiLaurent.constant(1)


def test_pi_basis_round_trip():
    x = PiLaurent.from_pi_basis({2: 1, -2: 1}, {0: 1})
    assert x.component(1) == {2: 1, 0: 1, -2: 1}
    assert x.component(-1) == {2: 1, 0: -1, -2: 1}
    assert x.to_pi_basis() == ({2: 1, -2: 1}, {0: 1})


def test_exact_division():
    a = PiLaurent.q_power(1) + PiLaurent.pi() * PiLaurent.q_power(-1)
    b = PiLaurent.q_power(2) - PiLaurent.pi()
    assert (a * b).exact_div(b) == a


def test_cyc_number_inverse():
    x = CycNumber.root_of_unity(12, 1) + CycNumber.from_int(12, 2)
    assert x * x.inverse() == 1
    assert (x / x) == 1


def test_root_of_unity_power():
    zeta = CycNumber.root_of_unity(8, 1)
    assert zeta ** 8 == 1
    assert zeta ** 4 == -1


@pytest.mark.parametrize("ell", range(1, 9))
@pytest.mark.parametrize("pi_sign", [1, -1])
def test_v_has_order_two_ell(ell, pi_sign):
    ctx = make_root_context(ell, pi_sign=pi_sign)
    assert ctx.v ** (2 * ell) == 1
    for t in range(1, ell):
        assert ctx.v ** (2 * t) != 1


@pytest.mark.parametrize("pi_sign", [1, -1])
def test_q_tilde_is_sqrt_pi_times_epsilon(pi_sign):
    ctx = make_root_context(5, pi_sign=pi_sign)
    assert ctx.sqrt_pi ** 2 == pi_sign
    assert ctx.q_tilde == ctx.sqrt_pi * ctx.epsilon
    assert ctx.v == ctx.epsilon * pi_sign


def test_ell_prime_choices():
    assert make_root_context(3).ell_prime == 6
    assert make_root_context(3, "ell").ell_prime == 3
    assert make_root_context(3, "two_ell").ell_prime == 6


def test_ell_one_with_ell_prime_ell_is_the_classical_point():
    ctx = make_root_context(1, "ell")
    assert ctx.v == 1


@pytest.mark.parametrize("ell, choice, pi_sign", [
    (0, "default", 1),
    (3, "sideways", 1),
    (3, "default", 0),
    (4, "ell", 1),
])
def test_make_root_context_rejects(ell, choice, pi_sign):
    with pytest.raises(ValueError):
        make_root_context(ell, choice, pi_sign)


def test_specialize_vanishing_integer():
    # [2] = q + π q⁻¹ vanishes at ℓ = 2, π = +1
    x = PiLaurent.q_power(1) + PiLaurent.pi() * PiLaurent.q_power(-1)
    assert specialize(x, make_root_context(2, pi_sign=1)) == 0


def test_specialize_pi():
    assert specialize(PiLaurent.pi(), make_root_context(3, pi_sign=-1)) == -1
    assert specialize(PiLaurent.pi(), make_root_context(3, pi_sign=1)) == 1


@pytest.mark.parametrize("pi_sign", [1, -1])
def test_specialize_is_a_ring_map(pi_sign):
    ctx = make_root_context(4, pi_sign=pi_sign)
    a = PiLaurent.from_components({3: 1, -1: 2}, {0: -1, 2: 5})
    b = PiLaurent.from_components({1: 4}, {-2: 1, 1: 1})
    assert specialize(a * b, ctx) == specialize(a, ctx) * specialize(b, ctx)
    assert specialize(a + b, ctx) == specialize(a, ctx) + specialize(b, ctx)


@pytest.mark.parametrize("ell, expected", [(1, 2), (2, 2), (3, 6), (4, 4), (5, 10), (6, 6)])
def test_ell_tilde(ell, expected):
    assert ell_tilde(make_root_context(ell)) == expected


def test_other_component_flips_pi():
    ctx = make_root_context(3, pi_sign=1)
    assert ctx.other_component().pi_sign == -1
    assert ctx.other_component().ell == 3


@pytest.mark.parametrize("m", range(1, 31))
def test_cyclotomic_polynomial_matches_sympy(m):
    assert cyclotomic_polynomial(m) == tuple(reversed(cyclotomic_poly(m, polys=True).all_coeffs()))


def test_cyc_number_lives_in_the_sympy_field():
    field = cyclotomic_field(12)
    x = CycNumber.root_of_unity(12, 1) + 2
    assert x.value == field([1, 2])
    assert (x * x.inverse()).value == field.one
    assert CycNumber.root_of_unity(12, 3) ** 2 == -1
    assert len(x.coefficients()) == 4


def test_cyc_number_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        CycNumber.zero(8).inverse()


def test_cyc_number_rejects_conductor_mismatch():
    with pytest.raises(ValueError):
        CycNumber.one(8) + CycNumber.one(12)


def test_laurent_polynomial_is_normalized():
    x = LaurentPolynomial.from_dict({-3: 2, 1: -1})
    assert x.shift == -3
    assert x.to_dict() == {-3: 2, 1: -1}
    assert (x - x).to_dict() == {}
    assert (x + LaurentPolynomial.from_dict({-3: -2})).shift == 1


def test_laurent_division_not_exact():
    a = LaurentPolynomial.from_dict({0: 1, 1: 1})
    with pytest.raises(ArithmeticError):
        a.exact_div(LaurentPolynomial.from_dict({0: 2, 1: 1}))
    with pytest.raises(ArithmeticError):
        a.exact_div(LaurentPolynomial.from_dict({0: 2}))
    with pytest.raises(ZeroDivisionError):
        a.exact_div(LaurentPolynomial.zero())


def test_substitute_into_pi_laurent():
    x = PiLaurent.pi() * PiLaurent.q_power(-1)
    assert x.substitute(2) == PiLaurent.q_power(-2)
    assert x.substitute(3) == PiLaurent.pi() * PiLaurent.q_power(-3)
