import pytest

from src.datum import even_rank2_datum, osp_datum
from src.exceptions import IntegralityViolation
from src.halfalg import (
    KernelHalf,
    Specializer,
    generic_dims,
    generic_half,
    higher_serre_element,
    kernel_dims,
    multiply,
    serre_element,
    specialized_half,
    specialized_span_dims,
    v_lambda_dims,
    verify_associativity,
    verify_generic_dims,
    verify_higher_serre,
    weight_basis,
)
from src.models import DividedMonomial, GradedElement
from src.qpicalc import qpi_binomial
from src.scalars import PiLaurent, make_root_context


@pytest.fixture(scope="module")
def osp2():
    return osp_datum(2)


@pytest.mark.parametrize("nu, expected", [((1, 0), 1), ((1, 1), 2), ((1, 2), 3), ((2, 2), 4), ((0, 3), 1)])
@pytest.mark.parametrize("pi_sign", [1, -1])
def test_weight_basis_dimensions(osp2, nu, expected, pi_sign):
    basis = weight_basis(osp2, nu, pi_sign)
    assert basis.dim == expected
    assert len(basis.expansion) == len(basis.words)


@pytest.mark.parametrize("n", range(0, 6))
def test_rank_one_has_one_monomial_per_weight(n):
    assert weight_basis(osp_datum(1), (n,), -1).dim == 1


@pytest.mark.parametrize("pi_sign", [1, -1])
@pytest.mark.parametrize("a, b", [(1, 1), (1, 2), (2, 2), (3, 1)])
def test_divided_powers_multiply_by_binomial(pi_sign, a, b):
    half = generic_half(osp_datum(1), pi_sign)
    weight, vec = half.multiply((a,), [half.one], (b,), [half.one])
    assert weight == (a + b,)
    assert vec == [half.scalar(qpi_binomial(a + b, a))]


@pytest.mark.parametrize("i, j", [(0, 1), (1, 0)])
@pytest.mark.parametrize("pi_sign", [1, -1])
def test_serre_elements_vanish(osp2, i, j, pi_sign):
    half = generic_half(osp2, pi_sign)
    _, vec = half.element(serre_element(osp2, i, j))
    assert not any(vec)


def test_serre_element_weight(osp2):
    # 1 − ⟨2, 1′⟩ = 3 copies of θ_2
    assert serre_element(osp2, 1, 0).weight() == (1, 3)


def test_serre_element_rejects_equal_indices(osp2):
    with pytest.raises(ValueError):
        serre_element(osp2, 0, 0)


@pytest.mark.parametrize("args", [(0, 0, 1, 3, -1), (0, 1, 0, 3, -1), (0, 1, 1, 1, -1), (0, 1, 1, 3, 0)])
def test_higher_serre_element_rejects(osp2, args):
    with pytest.raises(ValueError):
        higher_serre_element(osp2, *args)


@pytest.mark.parametrize("ell", [3, 4, 5])
@pytest.mark.parametrize("pi_sign", [1, -1])
def test_higher_serre_relations(osp2, ell, pi_sign):
    report = verify_higher_serre(osp2, make_root_context(ell, pi_sign=pi_sign))
    assert report.passed, report.failures
    assert report.checked > 2


def test_higher_serre_relations_even_datum():
    report = verify_higher_serre(even_rank2_datum(), make_root_context(3))
    assert report.passed, report.failures


def test_generic_dims_table(osp2):
    table = generic_dims(osp2, 1, 4)
    assert table.dims[(1, 2)] == 3
    assert table.dims[(0, 0)] == 1
    assert table.to_dict()["rows"][0] == [0, 0, 1]


def test_generic_dims_match_kostant(osp2):
    report = verify_generic_dims(osp2, 6)
    assert report.passed, report.failures


def test_generic_half_rejects_bad_pi():
    with pytest.raises(ValueError):
        generic_half(osp_datum(1), 0)


def test_specialized_basis_rank_one():
    half = specialized_half(osp_datum(1), make_root_context(3))
    assert half.basis((1,)) == [DividedMonomial(((0, 1),))]
    assert half.basis((3,)) == [DividedMonomial(((0, 3),))]


def test_specialized_theta_cube_vanishes():
    # θ³ = [3]! θ^{(3)} and [3] vanishes at ℓ = 3
    half = specialized_half(osp_datum(1), make_root_context(3))
    _, vec = half.monomial_vector(((0, 1), (0, 1), (0, 1)))
    assert not any(vec)
    _, vec = half.monomial_vector(((0, 3),))
    assert any(vec)


@pytest.mark.parametrize("ell", [2, 3])
@pytest.mark.parametrize("pi_sign", [1, -1])
def test_specialized_associativity_rank_one(ell, pi_sign):
    half = specialized_half(osp_datum(1), make_root_context(ell, pi_sign=pi_sign))
    report = verify_associativity(half, max_degree=8, samples=30)
    assert report.passed, report.failures


def test_specialized_associativity_rank_two(osp2):
    half = specialized_half(osp2, make_root_context(3, pi_sign=-1))
    report = verify_associativity(half, max_degree=5, samples=20, seed=7)
    assert report.passed, report.failures


def test_multiply_graded_elements():
    d = osp_datum(1)
    half = specialized_half(d, make_root_context(3))
    theta = half.graded(*half.monomial_vector(((0, 1),)))
    product = multiply(theta, theta, half)
    expected = half.graded(*half.monomial_vector(((0, 1), (0, 1))))
    assert product == expected


def test_multiply_rejects_kind_mismatch():
    d = osp_datum(1)
    half = specialized_half(d, make_root_context(3))
    theta = half.graded(*half.monomial_vector(((0, 1),)))
    generic = GradedElement.homogeneous((1,), [1], "generic")
    with pytest.raises(ValueError):
        multiply(theta, generic, half)


def test_specializer_detects_poles():
    ctx = make_root_context(3)
    half = generic_half(osp_datum(1), 1)
    three = half.quantum_integer(3, 0)
    specializer = Specializer(ctx)
    assert specializer.valuation(three) == 1
    assert specializer(three) == 0
    with pytest.raises(IntegralityViolation):
        specializer(half.one / three)


def test_specializer_evaluates_units():
    ctx = make_root_context(3)
    half = generic_half(osp_datum(1), 1)
    two = half.quantum_integer(2, 0)
    assert Specializer(ctx)(half.one / two) * Specializer(ctx)(two) == 1
    assert Specializer(ctx)(half.scalar(PiLaurent.q_power(1))) == ctx.q_tilde


@pytest.mark.parametrize("ell, expected", [(2, [1, 1]), (3, [1, 1, 1]), (5, [1, 1, 1, 1, 1])])
def test_kernel_dims_rank_one(ell, expected):
    table = kernel_dims(osp_datum(1), make_root_context(ell))
    nonzero = [table.dims[w] for w in sorted(table.nonzero())]
    assert nonzero == expected
    assert table.total == ell


@pytest.mark.slow
@pytest.mark.parametrize("ell, total", [(3, 81), (4, 64)])
def test_kernel_dims_osp4(osp2, ell, total):
    assert kernel_dims(osp2, make_root_context(ell)).total == total


def test_kernel_half_top_degree():
    kernel = KernelHalf(specialized_half(osp_datum(1), make_root_context(5)))
    assert kernel.top_degree() == 4


def test_span_of_theta_cubed_generator():
    d = osp_datum(1)
    ctx = make_root_context(3)
    half = specialized_half(d, ctx)
    gen = half.graded(*half.monomial_vector(((0, 3),)))
    table = specialized_span_dims(ctx, d, [gen], max_weight=(9,))
    assert [table.dims[(n,)] for n in range(10)] == [1, 0, 0, 1, 0, 0, 1, 0, 0, 1]


def test_span_rejects_inhomogeneous_generators():
    d = osp_datum(1)
    ctx = make_root_context(3)
    half = specialized_half(d, ctx)
    mixed = half.graded(*half.monomial_vector(((0, 1),))) + half.graded(*half.unit())
    with pytest.raises(ValueError):
        specialized_span_dims(ctx, d, [mixed])


@pytest.mark.parametrize("pairings, total", [([0], 1), ([1], 2), ([2], 3)])
def test_v_lambda_dims_rank_one(pairings, total):
    table = v_lambda_dims(osp_datum(1), make_root_context(3), pairings)
    assert table.total == total


def test_v_lambda_dims_rejects_non_dominant():
    with pytest.raises(ValueError):
        v_lambda_dims(osp_datum(1), make_root_context(3), [-1])
