import pytest

from src.datum import derive_diamond, even_rank2_datum, osp_datum
from src.exceptions import AssumptionViolation
from src.frobenius import (
    chi_weight_check,
    diamond_half,
    fr,
    fr_element,
    fr_prime,
    fr_prime_factors,
    fr_prime_serre_element,
    run_frobenius_suites,
    verify_divided_power_identities,
    verify_fr_fr_prime_identity,
    verify_fr_homomorphism,
    verify_fr_prime_homomorphism,
    verify_fr_prime_serre,
    verify_generation,
    verify_kernel_module_dims,
    verify_tensor_decomposition,
)
from src.halfalg import specialized_half
from src.models import DividedMonomial, GradedElement
from src.scalars import make_root_context

PI_SIGNS = [1, -1]


@pytest.fixture(scope="module")
def osp1():
    return osp_datum(1)


@pytest.fixture(scope="module")
def osp2():
    return osp_datum(2)


def test_fr_on_multiple_of_ell(osp1):
    ctx = make_root_context(3)
    image = fr(DividedMonomial(((0, 6),)), osp1, ctx)
    assert image == GradedElement.homogeneous((2,), [ctx.scalar(1)], "diamond")


def test_fr_kills_non_multiples(osp1):
    ctx = make_root_context(3)
    assert fr(DividedMonomial(((0, 4),)), osp1, ctx).is_zero()
    assert fr(DividedMonomial(((0, 1),)), osp1, ctx).is_zero()


def test_fr_of_unit(osp1):
    ctx = make_root_context(3)
    image = fr(DividedMonomial(()), osp1, ctx)
    assert image == GradedElement.homogeneous((0,), [ctx.scalar(1)], "diamond")


@pytest.mark.parametrize("pi_sign", PI_SIGNS)
def test_fr_prime_then_fr(osp1, pi_sign):
    ctx = make_root_context(3, pi_sign=pi_sign)
    x = GradedElement.homogeneous((2,), [ctx.scalar(1)], "diamond")
    image = fr_prime(x, osp1, ctx)
    half = specialized_half(osp1, ctx)
    assert image == half.graded(*half.monomial_vector(((0, 6),)))
    assert fr_element(image, osp1, ctx) == x


def test_fr_prime_factors(osp2):
    dd = derive_diamond(osp2, make_root_context(4))
    assert fr_prime_factors(dd, ((0, 1), (1, 2))) == ((0, 2), (1, 8))


def test_fr_prime_rejects_specialized_elements(osp1):
    ctx = make_root_context(3)
    x = GradedElement.homogeneous((1,), [ctx.scalar(1)], "specialized")
    with pytest.raises(ValueError):
        fr_prime(x, osp1, ctx)


def test_fr_element_rejects_diamond_elements(osp1):
    ctx = make_root_context(3)
    x = GradedElement.homogeneous((1,), [ctx.scalar(1)], "diamond")
    with pytest.raises(ValueError):
        fr_element(x, osp1, ctx)


def test_diamond_half_rank_two_dimensions(osp2):
    half = diamond_half(osp2, make_root_context(3))
    assert half.dim((1, 1)) == 2
    assert half.dim((1, 2)) == 3


@pytest.mark.parametrize("ell", [3, 4, 5])
@pytest.mark.parametrize("pi_sign", PI_SIGNS)
def test_fr_prime_serre_certificate(osp2, ell, pi_sign):
    report = verify_fr_prime_serre(osp2, make_root_context(ell, pi_sign=pi_sign))
    assert report.passed, report.failures


def test_fr_prime_serre_certificate_even_datum():
    report = verify_fr_prime_serre(even_rank2_datum(), make_root_context(3))
    assert report.passed, report.failures


def test_fr_prime_serre_element_rejects_equal_indices(osp2):
    with pytest.raises(ValueError):
        fr_prime_serre_element(osp2, make_root_context(3), 1, 1)


def test_fr_prime_serre_refused_at_two(osp2):
    with pytest.raises(AssumptionViolation):
        verify_fr_prime_serre(osp2, make_root_context(2))


@pytest.mark.parametrize("ell", [2, 3, 4, 5])
@pytest.mark.parametrize("pi_sign", PI_SIGNS)
def test_divided_power_identities(osp1, ell, pi_sign):
    report = verify_divided_power_identities(osp1, make_root_context(ell, pi_sign=pi_sign))
    assert report.passed, report.failures


@pytest.mark.parametrize("ell", [3, 4, 5])
@pytest.mark.parametrize("pi_sign", PI_SIGNS)
def test_homomorphisms_rank_one(osp1, ell, pi_sign):
    ctx = make_root_context(ell, pi_sign=pi_sign)
    for check in (verify_fr_homomorphism, verify_fr_prime_homomorphism, verify_fr_fr_prime_identity, verify_generation):
        report = check(osp1, ctx, 8)
        assert report.passed, (check.__name__, report.failures)
        assert report.checked > 0


@pytest.mark.slow
@pytest.mark.parametrize("ell", [3, 4])
def test_homomorphisms_rank_two(osp2, ell):
    ctx = make_root_context(ell, pi_sign=-1)
    for check in (verify_fr_homomorphism, verify_fr_prime_homomorphism, verify_fr_fr_prime_identity):
        report = check(osp2, ctx, 6)
        assert report.passed, (check.__name__, report.failures)


def test_chi_at_one_weight(osp1):
    verdict = chi_weight_check(osp1, make_root_context(3), (7,))
    assert (verdict.rows, verdict.columns) == (1, 1)
    assert verdict.invertible


def test_chi_rank_two_weight(osp2):
    verdict = chi_weight_check(osp2, make_root_context(3), (1, 2))
    assert verdict.rows == verdict.columns == 3
    assert verdict.invertible


def test_chi_refused_at_two(osp2):
    with pytest.raises(AssumptionViolation):
        chi_weight_check(osp2, make_root_context(2), (1, 1))


@pytest.mark.parametrize("pi_sign", PI_SIGNS)
def test_tensor_decomposition_rank_one(osp1, pi_sign):
    report = verify_tensor_decomposition(osp1, make_root_context(3, pi_sign=pi_sign), 8)
    assert report.passed, report.failures


@pytest.mark.slow
def test_tensor_decomposition_rank_two(osp2):
    report = verify_tensor_decomposition(osp2, make_root_context(3), 5)
    assert report.passed, report.failures


@pytest.mark.parametrize("ell", range(2, 8))
def test_kernel_module_dims_rank_one(osp1, ell):
    report, kf, vl = verify_kernel_module_dims(osp1, make_root_context(ell))
    assert report.passed, report.failures
    assert kf.total == vl.total == ell


@pytest.mark.slow
@pytest.mark.parametrize("ell, total", [(3, 81), (4, 64)])
def test_kernel_module_dims_rank_two(osp2, ell, total):
    report, kf, vl = verify_kernel_module_dims(osp2, make_root_context(ell))
    assert report.passed, report.failures
    assert kf.total == vl.total == total


def test_kernel_module_dims_rejects_root_lattice():
    with pytest.raises(ValueError):
        verify_kernel_module_dims(osp_datum(1, "root"), make_root_context(3))


def test_run_frobenius_suites_rank_one(osp1):
    reports = run_frobenius_suites(osp1, make_root_context(3), 6)
    assert [r.suite_id for r in reports][-1] == "kf-vs-v-lambda"
    assert all(r.passed for r in reports)


def test_run_frobenius_suites_refused_at_two(osp2):
    with pytest.raises(AssumptionViolation):
        run_frobenius_suites(osp2, make_root_context(2))
