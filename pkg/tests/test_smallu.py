import os

import pytest

from src.datum import osp_datum
from src.exceptions import AssumptionViolation
from src.main import load_antipode
from src.models import AntipodeConfig, DividedMonomial
from src.scalars import make_root_context
from src.smallu import (
    CosetModel,
    SmallUElement,
    counit,
    enumerate_cosets,
    hopf_generator_checks,
    run_smallu_suites,
    small_u_dimension,
    verify_closure,
    verify_coset_binomial_invariance,
    verify_idempotent_formula,
    verify_u_equals_u_prime,
)

CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "config")
ONE = DividedMonomial(())
THETA = DividedMonomial(((0, 1),))


@pytest.fixture(scope="module")
def osp1():
    return osp_datum(1)


@pytest.mark.parametrize("lattice, expected", [("weight", 12), ("root", 6)])
def test_coset_count_osp2(lattice, expected):
    cosets = enumerate_cosets(osp_datum(1, lattice), make_root_context(3))
    assert len(cosets) == expected
    assert all(c.modulus == 12 for c in cosets)


def test_coset_representatives_land_in_their_coset(osp1):
    for coset in enumerate_cosets(osp1, make_root_context(4)):
        assert coset.contains(osp1.pairings(coset.representative))


def test_coset_count_osp4():
    assert len(enumerate_cosets(osp_datum(2), make_root_context(3))) == 144


@pytest.mark.parametrize("ell", [3, 4])
def test_idempotent_formula_at_minus_component(osp1, ell):
    ctx = make_root_context(ell, pi_sign=-1)
    for coset in enumerate_cosets(osp1, ctx):
        report = verify_idempotent_formula(osp1, ctx, coset)
        assert report.checked > 0
        assert report.passed, report.failures


def test_idempotent_formula_refused_at_plus_component(osp1):
    ctx = make_root_context(3, pi_sign=1)
    coset = enumerate_cosets(osp1, ctx)[0]
    with pytest.raises(ValueError):
        verify_idempotent_formula(osp1, ctx, coset)


def test_idempotent_formula_refused_at_ell_two(osp1):
    ctx = make_root_context(2, pi_sign=-1)
    coset = enumerate_cosets(osp1, ctx)[0]
    with pytest.raises(ValueError):
        verify_idempotent_formula(osp1, ctx, coset)


@pytest.mark.parametrize("ell", [3, 4])
@pytest.mark.parametrize("pi_sign", [1, -1])
def test_coset_binomial_invariance(osp1, ell, pi_sign):
    report = verify_coset_binomial_invariance(osp1, make_root_context(ell, pi_sign=pi_sign))
    assert report.passed, report.failures[:3]


@pytest.mark.parametrize("ell, lattice, expected", [
    (3, "weight", 108),
    (3, "root", 54),
    (5, "weight", 500),
    (5, "root", 250),
])
def test_small_u_dimension_osp2(ell, lattice, expected):
    result = small_u_dimension(1, make_root_context(ell), lattice)
    assert result.formula == expected
    assert result.match
    assert result.to_dict()["match"] is True


@pytest.mark.slow
@pytest.mark.parametrize("ell, expected", [(3, 944784), (4, 262144)])
def test_small_u_dimension_osp4(ell, expected):
    result = small_u_dimension(2, make_root_context(ell), "weight")
    assert result.formula == expected
    assert result.match


def test_small_u_dimension_rejects():
    with pytest.raises(AssumptionViolation):
        small_u_dimension(2, make_root_context(2))
    with pytest.raises(ValueError):
        small_u_dimension(1, make_root_context(3), "coroot")


def test_counit_picks_the_zero_coset(osp1):
    ctx = make_root_context(3)
    x = SmallUElement({(ONE, (0,), ONE): ctx.scalar(5), (ONE, (1,), ONE): ctx.scalar(1),
                       (THETA, (0,), ONE): ctx.scalar(7)})
    assert counit(x, osp1, ctx) == ctx.scalar(5)


def test_counit_rejects_non_basis_label(osp1):
    ctx = make_root_context(3)
    word = DividedMonomial(((0, 1), (0, 1), (0, 1)))
    with pytest.raises(ValueError):
        counit(SmallUElement({(word, (0,), ONE): ctx.scalar(1)}), osp1, ctx)


def test_coset_model_generators(osp1):
    model = CosetModel(osp1, make_root_context(3))
    assert len(model.keys()) == 3 * 12
    zero = (0,)
    assert model.counit(("1", 0, zero)) == model.one
    assert model.counit(("E", 0, zero)) == model.ctx.scalar(0)
    assert model.antipode(("1", 0, (5,)), AntipodeConfig())[0] == ("1", 0, (7,))


def test_coset_model_multiplication(osp1):
    model = CosetModel(osp1, make_root_context(3))
    e = ("E", 0, (0,))
    target = model.target(e)
    assert model.multiply(("1", 0, target), e) == e
    assert model.multiply(("1", 0, (0,)), e) is None
    with pytest.raises(ValueError):
        model.multiply(("E", 0, target), e)


@pytest.mark.parametrize("pi_sign", [1, -1])
def test_hopf_generators_without_antipode(osp1, pi_sign):
    report = hopf_generator_checks(osp1, make_root_context(3, pi_sign=pi_sign))
    assert report.checked > 0
    assert report.passed, report.failures[:3]
    assert report.skipped


def test_hopf_generators_with_antipode_records_axioms(osp1):
    ctx = make_root_context(3, pi_sign=-1)
    without = hopf_generator_checks(osp1, ctx)
    with_antipode = hopf_generator_checks(osp1, ctx, AntipodeConfig())
    assert with_antipode.checked > without.checked
    assert with_antipode.parameters["antipode"]["e_sign"] == -1


def test_rank_one_checks_refuse_higher_rank():
    osp4 = osp_datum(2)
    ctx = make_root_context(3)
    for check in (hopf_generator_checks, verify_closure, verify_u_equals_u_prime):
        with pytest.raises(ValueError):
            check(osp4, ctx)


@pytest.mark.parametrize("pi_sign", [1, -1])
def test_closure_and_u_equals_u_prime(osp1, pi_sign):
    ctx = make_root_context(3, pi_sign=pi_sign)
    closure = verify_closure(osp1, ctx)
    assert closure.passed, closure.failures[:3]
    same = verify_u_equals_u_prime(osp1, ctx)
    assert same.passed, same.failures[:3]


def test_run_smallu_suites_skips_formula_at_plus(osp1):
    reports = run_smallu_suites(osp1, make_root_context(3, pi_sign=1))
    formula = reports[0]
    assert formula.suite_id == "idempotent-formula"
    assert formula.checked == 0 and formula.skipped
    assert all(r.passed for r in reports)


@pytest.mark.slow
def test_run_smallu_suites_notes_rank_two():
    reports = run_smallu_suites(osp_datum(2), make_root_context(3, pi_sign=-1))
    assert reports[-1].skipped


@pytest.mark.parametrize("pi_sign", [1, -1])
def test_shipped_antipode_config_drives_the_hopf_checks(osp1, pi_sign):
    antipode = load_antipode(os.path.join(CONFIG_DIR, "antipode_covering.json"))
    assert isinstance(antipode, AntipodeConfig)
    ctx = make_root_context(3, pi_sign=pi_sign)
    report = hopf_generator_checks(osp1, ctx, antipode)
    assert report.parameters["antipode"] == antipode.model_dump()
    assert report.checked > hopf_generator_checks(osp1, ctx).checked
    assert all(f["axiom"].startswith("antipode") for f in report.failures)
