import pytest

from src.datum import derive_diamond, osp_datum
from src.exceptions import AssumptionViolation
from src.models import DividedMonomial
from src.modifiedu import (
    MINUS_LEFT,
    PLUS_LEFT,
    Generator,
    UdotElement,
    UdotTensor,
    coproduct_component,
    diamond_udot_algebra,
    fr_generator,
    fr_udot,
    multiply_udot,
    run_udot_suites,
    straighten_rank1,
    udot_algebra,
    verify_fr_coproduct,
    verify_fr_udot_homomorphism,
    verify_psi_twist,
    verify_udot_associativity,
    verify_udot_relations,
    weight_sweep,
)
from src.qpicalc import specialized_integer
from src.scalars import ell_tilde, make_root_context
from src.smallu import enumerate_cosets

ONE = DividedMonomial(())
THETA = DividedMonomial(((0, 1),))
PI_SIGNS = [1, -1]


@pytest.fixture(scope="module")
def osp1():
    return osp_datum(1)


@pytest.mark.parametrize("pi_sign", PI_SIGNS)
def test_e_then_f_in_minus_left_form(osp1, pi_sign):
    ctx = make_root_context(3, pi_sign=pi_sign)
    result = straighten_rank1(0, 1, (0,), 1, "plus_then_minus", ctx, osp1)
    expected = UdotElement({
        (THETA, (4,), THETA): ctx.scalar(ctx.pi_power(1)),
        (ONE, (2,), ONE): specialized_integer(2, ctx),
    }, MINUS_LEFT)
    assert result.orientation == MINUS_LEFT
    assert result == expected


@pytest.mark.parametrize("pi_sign", PI_SIGNS)
def test_f_then_e_in_plus_left_form(osp1, pi_sign):
    ctx = make_root_context(3, pi_sign=pi_sign)
    result = straighten_rank1(0, 1, (0,), 1, "minus_then_plus", ctx, osp1)
    expected = UdotElement({
        (THETA, (-4,), THETA): ctx.scalar(ctx.pi_power(1)),
        (ONE, (-2,), ONE): specialized_integer(2, ctx) * ctx.pi_power(1),
    }, PLUS_LEFT)
    assert result == expected


def test_single_e_in_minus_left_form(osp1):
    ctx = make_root_context(3)
    result = straighten_rank1(0, 1, (0,), 0, "plus_then_minus", ctx, osp1)
    assert result == UdotElement({(ONE, (2,), THETA): ctx.scalar(1)}, MINUS_LEFT)


@pytest.mark.parametrize("big_n, big_m", [(1, 1), (2, 1), (2, 3), (3, 3)])
def test_straightening_agrees_with_multiplication(osp1, big_n, big_m):
    ctx = make_root_context(3, pi_sign=-1)
    algebra = udot_algebra(osp1, ctx)
    lam = (1,)
    minus_left = straighten_rank1(0, big_n, lam, big_m, "plus_then_minus", ctx, osp1)
    source = algebra._shift(lam, 0, big_m)
    product = algebra.multiply(algebra.generator(Generator("E", 0, big_n, lam)),
                               algebra.generator(Generator("F", 0, big_m, source)))
    assert algebra.reorient(minus_left, PLUS_LEFT) == product


def test_straighten_rank1_rejects(osp1):
    ctx = make_root_context(3)
    with pytest.raises(ValueError):
        straighten_rank1(0, 1, (0,), 1, "sideways", ctx, osp1)
    with pytest.raises(ValueError):
        straighten_rank1(0, -1, (0,), 1, "plus_then_minus", ctx, osp1)


def test_mixed_orientations_do_not_add(osp1):
    algebra = udot_algebra(osp1, make_root_context(3))
    x = algebra.idempotent((0,))
    with pytest.raises(ValueError):
        x + UdotElement(dict(x.terms), MINUS_LEFT)


def test_idempotents_are_orthogonal(osp1):
    algebra = udot_algebra(osp1, make_root_context(3))
    one0, one2 = algebra.idempotent((0,)), algebra.idempotent((2,))
    assert algebra.multiply(one0, one0) == one0
    assert algebra.multiply(one0, one2).is_zero()
    assert one0.translated((2,)) == one2


def test_generator_is_absorbed_by_its_idempotents(osp1):
    ctx = make_root_context(4)
    algebra = udot_algebra(osp1, ctx)
    g = Generator("E", 0, 2, (1,))
    e = algebra.generator(g)
    assert multiply_udot(algebra.idempotent(g.target(osp1)), e, osp1, ctx) == e
    assert multiply_udot(e, algebra.idempotent((1,)), osp1, ctx) == e


def test_coproduct_component_left_split(osp1):
    ctx = make_root_context(3)
    algebra = udot_algebra(osp1, ctx)
    g = Generator("E", 0, 1, (1,))
    result = coproduct_component(g, (2,), (0,), (1,), (1,), osp1, ctx)
    expected = UdotTensor.product(algebra.generator(Generator("E", 0, 1, (0,))), algebra.idempotent((1,)))
    assert result == expected


@pytest.mark.parametrize("pi_sign", PI_SIGNS)
def test_coproduct_component_right_split(osp1, pi_sign):
    ctx = make_root_context(3, pi_sign=pi_sign)
    algebra = udot_algebra(osp1, ctx)
    g = Generator("E", 0, 1, (1,))
    result = coproduct_component(g, (1,), (1,), (2,), (0,), osp1, ctx)
    scalar = ctx.q_tilde_power(1) * ctx.pi_power(1)
    expected = UdotTensor.product(algebra.idempotent((1,)), algebra.generator(Generator("E", 0, 1, (0,))))
    assert result == expected.scale(scalar)


def test_coproduct_component_off_split_is_zero(osp1):
    ctx = make_root_context(3)
    g = Generator("E", 0, 1, (1,))
    assert coproduct_component(g, (1,), (0,), (2,), (1,), osp1, ctx).is_zero()


def test_coproduct_component_rejects_bad_weights(osp1):
    ctx = make_root_context(3)
    g = Generator("E", 0, 1, (1,))
    with pytest.raises(ValueError):
        coproduct_component(g, (2,), (0,), (2,), (1,), osp1, ctx)
    with pytest.raises(ValueError):
        coproduct_component(g, (2,), (0,), (1,), (0,), osp1, ctx)


@pytest.mark.parametrize("pi_sign", PI_SIGNS)
def test_fr_on_generators(osp1, pi_sign):
    ctx = make_root_context(3, pi_sign=pi_sign)
    target = diamond_udot_algebra(osp1, ctx)
    e = fr_generator(Generator("E", 0, 3, (0,)), osp1, ctx)
    assert e == target.generator(Generator("E", 0, 1, (0,))).scale(ctx.pi_power(1))
    f = fr_generator(Generator("F", 0, 3, (0,)), osp1, ctx)
    assert f == target.generator(Generator("F", 0, 1, (0,)))
    assert fr_generator(Generator("E", 0, 2, (0,)), osp1, ctx).is_zero()
    assert fr_generator(Generator("E", 0, 3, (1,)), osp1, ctx).is_zero()


def test_fr_udot_on_idempotents(osp1):
    ctx = make_root_context(3)
    algebra = udot_algebra(osp1, ctx)
    target = diamond_udot_algebra(osp1, ctx)
    assert fr_udot(algebra.idempotent((6,)), osp1, ctx) == target.idempotent((6,))
    assert fr_udot(algebra.idempotent((2,)), osp1, ctx).is_zero()


def test_diamond_algebra_only_allows_x_diamond(osp1):
    target = diamond_udot_algebra(osp1, make_root_context(3))
    assert target.idempotent((1,)).is_zero()
    assert not target.idempotent((3,)).is_zero()


def test_weight_sweep():
    assert weight_sweep(osp_datum(1), 4) == [(0,), (1,), (2,), (3,)]
    sweep = weight_sweep(osp_datum(2), 3)
    assert (0, 0) in sweep and (2, 2) in sweep and (1, 2) in sweep
    assert len(sweep) == 9


@pytest.mark.parametrize("lattice", ["weight", "root"])
def test_weight_sweep_meets_every_coset_of_osp4(lattice):
    d = osp_datum(2, lattice)
    ctx = make_root_context(3)
    modulus = 2 * ell_tilde(ctx)
    cosets = enumerate_cosets(d, ctx)
    reached = {tuple(p % modulus for p in d.pairings(w)) for w in weight_sweep(d, modulus)}
    assert reached == {c.residues for c in cosets}
    if lattice == "weight":
        assert len(reached) == 144


@pytest.mark.parametrize("ell", [2, 3, 4])
@pytest.mark.parametrize("pi_sign", PI_SIGNS)
def test_udot_relations(osp1, ell, pi_sign):
    report = verify_udot_relations(osp1, make_root_context(ell, pi_sign=pi_sign), n_max=3)
    assert report.passed, report.failures


@pytest.mark.parametrize("pi_sign", PI_SIGNS)
def test_udot_associativity(osp1, pi_sign):
    report = verify_udot_associativity(osp1, make_root_context(3, pi_sign=pi_sign), triples=40, seed=3)
    assert report.passed, report.failures
    assert report.checked == 40


@pytest.mark.parametrize("ell", [3, 4])
@pytest.mark.parametrize("pi_sign", PI_SIGNS)
def test_fr_udot_homomorphism(osp1, ell, pi_sign):
    ctx = make_root_context(ell, pi_sign=pi_sign)
    report = verify_fr_udot_homomorphism(osp1, ctx, weights=[(0,), (1,), (2 * ell,)])
    assert report.passed, report.failures


@pytest.mark.parametrize("pi_sign", PI_SIGNS)
def test_fr_coproduct(osp1, pi_sign):
    ctx = make_root_context(3, pi_sign=pi_sign)
    report = verify_fr_coproduct(osp1, ctx, n_max=3, weights=[(0,), (1,), (6,)])
    assert report.passed, report.failures


def test_fr_coproduct_refused_at_two():
    with pytest.raises(AssumptionViolation):
        verify_fr_coproduct(osp_datum(2), make_root_context(2))


@pytest.mark.parametrize("ell", [3, 4, 5])
@pytest.mark.parametrize("pi_sign", PI_SIGNS)
def test_psi_twist_agrees_exactly_when_parities_match(osp1, ell, pi_sign):
    ctx = make_root_context(ell, pi_sign=pi_sign)
    li = derive_diamond(osp1, ctx).ell_i[0]
    report = verify_psi_twist(osp1, ctx)
    assert report.checked == 2
    agrees = pi_sign == 1 or osp1.d(0) * (li * (li - 1) // 2 - 1) % 2 == 0
    assert report.passed == agrees


def test_psi_twist_reports_the_odd_multiple():
    report = verify_psi_twist(osp_datum(1), make_root_context(5, pi_sign=-1))
    assert not report.passed
    assert [f["k"] for f in report.failures] == [1]
    assert report.failures[0]["ell_i"] == 5
    assert not report.skipped


@pytest.mark.slow
def test_run_udot_suites_rank_one(osp1):
    reports = run_udot_suites(osp1, make_root_context(3, pi_sign=-1))
    assert [r.suite_id for r in reports] == [
        "udot-relations", "udot-associativity", "fr-udot-homomorphism", "fr-coproduct", "psi-twist"]
    assert all(r.passed for r in reports)
