import json

import pytest

from src.datum import (
    bar_consistent,
    check_frobenius_assumptions,
    datum_from_file,
    derive_diamond,
    ell_i_table,
    even_rank2_datum,
    kostant_count,
    kostant_table,
    make_datum,
    osp_datum,
    pairing_classes,
    positive_roots,
    quasi_classical_check,
    require_frobenius_assumptions,
    validate_super_datum,
)
from src.exceptions import AssumptionViolation
from src.scalars import make_root_context


def _conditions(report):
    return {issue.condition for issue in report.issues}


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("lattice", ["weight", "root"])
def test_osp_data_are_valid(n, lattice):
    d = osp_datum(n, lattice)
    report = validate_super_datum(d)
    assert report.valid, report.issues
    assert bar_consistent(d)
    assert d.parity[-1] == 1
    assert report.facts["odd_nodes"] == [n - 1]


def test_osp4_cartan_matrix():
    assert osp_datum(2).cartan_matrix() == [[2, -1], [-2, 2]]


def test_weight_lattice_pairing_is_identity():
    d = osp_datum(1)
    assert d.root(0) == (2,)
    assert d.pair(0, (5,)) == 5


def test_root_lattice_roots_are_units():
    d = osp_datum(2, "root")
    assert d.root(0) == (1, 0)
    assert d.pairings((1, 0)) == (2, -2)


def test_even_datum_is_not_super():
    d = even_rank2_datum()
    report = validate_super_datum(d)
    assert report.valid
    assert not d.is_super


def test_bar_consistency_violation():
    d = make_datum(["1"], [[4]], [1])
    assert "(e)" in _conditions(validate_super_datum(d))
    assert not bar_consistent(d)


def test_odd_diagonal_violates_a():
    d = make_datum(["1"], [[3]], [1])
    assert "(a)" in _conditions(validate_super_datum(d))


def test_positive_off_diagonal_violates_b():
    d = make_datum(["1", "2"], [[2, 1], [1, 2]], [0, 0])
    assert "(b)" in _conditions(validate_super_datum(d))


def test_super_flag_without_odd_node_violates_c():
    d = make_datum(["1"], [[4]], [0], is_super=True)
    assert "(c)" in _conditions(validate_super_datum(d))


def test_odd_node_with_odd_cartan_entry_violates_d():
    d = make_datum(["1", "2"], [[2, -1], [-1, 2]], [1, 0])
    assert "(d)" in _conditions(validate_super_datum(d))


def test_asymmetric_dot_matrix():
    d = make_datum(["1", "2"], [[4, -2], [-4, 4]], [0, 0])
    assert "symmetry" in _conditions(validate_super_datum(d))


def test_make_datum_rejects_nonintegral_cartan():
    with pytest.raises(ValueError):
        make_datum(["1", "2"], [[4, -1], [-1, 2]], [0, 1])


def test_make_datum_rejects_nonpositive_diagonal():
    with pytest.raises(ValueError):
        make_datum(["1"], [[0]], [0])


def test_osp_datum_rejects_rank_zero():
    with pytest.raises(ValueError):
        osp_datum(0)


def test_datum_from_file(tmp_path):
    path = tmp_path / "osp2.json"
    path.write_text(json.dumps({"I": ["a", "b"], "dot": [[4, -2], [-2, 2]], "parity": [0, 1]}))
    d = datum_from_file(str(path))
    assert d.names == ("a", "b")
    assert d.cartan_matrix() == osp_datum(2).cartan_matrix()
    assert validate_super_datum(d).valid


@pytest.mark.parametrize("payload", [
    {"I": ["1"], "dot": [[4]], "parity": [2]},
    {"I": ["1", "2"], "dot": [[4]], "parity": [0, 1]},
    {"I": ["1"], "dot": [[2]], "parity": [1], "lattice": "coweight"},
])
def test_datum_from_file_rejects(tmp_path, payload):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(payload))
    with pytest.raises(ValueError):
        datum_from_file(str(path))


def test_datum_from_missing_file(tmp_path):
    with pytest.raises(ValueError):
        datum_from_file(str(tmp_path / "missing.json"))


@pytest.mark.parametrize("ell, expected", [(1, (1, 1)), (2, (1, 2)), (3, (3, 3)), (4, (2, 4)), (6, (3, 6))])
def test_ell_i_table(ell, expected):
    assert ell_i_table(osp_datum(2), ell) == expected


def test_derived_datum_osp4_odd_ell():
    dd = derive_diamond(osp_datum(2), make_root_context(3))
    assert dd.ell_i == (3, 3)
    assert dd.diamond == ((36, -18), (-18, 18))
    assert dd.is_super
    assert dd.facts["same_cartan"]
    assert dd.index == 9


def test_derived_datum_osp4_even_ell():
    dd = derive_diamond(osp_datum(2), make_root_context(4))
    assert dd.ell_i == (2, 4)
    assert not dd.is_super
    assert dd.parity == (0, 0)


def test_derived_datum_rank_one():
    dd = derive_diamond(osp_datum(1), make_root_context(3))
    assert dd.diamond == ((18,),)
    assert dd.index == 3
    assert dd.contains((6,))
    assert not dd.contains((1,))
    assert dd.pair(0, (6,)) == 2
    assert dd.root(0) == (6,)


def test_derived_pairing_rejects_weights_outside():
    dd = derive_diamond(osp_datum(1), make_root_context(3))
    with pytest.raises(ValueError):
        dd.pair(0, (2,))


@pytest.mark.parametrize("ell", [2, 3, 4, 5])
@pytest.mark.parametrize("pi_sign", [1, -1])
def test_quasi_classical(ell, pi_sign):
    dd = derive_diamond(osp_datum(2), make_root_context(ell, pi_sign=pi_sign))
    assert quasi_classical_check(dd, make_root_context(ell, pi_sign=pi_sign))


def test_derived_datum_as_super_datum_is_valid():
    dd = derive_diamond(osp_datum(2), make_root_context(3))
    assert validate_super_datum(dd.as_super_datum()).valid


@pytest.mark.parametrize("n, ell", [(1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 3)])
def test_frobenius_assumptions_hold(n, ell):
    report = check_frobenius_assumptions(osp_datum(n), make_root_context(ell))
    assert report.valid, report.issues


def test_frobenius_assumptions_reject_osp4_at_two():
    report = check_frobenius_assumptions(osp_datum(2), make_root_context(2))
    assert not report.valid
    assert "frobenius-a" in _conditions(report)
    assert report.facts["ell_i"] == [1, 2]
    with pytest.raises(AssumptionViolation):
        require_frobenius_assumptions(osp_datum(2), make_root_context(2))


def test_odd_cycle_is_rejected():
    d = make_datum(["1", "2", "3"], [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]], [0, 0, 0])
    report = check_frobenius_assumptions(d, make_root_context(5))
    assert "frobenius-b" in _conditions(report)


def test_positive_roots_b2():
    assert positive_roots(osp_datum(2)) == [(0, 1), (1, 0), (1, 1), (1, 2)]


@pytest.mark.parametrize("nu, expected", [((1, 1), 2), ((1, 2), 3), ((2, 2), 4), ((0, 4), 1)])
def test_kostant_count(nu, expected):
    assert kostant_count(osp_datum(2), nu) == expected


def test_kostant_table_agrees_with_count():
    d = osp_datum(2)
    table = kostant_table(d, 6)
    for nu in [(1, 1), (2, 3), (3, 3)]:
        assert table[nu] == kostant_count(d, nu)


@pytest.mark.parametrize("lattice, expected", [("weight", 12), ("root", 6)])
def test_pairing_classes_osp2(lattice, expected):
    d = osp_datum(1, lattice)
    classes = pairing_classes(d, 12)
    assert len(classes) == expected
    for residues, weight in classes.items():
        assert tuple(p % 12 for p in d.pairings(weight)) == residues


def test_weight_with_pairings_needs_an_integral_solution():
    d = osp_datum(1, "root")
    assert d.pairings(d.weight_with_pairings((4,))) == (4,)
    assert d.weight_with_pairings((3,)) is None
