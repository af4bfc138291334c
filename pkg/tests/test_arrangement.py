import pytest

from galeforge import arrangement
from galeforge.arrangement import PolarizedArrangement, SignVector
from galeforge.exceptions import (
    InvalidArrangement,
    InvalidInput,
    NotABasis,
    NotBoundedFeasible,
    TooLarge,
)

from .conftest import load_mock


def signs(text):
    return SignVector.parse(text)


def test_sign_vector_parse():
    alpha = signs("+-+")
    assert alpha.signs == (1, -1, 1)
    assert str(alpha) == "+-+"
    assert len(alpha) == 3


def test_sign_vector_rejects_other_characters():
    with pytest.raises(InvalidInput):
        signs("+x")


def test_sign_vector_order_puts_plus_first():
    assert sorted([signs("-+"), signs("++"), signs("--"), signs("+-")]) == [
        signs("++"), signs("+-"), signs("-+"), signs("--"),
    ]


def test_sign_vector_flip():
    assert signs("++-").flip([0, 2]) == signs("-++")
    assert signs("+-").negate() == signs("-+")


def test_from_json_default_edge_labels():
    A = PolarizedArrangement.from_matrix([[1], [1]], [1], [1, 0])
    assert A.edges == ("e1", "e2")
    assert A.k == 1
    assert A.t_rank == 1


def test_from_json_missing_field():
    data = load_mock("tp1.json")
    del data["eta"]
    with pytest.raises(InvalidInput, match="eta"):
        PolarizedArrangement.from_json(data)


def test_loads_invalid_json():
    with pytest.raises(InvalidInput):
        PolarizedArrangement.loads("{not json")


def test_to_json(tp1):
    assert tp1.to_json() == load_mock("tp1.json")


def test_zeta_lift_length_is_checked():
    with pytest.raises(InvalidInput):
        PolarizedArrangement.from_matrix([[1], [1]], [1], [1, 0, 0])


def test_validate_passes(tp1, tp2):
    assert tp1.validate().passed
    assert tp2.validate().passed
    assert tp1.validate().render() == "valid"


def test_validate_not_unimodular():
    A = PolarizedArrangement.from_json(load_mock("not_unimodular.json"))
    report = A.validate()
    assert not report.passed
    assert "not totally unimodular" in report.render()
    with pytest.raises(InvalidArrangement):
        A.validated()


def test_validate_not_saturated():
    report = PolarizedArrangement.from_matrix([[2], [0]], [1], [0, 1]).validate()
    assert "not saturated" in report.render()


def test_validate_zero_weight():
    report = PolarizedArrangement.from_matrix([[1], [0], [1]], [1], [1, 1, 0]).validate()
    assert report.failures == ("edge 'e2' has zero weight (a circuit of support 1)",)


def test_validate_rank_deficient():
    report = PolarizedArrangement.from_matrix([[1, 1], [1, 1]], [1, 0], [0, 0]).validate()
    assert "full column rank" in report.render()


def test_validate_eta_not_generic(tp1):
    report = tp1.with_parameters(eta=[0]).validate()
    assert any("eta is not generic" in f for f in report.failures)


def test_validate_zeta_not_generic(tp1):
    report = tp1.with_parameters(zeta_lift=[1, 1]).validate()
    assert any("zeta is not generic" in f for f in report.failures)


def test_enumerate_chambers(tp1):
    assert tp1.enumerate_chambers("feasible").as_strings() == ["++", "+-", "-+"]
    assert tp1.enumerate_chambers("bounded").as_strings() == ["++", "-+", "--"]
    assert tp1.enumerate_chambers("both").as_strings() == ["++", "-+"]
    assert len(tp1.enumerate_chambers("all")) == 4


def test_enumerate_chambers_lattice(tp1):
    assert tp1.enumerate_chambers("feasible", lattice=True).as_strings() == ["++", "+-", "-+"]


def test_enumerate_chambers_unknown_filter(tp1):
    with pytest.raises(InvalidInput):
        tp1.enumerate_chambers("nonsense")


def test_enumerate_chambers_too_large():
    n = arrangement.MAX_ENUMERATION_EDGES + 1
    A = PolarizedArrangement.from_matrix([[1]] * n, [1], [0] * n)
    with pytest.raises(TooLarge):
        A.enumerate_chambers()


def test_bases(tp1):
    bases = tp1.bases()
    assert [v.b for v in bases] == [(0,), (1,)]
    assert [v.vertex for v in bases] == [(0, 1), (1, 0)]
    assert tp1.fixed_point_count() == 2
    assert bases[0].to_json(tp1.edges) == {"basis": ["e1"], "vertex": [0, 1]}


def test_basis_by_label(tp1):
    assert tp1.basis(["e2"]).b == (1,)


def test_not_a_basis(tp2):
    with pytest.raises(NotABasis):
        tp2.basis([0])


def test_unknown_edge(tp1):
    with pytest.raises(InvalidInput):
        tp1.index("e9")


def test_zeta_value(tp1):
    assert tp1.zeta_value([0]) == 0
    assert tp1.zeta_value([1]) == 1


def test_mu(tp1):
    assert tp1.mu([0]) == signs("-+")
    assert tp1.mu([1]) == signs("++")


def test_mu_inverse_and_nu(tp1):
    assert tp1.mu_inverse(signs("++")).b == (1,)
    assert tp1.nu(signs("++")) == signs("+-")
    assert tp1.nu(signs("-+")) == signs("++")
    with pytest.raises(NotBoundedFeasible):
        tp1.mu_inverse(signs("+-"))


def test_mu_is_a_bijection_onto_bounded_feasible(fleet):
    images = [fleet.mu(v) for v in fleet.bases()]
    assert len(set(images)) == len(images)
    assert set(images) == set(fleet.enumerate_chambers("both"))


def test_nu_on_bounded_feasible_chambers(fleet):
    for alpha in fleet.enumerate_chambers("both"):
        vertex = fleet.mu_inverse(alpha)
        flipped = fleet.nu(alpha)
        assert all(flipped[e] == -alpha[e] for e in vertex.b)


def test_reverse_polarization(tp1):
    assert tp1.reverse_polarization().zeta_lift == (-1, 0)


def test_gale_dual_exchanges_feasible_and_bounded(fleet):
    dual = fleet.gale_dual()
    assert dual.k == fleet.t_rank
    assert set(dual.enumerate_chambers("feasible")) == set(fleet.enumerate_chambers("bounded"))
    assert set(dual.enumerate_chambers("bounded")) == set(fleet.enumerate_chambers("feasible"))


def test_double_dual_is_equivalent(fleet):
    assert fleet.gale_dual().gale_dual().is_equivalent(fleet)


def test_is_equivalent_detects_other_parameters(tp1):
    assert not tp1.is_equivalent(tp1.with_parameters(eta=[2]))


def test_circuits(tp2):
    assert [c.image for c in tp2.circuits()] == [(1, 1, 1)]
    assert all(len(c.support) == 2 for c in tp2.cocircuits())
    assert len(tp2.cocircuits()) == 3


def test_signatures(tp1):
    assert tp1.kahler_signature(eta=[2]) == tp1.kahler_signature()
    assert tp1.kahler_signature(eta=[-1]) == tuple(-s for s in tp1.kahler_signature())
    assert tp1.equivariant_signature([2, 0]) == tp1.equivariant_signature()


def test_chamber_distance(tp1):
    assert tp1.chamber_distance(signs("++"), signs("-+")) == 1
    assert tp1.chamber_distance(signs("++"), signs("--")) == 2
    assert tp1.chamber_distance(signs("++"), signs("--"), within="all") == 2
    with pytest.raises(InvalidInput):
        tp1.chamber_distance(signs("++"), signs("+-"))


def test_phi_and_image(tp1):
    assert tp1.dual_bases() == [(1,), (0,)]
    assert tp1.phi([0], [3]) == (3,)
    assert tp1.image((3,)) == (3, 3)


def test_phi_rejects_non_basis(three_cycle):
    with pytest.raises(NotABasis):
        three_cycle.phi([0], [1])


def test_lagrangian_weights(tp1):
    W = tp1.lagrangian_weights(signs("++"), signs("++"))
    assert W.weights == [(1,), (1,)]
    assert tp1.lagrangian_weights(signs("++"), signs("--")).weights == []
    assert tp1.lagrangian_weights(signs("--"), signs("-+")).weights == [(-1,)]


def test_lattice_points(tp1):
    assert tp1.lattice_points(signs("++"), 2) == [(0, 1), (1, 0)]
    assert tp1.lattice_points(signs("-+"), 2) == [(-1, 2)]
    assert tp1.lattice_points(signs("--"), 2) == []


def test_feasible_sets_are_scale_invariant(fleet):
    scaled = fleet.with_parameters(eta=[2 * x for x in fleet.eta])
    assert set(scaled.enumerate_chambers("feasible")) == set(fleet.enumerate_chambers("feasible"))
    scaled = fleet.with_parameters(zeta_lift=[2 * x for x in fleet.zeta_lift])
    assert set(scaled.enumerate_chambers("bounded")) == set(fleet.enumerate_chambers("bounded"))


def test_validate_keeps_collecting_after_unimodularity_failure():
    report = PolarizedArrangement.from_matrix([[2], [1]], [0], [2, 1]).validate()
    assert report.failures == (
        "quotient map is not totally unimodular",
        "eta is not generic: it pairs to zero with circuit [1]",
        "zeta is not generic: it pairs to zero with cocircuit [1, -2]",
    )


def test_zeta_lift_is_defined_up_to_the_image_of_b(fleet):
    u = tuple(range(1, fleet.k + 1))
    shifted = fleet.with_parameters(
        zeta_lift=[z + x for z, x in zip(fleet.zeta_lift, fleet.image(u))]
    )
    assert set(shifted.enumerate_chambers("bounded")) == set(fleet.enumerate_chambers("bounded"))
    for vertex in fleet.bases():
        assert shifted.mu(vertex.b) == fleet.mu(vertex.b)
