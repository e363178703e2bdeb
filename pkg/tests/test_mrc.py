import pytest
from hypothesis import given, strategies as st

from mrclab.lib.errors import PredictionWindowError
from mrclab.lib.ideal_ops import degree_from_numerator
from mrclab.lib.mrc import (
    FamilyTag,
    check_mrc,
    delta2_p,
    delta_p,
    expected_resolution,
    family_prediction,
    family_size,
    is_known_case,
    p_cubic,
    predicted_diagram,
    q_value,
    satisfies_difference_identity,
    select_r,
    theorem_shape,
)
from mrclab.lib.resolution import BettiDiagram, ResolutionShape, hilbert_series_from_betti


def test_hilbert_polynomial_of_the_cubic():
    assert [p_cubic(t) for t in range(6)] == [1, 4, 10, 19, 31, 46]
    assert delta_p(4) == 12
    assert delta2_p(5) == 3


@pytest.mark.parametrize("z, r, valid", [(1, 1, False), (12, 3, False), (19, 4, True), (30, 4, True), (31, 5, True)])
def test_select_r(z, r, valid):
    assert select_r(z) == (r, valid)


def test_select_r_needs_a_point():
    with pytest.raises(PredictionWindowError):
        select_r(0)


def test_q_values_for_22_points():
    assert [q_value(i, 4, 22) for i in range(4)] == [9, 12, 0, -3]
    with pytest.raises(PredictionWindowError):
        q_value(0, 3, 12)
    with pytest.raises(PredictionWindowError):
        q_value(4, 4, 22)


def test_prediction_for_22_points():
    pred = predicted_diagram(22)
    assert pred.r == 4
    assert pred.diagram.entries == {(0, 0): 1, (1, 2): 1, (1, 3): 9, (2, 3): 12, (3, 4): 3}
    assert not pred.known_case
    payload = pred.to_json()
    assert payload["presentation"] == "R/I"
    assert payload["source"] == "q_formula"


def test_prediction_outside_the_window():
    with pytest.raises(PredictionWindowError):
        predicted_diagram(12)


@pytest.mark.parametrize("z", [19, 30, 31, 45])
def test_known_cases(z):
    r, _ = select_r(z)
    assert is_known_case(z, r)
    assert predicted_diagram(z).known_case


@pytest.mark.parametrize("tag, a, z", [("m", 3, 12), ("n", 3, 15), ("o", 3, 13), ("p", 3, 16), ("m", 4, 22), ("p", 5, 41)])
def test_family_sizes(tag, a, z):
    assert family_size(tag, a) == z


def test_unknown_family():
    with pytest.raises(ValueError):
        family_size("q", 3)


def test_theorem_resolution_at_3():
    assert expected_resolution(FamilyTag.M, 3) == ResolutionShape.of({3: 8}, {4: 9}, {6: 2})
    assert expected_resolution("o", 3) == ResolutionShape.of({3: 7}, {4: 6, 5: 3}, {6: 3})
    with pytest.raises(PredictionWindowError):
        expected_resolution("m", 2)
    assert theorem_shape("n", 2) == ResolutionShape.of({2: 3, 3: 1}, {4: 6}, {5: 3})


@pytest.mark.parametrize("tag", list(FamilyTag))
@pytest.mark.parametrize("a", range(4, 9))
def test_prediction_agrees_with_theorem(tag, a):
    pred = predicted_diagram(family_size(tag, a))
    assert pred.diagram == expected_resolution(tag, a).betti()
    assert family_prediction(tag, a).diagram == pred.diagram


@pytest.mark.parametrize("tag", list(FamilyTag))
@pytest.mark.parametrize("a", range(3, 7))
def test_theorem_resolution_has_the_right_degree(tag, a):
    numerator = expected_resolution(tag, a).hilbert_numerator()
    assert degree_from_numerator(numerator) == family_size(tag, a)


@given(st.integers(19, 400))
def test_prediction_is_consistent(z):
    pred = predicted_diagram(z)
    assert check_mrc(pred.diagram, z).passed
    assert satisfies_difference_identity(pred.diagram, z)
    assert degree_from_numerator(hilbert_series_from_betti(pred.diagram)) == z


def test_check_mrc_reports_a_ghost_pair():
    entries = dict(predicted_diagram(22).diagram.entries)
    entries[(3, 3)] = 1
    entries[(2, 4)] = 1
    B = BettiDiagram(entries)
    assert satisfies_difference_identity(B, 22)
    verdict = check_mrc(B, 22)
    assert not verdict.passed
    assert verdict.witness == 2
    assert "ghost" in verdict.reason


def test_check_mrc_reports_a_wrong_difference():
    entries = dict(predicted_diagram(22).diagram.entries)
    entries[(2, 3)] = 11
    verdict = check_mrc(BettiDiagram(entries), 22)
    assert verdict.to_json() == {"passed": False, "witness": 1, "reason": verdict.reason}
