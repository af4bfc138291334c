import pytest

import galeforge.exceptions as exceptions


def test_non_saturated():
    err = exceptions.NonSaturated([1, 2])
    assert err.invariant_factors == (1, 2)
    assert str(err) == "image of the matrix is not saturated (invariant factors [1, 2])"


def test_not_a_basis():
    err = exceptions.NotABasis(["e1", "e2"])
    assert err.subset == ("e1", "e2")
    assert str(err) == "['e1', 'e2'] is not a basis"


def test_too_large():
    assert str(exceptions.TooLarge(30, 20)) == "30 edges exceeds the enumeration cap of 20"


def test_window_too_small():
    assert str(exceptions.WindowTooSmall(1, 3)) == "truncation window 1 is smaller than 3"


def test_degenerate():
    err = exceptions.DegenerateEta("eta on a wall")
    assert err.reason == "eta on a wall"
    assert str(err) == "degenerate parameters: eta on a wall"


def test_non_unimodular():
    err = exceptions.NonUnimodular(["c0"], 2)
    assert "determinant 2" in str(err)


def test_unsupported_twist():
    assert str(exceptions.UnsupportedTwist((1, 0))) == (
        "twist [1, 0] is not supported by the formula pipeline"
    )


def test_convention_error():
    err = exceptions.ConventionError(-1, "basis ['e1']")
    assert str(err) == "degree -1 at basis ['e1'] is not a nonnegative even integer"


@pytest.mark.parametrize(
    ("err", "code"),
    [
        (exceptions.InvalidInput("bad"), 1),
        (exceptions.TooLarge(30, 20), 1),
        (exceptions.NotBoundedFeasible("+-"), 1),
        (exceptions.ConventionError(1, "here"), 2),
        (exceptions.DegenerateEta("wall"), 3),
        (exceptions.NonUnimodular(["c0"], 2), 4),
        (exceptions.UnsupportedTwist((1,)), 4),
    ],
)
def test_exit_codes(err, code):
    assert isinstance(err, exceptions.GaleforgeError)
    assert err.exit_code == code


def test_invalid_arrangement_joins_failures(tp1):
    report = tp1.with_parameters(eta=[0]).validate()
    err = exceptions.InvalidArrangement(report)
    assert err.report is report
    assert str(err) == "; ".join(report.failures)
