"""
tests the q -> 1 and Wright-Bessel limit tables
"""

import pytest

from uc_radius import limits as lm
from uc_radius.params import Kind


def errors_by_q(table):
    return table.groupby(["nu", "x"])["rel_error"].apply(list)


def test_classical_argument():
    assert lm.classical_argument(Kind.JACKSON2, 1.5) == 1.5
    assert lm.classical_argument(3, 1.5) == 3.0


def test_jackson2_limit():
    table = lm.qbessel_limit_table(Kind.JACKSON2)
    assert list(table.columns) == [
        "kind",
        "nu",
        "q",
        "x",
        "qbessel",
        "bessel",
        "rel_error",
    ]
    assert len(table) == 18
    assert table.loc[table["q"] == 0.99, "rel_error"].max() < 5e-2
    for errors in errors_by_q(table):
        assert errors[0] > errors[1] > errors[2]


def test_jackson3_limit_improves():
    table = lm.qbessel_limit_table(Kind.JACKSON3, nus=(1.0,))
    assert set(table["kind"]) == {3}
    for errors in errors_by_q(table):
        assert errors[0] > errors[1] > errors[2]


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0])
def test_wright_bessel_identity(nu):
    table = lm.wright_bessel_table(nus=(nu,), xs=[0.5, 1.5, 5.0])
    assert len(table) == 3
    assert table["abs_error"].max() < 1e-10
