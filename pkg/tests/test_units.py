import math

import pytest
from hypothesis import given, strategies as st

from sonarfield import from_db, to_db
from sonarfield.units import (
    KILOYARDS_PER_NMI,
    METRES_PER_NMI,
    NMI_PER_KILOYARD,
    kiloyards_to_nmi,
    nmi_to_kiloyards,
    nmi_to_metres,
)


def test_to_db_reference_points():
    assert to_db(1.0) == 0.0
    assert to_db(100.0) == pytest.approx(20.0, abs=1e-12)
    # 10*log10(2), evaluated directly
    assert to_db(2.0) == pytest.approx(3.010299956639812, abs=1e-12)


def test_from_db_reference_points():
    assert from_db(0.0) == 1.0
    assert from_db(20.0) == pytest.approx(100.0, rel=1e-14)
    assert from_db(-3.010299956639812) == pytest.approx(0.5, rel=1e-14)


@pytest.mark.parametrize("bad", [0.0, -1.0, -1e-300, float("nan")])
def test_to_db_rejects_non_positive(bad):
    with pytest.raises(ValueError):
        to_db(bad)


@given(st.floats(min_value=-9.0, max_value=9.0))
def test_round_trip_over_log_spaced_range(exponent):
    x = 10.0**exponent
    assert abs(from_db(to_db(x)) - x) / x < 1e-12


@given(
    st.floats(min_value=1e-9, max_value=1e9),
    st.floats(min_value=1.0000001, max_value=10.0),
)
def test_to_db_strictly_monotone(x, factor):
    assert to_db(x) < to_db(x * factor)


def test_unit_constants():
    assert NMI_PER_KILOYARD == 0.5
    assert KILOYARDS_PER_NMI == 2.0
    assert METRES_PER_NMI == 1852.0
    assert nmi_to_metres(1.0) == 1852.0
    assert nmi_to_kiloyards(0.5) == 1.0
    assert kiloyards_to_nmi(2.0) == 1.0
    assert kiloyards_to_nmi(nmi_to_kiloyards(0.37)) == pytest.approx(0.37, rel=1e-15)


def test_round_trip_extreme_values():
    for x in (1e-9, 1e-3, 1.0, math.pi, 1e6, 1e9):
        assert from_db(to_db(x)) == pytest.approx(x, rel=1e-12)
