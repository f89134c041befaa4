import pytest
from hypothesis import given, strategies as st

from gradres.monoid import GradedMonoid, MonoidError, monoid_from_json, monoid_to_json, validate


def z2_table(order=()):
    return GradedMonoid.table(["e", "g"], 0, [[0, 1], [1, 0]], order)


def test_naturals_are_ordered():
    assert validate(GradedMonoid.natural()).ok
    assert validate(GradedMonoid.natural_power(3)).ok


def test_unordered_power_fails_least_identity():
    rep = validate(GradedMonoid.natural_power(2, "none"))
    assert not rep.e_is_least and not rep.ok


def test_group_table_cannot_have_least_identity():
    # e < g would force g = g e < g g = e
    rep = validate(z2_table([(0, 1)]))
    assert not rep.ok


def test_truncated_chain_table():
    # {0, 1, inf} with 1 * 1 = inf absorbing, ordered 0 < 1 < inf
    g = GradedMonoid.table(["0", "1", "inf"], 0, [[0, 1, 2], [1, 2, 2], [2, 2, 2]],
                           [(0, 1), (1, 2), (0, 2)])
    rep = validate(g)
    assert rep.e_is_least and rep.well_founded


def test_bad_tables():
    with pytest.raises(MonoidError):
        GradedMonoid.table(["e", "g"], 0, [[0, 1]], ()).check_table()
    with pytest.raises(MonoidError):
        GradedMonoid.table(["e", "g"], 0, [[0, 1], [0, 0]], ()).check_table()  # g e != g


def test_element_validation():
    assert GradedMonoid.natural().element(3) == 3
    with pytest.raises(MonoidError):
        GradedMonoid.natural().element(-1)
    assert GradedMonoid.natural_power(2).element([1, 2]) == (1, 2)
    with pytest.raises(MonoidError):
        GradedMonoid.natural_power(2).element([1])
    assert z2_table().element("g") == 1


@given(st.lists(st.integers(0, 5), min_size=3, max_size=3), st.lists(st.integers(0, 5), min_size=3, max_size=3))
def test_left_divisors_power(a, b):
    g = GradedMonoid.natural_power(3)
    a, b = tuple(a), tuple(b)
    gamma = g.mul(a, b)
    assert g.left_divisors(gamma, b) == {a}


@given(st.integers(0, 20), st.integers(0, 20))
def test_natural_order_compatible(a, b):
    g = GradedMonoid.natural()
    for c in range(4):
        if g.less(a, b):
            assert g.less(g.mul(a, c), g.mul(b, c))


@pytest.mark.parametrize("g", [GradedMonoid.natural(), GradedMonoid.natural_power(2), z2_table([(0, 1)])])
def test_json_round_trip(g):
    assert monoid_from_json(monoid_to_json(g)) == g


def idempotent_table():
    # {e, g} with g g = g
    return GradedMonoid.table(["e", "g"], 0, [[0, 1], [1, 1]], [(0, 1)])


def test_trivial_monoid():
    assert validate(GradedMonoid.table(["e"], 0, [[0]])).ok


def test_idempotent_table_is_not_ordered():
    rep = validate(idempotent_table())
    assert not rep.is_ordered
    assert ("ordered", (0, 1, 1)) in rep.violations  # e < g but e g = g g = g


def test_left_divisor_examples():
    n = GradedMonoid.natural()
    assert n.left_divisors(5, 2) == {3}
    assert n.left_divisors(1, 2) == set()
    assert idempotent_table().left_divisors(1, 1) == {0, 1}


def test_left_divisors_scan_table():
    g = idempotent_table()
    for gamma in range(2):
        for beta in range(2):
            scan = {a for a in range(2) if g.mul(a, beta) == gamma}
            assert g.left_divisors(gamma, beta) == scan
