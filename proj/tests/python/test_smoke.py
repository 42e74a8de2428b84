import pytest

import masseykit as mk


def test_cohomology_heisenberg():
    rec = mk.cohomology("heisenberg:3")
    assert rec["h1"]["dimension"] == 2
    assert rec["h2"]["dimension"] == 4
    assert mk.group_order("heisenberg:3") == 27
    assert mk.default_prime("heisenberg:3") == 3


def test_group_table_is_a_group():
    n = mk.group_order("elem:2,2")
    table = mk.group_table("elem:2,2")
    assert len(table) == n * n
    for row in range(n):
        assert sorted(table[row * n:(row + 1) * n]) == list(range(n))


def test_parse_errors():
    with pytest.raises(mk.ParseError):
        mk.cohomology("heisenburg:3")
    with pytest.raises(ValueError):
        mk.ratfunc("t+", 7)


def test_cochain_ops():
    order = mk.group_order("cyclic:2")
    f = {"group": "cyclic:2", "degree": 1, "p": 2, "values": [0, 1]}
    df = mk.differential(f)
    assert df["degree"] == 2 and not any(df["values"])
    sq = mk.cup(f, f)
    assert sq["degree"] == 2 and len(sq["values"]) == order * order
    assert sq["values"] == [0, 0, 0, 1]


def test_function_field():
    unit, factors = mk.factor("t^2-1", 7)
    assert unit == 1
    assert sorted(factors) == [("t+1", 1), ("t+6", 1)]
    assert mk.ratfunc("(t^2-1)/(t-1)", 7) == "t+1"
    assert mk.is_pth_power("t^3", 7, 3)
    assert not mk.is_pth_power("t", 7, 3)
    assert pow(mk.primitive_root(7, 3), 3, 7) == 1


def test_tower_and_crossed():
    report = mk.tower(7, 3, v="x+t")
    assert report.passed
    assert all(report.records[0]["checks"].values())

    report = mk.crossed(5, 2, seed=4, associativity=50)
    assert report.passed
    rec = report.records[0]
    assert rec["rank"] == 16
    assert rec["associativity"]["failures"] == 0
    assert rec["rng"] == mk.RNG_NAME


def test_dwyer_is_deterministic():
    a = mk.dwyer_check("heisenberg:2", samples=5, seed=9)
    b = mk.dwyer_check("heisenberg:2", samples=5, seed=9)
    assert a.passed and a.records == b.records
