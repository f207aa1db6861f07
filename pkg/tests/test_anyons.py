import pytest

from dwlink.anyons import AnyonLabel, build_category, reference_twist


@pytest.mark.parametrize("u", range(5))
def test_census(u):
    C = build_category(u)
    assert len(C) == 49
    dims = list(C.dims)
    assert dims.count(1) == 5 and dims.count(5) == 24 and dims.count(11) == 20
    assert sum(d * d for d in dims) == 3025
    assert len(C.kinds("I")) == 7 and len(C.kinds("A")) == 22 and len(C.kinds("B")) == 20


@pytest.mark.parametrize("u", range(5))
def test_twists_match_closed_form(u):
    C = build_category(u)
    assert all(a.twist == reference_twist(a.label, u) for a in C)


def test_each_nontrivial_twist_twice_among_big_labels():
    C = build_category(1)
    big = [int(a.twist) for a in C if a.qdim > 1 and a.twist != 0]
    assert all(big.count(t) == 2 for t in set(big))


@pytest.mark.parametrize("u", [0, 1, 2])
def test_twisted_action_law(u):
    C = build_category(u)
    for name in ["I_5", "A_1_3", "A_2_0", "B_1_2", "B_4_4"]:
        assert C.action_defect(name) == 0


@pytest.mark.parametrize("text,expected", [
    ("I_5", AnyonLabel("I", 5)),
    ("A_1_3", AnyonLabel("A", 1, 3)),
    ("B_2,0", AnyonLabel("B", 2, 0)),
])
def test_label_parse(text, expected):
    assert AnyonLabel.parse(text) == expected


@pytest.mark.parametrize("bad", ["C_1", "I_1_2", "B_1", ""])
def test_label_parse_errors(bad):
    with pytest.raises(ValueError):
        AnyonLabel.parse(bad)


def test_basis_order():
    names = build_category(0).names
    assert names[:7] == [f"I_{r}" for r in range(7)]
    assert names[7] == "A_1_0" and names[18] == "A_2_0" and names[29] == "B_1_0" and names[-1] == "B_4_4"
