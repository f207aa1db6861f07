import pytest

from dwlink.catalog import CatalogError, find_record, load_catalog


def test_catalog_contents(catalog):
    assert len(catalog) == 107
    assert sum(r.components == 1 for r in catalog) == 58
    assert sum(r.components == 2 for r in catalog) == 48
    assert find_record(catalog, "5_2").braidword == "AAABaB"
    assert find_record(catalog, "6^2_3").braidword == "AAABaBB"
    assert find_record(catalog, "6^3_2").braidword == "AbAbAb"
    assert find_record(catalog, "7^2_2+-").braidword == "AAAbAbb"


@pytest.mark.parametrize("body,lineno", [
    ("5_2\tAAABaB\t3\n4_1\tAbXb\t3\n", 2),
    ("# c\n\n5_2\tAAABaB\n", 3),
    ("5_2\tAAABaB\t4\n", 1),
    ("6^2_3\tAbAb\t3\n", 1),
    ("5_2\tAAABaB\t3\n5_2\tAAABaB\t3\n", 2),
])
def test_errors_carry_line_numbers(tmp_path, body, lineno):
    p = tmp_path / "cat.tsv"
    p.write_text(body)
    with pytest.raises(CatalogError, match=rf":{lineno}:"):
        load_catalog(p)


def test_missing_id():
    with pytest.raises(KeyError):
        find_record([], "3_1")
