import numpy as np
import pytest

from dwlink.catalog import LinkRecord, find_record
from dwlink.classify import (
    classify,
    compare_with_reference,
    compute_tensors,
    load_reference_marks,
    permutation_compatible,
    report_tables,
)


@pytest.mark.parametrize("link_id,weak,strong", [("5_2", True, True), ("4_1", True, False), ("6_2", False, False)])
def test_examples(catalog, link_id, weak, strong):
    r = classify(find_record(catalog, link_id))
    assert (r.weak, r.strong) == (weak, strong)
    assert set(r.compatible) == {(1, 4), (2, 3)}


def test_figure_eight_all_equal(catalog):
    assert classify(find_record(catalog, "4_1")).all_equal


def test_conjugated_word_same_verdict(catalog):
    rng = np.random.default_rng(3)
    for link_id in ["4_1", "5_2"]:
        rec = find_record(catalog, link_id)
        base = classify(rec)
        c = "".join(rng.choice(list("aAbB"), size=2))
        word = c.swapcase()[::-1] + rec.braidword + c
        r = classify(LinkRecord(link_id, word, 3))
        assert (r.weak, r.strong) == (base.weak, base.strong)


def test_permutation_compatible_on_matrix():
    L = np.arange(9).reshape(3, 3)
    assert permutation_compatible(L, L, [0, 1, 2])
    rho = [1, 2, 0]
    Lj = np.empty_like(L)
    Lj[np.ix_(rho, rho)] = L
    assert permutation_compatible(L, Lj, rho)
    assert not permutation_compatible(L, L, rho)


def test_reference_marks_shape():
    marks = load_reference_marks()
    assert len(marks) == 107
    assert sum(s for _, s in marks.values()) == 25
    assert sum(w for w, _ in marks.values()) == 17


def test_report_rendering(catalog):
    recs = [find_record(catalog, i) for i in ["4_1", "5_2"]]
    res = [classify(r) for r in recs]
    md = report_tables(res, recs)
    assert "| 5_2 | AAABaB |  | ✓ |" in md
    assert compare_with_reference(res) == []
    tsv = report_tables(res, recs, "tsv")
    assert "4_1\tAbAb\t1\t0\t1" in tsv


def test_store_backed_classification(catalog, store):
    rec = find_record(catalog, "5^2_1")
    compute_tensors(rec, store)
    r = classify(rec, store=store)
    assert r.weak and not r.strong
