from importlib import resources

import numpy as np
import pytest

from dwlink.modular import (
    backtrack_modular_permutations,
    compute_modular_data,
    enumerate_T_respecting,
    fusion_blocks,
    modular_data_equal_as_sets,
    modular_permutations,
    unitarity_defect,
    verlinde_fusion,
    w_matrix,
)


def reference_table(name):
    text = (resources.files("dwlink") / "data" / name).read_text()
    rows = [l.split("\t") for l in text.splitlines() if l and not l.startswith("#")]
    return {frozenset((r[0], r[c]) for r in rows) for c in range(1, 9)}


@pytest.mark.parametrize("u", range(5))
def test_s_structure(u):
    md = compute_modular_data(u)
    assert np.array_equal(md.S, md.S.transpose(1, 0, 2))
    assert list(md.S[0, :, 0]) == list(md.dims) and not md.S[0, :, 1:].any()
    assert not unitarity_defect(md).any()


def test_identity_row_unique():
    md = compute_modular_data(1)
    rows = {md.S[a].tobytes() for a in range(1, 49)}
    assert md.S[0].tobytes() not in rows


def test_verlinde_and_blocks():
    md = compute_modular_data(1)
    F = verlinde_fusion(md)
    assert F.min() >= 0
    assert all(F[0, a, a] == 1 for a in range(49))
    assert np.array_equal(F, F.transpose(1, 0, 2))
    big = [b for b in fusion_blocks(F, md.dims) if len(b) > 1 and 0 not in b]
    assert sorted(tuple(md.names[a][:3] for a in b) for b in big) == [tuple([f"B_{k}"] * 5) for k in range(1, 5)]


def test_fusion_dimension_consistency():
    md = compute_modular_data(2)
    F = verlinde_fusion(md)
    d = md.dims
    assert np.array_equal(np.einsum("abc,c->ab", F, d), np.outer(d, d))


def test_set_equality_pattern():
    classes = {frozenset(j for j in range(5) if modular_data_equal_as_sets(i, j)) for i in range(5)}
    assert classes == {frozenset({0}), frozenset({1, 4}), frozenset({2, 3})}


@pytest.mark.parametrize("pair", [(1, 4), (2, 3)])
def test_candidate_count(pair):
    assert enumerate_T_respecting(*pair).count == 2359296


def test_candidates_respect_dims_and_twists():
    e = enumerate_T_respecting(1, 4)
    mi, mj = compute_modular_data(1), compute_modular_data(4)
    batch = e.decode(np.random.default_rng(0).integers(0, e.count, 500))
    for rho in batch:
        assert sorted(rho) == list(range(49))
        assert np.array_equal(mj.dims[rho], mi.dims) and np.array_equal(mj.twists[rho], mi.twists)


@pytest.mark.parametrize("pair,table", [((1, 4), "modperms_1_4.tsv"), ((2, 3), "modperms_2_3.tsv")])
def test_permutations_match_reference(pair, table):
    perms = modular_permutations(*pair)
    assert len(perms) == 8
    assert {frozenset(p.as_names().items()) for p in perms} == reference_table(table)
    assert [p.images for p in backtrack_modular_permutations(*pair)] == [p.images for p in perms]


def test_permutations_preserve_s_and_t():
    mi, mj = compute_modular_data(2), compute_modular_data(3)
    from dwlink.modular import shared_value_ids

    Si, Sj = shared_value_ids(mi.S, mj.S)
    for p in modular_permutations(2, 3):
        r = np.array(p.images)
        assert np.array_equal(Sj[np.ix_(r, r)], Si)
        assert np.array_equal(mj.twists[r], mi.twists)


def test_self_pair_contains_identity():
    assert any(p.is_identity() for p in backtrack_modular_permutations(0, 0))


def test_w_matrix_diagonal_is_raw():
    W = w_matrix(1)
    idx = np.arange(49)
    assert np.array_equal(W.coeffs[idx, idx], W.raw.coeffs[idx, idx])
    assert W[0, 0] == 1
