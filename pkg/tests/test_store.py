import json

import numpy as np

from dwlink.anyons import build_category
from dwlink.braids import invariant_tensor, parse_braidword
from dwlink.catalog import LinkRecord
from dwlink.store import ResultStore, engine_hash


def test_roundtrip(tmp_path):
    rec = LinkRecord("5_2", "AAABaB", 3)
    t = invariant_tensor(1, rec)
    st = ResultStore(tmp_path)
    names = build_category(1).names
    path = st.save(t, names)
    doc = json.loads(path.read_text())
    assert doc["link"] == "5_2" and doc["u"] == 1 and doc["writhe"] == -4 and doc["components"] == 1
    e = doc["entries"][names.index("B_1_0")]
    assert e["labels"] == ["B_1_0"]
    z = complex(*e["approx"])
    assert abs(z - complex(t[names.index("B_1_0")])) < 1e-9
    back = st.load("5_2", 1, names)
    assert np.array_equal(back.coeffs, t.coeffs)


def test_missing_and_stale(tmp_path):
    st = ResultStore(tmp_path)
    names = build_category(0).names
    assert st.load("4_1", 0, names) is None
    t = invariant_tensor(0, LinkRecord("4_1", "AbAb", 3))
    p = st.save(t, names)
    doc = json.loads(p.read_text())
    doc["engine"] = "0" * 16
    p.write_text(json.dumps(doc))
    assert st.load("4_1", 0, names) is None
    assert len(engine_hash()) == 16
