"""On-disk JSON store of invariant tensors, one document per (link, u).

Documents are keyed by link id, u and a hash of the engine sources, so a
change to the arithmetic invalidates old results automatically.  Writes go
through a temporary file and ``os.replace``; concurrent writers of the same
key simply race and the last one wins.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from functools import lru_cache
from importlib import resources
from itertools import product
from pathlib import Path

import numpy as np

from .braids import InvariantTensor
from .cyclotomic import DEFAULT_N, ring

__all__ = ["ResultStore", "engine_hash", "tensor_to_document", "document_to_tensor"]

_ENGINE_MODULES = ("group.py", "cocycle.py", "cyclotomic.py", "monomial.py", "anyons.py", "braids.py")


@lru_cache(maxsize=1)
def engine_hash() -> str:
    h = hashlib.sha256()
    pkg = resources.files("dwlink")
    for name in _ENGINE_MODULES:
        h.update(name.encode())
        h.update((pkg / name).read_bytes())
    return h.hexdigest()[:16]


def _safe(link_id: str) -> str:
    return link_id.replace("^", "c").replace("+-", "pm").replace("/", "_")


def tensor_to_document(t: InvariantTensor, names: list[str]) -> dict:
    entries = []
    approx = t.approx()
    for idx in product(range(t.coeffs.shape[0]), repeat=t.order):
        c = t.coeffs[idx]
        nz = np.nonzero(c)[0]
        z = approx[idx]
        entries.append(
            {
                "labels": [names[i] for i in idx],
                "coeffs": {str(int(k)): int(c[k]) for k in nz},
                "approx": [float(f"{z.real:.15g}"), float(f"{z.imag:.15g}")],
            }
        )
    return {
        "link": t.link,
        "u": t.u,
        "writhe": t.writhe,
        "components": t.order,
        "N": t.N,
        "engine": engine_hash(),
        "entries": entries,
    }


def document_to_tensor(doc: dict, names: list[str]) -> InvariantTensor:
    N = doc.get("N", DEFAULT_N)
    deg = ring(N).degree
    pos = {n: i for i, n in enumerate(names)}
    order = doc["components"]
    coeffs = np.zeros((len(names),) * order + (deg,), dtype=np.int64)
    for e in doc["entries"]:
        idx = tuple(pos[n] for n in e["labels"])
        for k, v in e["coeffs"].items():
            coeffs[idx + (int(k),)] = v
    return InvariantTensor(link=doc["link"], u=doc["u"], writhe=doc["writhe"], coeffs=coeffs, N=N)


class ResultStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path(self, link_id: str, u: int) -> Path:
        return self.root / f"{_safe(link_id)}.u{u}.{engine_hash()}.json"

    def has(self, link_id: str, u: int) -> bool:
        return self.path(link_id, u).exists()

    def save(self, tensor: InvariantTensor, names: list[str]) -> Path:
        target = self.path(tensor.link, tensor.u)
        doc = tensor_to_document(tensor, names)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, separators=(",", ":"))
        os.replace(tmp, target)
        return target

    def load(self, link_id: str, u: int, names: list[str]) -> InvariantTensor | None:
        p = self.path(link_id, u)
        if not p.exists():
            return None
        with open(p, encoding="utf-8") as fh:
            doc = json.load(fh)
        if doc.get("engine") != engine_hash() or doc.get("link") != link_id or doc.get("u") != u:
            return None
        return document_to_tensor(doc, names)
