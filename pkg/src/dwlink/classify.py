"""Weak/strong distinguishability of the five categories by a link.

A link *strongly* distinguishes when its five invariant tensors (u = 0..4)
have pairwise different entry multisets.  It *weakly* distinguishes when,
for one of the pairs that share modular data, (1, 4) or (2, 3), no modular
permutation rho carries one tensor onto the other:

    L^(j)[rho a, rho b, ...] = L^(i)[a, b, ...]   for all index tuples.

Pairs with different modular data are not tested for weak distinction;
their permutation set is empty and the literal reading would mark every
link.  Components are ordered by least strand index, with no symmetrisation
over component exchange.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .anyons import build_category
from .braids import InvariantTensor, invariant_tensor
from .catalog import LinkRecord
from .modular import modular_permutations, shared_value_ids
from .store import ResultStore

__all__ = [
    "SHARED_PAIRS",
    "U_VALUES",
    "ClassificationResult",
    "ObservationReport",
    "MissingTensorError",
    "compute_tensors",
    "compute_all",
    "permutation_compatible",
    "classify",
    "classify_coefficients",
    "pair_flags",
    "classify_all",
    "verify_observations",
    "report_tables",
    "load_reference_marks",
    "compare_with_reference",
]

U_VALUES = (0, 1, 2, 3, 4)
SHARED_PAIRS = ((1, 4), (2, 3))


class MissingTensorError(LookupError):
    pass


@dataclass
class ClassificationResult:
    id: str
    compatible: dict[tuple[int, int], bool]  # some modular permutation transports the tensor
    weak: bool
    strong: bool
    all_equal: bool
    digests: dict[int, str] = field(default_factory=dict)

    @property
    def weak_only(self) -> bool:
        return self.weak and not self.strong


def compute_tensors(record: LinkRecord, store: ResultStore | None = None, us: Sequence[int] = U_VALUES) -> dict[int, InvariantTensor]:
    out = {}
    for u in us:
        names = build_category(u).names
        t = store.load(record.id, u, names) if store is not None else None
        if t is None:
            t = invariant_tensor(u, record)
            if store is not None:
                store.save(t, names)
        out[u] = t
    return out


def _compute_job(args):
    record, root = args
    compute_tensors(record, ResultStore(root) if root else None)
    return record.id


def compute_all(records: Iterable[LinkRecord], store: ResultStore, jobs: int = 1) -> list[str]:
    """Fill the store for every record; with jobs > 1 records run in worker processes."""
    records = list(records)
    todo = [r for r in records if not all(store.has(r.id, u) for u in U_VALUES)]
    if jobs <= 1 or len(todo) <= 1:
        return [_compute_job((r, store.root)) for r in todo]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_compute_job, [(r, store.root) for r in todo]))


def permutation_compatible(Li: np.ndarray, Lj: np.ndarray, images: Sequence[int]) -> bool:
    """Whether Lj[rho a, rho b, ...] == Li[a, b, ...], for entry-id arrays Li, Lj."""
    rho = np.asarray(images)
    moved = Lj[np.ix_(*([rho] * Lj.ndim))]
    return bool(np.array_equal(moved, Li))


def _multiset_digest(ids: np.ndarray, values: np.ndarray) -> str:
    rows = values[np.sort(ids.ravel())]
    return hashlib.sha256(np.ascontiguousarray(rows).tobytes()).hexdigest()[:16]


def pair_flags(tensors: dict[int, np.ndarray], pairs=SHARED_PAIRS) -> dict[tuple[int, int], bool]:
    """For each pair, whether some modular permutation transports the coefficient tensor."""
    flags = {}
    for i, j in pairs:
        Li, Lj = shared_value_ids(tensors[i], tensors[j])
        flags[(i, j)] = any(permutation_compatible(Li, Lj, p.images) for p in modular_permutations(i, j))
    return flags


def classify(record: LinkRecord, tensors: dict[int, InvariantTensor] | None = None, store: ResultStore | None = None) -> ClassificationResult:
    if tensors is None:
        if store is None:
            tensors = compute_tensors(record)
        else:
            tensors = {}
            for u in U_VALUES:
                t = store.load(record.id, u, build_category(u).names)
                if t is None:
                    raise MissingTensorError(f"no stored tensor for {record.id} at u={u}")
                tensors[u] = t
    return classify_coefficients(record.id, {u: tensors[u].coeffs for u in U_VALUES})


def classify_coefficients(link_id: str, coeffs: dict[int, np.ndarray]) -> ClassificationResult:
    """Verdict for per-u coefficient tensors of shape (49,)*c + (deg,)."""
    flags = pair_flags(coeffs)
    ids = shared_value_ids(*(coeffs[u] for u in U_VALUES))
    # shared_value_ids indexes into exactly this sorted table
    uniq = np.unique(np.concatenate([coeffs[u].reshape(-1, coeffs[u].shape[-1]) for u in U_VALUES]), axis=0)
    hist = [np.bincount(x.ravel(), minlength=len(uniq)) for x in ids]
    strong = all(not np.array_equal(hist[a], hist[b]) for a in range(5) for b in range(a + 1, 5))
    all_equal = all(np.array_equal(ids[0], x) for x in ids[1:])
    digests = {u: _multiset_digest(ids[k], uniq) for k, u in enumerate(U_VALUES)}
    return ClassificationResult(
        id=link_id,
        compatible=flags,
        weak=strong or not all(flags.values()),
        strong=strong,
        all_equal=all_equal,
        digests=digests,
    )


def classify_all(records: Iterable[LinkRecord], store: ResultStore | None = None) -> list[ClassificationResult]:
    return [classify(r, store=store) for r in records]


@dataclass
class ObservationReport:
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_observations(records: Iterable[LinkRecord], store: ResultStore | None = None) -> ObservationReport:
    """Knot-level regularities: I entries integral and u-independent, A entries
    u-independent, zero-writhe knots entirely u-independent."""
    rep = ObservationReport()
    C = build_category(0)
    I_idx = C.kinds("I")
    A_idx = C.kinds("A")
    for rec in records:
        if not rec.is_knot:
            continue
        rep.checked += 1
        ts = compute_tensors(rec, store)
        base = ts[0].coeffs
        if np.any(base[I_idx, 1:]):
            rep.violations.append(f"{rec.id}: non-integral I-entry")
        for u in U_VALUES[1:]:
            c = ts[u].coeffs
            if not np.array_equal(c[I_idx], base[I_idx]):
                rep.violations.append(f"{rec.id}: I-entries differ between u=0 and u={u}")
            if not np.array_equal(c[A_idx], base[A_idx]):
                rep.violations.append(f"{rec.id}: A-entries differ between u=0 and u={u}")
            if rec.writhe == 0 and not np.array_equal(c, base):
                rep.violations.append(f"{rec.id}: zero writhe but u=0 and u={u} differ")
    return rep


def load_reference_marks(path: str | Path | None = None) -> dict[str, tuple[bool, bool]]:
    """Checkmark cells (weak column, strong column) of the published tables."""
    path = Path(path) if path else Path(str(resources.files("dwlink") / "data" / "reference_marks.tsv"))
    marks = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            link_id, w, s = line.split("\t")
            marks[link_id] = (w == "1", s == "1")
    return marks


def _marks(r: ClassificationResult) -> tuple[bool, bool]:
    # the tables tick "weakly" only when the link is not also strong
    return r.weak_only, r.strong


def compare_with_reference(results: Iterable[ClassificationResult], marks: dict[str, tuple[bool, bool]] | None = None) -> list[str]:
    marks = marks if marks is not None else load_reference_marks()
    out = []
    for r in results:
        if r.id not in marks:
            out.append(f"{r.id}: not in reference tables")
        elif _marks(r) != marks[r.id]:
            out.append(f"{r.id}: computed (weak, strong) marks {_marks(r)} vs reference {marks[r.id]}")
    return out


def report_tables(results: Sequence[ClassificationResult], records: Sequence[LinkRecord], fmt: str = "markdown") -> str:
    words = {r.id: r.braidword for r in records}
    comps = {r.id: r.components for r in records}
    sections = [("Knots", 1), ("Two-component links", 2), ("Three-component links", 3)]
    tick = "✓" if fmt == "markdown" else "1"
    blank = "" if fmt == "markdown" else "0"
    out = []
    for title, c in sections:
        rows = [r for r in results if comps.get(r.id) == c]
        if not rows:
            continue
        if fmt == "markdown":
            out += [f"### {title}", "", "| id | braidword | weakly | strongly | all equal |", "|---|---|:-:|:-:|:-:|"]
            for r in rows:
                w, s = _marks(r)
                out.append(f"| {r.id} | {words[r.id]} | {tick if w else blank} | {tick if s else blank} | {tick if r.all_equal else blank} |")
            out.append("")
        elif fmt == "tsv":
            out.append(f"# {title}\nid\tbraidword\tweakly\tstrongly\tall_equal")
            for r in rows:
                w, s = _marks(r)
                out.append("\t".join([r.id, words[r.id], tick if w else blank, tick if s else blank, tick if r.all_equal else blank]))
        else:
            raise ValueError(f"unknown format {fmt!r}")
    return "\n".join(out) + "\n"
