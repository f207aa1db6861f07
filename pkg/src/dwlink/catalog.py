"""Link catalog: tab-separated ``id  braidword  strands`` lines, ``#`` comments."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from pathlib import Path

from .braids import BraidParseError, BraidWord, components, parse_braidword, writhe

__all__ = ["LinkRecord", "CatalogError", "load_catalog", "default_catalog_path", "find_record"]


class CatalogError(ValueError):
    pass


_ID_RE = re.compile(r"^\d+(?:\^(\d+))?_[0-9n]+(?:\+-)?$")


@dataclass(frozen=True)
class LinkRecord:
    id: str
    braidword: str
    strands: int

    @cached_property
    def braid(self) -> BraidWord:
        return parse_braidword(self.braidword, self.strands)

    @property
    def components(self) -> int:
        return len(components(self.braid))

    @property
    def writhe(self) -> int:
        return writhe(self.braid)

    @property
    def expected_components(self) -> int:
        m = _ID_RE.match(self.id)
        return int(m.group(1)) if m and m.group(1) else 1

    @property
    def is_knot(self) -> bool:
        return self.components == 1


def default_catalog_path() -> Path:
    return Path(str(resources.files("dwlink") / "data" / "catalog.tsv"))


def load_catalog(path: str | Path | None = None) -> list[LinkRecord]:
    path = Path(path) if path is not None else default_catalog_path()
    records: list[LinkRecord] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = [f.strip() for f in line.split("\t")]
            where = f"{path}:{lineno}"
            if len(fields) != 3:
                raise CatalogError(f"{where}: expected 3 tab-separated fields, got {len(fields)}")
            link_id, word, strands_s = fields
            if not _ID_RE.match(link_id):
                raise CatalogError(f"{where}: malformed link id {link_id!r}")
            if link_id in seen:
                raise CatalogError(f"{where}: duplicate id {link_id!r}")
            try:
                strands = int(strands_s)
            except ValueError:
                raise CatalogError(f"{where}: strand count {strands_s!r} is not an integer") from None
            if strands not in (2, 3):
                raise CatalogError(f"{where}: strand count must be 2 or 3, got {strands}")
            try:
                rec = LinkRecord(link_id, word, strands)
                rec.braid
            except (BraidParseError, ValueError) as exc:
                raise CatalogError(f"{where}: {exc}") from None
            if rec.components != rec.expected_components:
                raise CatalogError(
                    f"{where}: {link_id} closes to {rec.components} components, id says {rec.expected_components}"
                )
            seen.add(link_id)
            records.append(rec)
    return records


def find_record(records: list[LinkRecord], link_id: str) -> LinkRecord:
    for r in records:
        if r.id == link_id:
            return r
    raise KeyError(f"no catalog entry {link_id!r}")
