"""Word-to-concept link table built through a bilingual lexicon.

Each source-language word is looked up in the bilingual lexicon; every
concept of every English translation becomes a link. Links are noisy by
construction (a translation's concepts need not all fit the source word);
consumers must tolerate implausible links and may only down-weight them.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .hierarchy import ConceptHierarchy


class LinkError(ValueError):
    pass


@dataclass(frozen=True)
class LinkTable:
    links: dict[str, frozenset[str]]

    def get(self, word: str) -> frozenset[str]:
        return self.links.get(word, frozenset())

    def __contains__(self, word: str) -> bool:
        return word in self.links

    def __len__(self) -> int:
        return len(self.links)

    def items(self) -> list[tuple[str, frozenset[str]]]:
        return sorted(self.links.items())


def load_bilingual(path: str | Path) -> dict[str, set[str]]:
    """Read `source_word TAB english_word` lines into a translation map."""
    out: dict[str, set[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2 or not fields[0] or not fields[1]:
                raise LinkError(f"{path}: line {lineno}: expected `source TAB english`")
            out.setdefault(fields[0], set()).add(fields[1])
    return out


def load_english_index(path: str | Path) -> dict[str, set[str]]:
    """Read `english_word TAB concept_id[,concept_id...]` lines."""
    out: dict[str, set[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2 or not fields[0]:
                raise LinkError(
                    f"{path}: line {lineno}: expected `english TAB concept[,concept...]`"
                )
            ids = {c for c in fields[1].split(",") if c}
            if not ids:
                raise LinkError(f"{path}: line {lineno}: empty concept list")
            out.setdefault(fields[0], set()).update(ids)
    return out


def build_links(
    bilingual: dict[str, set[str]],
    h: ConceptHierarchy,
    english_index: dict[str, set[str]],
) -> LinkTable:
    """Union the concepts of every translation of every source word.

    Words with no translation, or whose translations are absent from the
    index, are left out. Every linked concept must resolve in the hierarchy.
    """
    for english, ids in sorted(english_index.items()):
        for cid in sorted(ids):
            if cid not in h:
                raise LinkError(f"english index: {english!r} links unknown concept {cid!r}")
    table: dict[str, frozenset[str]] = {}
    for word in sorted(bilingual):
        concepts: set[str] = set()
        for translation in bilingual[word]:
            concepts.update(english_index.get(translation, ()))
        if concepts:
            table[word] = frozenset(concepts)
    return LinkTable(table)


def semantic_fields(links: LinkTable, h: ConceptHierarchy, word: str) -> set[int]:
    """Semantic files of all concepts linked to the word; empty if unlinked."""
    return {h.semantic_file(cid) for cid in links.get(word)}


def save_links(table: LinkTable, path: str | Path) -> None:
    lines = []
    for word, concepts in table.items():
        lines.extend(f"{word}\t{cid}" for cid in sorted(concepts))
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def load_links(path: str | Path, h: ConceptHierarchy | None = None) -> LinkTable:
    raw: dict[str, set[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise LinkError(f"{path}: line {lineno}: expected `word TAB concept`")
            word, cid = fields
            if h is not None and cid not in h:
                raise LinkError(f"{path}: line {lineno}: unknown concept {cid!r}")
            raw.setdefault(word, set()).add(cid)
    return LinkTable({w: frozenset(cs) for w, cs in sorted(raw.items())})
