"""Concept hierarchy: a WordNet-like DAG tagged with 25 semantic files.

Distance between concepts is the minimum over connecting paths (hypernym
links taken as undirected) of the sum of 1/depth over every concept on the
path, endpoints included. Roots have depth 1, so the sum is always finite.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from pathlib import Path

N_SEMANTIC_FILES = 25


class HierarchyError(ValueError):
    """Raised for unresolved parents, cycles, or out-of-range semantic files."""


@dataclass(frozen=True, slots=True)
class Concept:
    id: str
    semantic_file: int
    parents: tuple[str, ...]
    gloss_words: tuple[str, ...] | None = None


class ConceptHierarchy:
    """Validated immutable DAG with precomputed depths and adjacency."""

    def __init__(self, concepts: list[Concept]):
        self.concepts: dict[str, Concept] = {}
        for c in concepts:
            if c.id in self.concepts:
                raise HierarchyError(f"duplicate concept id {c.id!r}")
            if not 0 <= c.semantic_file < N_SEMANTIC_FILES:
                raise HierarchyError(
                    f"concept {c.id!r}: semantic file {c.semantic_file} out of range 0..24"
                )
            if c.id in c.parents:
                raise HierarchyError(f"concept {c.id!r} is its own parent")
            self.concepts[c.id] = c
        for c in concepts:
            for p in c.parents:
                if p not in self.concepts:
                    raise HierarchyError(f"concept {c.id!r}: unknown parent {p!r}")

        self.roots = sorted(c.id for c in concepts if not c.parents)
        if concepts and not self.roots:
            raise HierarchyError("hierarchy has no root concept")

        # undirected adjacency, sorted for deterministic traversal
        nbrs: dict[str, set[str]] = {c.id: set() for c in concepts}
        for c in concepts:
            for p in c.parents:
                nbrs[c.id].add(p)
                nbrs[p].add(c.id)
        self._adjacent = {cid: sorted(ns) for cid, ns in nbrs.items()}

        self._depth = self._compute_depths()

    def _compute_depths(self) -> dict[str, int]:
        # Kahn over child links; doubles as the acyclicity check.
        children: dict[str, list[str]] = {cid: [] for cid in self.concepts}
        pending = {cid: len(c.parents) for cid, c in self.concepts.items()}
        for c in self.concepts.values():
            for p in c.parents:
                children[p].append(c.id)
        depth = {}
        frontier = list(self.roots)
        for r in frontier:
            depth[r] = 1
        seen = 0
        while frontier:
            cid = frontier.pop()
            seen += 1
            for child in children[cid]:
                d = depth[cid] + 1
                if child not in depth or d < depth[child]:
                    depth[child] = d
                pending[child] -= 1
                if pending[child] == 0:
                    frontier.append(child)
        if seen != len(self.concepts):
            raise HierarchyError("hierarchy contains a cycle")
        return depth

    def __contains__(self, concept_id: str) -> bool:
        return concept_id in self.concepts

    def _require(self, concept_id: str) -> None:
        if concept_id not in self.concepts:
            raise KeyError(f"unknown concept id {concept_id!r}")

    def semantic_file(self, concept_id: str) -> int:
        self._require(concept_id)
        return self.concepts[concept_id].semantic_file

    def depth(self, concept_id: str) -> int:
        """1 + length of the shortest ancestor chain to any root; roots are 1."""
        self._require(concept_id)
        return self._depth[concept_id]

    def shortest_path(self, c1: str, c2: str) -> list[str] | None:
        """Fewest-hop undirected path, lexicographically smallest on ties."""
        self._require(c1)
        self._require(c2)
        if c1 == c2:
            return [c1]
        hops = {c2: 0}
        frontier = [c2]
        while frontier:
            nxt = []
            for cid in frontier:
                for nb in self._adjacent[cid]:
                    if nb not in hops:
                        hops[nb] = hops[cid] + 1
                        nxt.append(nb)
            frontier = nxt
        if c1 not in hops:
            return None
        path = [c1]
        cur = c1
        while cur != c2:
            cur = min(nb for nb in self._adjacent[cur] if hops.get(nb, -1) == hops[cur] - 1)
            path.append(cur)
        return path

    def concept_distance(self, c1: str, c2: str) -> float | None:
        """Minimum over undirected paths of sum(1/depth) including endpoints."""
        self._require(c1)
        self._require(c2)
        return self.min_distance([c1], [c2])

    def min_distance(self, sources: list[str], targets: list[str]) -> float | None:
        """Smallest depth-weighted path cost from any source to any target.

        Multi-source Dijkstra with node costs 1/depth; the start node's own
        cost is part of the path sum.
        """
        target_set = {t for t in targets if t in self.concepts}
        if not target_set:
            return None
        dist: dict[str, float] = {}
        heap: list[tuple[float, str]] = []
        for s in sorted(set(sources)):
            if s not in self.concepts:
                continue
            d = 1.0 / self._depth[s]
            if d < dist.get(s, float("inf")):
                dist[s] = d
                heapq.heappush(heap, (d, s))
        while heap:
            d, cid = heapq.heappop(heap)
            if d > dist.get(cid, float("inf")):
                continue
            if cid in target_set:
                return d  # settled in nondecreasing order: first target is nearest
            for nb in self._adjacent[cid]:
                nd = d + 1.0 / self._depth[nb]
                if nd < dist.get(nb, float("inf")):
                    dist[nb] = nd
                    heapq.heappush(heap, (nd, nb))
        return None


def word_distance(
    h: ConceptHierarchy, links, w1: str, w2: str
) -> float | None:
    """Minimum concept distance over all linked concept pairs of two words."""
    c1 = links.get(w1)
    c2 = links.get(w2)
    if not c1 or not c2:
        return None
    return h.min_distance(sorted(c1), sorted(c2))


def load_hierarchy(path: str | Path) -> ConceptHierarchy:
    """Read `id TAB semantic_file TAB parent[,parent...]` lines (empty = root)."""
    concepts = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) == 2:  # roots may omit the empty parents field
                fields.append("")
            if len(fields) != 3:
                raise HierarchyError(
                    f"{path}: line {lineno}: expected 3 tab-separated fields"
                )
            cid, sfile, parents = fields
            if not sfile.isdigit():
                raise HierarchyError(
                    f"{path}: line {lineno}: semantic file must be an integer"
                )
            concepts.append(
                Concept(
                    id=cid,
                    semantic_file=int(sfile),
                    parents=tuple(p for p in parents.split(",") if p),
                )
            )
    return ConceptHierarchy(concepts)
