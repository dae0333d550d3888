"""Per-sense scoring pipeline shared by the CLI and the evaluation tables.

Scoring every sense once against all eight heuristics yields a reusable
vote record per sense; any subset of heuristics can then be combined into
decisions without recomputation (used heavily by the ablation tables).
"""

from __future__ import annotations

from dataclasses import dataclass

from .cooccurrence import CooccurrenceLexicon
from .dictionary import Dictionary, DictionarySense, genus_candidates
from .ensemble import Decision, combine, decide, normalize, sense_key_order
from .heuristics import (
    HeuristicConfig,
    ScoreAssignment,
    h1_monosemous,
    h2_sense_ordering,
    h3_semantic_domain,
    h4_word_matching,
    h5_simple_cooccurrence,
    h6_cooccurrence_vectors,
    h7_semantic_vectors,
    h8_conceptual_distance,
)
from .hierarchy import ConceptHierarchy
from .links import LinkTable
from .salience import SalienceTable

ALL_HEURISTICS = frozenset(range(1, 9))


class PipelineError(RuntimeError):
    pass


@dataclass(frozen=True)
class Resources:
    """Derived lexical knowledge; optional pieces gate which heuristics run."""

    lexicon: CooccurrenceLexicon | None = None
    links: LinkTable | None = None
    hierarchy: ConceptHierarchy | None = None
    salience: SalienceTable | None = None


def check_resources(resources: Resources, heuristics: frozenset[int]) -> None:
    missing = []
    if heuristics & {5, 6} and resources.lexicon is None:
        missing.append("cooccurrence lexicon (heuristics 5/6)")
    if 7 in heuristics and resources.salience is None:
        missing.append("salience table (heuristic 7)")
    if 8 in heuristics and (resources.links is None or resources.hierarchy is None):
        missing.append("link table and hierarchy (heuristic 8)")
    if missing:
        raise PipelineError("missing resources: " + "; ".join(missing))


def parse_heuristic_mask(text: str) -> frozenset[int]:
    """Parse masks like `1,2,4-8` into a heuristic-id set."""
    ids: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, _, hi = part.partition("-")
            ids.update(range(int(lo), int(hi) + 1))
        else:
            ids.add(int(part))
    if not ids or not ids <= ALL_HEURISTICS:
        raise ValueError(f"heuristic mask {text!r} must select ids within 1..8")
    return frozenset(ids)


def score_sense(
    d: Dictionary,
    resources: Resources,
    config: HeuristicConfig,
    sense: DictionarySense,
    candidates: list[DictionarySense],
    heuristics: frozenset[int] = ALL_HEURISTICS,
) -> list[ScoreAssignment]:
    assignments = []
    if 1 in heuristics:
        assignments.append(h1_monosemous(candidates))
    if 2 in heuristics:
        assignments.append(h2_sense_ordering(candidates, config.h2_decay))
    if 3 in heuristics:
        assignments.append(h3_semantic_domain(sense, candidates))
    if 4 in heuristics:
        assignments.append(h4_word_matching(d, sense, candidates, config.match_variant))
    if 5 in heuristics:
        assignments.append(
            h5_simple_cooccurrence(resources.lexicon, d, sense, candidates, config.scheme)
        )
    if 6 in heuristics:
        assignments.append(
            h6_cooccurrence_vectors(
                resources.lexicon, d, sense, candidates, config.scheme, config.similarity
            )
        )
    if 7 in heuristics:
        assignments.append(
            h7_semantic_vectors(resources.salience, d, sense, candidates, config.similarity)
        )
    if 8 in heuristics:
        assignments.append(
            h8_conceptual_distance(resources.hierarchy, resources.links, sense, candidates)
        )
    return assignments


@dataclass(frozen=True)
class SenseVotes:
    """All eight heuristics' normalized votes for one sense's candidate pool."""

    sense_key: str
    candidates: tuple[str, ...]
    votes: dict[int, dict[str, float]]  # absent id = heuristic abstained

    def decision(self, heuristics: frozenset[int] = ALL_HEURISTICS) -> Decision:
        assignments = [
            ScoreAssignment(hid, dict(scores), False)
            for hid, scores in self.votes.items()
            if hid in heuristics
        ]
        table = combine(assignments, list(self.candidates))
        return decide(table, self.sense_key)


def eligible_senses(d: Dictionary) -> list[tuple[DictionarySense, list[DictionarySense]]]:
    """Noun (or untagged) senses with at least one genus candidate, in key order."""
    out = []
    ordered = sorted(d.senses, key=lambda s: (s.headword, s.sense_no))
    for sense in ordered:
        if sense.pos is not None and sense.pos != "n":
            continue
        candidates = genus_candidates(d, sense)
        if candidates:
            out.append((sense, candidates))
    return out


def score_dictionary(
    d: Dictionary,
    resources: Resources,
    config: HeuristicConfig,
    heuristics: frozenset[int] = ALL_HEURISTICS,
) -> list[SenseVotes]:
    check_resources(resources, heuristics)
    records = []
    for sense, candidates in eligible_senses(d):
        assignments = score_sense(d, resources, config, sense, candidates, heuristics)
        votes = {}
        for assignment in assignments:
            normalized = normalize(assignment)
            if normalized:
                votes[assignment.heuristic_id] = normalized
        records.append(
            SenseVotes(
                sense_key=sense.key,
                candidates=tuple(c.key for c in candidates),
                votes=votes,
            )
        )
    return records


def disambiguate(
    d: Dictionary,
    resources: Resources,
    config: HeuristicConfig,
    heuristics: frozenset[int] = ALL_HEURISTICS,
) -> list[Decision]:
    """One decision per eligible sense (abstained when no heuristic voted)."""
    records = score_dictionary(d, resources, config, heuristics)
    return [record.decision(heuristics) for record in records]
