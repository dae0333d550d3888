"""The eight genus-sense scorers.

Each heuristic maps a hyponym sense and its candidate hypernym senses to
raw non-negative weights, or abstains when it has no signal. Raw weights
are normalized and summed by the ensemble module; only the relative
ranking within one candidate pool matters.

 1. monosemous genus        5. simple cooccurrence (pair-weight sum)
 2. entry sense ordering    6. cooccurrence vectors
 3. explicit domain tag     7. semantic (salience) vectors
 4. word matching           8. conceptual distance over the hierarchy
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .cooccurrence import CooccurrenceLexicon, WeightScheme, WindowSpec
from .dictionary import Dictionary, DictionarySense, content_words
from .hierarchy import ConceptHierarchy, N_SEMANTIC_FILES
from .links import LinkTable, semantic_fields
from .salience import SalienceTable

SIMILARITIES = ("dot", "cosine", "euclidean")
MATCH_VARIANTS = ("lemma", "prefix4")
H2_DECAYS = ("inverse_rank",)


@dataclass(frozen=True, slots=True)
class ScoreAssignment:
    """One heuristic's raw weights over a candidate pool; empty iff abstained."""

    heuristic_id: int
    scores: dict[str, float]
    abstained: bool

    @classmethod
    def make(cls, heuristic_id: int, scores: dict[str, float]) -> "ScoreAssignment":
        """Build an assignment, demoting empty or all-zero scores to abstention."""
        for key, value in scores.items():
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(f"heuristic {heuristic_id}: bad score {value!r} for {key}")
        if not scores or max(scores.values()) <= 0.0:
            return cls(heuristic_id, {}, True)
        return cls(heuristic_id, dict(scores), False)

    @classmethod
    def abstain(cls, heuristic_id: int) -> "ScoreAssignment":
        return cls(heuristic_id, {}, True)


@dataclass(frozen=True)
class HeuristicConfig:
    """Tunable parameters; defaults suit a small whole-definition dictionary."""

    window: WindowSpec = WindowSpec.whole()
    scheme: WeightScheme = WeightScheme.ASSOCIATION_RATIO
    similarity: str = "cosine"
    match_variant: str = "lemma"
    h2_decay: str = "inverse_rank"

    def __post_init__(self):
        if self.similarity not in SIMILARITIES:
            raise ValueError(f"similarity must be one of {SIMILARITIES}")
        if self.match_variant not in MATCH_VARIANTS:
            raise ValueError(f"match_variant must be one of {MATCH_VARIANTS}")
        if self.h2_decay not in H2_DECAYS:
            raise ValueError(f"h2_decay must be one of {H2_DECAYS}")

    def to_mapping(self) -> dict[str, str]:
        return {
            "window": str(self.window),
            "scheme": self.scheme.value,
            "similarity": self.similarity,
            "match_variant": self.match_variant,
            "h2_decay": self.h2_decay,
        }

    @classmethod
    def from_mapping(cls, mapping: dict[str, str]) -> "HeuristicConfig":
        kwargs = {}
        if "window" in mapping:
            kwargs["window"] = WindowSpec.parse(mapping["window"])
        if "scheme" in mapping:
            kwargs["scheme"] = WeightScheme(mapping["scheme"])
        for name in ("similarity", "match_variant", "h2_decay"):
            if name in mapping:
                kwargs[name] = mapping[name]
        return cls(**kwargs)

    def save(self, path: str | Path) -> None:
        lines = [f"{k}={v}" for k, v in self.to_mapping().items()]
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _similarity(v1: np.ndarray, v2: np.ndarray, kind: str) -> float:
    if kind == "dot":
        return float(np.dot(v1, v2))
    if kind == "cosine":
        norm = float(np.linalg.norm(v1) * np.linalg.norm(v2))
        return float(np.dot(v1, v2)) / norm if norm > 0.0 else 0.0
    # euclidean distance, inverted so bigger means more similar
    return 1.0 / (1.0 + float(np.linalg.norm(v1 - v2)))


def h1_monosemous(candidates: list[DictionarySense]) -> ScoreAssignment:
    """Attach to the only candidate; abstain on any ambiguity."""
    if len(candidates) != 1:
        return ScoreAssignment.abstain(1)
    return ScoreAssignment.make(1, {candidates[0].key: 1.0})


def h2_sense_ordering(
    candidates: list[DictionarySense], decay: str = "inverse_rank"
) -> ScoreAssignment:
    """First senses come first: score 1/sense_no within each genus entry."""
    if decay not in H2_DECAYS:
        raise ValueError(f"unknown h2 decay {decay!r}")
    return ScoreAssignment.make(2, {c.key: 1.0 / c.sense_no for c in candidates})


def h3_semantic_domain(
    hyponym: DictionarySense, candidates: list[DictionarySense]
) -> ScoreAssignment:
    """Reward candidates sharing the hyponym's explicit domain tag."""
    if hyponym.domain_tag is None:
        return ScoreAssignment.abstain(3)
    scores = {
        c.key: 1.0 if c.domain_tag == hyponym.domain_tag else 0.0 for c in candidates
    }
    return ScoreAssignment.make(3, scores)


def _match_keys(words: list[str], variant: str) -> Counter:
    if variant == "prefix4":
        return Counter(w[:4] for w in words)
    return Counter(words)


def h4_word_matching(
    d: Dictionary,
    hyponym: DictionarySense,
    candidates: list[DictionarySense],
    variant: str = "lemma",
) -> ScoreAssignment:
    """Count content words shared between the two definitions (headwords in)."""
    if variant not in MATCH_VARIANTS:
        raise ValueError(f"unknown match variant {variant!r}")
    own = _match_keys(content_words(d, hyponym, include_headword=True), variant)
    scores = {}
    for cand in candidates:
        other = _match_keys(content_words(d, cand, include_headword=True), variant)
        scores[cand.key] = float(sum((own & other).values()))
    return ScoreAssignment.make(4, scores)


def h5_simple_cooccurrence(
    lex: CooccurrenceLexicon,
    d: Dictionary,
    hyponym: DictionarySense,
    candidates: list[DictionarySense],
    scheme: WeightScheme,
) -> ScoreAssignment:
    """Sum pair weights over the cross product of the two definitions' words."""
    scheme = WeightScheme(scheme)
    enc = lex.encoded()
    data = enc.weights(scheme)
    own = enc.encode(content_words(d, hyponym, include_headword=True))
    scores = {}
    for cand in candidates:
        other = enc.encode(content_words(d, cand, include_headword=True))
        scores[cand.key] = float(
            _kernels.pair_sum(enc.indptr, enc.cols, data, own, other)
        )
    return ScoreAssignment.make(5, scores)


def _definition_vector(enc, data, tokens) -> np.ndarray:
    return _kernels.accumulate_rows(enc.indptr, enc.cols, data, tokens, len(enc.vocab))


def h6_cooccurrence_vectors(
    lex: CooccurrenceLexicon,
    d: Dictionary,
    hyponym: DictionarySense,
    candidates: list[DictionarySense],
    scheme: WeightScheme,
    similarity: str = "cosine",
) -> ScoreAssignment:
    """Compare summed cooccurrence-information vectors of the definitions."""
    scheme = WeightScheme(scheme)
    enc = lex.encoded()
    data = enc.weights(scheme)
    own = _definition_vector(enc, data, enc.encode(content_words(d, hyponym, True)))
    if not np.any(own):
        return ScoreAssignment.abstain(6)
    scores = {}
    for cand in candidates:
        vec = _definition_vector(enc, data, enc.encode(content_words(d, cand, True)))
        if not np.any(vec):
            continue
        scores[cand.key] = _similarity(own, vec, similarity)
    return ScoreAssignment.make(6, scores)


def _semantic_vector(
    table: SalienceTable, d: Dictionary, sense: DictionarySense
) -> np.ndarray:
    vec = np.zeros(N_SEMANTIC_FILES, dtype=np.float64)
    for w in content_words(d, sense, include_headword=True):
        swv = table.get(w)
        if swv is not None:
            vec += swv
    return vec


def h7_semantic_vectors(
    table: SalienceTable,
    d: Dictionary,
    hyponym: DictionarySense,
    candidates: list[DictionarySense],
    similarity: str = "cosine",
) -> ScoreAssignment:
    """Compare 25-slot salience vectors summed over the definitions' words."""
    own = _semantic_vector(table, d, hyponym)
    if not np.any(own):
        return ScoreAssignment.abstain(7)
    scores = {}
    for cand in candidates:
        vec = _semantic_vector(table, d, cand)
        if not np.any(vec):
            continue
        scores[cand.key] = _similarity(own, vec, similarity)
    return ScoreAssignment.make(7, scores)


def candidate_semantic_files(
    links: LinkTable, h: ConceptHierarchy, candidate: DictionarySense
) -> set[int]:
    """Files suggested by the candidate sense's own genus lemmas.

    This is the sense-to-file assignment that narrows the genus word's
    concepts per candidate: the senses of one genus entry share a headword,
    but each carries its own genus lemma pointing into a different part of
    the hierarchy. Empty when none of its genus lemmas is linked.
    """
    files: set[int] = set()
    for lemma in candidate.genus_lemmas:
        files.update(semantic_fields(links, h, lemma))
    return files


def h8_conceptual_distance(
    h: ConceptHierarchy,
    links: LinkTable,
    hyponym: DictionarySense,
    candidates: list[DictionarySense],
) -> ScoreAssignment:
    """Score candidates by hierarchy closeness of hyponym headword and genus.

    The genus word's concept set is restricted, per candidate, to concepts
    whose semantic file matches the candidate's own genus lemmas (falling
    back to all linked concepts when that leaves nothing), then the
    depth-weighted distance is inverted into a similarity.
    """
    sources = links.get(hyponym.headword.lower())
    if not sources:
        return ScoreAssignment.abstain(8)
    source_list = sorted(sources)
    scores = {}
    for cand in candidates:
        targets = links.get(cand.headword.lower())
        if not targets:
            continue
        files = candidate_semantic_files(links, h, cand)
        allowed = [cid for cid in sorted(targets) if h.semantic_file(cid) in files]
        if not allowed:
            allowed = sorted(targets)
        dist = h.min_distance(source_list, allowed)
        if dist is None:
            continue
        scores[cand.key] = 1.0 / (1.0 + dist)
    return ScoreAssignment.make(8, scores)
