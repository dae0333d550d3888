"""Vote normalization, flat summing, decision taking, taxonomy assembly.

Every non-abstaining heuristic's raw weights are rescaled so its best
candidate gets exactly 1; the rescaled votes are summed per candidate in
fixed heuristic order (so the result is independent of the order in which
assignments arrive) and the argmax set wins. Ties survive into the
decision; a single hypernym edge is only forced at taxonomy-emission time.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .dictionary import Dictionary, parse_sense_key
from .heuristics import ScoreAssignment

N_HEURISTICS = 8


def normalize(assignment: ScoreAssignment) -> dict[str, float]:
    """Divide every raw score by the maximum; empty when there is no signal."""
    if assignment.abstained or not assignment.scores:
        return {}
    top = max(assignment.scores.values())
    if top <= 0.0:
        return {}
    return {key: value / top for key, value in assignment.scores.items()}


@dataclass(frozen=True)
class VoteTable:
    """Normalized votes per heuristic plus their per-candidate sum."""

    candidates: tuple[str, ...]
    votes: dict[int, dict[str, float]]  # heuristic id -> normalized scores
    combined: dict[str, float]


def combine(assignments: list[ScoreAssignment], candidates: list[str]) -> VoteTable:
    """Sum normalized votes per candidate, in heuristic-id order."""
    candidate_set = set(candidates)
    votes: dict[int, dict[str, float]] = {}
    for assignment in assignments:
        unknown = set(assignment.scores) - candidate_set
        if unknown:
            raise ValueError(
                f"heuristic {assignment.heuristic_id} scored unknown candidates: "
                f"{sorted(unknown)}"
            )
        normalized = normalize(assignment)
        if normalized:
            votes[assignment.heuristic_id] = normalized
    combined = {c: 0.0 for c in candidates}
    for hid in sorted(votes):
        for c in candidates:
            combined[c] += votes[hid].get(c, 0.0)
    return VoteTable(candidates=tuple(candidates), votes=votes, combined=combined)


def _candidate_order(key: str) -> tuple[int, str]:
    headword, sense_no = parse_sense_key(key)
    return (sense_no, headword)


def sense_key_order(key: str) -> tuple[str, int]:
    headword, sense_no = parse_sense_key(key)
    return (headword, sense_no)


@dataclass(frozen=True)
class Decision:
    """Outcome for one hyponym sense: the argmax candidate set (or abstention)."""

    sense_key: str
    candidates: tuple[str, ...]
    chosen: tuple[str, ...]
    combined_score: float
    runner_up: str | None
    heuristic_votes: dict[int, dict[str, float]]

    @property
    def abstained(self) -> bool:
        return not self.chosen

    @property
    def n_candidates(self) -> int:
        return len(self.candidates)

    @property
    def primary(self) -> str | None:
        """Deterministic single representative: lowest sense number wins ties."""
        if not self.chosen:
            return None
        return min(self.chosen, key=_candidate_order)


def decide(table: VoteTable, sense_key: str) -> Decision:
    """Pick the argmax set of the combined votes; abstain when nobody voted."""
    if not table.candidates:
        raise ValueError(f"{sense_key}: cannot decide over an empty candidate set")
    if not table.votes:
        return Decision(
            sense_key=sense_key,
            candidates=table.candidates,
            chosen=(),
            combined_score=0.0,
            runner_up=None,
            heuristic_votes={},
        )
    best = max(table.combined.values())
    chosen = tuple(c for c in table.candidates if table.combined[c] == best)
    rest = [c for c in table.candidates if c not in chosen]
    runner_up = max(rest, key=lambda c: table.combined[c]) if rest else None
    return Decision(
        sense_key=sense_key,
        candidates=table.candidates,
        chosen=chosen,
        combined_score=best,
        runner_up=runner_up,
        heuristic_votes=table.votes,
    )


@dataclass(frozen=True)
class Taxonomy:
    edges: dict[str, str]  # hyponym sense key -> hypernym sense key
    cycles: list[list[str]]


def build_taxonomy(d: Dictionary, decisions: list[Decision]) -> Taxonomy:
    """One edge per decided sense (ties to the lowest sense number); cycles
    are detected and reported, never silently dropped."""
    edges: dict[str, str] = {}
    for decision in sorted(decisions, key=lambda dec: sense_key_order(dec.sense_key)):
        if decision.abstained:
            continue
        edges[decision.sense_key] = decision.primary

    cycles: list[list[str]] = []
    state: dict[str, int] = {}  # 1 = on current walk, 2 = finished
    for start in sorted(edges, key=sense_key_order):
        if state.get(start):
            continue
        walk: list[str] = []
        position: dict[str, int] = {}
        node = start
        while node is not None and node in edges and state.get(node) != 2:
            if node in position:
                cycles.append(walk[position[node]:])
                break
            position[node] = len(walk)
            walk.append(node)
            state[node] = 1
            node = edges.get(node)
        for visited in walk:
            state[visited] = 2
    return Taxonomy(edges=edges, cycles=cycles)


# ---------------------------------------------------------------------------
# Text serialization (decisions and taxonomy files)
# ---------------------------------------------------------------------------

def format_decision_line(decision: Decision) -> str:
    """`headword TAB sense_no TAB chosen TAB combined TAB 8 vote fields`.

    Vote fields carry each heuristic's normalized vote for the primary
    chosen candidate, `-` when the heuristic abstained.
    """
    headword, sense_no = parse_sense_key(decision.sense_key)
    if decision.abstained:
        chosen = "-"
        votes = ["-"] * N_HEURISTICS
    else:
        chosen = ",".join(sorted(decision.chosen, key=_candidate_order))
        primary = decision.primary
        votes = [
            f"{decision.heuristic_votes[hid].get(primary, 0.0):.6f}"
            if hid in decision.heuristic_votes
            else "-"
            for hid in range(1, N_HEURISTICS + 1)
        ]
    return "\t".join(
        [
            headword,
            str(sense_no),
            chosen,
            f"{decision.combined_score:.6f}",
            ";".join(votes),
        ]
    )


def save_decisions(decisions: list[Decision], path: str | Path) -> None:
    ordered = sorted(decisions, key=lambda d: sense_key_order(d.sense_key))
    lines = [format_decision_line(dec) for dec in ordered]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def save_taxonomy(taxonomy: Taxonomy, path: str | Path) -> None:
    lines = [
        f"{hypo}\t{taxonomy.edges[hypo]}"
        for hypo in sorted(taxonomy.edges, key=sense_key_order)
    ]
    lines.append("#cycles")
    for cycle in taxonomy.cycles:
        lines.append(" -> ".join(cycle + [cycle[0]]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
