"""Gold-standard scoring: recall/precision/coverage, baseline, ablation.

An item's credit is |chosen ∩ gold| / |chosen| (multi-sense answers earn
partial credit); exact-match and any-match scorers exist behind a flag for
sensitivity checks. Coverage counts answered items, recall divides correct
mass by all items, so recall = precision × coverage by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dictionary import Dictionary, genus_candidates, make_sense_key
from .ensemble import Decision, sense_key_order
from .heuristics import HeuristicConfig
from .pipeline import ALL_HEURISTICS, Resources, score_dictionary

SCOPES = ("all", "polysemous")
CREDIT_MODES = ("partial", "exact", "any")


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class GoldStandard:
    """hyponym sense key -> set of correct candidate keys (may exceed one)."""

    items: dict[str, frozenset[str]]

    def __len__(self) -> int:
        return len(self.items)

    def keys(self) -> list[str]:
        return sorted(self.items, key=sense_key_order)


def load_gold(path: str | Path, d: Dictionary) -> GoldStandard:
    """Read `headword TAB sense_no TAB correct_key[,...]`; keys must resolve."""
    items: dict[str, frozenset[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise EvaluationError(
                    f"{path}: line {lineno}: expected `headword TAB sense_no TAB keys`"
                )
            headword, sense_no, keys = fields
            if not sense_no.isdigit():
                raise EvaluationError(f"{path}: line {lineno}: bad sense number")
            item_key = make_sense_key(headword, int(sense_no))
            correct = frozenset(k for k in keys.split(",") if k)
            if not correct:
                raise EvaluationError(f"{path}: line {lineno}: empty correct-key list")
            for key in [item_key, *correct]:
                try:
                    d.sense(key)
                except KeyError:
                    raise EvaluationError(
                        f"{path}: line {lineno}: unknown sense key {key!r}"
                    ) from None
            if item_key in items:
                raise EvaluationError(f"{path}: line {lineno}: duplicate item {item_key}")
            items[item_key] = correct
    return GoldStandard(items)


@dataclass(frozen=True)
class Metrics:
    recall: float | None
    precision: float | None
    coverage: float | None
    answered: int
    total: int
    correct_mass: float


def _credit(chosen: frozenset[str], gold: frozenset[str], mode: str) -> float:
    if mode == "partial":
        return len(chosen & gold) / len(chosen)
    if mode == "exact":
        return 1.0 if chosen == gold else 0.0
    return 1.0 if chosen & gold else 0.0


def _metrics(answered: int, total: int, correct_mass: float) -> Metrics:
    return Metrics(
        recall=correct_mass / total if total else None,
        precision=correct_mass / answered if answered else None,
        coverage=answered / total if total else None,
        answered=answered,
        total=total,
        correct_mass=correct_mass,
    )


def score(
    decisions: list[Decision],
    gold: GoldStandard,
    scope: str = "all",
    credit: str = "partial",
) -> Metrics:
    """Score decisions against gold. Every decision must have a gold entry and
    every gold item a decision; the polysemous scope drops one-candidate items."""
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {SCOPES}")
    if credit not in CREDIT_MODES:
        raise ValueError(f"credit must be one of {CREDIT_MODES}")
    by_key: dict[str, Decision] = {}
    for decision in decisions:
        if decision.sense_key not in gold.items:
            raise EvaluationError(
                f"decision for {decision.sense_key} has no gold entry (corrupt test set)"
            )
        by_key[decision.sense_key] = decision

    total = 0
    answered = 0
    correct_mass = 0.0
    for key in gold.keys():
        decision = by_key.get(key)
        if decision is None:
            raise EvaluationError(f"gold item {key} has no decision")
        if scope == "polysemous" and decision.n_candidates <= 1:
            continue
        total += 1
        if decision.abstained:
            continue
        answered += 1
        correct_mass += _credit(frozenset(decision.chosen), gold.items[key], credit)
    return _metrics(answered, total, correct_mass)


def _gold_candidates(d: Dictionary, gold: GoldStandard) -> dict[str, list[str]]:
    out = {}
    for key in gold.keys():
        candidates = [c.key for c in genus_candidates(d, d.sense(key))]
        if not candidates:
            raise EvaluationError(f"gold item {key} has no genus candidates")
        out[key] = candidates
    return out


def random_baseline(
    d: Dictionary,
    gold: GoldStandard,
    trials: int = 0,
    seed: int = 0,
    scope: str = "all",
) -> Metrics:
    """Closed-form expected score of uniformly picking one candidate per item.

    `trials`/`seed` drive the optional empirical cross-check only (see
    random_baseline_empirical); the returned metrics are deterministic.
    """
    del trials, seed
    candidates = _gold_candidates(d, gold)
    total = 0
    correct_mass = 0.0
    for key in gold.keys():
        pool = candidates[key]
        if scope == "polysemous" and len(pool) <= 1:
            continue
        total += 1
        correct_mass += len(gold.items[key] & set(pool)) / len(pool)
    return _metrics(total, total, correct_mass)


def random_baseline_empirical(
    d: Dictionary,
    gold: GoldStandard,
    trials: int,
    seed: int = 0,
    scope: str = "all",
) -> float:
    """Mean recall of `trials` seeded uniform-choice runs over the gold set."""
    candidates = _gold_candidates(d, gold)
    pools = []
    for key in gold.keys():
        pool = candidates[key]
        if scope == "polysemous" and len(pool) <= 1:
            continue
        pools.append((pool, gold.items[key]))
    if not pools:
        return 0.0
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(trials):
        for pool, correct in pools:
            if pool[rng.integers(len(pool))] in correct:
                hits += 1
    return hits / (trials * len(pools))


LABELS = ("random", "h1", "h2", "h3", "h4", "h5", "h6", "h7", "h8", "sum")


def heuristic_table(
    d: Dictionary,
    resources: Resources,
    gold: GoldStandard,
    config: HeuristicConfig,
    credit: str = "partial",
) -> dict[str, dict[str, Metrics]]:
    """Per-heuristic, baseline, and combined metrics for both scopes.

    Returns {scope: {label: Metrics}} with labels random, h1..h8, sum.
    """
    records = score_dictionary(d, resources, config)
    gold_records = [r for r in records if r.sense_key in gold.items]
    found = {r.sense_key for r in gold_records}
    missing = [k for k in gold.keys() if k not in found]
    if missing:
        raise EvaluationError(f"gold items without decisions: {missing}")

    table: dict[str, dict[str, Metrics]] = {}
    for scope in SCOPES:
        row: dict[str, Metrics] = {}
        row["random"] = random_baseline(d, gold, scope=scope)
        for hid in sorted(ALL_HEURISTICS):
            decisions = [r.decision(frozenset({hid})) for r in gold_records]
            row[f"h{hid}"] = score(decisions, gold, scope=scope, credit=credit)
        decisions = [r.decision(ALL_HEURISTICS) for r in gold_records]
        row["sum"] = score(decisions, gold, scope=scope, credit=credit)
        table[scope] = row
    return table


def ablation_table(
    d: Dictionary,
    resources: Resources,
    gold: GoldStandard,
    config: HeuristicConfig,
    scope: str = "all",
    credit: str = "partial",
) -> dict[str, Metrics]:
    """Sum metrics with each heuristic removed in turn (plus the full sum)."""
    records = score_dictionary(d, resources, config)
    gold_records = [r for r in records if r.sense_key in gold.items]

    table: dict[str, Metrics] = {}
    decisions = [r.decision(ALL_HEURISTICS) for r in gold_records]
    table["sum"] = score(decisions, gold, scope=scope, credit=credit)
    for hid in sorted(ALL_HEURISTICS):
        mask = ALL_HEURISTICS - {hid}
        decisions = [r.decision(mask) for r in gold_records]
        table[f"-h{hid}"] = score(decisions, gold, scope=scope, credit=credit)
    return table


# ---------------------------------------------------------------------------
# Table rendering: paper-style aligned text and machine-readable TSV
# ---------------------------------------------------------------------------

def _pct(value: float | None) -> str:
    return "-" if value is None else f"{round(value * 100):.0f}%"


def render_text_table(columns: dict[str, Metrics], title: str) -> str:
    names = list(columns)
    widths = [max(len(n), 5) for n in names]
    header = " ".join(n.rjust(w) for n, w in zip(names, widths))
    lines = [title, f"{'':<10} {header}"]
    for metric in ("recall", "precision", "coverage"):
        cells = [
            _pct(getattr(columns[n], metric)).rjust(w) for n, w in zip(names, widths)
        ]
        lines.append(f"{metric:<10} " + " ".join(cells))
    return "\n".join(lines) + "\n"


def render_tsv_table(columns: dict[str, Metrics]) -> str:
    lines = ["label\trecall\tprecision\tcoverage\tanswered\ttotal\tcorrect_mass"]
    for name, m in columns.items():
        cells = [
            name,
            "" if m.recall is None else repr(m.recall),
            "" if m.precision is None else repr(m.precision),
            "" if m.coverage is None else repr(m.coverage),
            str(m.answered),
            str(m.total),
            repr(m.correct_mass),
        ]
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def save_gold(gold: GoldStandard, path: str | Path) -> None:
    lines = []
    for key in gold.keys():
        headword, sense_no = key.rsplit(":", 1)
        lines.append(f"{headword}\t{sense_no}\t{','.join(sorted(gold.items[key]))}")
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
