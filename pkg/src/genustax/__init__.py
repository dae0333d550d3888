"""genustax: genus-sense disambiguation and taxonomy extraction from MRDs.

Eight unsupervised heuristics score the candidate hypernym senses of every
dictionary definition's genus term; their normalized votes are summed into
a decision per sense, yielding a full sense-level taxonomy plus the
evaluation tables (per-heuristic, ablation, random baseline).
"""

from .cooccurrence import (
    CooccurrenceLexicon,
    WeightScheme,
    WindowSpec,
    build_lexicon,
    load_lexicon,
    save_lexicon,
)
from .dictionary import (
    Dictionary,
    DictionarySense,
    DictionaryStats,
    compute_stats,
    content_words,
    genus_candidates,
    load_dictionary,
)
from .ensemble import Decision, Taxonomy, VoteTable, build_taxonomy, combine, decide, normalize
from .evaluation import (
    GoldStandard,
    Metrics,
    ablation_table,
    heuristic_table,
    load_gold,
    random_baseline,
    score,
)
from .heuristics import HeuristicConfig, ScoreAssignment
from .hierarchy import Concept, ConceptHierarchy, load_hierarchy, word_distance
from .links import LinkTable, build_links, semantic_fields
from .pipeline import Resources, disambiguate
from .salience import SalienceTable, build_salience

__version__ = "0.1.0"
