"""WordNet-driven sentiment lexicon expansion and lexicon-based document polarity."""

__version__ = "0.1.0"

from .classifier import Label, Thresholds, average_sign, classify, clause_signs, polarity_point, proportions, split_clauses
from .corpus import Document, FrequencyMatrix, count_frequencies, extract_links, filter_sublinks, tokenize
from .errors import (
    ConfigError,
    ContractError,
    FetchError,
    IntegrityError,
    LexpandError,
    LoadError,
    LookupFailure,
    ParseError,
)
from .lexicon import (
    CorpusExpansionConfig,
    ExpansionConfig,
    SeedLexicon,
    expand_by_sweep,
    expand_from_corpus,
    load_lexicon,
    save_lexicon,
    sweep_decision,
)
from .similarity import MeasureKind, lch_measure, path_similarity, word_max_path_similarity, wup_measure
from .taxonomy import ancestor_map, build_graph, depth, least_common_subsumer, shortest_ancestral_distance
from .wndb import PartOfSpeech, SynsetId, load_database, synsets_for_word
