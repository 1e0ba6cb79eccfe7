"""Maximal co-occurrence nonoverlapping sequential rule mining."""
from ._kernels import BACKEND
from .candgen import FrequentItems, FrequentPairs, Strategy, extend, frequent_items, frequent_pairs
from .errors import FormatError, InputError, MiningError, ParameterError
from .evaluation import RecommendationScore, recommend_items, score_recommendations, split_db
from .matcher import (
    db_support,
    dbi_occurrences,
    dbi_support,
    oracle_all_occurrences,
    oracle_max_nonoverlapping,
    oracle_support,
)
from .miner import MiningReport, Rule, mine_cop, mine_mcor, oracle_all_rules, oracle_mine_mcor
from .prep import PrepResult, sdb_filt
from .seqdb import (
    Format,
    GapConstraint,
    IndexedDatabase,
    IndexedSequence,
    Pattern,
    Sequence,
    SequenceDatabase,
    alphabet_of,
    build_index,
    parse_database,
)

__version__ = "0.1.0"
