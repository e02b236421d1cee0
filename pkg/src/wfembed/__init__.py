"""Embedding provably well-founded strict partial orders into ordinals below epsilon-zero.

Pipeline: an :mod:`~wfembed.order` with a rank function is turned into an
infinitary derivation witness (:mod:`~wfembed.synthesis`), nodes and ordinals
are read off it (:mod:`~wfembed.extraction`), and the embedding ``f`` and its
linear extension are computed and checked (:mod:`~wfembed.embedding`).
"""
from .ordinal import OMEGA, ONE, ZERO, Ordinal, compare, natural_sum, omega_power, parse, to_str
from .order import OrderSpec, builtin, from_edges, load_order_file, rank_of, validate
from .derivation import DerivationTree, NodeData, RuleTag, check_node, check_truncated, node
from .synthesis import synth_tree, synth_tree_with_reps
from .extraction import ExtractionRecord, Extractor, extract, verify_lemma1
from .embedding import (
    EmbeddingTable,
    alpha1_bound,
    f_bruteforce,
    f_dp,
    lt_prime,
    verify_extension,
    verify_theorem,
)

__version__ = "0.1.0"
