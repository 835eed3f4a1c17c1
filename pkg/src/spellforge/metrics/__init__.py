"""Similarity metrics, tree edit distance, and the script generator."""

from .generator import ELEMENT_POOL, GenConfig, gen_random_script
from .similarity import ComplexityProfile, complexity, component_names, jaccard_components
from .ted import ORACLE_MAX_NODES, ted, ted_oracle
from .tree import LabeledTree, to_tree

__all__ = [
    "ComplexityProfile",
    "ELEMENT_POOL",
    "GenConfig",
    "LabeledTree",
    "ORACLE_MAX_NODES",
    "complexity",
    "component_names",
    "gen_random_script",
    "jaccard_components",
    "ted",
    "ted_oracle",
    "to_tree",
]
