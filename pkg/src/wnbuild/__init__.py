"""Wordnet construction from a source wordnet skeleton plus bilingual and
monolingual dictionaries."""

from wnbuild.errors import (
    ConfigError,
    DependencyError,
    EvaluationError,
    InputError,
    WordNetLoadError,
)
from wnbuild.graph import WordNetGraph, conceptual_distance, depth, load_wordnet, structural_relation

__all__ = [
    "ConfigError",
    "DependencyError",
    "EvaluationError",
    "InputError",
    "WordNetLoadError",
    "WordNetGraph",
    "conceptual_distance",
    "depth",
    "load_wordnet",
    "structural_relation",
]
