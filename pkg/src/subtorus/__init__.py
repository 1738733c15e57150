"""Two-generator subgroups of mapping tori of injective free group endomorphisms."""

from __future__ import annotations

from .classify import Bounds, Classification, Refinement, Verdict, classify, verify_witness
from .endo import Endomorphism, parse_endomorphism
from .errors import (
    InputError,
    NonInjective,
    NotMember,
    ResourceExceeded,
    SubtorusError,
    VerificationFailed,
)
from .present import Presentation, first_betti, parse_presentation, sub_torus_presentation
from .stallings import AGraph, contains, fold, from_words, is_cover, rank
from .torus import MappingTorus, NormalForm
from .words import Basis, Word

__version__ = "0.1.0"

__all__ = [
    "AGraph", "Basis", "Bounds", "Classification", "Endomorphism", "InputError",
    "MappingTorus", "NonInjective", "NormalForm", "NotMember", "Presentation",
    "Refinement", "ResourceExceeded", "SubtorusError", "Verdict", "VerificationFailed",
    "Word", "classify", "contains", "first_betti", "fold", "from_words", "is_cover",
    "parse_endomorphism", "parse_presentation", "rank", "sub_torus_presentation",
    "verify_witness",
]
