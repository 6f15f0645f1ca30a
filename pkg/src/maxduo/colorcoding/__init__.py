"""Colour-coding decision algorithm."""
from .dp import (
    STAR,
    Blocks,
    ColorAssignment,
    DPState,
    Mode,
    block_occurrence_check,
    colours_for,
    dp_decide,
    extract_witness,
    occurrence_blocks,
)
from .families import (
    canonical_colorings,
    count_canonical,
    load_family,
    miss_probability,
    required_trials,
    success_probability,
    write_family,
)
from .solve import CCResult, solve

__all__ = [
    "STAR",
    "Blocks",
    "CCResult",
    "ColorAssignment",
    "DPState",
    "Mode",
    "block_occurrence_check",
    "canonical_colorings",
    "colours_for",
    "count_canonical",
    "dp_decide",
    "extract_witness",
    "load_family",
    "miss_probability",
    "occurrence_blocks",
    "required_trials",
    "solve",
    "success_probability",
    "write_family",
]
