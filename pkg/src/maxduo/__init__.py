"""Maximum duo preservation between related strings.

Exact oracle, duo-graph matching bound, colour-coding decision procedure
and a polynomial kernel, plus a seeded generator and a CLI (``maxduo``).
"""
from ._accel import BACKEND, HAVE_NUMBA
from .core import (
    Answer,
    Duo,
    DuoRun,
    Instance,
    PartialMapping,
    RelatedPair,
    Side,
    check_mapping,
    count_preserved,
    intern_pair,
    is_preservable,
    maximal_runs,
    preserved_duos,
    validate_related,
)
from .errors import MaxDuoError

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "HAVE_NUMBA",
    "Answer",
    "Duo",
    "DuoRun",
    "Instance",
    "MaxDuoError",
    "PartialMapping",
    "RelatedPair",
    "Side",
    "check_mapping",
    "count_preserved",
    "intern_pair",
    "is_preservable",
    "maximal_runs",
    "preserved_duos",
    "validate_related",
]
