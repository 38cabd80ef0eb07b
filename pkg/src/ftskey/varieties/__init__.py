"""Key varieties: generators, coordinate dictionaries and their checks."""

from .generators import (
    CoordinateDictionary,
    UnknownVariety,
    VarietyId,
    dictionary,
    fts_of,
    generate,
    specialized_cl10,
)
