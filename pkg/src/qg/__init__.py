"""Finite quasigroup analysis: classes, congruences, morphisms and structure theorems."""
from .core import (
    Quasigroup,
    load_file,
    load_quasigroup,
    local_map,
    parastrophe,
    translation,
)
from .errors import QGError

__all__ = [
    "Quasigroup",
    "QGError",
    "load_file",
    "load_quasigroup",
    "local_map",
    "parastrophe",
    "translation",
]
