"""Kazhdan-Lusztig combinatorics and homological invariants of category O."""

from .cells import CellData
from .coxeter import CoxeterSystem, Element, GeneratorSubset, build_system, cached_system
from .errors import (
    ConventionError,
    FixtureError,
    FixtureMissing,
    HomcatError,
    InfiniteGroup,
    MalformedMatrix,
    NotACosetRepresentative,
    SystemMismatch,
)
from .hecke import HeckeAlgebra, HeckeElt
from .homological import HomologicalOracle, StructuralKind, oracle_for
from .laurent import NEG_INF, LaurentPoly, format_laurent, parse_laurent
from .results import GradedMultiplicityTable, PdResult, Provenance, RegularityReport

__version__ = "0.1.0"

__all__ = [
    "CellData",
    "ConventionError",
    "CoxeterSystem",
    "Element",
    "FixtureError",
    "FixtureMissing",
    "GeneratorSubset",
    "GradedMultiplicityTable",
    "HeckeAlgebra",
    "HeckeElt",
    "HomcatError",
    "HomologicalOracle",
    "InfiniteGroup",
    "LaurentPoly",
    "MalformedMatrix",
    "NEG_INF",
    "NotACosetRepresentative",
    "PdResult",
    "Provenance",
    "RegularityReport",
    "StructuralKind",
    "SystemMismatch",
    "build_system",
    "cached_system",
    "format_laurent",
    "oracle_for",
    "parse_laurent",
]
