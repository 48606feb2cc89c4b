"""Incidence structure of cosets in finite loops."""
from .bolenum import EnumConfig, Enumeration, OrbitSummary, build_context, enumerate_orbits, run as enumerate_bol_orbits
from .catalog import catalog, names
from .cosets import coset_family, find_partition, semilattice, semilattices_isomorphic
from .designs import IncidenceStructure, design_params, embed_subloop, extract_design, realize_design
from .errors import LoopError, ParseError, ValidationError
from .io import RunReport, load_loop, parse_design, parse_loop
from .loop import LoopTable, Subloop, subloop, validate
from .orbits import relative_orbits
from .properties import check_properties

__all__ = [
    "EnumConfig", "Enumeration", "OrbitSummary", "build_context", "enumerate_orbits", "enumerate_bol_orbits",
    "catalog", "names",
    "coset_family", "find_partition", "semilattice", "semilattices_isomorphic",
    "IncidenceStructure", "design_params", "embed_subloop", "extract_design", "realize_design",
    "LoopError", "ParseError", "ValidationError",
    "RunReport", "load_loop", "parse_design", "parse_loop",
    "LoopTable", "Subloop", "subloop", "validate",
    "relative_orbits", "check_properties",
]
