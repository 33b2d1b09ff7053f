"""Exact integral and fractional simplicial volume of admissible complexes."""
from .chains import (
    BIPYRAMID, GAP_DIGRAPH, HEXAGON, AdmissibleComplex, Chain, OrientedSimplex, boundary,
    canonicalize, check_admissible, one_norm)
from .constructions import VertexMap, connected_sum, disjoint_union
from .errors import (
    AsymmetricAdjacency, BadLabel, BoundsTooLarge, BudgetExhausted, DegenerateSimplex,
    DimensionMismatch, Infeasible, NoFractionalVariable, NonTriangularFace, NotAdmissible,
    OrientationClash, ParseError, PeelFailure, SimplicialVolumeError, TimeLimitReached,
    TraceInconsistent, WarmStartRejected, WrongGroupCount)
from .flux import FluxFunction, outward_flux, recenter_flux, verify_certificate, wedge
from .formats import (
    parse_facet_list, read_result, write_facet_list, write_result)
from .lp import LinearProgram, LPSolution, LPStatus, solve_lp, verify_solution
from .ilp import solve_ilp
from .plantri import RotationSystem, faces_from_rotation, parse_plantri_ascii
from .volume import (
    VolumeResult, build_program, compute_vq, compute_vz, cone_decomposition, greedy_peel,
    integrality_gap)

__version__ = "0.1.0"

__all__ = [
    "AdmissibleComplex", "AsymmetricAdjacency", "BIPYRAMID", "BadLabel", "BoundsTooLarge",
    "BudgetExhausted", "Chain", "DegenerateSimplex", "DimensionMismatch", "FluxFunction",
    "GAP_DIGRAPH", "HEXAGON", "Infeasible", "LPSolution", "LPStatus", "LinearProgram",
    "NoFractionalVariable", "NonTriangularFace", "NotAdmissible", "OrientationClash",
    "OrientedSimplex", "ParseError", "PeelFailure", "RotationSystem",
    "SimplicialVolumeError", "TimeLimitReached", "TraceInconsistent", "VertexMap",
    "VolumeResult", "WarmStartRejected", "WrongGroupCount", "boundary", "build_program",
    "canonicalize", "check_admissible", "compute_vq", "compute_vz", "cone_decomposition",
    "connected_sum", "disjoint_union", "faces_from_rotation", "greedy_peel",
    "integrality_gap", "one_norm", "outward_flux", "parse_facet_list",
    "parse_plantri_ascii", "read_result", "recenter_flux", "solve_ilp", "solve_lp",
    "verify_certificate", "verify_solution", "wedge", "write_facet_list", "write_result"]
