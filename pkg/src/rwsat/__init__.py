"""Weak rainbow saturation of small graphs: verifier, constructions, exact search."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BudgetExceededError,
    ColorCollisionError,
    Graph6Error,
    MalformedCertificateError,
    NoIndependentSetError,
    PreconditionError,
    RwsatError,
    SizeExceededError,
)
from .graph import SimpleGraph, decode_graph6, encode_graph6  # noqa: E402
from .rainbow import Added, ColoredGraph  # noqa: E402
from .verifier import addable, greedy_closure, is_weakly_saturated, verify_certificate  # noqa: E402
from .extremal import delta_prime, f_of_h, paper_bounds, turan_ex  # noqa: E402
from .search import exact_rwsat  # noqa: E402

__all__ = [
    "Added", "BudgetExceededError", "ColorCollisionError", "ColoredGraph", "Graph6Error",
    "MalformedCertificateError", "NoIndependentSetError", "PreconditionError", "RwsatError",
    "SimpleGraph", "SizeExceededError", "addable", "decode_graph6", "delta_prime", "encode_graph6",
    "exact_rwsat", "f_of_h", "greedy_closure", "is_weakly_saturated", "paper_bounds", "turan_ex",
    "verify_certificate",
]
