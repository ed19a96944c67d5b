"""dicore: random digraphs, acyclic homomorphisms, and core certification.

A library, CLI, and HTTP service for the D(n, p) random digraph model,
exact maximum density, acyclic-homomorphism search, core certification,
binomial tail bounds, and seeded Monte Carlo experiments over all of them.
"""

from .bounds import (
    CorollaryBound,
    TailBound,
    chernoff_lower,
    chernoff_rate,
    chernoff_upper,
    corollary_bound,
)
from .density import (
    BRUTE_FORCE_MAX_N,
    DensityResult,
    max_density_bruteforce,
    max_density_exact,
    threshold_probability,
)
from .digraph import Digraph, DigraphParseError
from .homomorphism import (
    DEFAULT_BUDGET,
    CoreStatus,
    CoreVerdict,
    SearchResult,
    VertexMap,
    find_acyclic_hom,
    find_noninjective_endomorphism,
    is_automorphism,
    is_core,
    subdigraph_contains,
    verify_acyclic_hom,
)
from .random_model import (
    MAX_ENUMERATION_N,
    Seed,
    enumerate_all,
    log_probability_mass,
    probability_mass,
    sample,
    sample_adjacency,
)

__version__ = "0.1.0"

__all__ = [
    "BRUTE_FORCE_MAX_N",
    "CoreStatus",
    "CoreVerdict",
    "CorollaryBound",
    "DEFAULT_BUDGET",
    "DensityResult",
    "Digraph",
    "DigraphParseError",
    "MAX_ENUMERATION_N",
    "SearchResult",
    "Seed",
    "TailBound",
    "VertexMap",
    "chernoff_lower",
    "chernoff_rate",
    "chernoff_upper",
    "corollary_bound",
    "enumerate_all",
    "find_acyclic_hom",
    "find_noninjective_endomorphism",
    "is_automorphism",
    "is_core",
    "log_probability_mass",
    "max_density_bruteforce",
    "max_density_exact",
    "probability_mass",
    "sample",
    "sample_adjacency",
    "subdigraph_contains",
    "threshold_probability",
    "verify_acyclic_hom",
]
