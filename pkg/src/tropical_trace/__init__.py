"""Exact computation of both sides of the tropical trace formula for matroidal automorphisms."""

from .errors import ConsistencyError, InputError
from .matroid import (Matroid, MatroidAutomorphism, automorphism, boolean, closure_of,
                      contraction, fixed_flat_lattice, flat_lattice, from_bases,
                      from_flats, generic_chain, graphic, psi_closure, truncation, uniform)
from .poset import RankedLattice, beta, beta_interval, mobius
from .fan import PLFunction, WeightedFan, divisor, hyperplane_section, matroid_fan
from .intersection import compute_intersection
from .framing import (framing_basis, lefschetz_sum, resolution_check, trace_chains,
                      trace_linear)
from .catalog import catalog
from .verify import VerificationReport, VerifyConfig, verify

__all__ = [
    "ConsistencyError", "InputError", "Matroid", "MatroidAutomorphism", "automorphism",
    "boolean", "closure_of", "contraction", "fixed_flat_lattice", "flat_lattice",
    "from_bases", "from_flats", "generic_chain", "graphic", "psi_closure", "truncation",
    "uniform", "RankedLattice", "beta", "beta_interval", "mobius", "PLFunction",
    "WeightedFan", "divisor", "matroid_fan", "compute_intersection", "framing_basis",
    "lefschetz_sum", "trace_chains", "trace_linear", "hyperplane_section", "resolution_check",
    "catalog", "VerificationReport", "VerifyConfig", "verify",
]
