"""Terminated convolutional codes: weight adjacency matrices, terminated-code
weight enumerators, MacWilliams identities and free distance spectra."""

from .algebra import (
    EnumeratorMatrix,
    Gf2Matrix,
    WeightEnumerator,
    em_mul,
    em_pow,
    gf2_null_space,
    gf2_rank,
    we_mul,
)
from .brute_force import dual_code, enumerate_weights, sets_equal
from .duality import IdentityReport, macwilliams_transform, verify_identity
from .encoder import CodeSpec, TrellisSection, build_trellis, dual_spec, hwam, load_trellis, parse_code_spec
from .spectrum import (
    SpectrumReport,
    convergence_report,
    free_spectrum,
    normalized_spectrum,
    union_bound,
)
from .terminator import (
    BlockCodeMatrix,
    TerminationKind,
    generator_matrix,
    min_distance_terminated,
    termination_enumerator,
)

__version__ = "0.1.0"
