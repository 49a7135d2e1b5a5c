"""Mod 3-orientations, Z3-connectivity and the gadgets that extend flows.

Submodules: ``graphcore`` (multigraphs, cuts, contraction, splitting),
``orient`` (boundaries and the β-orientation solver), ``groupconn``
(Z3-connectivity, extendability, reducedness), ``gadgets`` (W and the
six-copy replacement graphs), ``ltwz`` (the τ-function and extension
hypotheses), ``planardual`` (embeddings, duals, coloring), ``io`` and ``cli``.
"""

from .errors import (
    FlowExtError,
    HypothesisError,
    InternalConsistencyError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
)
from .graphcore import Edge, Multigraph
from .orient import Orientation, find_beta_orientation, is_beta_orientation

__version__ = "0.1.0"

__all__ = [
    "Edge",
    "FlowExtError",
    "HypothesisError",
    "InternalConsistencyError",
    "Multigraph",
    "Orientation",
    "ParseError",
    "PreconditionError",
    "ResourceLimitError",
    "find_beta_orientation",
    "is_beta_orientation",
]
