"""Border homology and cohomology of filtered simplicial models."""

from .abelian import FgAbGroup, GroupHom, IntMatrix, Q, Z, Zmod, parse_group, render_group
from .border import (
    border_cohomology,
    border_homology,
    cohdim_large,
    cohdim_small,
    cyclicity,
    induced_infty,
    pair_sequence,
    triple_sequence,
)
from .io import parse_space, render_space
from .spaces import EXAMPLES, FilteredSpace, ProperModelMap, SpacePair, generate_example

__version__ = "0.1.0"
