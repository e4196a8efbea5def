"""Exact arithmetic in the Higman-Thompson groups V_{d,r} and their braided and ribbon relatives.

Elements are paired forest diagrams (source forest, decoration, target forest)
where the decoration is a permutation (V), a signed permutation (V(Z/2)), a
braid (bV) or a ribbon braid (RV, RV+).  Every operation returns the reduced
representative, so formatted text is canonical.

>>> from htgroups import parse_diagram, normalize, format_diagram
>>> x = parse_diagram("V{2,1}(((.,.),.)|p:1,2,3|(.,(.,.)))")
>>> format_diagram(x * x)
'V{2,1}((((.,.),.),.)|p:1,2,3,4|(.,(.,(.,.))))'
"""

from ._jit import BACKEND
from .braid import BraidWord, GarsideForm, Permutation, cable, delete_strand, equal as braid_equal
from .diagram import (
    Diagram,
    GroupContext,
    Variant,
    cantor_action,
    equals,
    expand,
    format_diagram,
    identity,
    invariants,
    invert,
    is_identity,
    lift,
    multiply,
    parse_context,
    parse_diagram,
    project,
    random_element,
    reduce,
    shift_iso,
    shift_iso_inverse,
    stabilize,
)
from .errors import ContextMismatch, ParseError
from .forest import Forest, join, parse_forest
from .ribbon import RibbonBraid, SignedPermutation, split_band, try_merge_band
from .rng import SplitMix64

normalize = reduce

__all__ = [
    "BACKEND", "BraidWord", "ContextMismatch", "Diagram", "Forest", "GarsideForm", "GroupContext",
    "ParseError", "Permutation", "RibbonBraid", "SignedPermutation", "SplitMix64", "Variant",
    "braid_equal", "cable", "cantor_action", "delete_strand", "equals", "expand", "format_diagram",
    "identity", "invariants", "invert", "is_identity", "join", "lift", "multiply", "normalize",
    "parse_context", "parse_diagram", "parse_forest", "project", "random_element", "reduce",
    "shift_iso", "shift_iso_inverse", "split_band", "stabilize", "try_merge_band",
]
