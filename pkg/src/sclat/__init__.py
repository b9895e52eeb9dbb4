"""Finite scaled and subscaled lattices.

The package works with finite lattices presented by their poset of
join-irreducibles, each irreducible carrying a dimension label.  It checks
the axioms, builds primitive and splitting extensions, embeds lattices into
special linear sets over the rationals, handles atom counts, and decides
sentences by bounded search for finite models.
"""

__version__ = "0.1.0"

from .asc import AscBase, asc, check_asc_axioms, completion_invariant, prime_asc
from .axioms import check_axioms
from .canon import canonical_form, is_isomorphic
from .embedding import Embedding, embed_check
from .enumeration import enumerate_bases
from .errors import SclatError
from .linear import Flat, LinearSet, represent, represent_asc
from .logic.search import decide_exists, decide_theory, mu, sat_qf, theory_equal
from .logic.semantics import eval_term, evaluate
from .logic.syntax import parse_formula, parse_term, render
from .order import Element, Poset, dim, join, meet, tc_diff
from .scaled import ScaledBase, c_k, generated_substructure, prime_substructure, scdim
from .signatures import Signature, apply_signature, enumerate_signatures, tower_decompose
from .splitting import check_catenarity, splitting_extension

__all__ = [
    "AscBase", "Element", "Embedding", "Flat", "LinearSet", "Poset", "ScaledBase", "SclatError",
    "Signature", "apply_signature", "asc", "c_k", "canonical_form", "check_asc_axioms",
    "check_axioms", "check_catenarity", "completion_invariant", "decide_exists", "decide_theory",
    "dim", "embed_check", "enumerate_bases", "enumerate_signatures", "eval_term", "evaluate",
    "generated_substructure", "is_isomorphic", "join", "meet", "mu", "parse_formula", "parse_term",
    "prime_asc", "prime_substructure", "render", "represent", "represent_asc", "sat_qf", "scdim",
    "splitting_extension", "tc_diff", "theory_equal", "tower_decompose",
]
