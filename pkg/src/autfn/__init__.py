"""Free-group automorphism toolkit: words, automorphisms of F_N, the products
M_k(F_2), Nielsen transformation detection, direct-product families, and
Bass-Serre tree balls of collapsed roses."""

from .words import Basis, Word, parse_word, standard_basis
from .automorphisms import (Automorphism, compose, inner, inverse, nielsen_tau,
                            parse_automorphism)
from .mk import MkElement

__all__ = ["Basis", "Word", "parse_word", "standard_basis", "Automorphism", "compose",
           "inner", "inverse", "nielsen_tau", "parse_automorphism", "MkElement"]
__version__ = "0.1.0"
