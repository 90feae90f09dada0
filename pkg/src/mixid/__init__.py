"""Mixed identities for automorphism groups of homogeneous structures."""

__version__ = "0.1.0"

from .dsl import ParseError, parse_word
from .words import FreeWord, WordWithConstants, classify, content, reduce

__all__ = ["FreeWord", "ParseError", "WordWithConstants", "classify", "content", "parse_word", "reduce"]
