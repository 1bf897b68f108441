"""Free group words, cyclic lengths, and translation equivalence checks."""

from .automorphisms import Automorphism, InvertGen, Permute, RightMultiply, apply, invert_aut, sample_aut
from .cyclic import CyclicWord, Pattern, block_decompose, cyclic_decompose, cyclic_equals, cyclic_length, pair_counts
from .equivalence import PairSource, check_equivalence, reverse_word, substitute
from .words import Alphabet, Letter, ParseError, Word, concat, invert, parse, power, reduce

__version__ = "0.1.0"
