"""Operator precedence words, automata and the POTL temporal logic."""
from .errors import OpotlError
from .opalpha import DELIM, EQUALS, TAKES, YIELDS, OpAlphabet, Prec, builtin_mcall, load_opm
from .opwords import OpWord, load_word, random_compatible_word, serialize_word
from .opparse import ChainSet, parse, validate_chain_properties

__version__ = "0.1.0"
