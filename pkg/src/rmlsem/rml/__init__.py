"""The Rml language: parsing, typing, denotational and sampling semantics."""

from .denote import Closure, denote, denote_lt, denote_rec, program_lub, program_measure
from .parser import RmlSyntaxError, parse, parse_type
from .sampler import sample
from .syntax import show, show_type
from .types import RmlTypeError, check_program, elaborate, typecheck

__all__ = [
    "Closure", "RmlSyntaxError", "RmlTypeError", "check_program", "denote", "denote_lt",
    "denote_rec", "elaborate", "parse", "parse_type", "program_lub", "program_measure",
    "sample", "show", "show_type", "typecheck",
]
