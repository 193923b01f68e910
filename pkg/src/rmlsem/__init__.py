"""Exact lower-bound semantics for a small probabilistic functional language.

Layers, bottom up: Sierpinski truth values (:mod:`.sier`), lower reals
(:mod:`.lowreal`), interval reals (:mod:`.interval`), rational open sets
(:mod:`.realopen`), valuations and integrals (:mod:`.measure`), the
sub-probability monad (:mod:`.giry`) and the Rml language (:mod:`.rml`).
"""

from importlib import resources

__version__ = "0.1.0"


def program_path(name: str) -> str:
    """Filesystem path of a bundled example program, e.g. ``"normal.rml"``."""
    return str(resources.files(__package__).joinpath("programs", name))
