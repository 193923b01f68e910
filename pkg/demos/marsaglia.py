"""Termination of the polar-method normal sampler.

The lower bound on the probability of returning a value climbs towards 1 as
fuel grows; the sampler agrees.

    python demos/marsaglia.py [max_fuel]
"""

import sys

from rmlsem import program_path
from rmlsem.cli import QuerySpec, cmd_eval, cmd_sample

fuel = int(sys.argv[1]) if len(sys.argv) > 1 else 6
path = str(program_path("normal.rml"))
print(cmd_eval(QuerySpec(path, "mass", fuel)).to_text(timing=True))
print()
print(cmd_sample(path, 10_000, seed=0).to_text())
