"""Small Rml programs: exact discrete probabilities next to Monte-Carlo counts.

    python demos/coins_and_draws.py
"""

from collections import Counter

from rmlsem.giry import discrete_outcomes
from rmlsem.rml import check_program, parse, program_lub, show_type
from rmlsem.rml.sampler import sample_many

PROGRAMS = {
    "two coins": ("let a = bernoulli; b = bernoulli; in if a then b else false", (True, False)),
    "flips until heads": ("let rec flips (n: N) : N = if bernoulli then n else flips (succ n) in flips 0",
                          range(5)),
    "uniform < 1/3": ("uniform < 0.3333", (True, False)),
}

for name, (src, atoms) in PROGRAMS.items():
    ty, core = check_program(parse(src))
    bounds = discrete_outcomes(program_lub(core), atoms, 10)
    counts = Counter(sample_many(core, 5000, seed=1))
    print(f"{name} : {show_type(ty)}")
    for a in atoms:
        print(f"  {a!s:>6}  lower bound {float(bounds[a]):.5f}   sampled {counts[a] / 5000:.4f}")
