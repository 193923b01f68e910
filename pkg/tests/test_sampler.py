import math
from collections import Counter

from rmlsem import program_path
from rmlsem.giry import discrete_outcomes
from rmlsem.rational import Q
from rmlsem.rml import check_program, parse, program_lub, sample
from rmlsem.rml.sampler import sample_many

N_SEEDS = 10_000


def core(src):
    return check_program(parse(src))[1]


def read(name):
    with open(program_path(name), encoding="utf-8") as fh:
        return fh.read()


def three_sigma(p, n):
    return 3 * math.sqrt(p * (1 - p) / n)


def test_numeral():
    for seed in (0, 1, 12345):
        assert sample(core("0"), seed) == 0


def test_surface_terms_are_elaborated():
    assert sample(parse("let x = 3 in succ(x)"), 0) == 4


def test_reproducible_per_seed():
    c = core(read("normal.rml"))
    assert sample_many(c, 50, 7) == sample_many(c, 50, 7)
    assert sample_many(c, 50, 7) != sample_many(c, 50, 8)


def test_bernoulli_frequency():
    xs = sample_many(core("bernoulli"), N_SEEDS)
    p = sum(xs) / N_SEEDS
    assert abs(p - 0.5) <= three_sigma(0.5, N_SEEDS)


def test_first_round_acceptance_rate():
    one_round = "let x = 2 * uniform - 1; y = 2 * uniform - 1; in x * x + y * y < 1"
    xs = sample_many(core(one_round), N_SEEDS)
    p = sum(xs) / N_SEEDS
    assert abs(p - math.pi / 4) <= three_sigma(math.pi / 4, N_SEEDS)


def test_normal_samples_look_standard():
    xs = [float(v) for v in sample_many(core(read("normal.rml")), N_SEEDS)]
    mean = sum(xs) / len(xs)
    var = sum(x * x for x in xs) / len(xs) - mean ** 2
    assert abs(mean) < 4 / math.sqrt(len(xs))
    assert abs(var - 1) < 0.06


def test_domain_errors_and_budget_give_none():
    assert sample(core("log (0 - 1)"), 0) is None
    assert sample(core("1 / 0"), 0) is None
    assert sample(core("let rec f (n: N) : N = f (succ n) in f 0"), 0, max_steps=1000) is None


def test_ties_are_false():
    assert sample(core("0.5 < 0.5"), 0) is False


def test_denotational_operational_agreement():
    cases = [
        (read("geometric.rml"), range(6)),
        (read("two_bernoullis.rml"), (True, False)),
        ("if bernoulli then (if bernoulli then 0 else 1) else 2", range(3)),
        ("uniform < 0.3", (True, False)),
    ]
    for src, atoms in cases:
        c = core(src)
        counts = Counter(sample_many(c, N_SEEDS))
        bounds = discrete_outcomes(program_lub(c), atoms, 10)
        for a in atoms:
            p = counts[a] / N_SEEDS
            assert p >= float(bounds[a]) - three_sigma(p, N_SEEDS), (src, a)
    # the bound for a certain discrete outcome is exact and tight
    assert discrete_outcomes(program_lub(core(read("two_bernoullis.rml"))), (True,), 0)[True] == Q(1, 4)
