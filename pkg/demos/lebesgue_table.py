"""Lower bounds on Lebesgue integrals of a few observables, fuel by fuel.

    python demos/lebesgue_table.py
"""

from rmlsem.measure import (
    LebesgueValuation, identity_observable, indicator, lebesgue_valuation, open_from_ros, riesz_extend,
)
from rmlsem.rational import fmt_q
from rmlsem.realopen import ros_interval, ros_normalize

lam = lebesgue_valuation()
# the identity needs a bounded window to have a finite integral
unit = LebesgueValuation(window=(0, 1))
cases = [
    ("1_(0,1)", lam, indicator(open_from_ros(ros_interval(0, 1)))),
    ("1_(0,1/3) u (1/2,2)", lam, indicator(open_from_ros(ros_normalize([(0, "1/3"), ("1/2", 2)])))),
    ("x on (0,1)", unit, identity_observable()),
]

for name, mu, f in cases:
    value = riesz_extend(mu, f)
    print(name)
    for n in range(0, 11, 2):
        v = value.approx(n)
        print(f"  fuel {n:>2}  {fmt_q(v):>22}  ~{float(v):.6f}")
