from hypothesis import strategies as st

from rmlsem.rational import Q
from rmlsem.realopen import ros_normalize
from rmlsem.sier import Sier, sier_after


def rationals(max_den=64, lo=-8, hi=8):
    return st.builds(
        lambda n, d: Q(n, d),
        st.integers(lo * max_den, hi * max_den),
        st.integers(1, max_den),
    )


nonneg_rationals = rationals(lo=0)


def ros(max_components=5, max_den=16, span=4):
    interval = st.tuples(
        st.integers(-span * max_den, span * max_den),
        st.integers(1, 2 * max_den),
        st.integers(1, max_den),
    ).map(lambda t: (Q(t[0], t[2]), Q(t[0] + t[1], t[2])))
    return st.lists(interval, max_size=max_components).map(ros_normalize)


# None = never fires
fire_times = st.one_of(st.none(), st.integers(0, 40))


def step_sier(k):
    return sier_after(k)
