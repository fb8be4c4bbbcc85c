import random
from fractions import Fraction

from hypothesis import strategies as st

from frontal.jets import Jet1, Jet2

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def jet2_strategy(order, unit=False):
    n_terms = (order + 1) * (order + 2) // 2

    def build(vals):
        keys = [(i, d - i) for d in range(order + 1) for i in range(d + 1)]
        terms = dict(zip(keys, vals))
        if unit and terms[0, 0] == 0:
            terms[0, 0] = Fraction(1)
        return Jet2(terms, order)

    return st.lists(small_q, min_size=n_terms, max_size=n_terms).map(build)


def jet1_strategy(order):
    return st.lists(small_q, min_size=order + 1, max_size=order + 1).map(lambda c: Jet1(c, order))


def random_jet2(rng, order, origin=False):
    terms = {}
    for d in range(1 if origin else 0, order + 1):
        for i in range(d + 1):
            terms[i, d - i] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Jet2(terms, order)
