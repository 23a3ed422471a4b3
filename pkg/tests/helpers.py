"""Shared fixture data and random generators for the test suite."""

from beliefchain import (
    ConditionalBeliefTable,
    Frame,
    MassFunction,
    Variable,
    make_mass,
)

A = Variable("A", ("1", "0"))
E = Variable("E", ("1", "0"))
FA = Frame((A,))
FE = Frame((E,))
FAE = Frame((A, E))

_CODES = {"AE": ("1", "1"), "Ae": ("1", "0"), "aE": ("0", "1"), "ae": ("0", "0")}


def ae(*codes):
    """Subset of A x E from codes: ``AE`` = A=1&E=1, ``Ae`` = A=1&E=0, lower case = value 0."""
    return FAE.subset([{"A": _CODES[c][0], "E": _CODES[c][1]} for c in codes])


def on_a(*values):
    return FA.subset([{"A": v} for v in values])


def on_e(*values):
    return FE.subset([{"E": v} for v in values])


OMEGA = ("AE", "Ae", "aE", "ae")


def simple_table(b_given_a, b_given_not_a, ant=A, cons=E):
    """Rows with belief ``b`` on E=1 and the rest uncommitted."""
    cf = Frame((cons,))
    e1 = cf.subset([{cons.name: cons.values[0]}])
    rows = {
        ant.values[0]: make_mass(cf, {e1: b_given_a}),
        ant.values[1]: make_mass(cf, {e1: b_given_not_a}),
    }
    return ConditionalBeliefTable(ant, cons, rows)


# Joint belief on A x E after combining the incoming belief with each link
# joint: subset -> (m, Bel, Pl) for embedding / consonant / dissonant.
# Rows are keyed by subset identity, not by report order.
TABLE1 = {
    ("AE",): [(.24, .24, .8)] * 3,
    ("Ae",): [(0, 0, .16)] * 3,
    ("aE",): [(.1, .1, .7)] * 3,
    ("ae",): [(0, 0, .35)] * 3,
    ("AE", "Ae"): [(.06, .3, .8)] * 3,
    ("AE", "aE"): [(.2, .54, 1), (.25, .59, 1), (.15, .49, 1)],
    ("AE", "ae"): [(0, .24, .9)] * 3,
    ("Ae", "aE"): [(0, .1, .76)] * 3,
    ("Ae", "ae"): [(0, 0, .46), (0, 0, .41), (0, 0, .51)],
    ("aE", "ae"): [(.1, .2, .7)] * 3,
    ("AE", "Ae", "aE"): [(.05, .65, 1), (0, .65, 1), (.1, .65, 1)],
    ("AE", "Ae", "ae"): [(0, .3, .9)] * 3,
    ("AE", "aE", "ae"): [(.2, .84, 1), (.15, .84, 1), (.25, .84, 1)],
    ("Ae", "aE", "ae"): [(0, .2, .76)] * 3,
    OMEGA: [(.05, 1, 1), (.1, 1, 1), (0, 1, 1)],
}

STARRED = {("AE", "aE"), ("Ae", "ae"), ("AE", "Ae", "aE"), ("AE", "aE", "ae"), OMEGA}

# Marginal on E: {E}, {Ē}, Ω_E -> (m, Bel, Pl) per method.
TABLE2 = {
    ("1",): [(.54, .54, 1), (.59, .59, 1), (.49, .49, 1)],
    ("0",): [(0, 0, .46), (0, 0, .41), (0, 0, .51)],
    ("1", "0"): [(.46, 1, 1), (.41, 1, 1), (.51, 1, 1)],
}


# random generators shared by property tests

def random_frame(rng, max_size=8):
    while True:
        nvars = rng.randint(1, 3)
        arities = [rng.randint(2, 4) for _ in range(nvars)]
        size = 1
        for a in arities:
            size *= a
        if size <= max_size:
            break
    return Frame(tuple(
        Variable(f"V{i}", tuple(str(j) for j in range(a))) for i, a in enumerate(arities)
    ))


def random_mass(rng, frame, max_focals=5, omega_prob=0.6):
    full = (1 << frame.size) - 1
    n = rng.randint(1, max_focals)
    masks = [rng.randint(1, full) for _ in range(n)]
    if rng.random() < omega_prob:
        masks.append(full)
    weights = [rng.random() + 1e-3 for _ in masks]
    total = sum(weights)
    return MassFunction._from_masks(frame, [(m, w / total) for m, w in zip(masks, weights)])


def random_consonant(rng, frame, max_focals=4):
    """Nested chain of focal sets grown one configuration at a time."""
    order = list(range(frame.size))
    rng.shuffle(order)
    cuts = sorted(rng.sample(range(1, frame.size + 1), rng.randint(1, min(max_focals, frame.size))))
    masks = []
    for c in cuts:
        mask = 0
        for i in order[:c]:
            mask |= 1 << i
        masks.append(mask)
    weights = [rng.random() + 1e-3 for _ in masks]
    total = sum(weights)
    return MassFunction._from_masks(frame, [(m, w / total) for m, w in zip(masks, weights)])
