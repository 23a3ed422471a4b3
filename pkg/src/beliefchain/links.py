"""Joint mass functions for a rule link built from its conditional belief table.

Each row of the table says what one antecedent value proves about the
consequent.  The three constructions differ only in how the validity of the
rows is coupled:

* ``embedding``: rows are independent (product coupling, Dempster's rule);
* ``consonant``: rows tend to hold together (comonotone coupling);
* ``dissonant``: one row holds when the other fails (countermonotone coupling,
  binary antecedents only).

All three give a joint whose antecedent marginal is vacuous and whose
conditionals reproduce the table rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import ConstructionError, FrameMismatchError
from .frames import Frame, Variable
from .mass import MassFunction, combine, is_consonant

METHODS = ("embedding", "consonant", "dissonant")


@dataclass(frozen=True, eq=False)
class ConditionalBeliefTable:
    antecedent: Variable
    consequent: Variable
    rows: Mapping[str, MassFunction]

    def __post_init__(self):
        if self.antecedent.name == self.consequent.name:
            raise ConstructionError(f"link {self.antecedent.name} -> {self.consequent.name} is a self-loop")
        extra = set(self.rows) - set(self.antecedent.values)
        if extra:
            raise ConstructionError(
                f"rows for unknown values {sorted(extra)} of {self.antecedent.name}"
            )
        missing = [a for a in self.antecedent.values if a not in self.rows]
        if missing:
            raise ConstructionError(f"no row for {self.antecedent.name}={missing[0]}")
        cframe = self.consequent_frame
        for a, row in self.rows.items():
            if row.frame != cframe:
                raise FrameMismatchError(
                    f"row {self.antecedent.name}={a} is on {row.frame}, expected {cframe}"
                )
        # rows in antecedent value order
        object.__setattr__(self, "rows", {a: self.rows[a] for a in self.antecedent.values})

    @property
    def consequent_frame(self) -> Frame:
        return Frame((self.consequent,))

    @property
    def antecedent_frame(self) -> Frame:
        return Frame((self.antecedent,))

    @property
    def frame(self) -> Frame:
        return Frame((self.antecedent, self.consequent))

    def __eq__(self, other):
        if not isinstance(other, ConditionalBeliefTable):
            return NotImplemented
        return (
            self.antecedent == other.antecedent
            and self.consequent == other.consequent
            and self.rows == other.rows
        )


@dataclass(frozen=True, eq=False)
class LinkJoint:
    table: ConditionalBeliefTable
    method: str
    joint: MassFunction

    @property
    def antecedent(self) -> Variable:
        return self.table.antecedent

    @property
    def consequent(self) -> Variable:
        return self.table.consequent


def _block(value_index: int, cmask: int, n_cons: int) -> int:
    """Configurations ``{a} x S`` of the product frame as a mask."""
    return cmask << (value_index * n_cons)


def conditional_embedding(t: ConditionalBeliefTable) -> LinkJoint:
    frame = t.frame
    n_ant, n_cons = t.antecedent.arity, t.consequent.arity
    full_cons = (1 << n_cons) - 1
    joint = None
    for i, row in enumerate(t.rows.values()):
        elsewhere = 0
        for j in range(n_ant):
            if j != i:
                elsewhere |= _block(j, full_cons, n_cons)
        embedded = MassFunction._from_masks(
            frame, [(_block(i, s, n_cons) | elsewhere, v) for s, v in row.mask_items()]
        )
        if joint is None:
            joint = embedded
        else:
            joint, k = combine(joint, embedded)
            if k != 0:  # every embedded focal contains the other blocks
                raise ConstructionError(f"unexpected conflict {k!r} while embedding rows")
    return LinkJoint(t, "embedding", joint)


def _levels(t: ConditionalBeliefTable, value: str) -> list[tuple[float, int]]:
    """Cumulative mass levels of a consonant row, innermost focal first."""
    row = t.rows[value]
    if not is_consonant(row):
        raise ConstructionError(
            f"row {t.antecedent.name}={value} is not consonant; the consonant and dissonant "
            "extensions only apply to consonant conditional belief functions"
        )
    chain = sorted(row.mask_items(), key=lambda kv: kv[0].bit_count())
    out = []
    acc = 0.0
    for mask, v in chain:
        acc += v
        out.append((acc, mask))
    out[-1] = (1.0, out[-1][1])
    return out


def _focal_at(levels: list[tuple[float, int]], u: float) -> int:
    """Smallest focal whose cumulative level reaches ``u``."""
    for level, mask in levels:
        if level >= u:
            return mask
    return levels[-1][1]


# breakpoints closer than this are one level split by summation error
LEVEL_TOL = 1e-14


def _align(frame: Frame, n_cons: int, breakpoints, pick) -> MassFunction:
    points = [0.0]
    for p in sorted(min(max(p, 0.0), 1.0) for p in breakpoints):
        if p - points[-1] > LEVEL_TOL:
            points.append(p)
    if 1.0 - points[-1] <= LEVEL_TOL:
        points[-1] = 1.0
    else:
        points.append(1.0)
    pairs = []
    for lo, hi in zip(points, points[1:]):
        mid = 0.5 * (lo + hi)
        mask = 0
        for i, cmask in enumerate(pick(mid)):
            mask |= _block(i, cmask, n_cons)
        pairs.append((mask, hi - lo))
    return MassFunction._from_masks(frame, pairs)


def consonant_extension(t: ConditionalBeliefTable) -> LinkJoint:
    levels = [_levels(t, a) for a in t.antecedent.values]
    breaks = [lv for row in levels for lv, _ in row]
    joint = _align(
        t.frame, t.consequent.arity, breaks, lambda u: [_focal_at(row, u) for row in levels]
    )
    return LinkJoint(t, "consonant", joint)


def dissonant_extension(t: ConditionalBeliefTable) -> LinkJoint:
    if t.antecedent.arity != 2:
        raise ConstructionError(
            f"dissonant extension needs a binary antecedent; {t.antecedent.name} has "
            f"{t.antecedent.arity} values"
        )
    first, second = (_levels(t, a) for a in t.antecedent.values)
    breaks = [lv for lv, _ in first] + [1.0 - lv for lv, _ in second]
    joint = _align(
        t.frame,
        t.consequent.arity,
        breaks,
        lambda u: [_focal_at(first, u), _focal_at(second, 1.0 - u)],
    )
    return LinkJoint(t, "dissonant", joint)


_BUILDERS = {
    "embedding": conditional_embedding,
    "consonant": consonant_extension,
    "dissonant": dissonant_extension,
}


def build_link(t: ConditionalBeliefTable, method: str) -> LinkJoint:
    try:
        builder = _BUILDERS[method]
    except KeyError:
        raise ConstructionError(f"unknown link method {method!r}; expected one of {', '.join(METHODS)}") from None
    return builder(t)
