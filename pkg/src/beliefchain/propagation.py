"""Propagation of beliefs across links and along chains, plus m/Bel/Pl reports."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Sequence

from .errors import ConstructionError, EnumerationLimitError, FrameMismatchError, TotalConflictError
from .frames import ConfigSet, Frame, Variable
from .links import LinkJoint
from .mass import MassFunction, bel, combine, marginalize, pl, vacuous_extend

#: Default largest frame for which a full power-set report is produced.
DEFAULT_MAX_ENUM = 12


@dataclass(frozen=True, eq=False)
class ChainModel:
    variables: tuple[Variable, ...]
    links: tuple[LinkJoint, ...]
    root_belief: MassFunction

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "links", tuple(self.links))
        if not self.variables:
            raise ConstructionError("a chain needs at least one variable")
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ConstructionError("chain variables must be distinct")
        if len(self.links) != len(self.variables) - 1:
            raise ConstructionError(
                f"{len(self.variables)} variables need {len(self.variables) - 1} links, got {len(self.links)}"
            )
        for i, link in enumerate(self.links):
            if link.antecedent != self.variables[i] or link.consequent != self.variables[i + 1]:
                raise ConstructionError(
                    f"link {i} is {link.antecedent.name} -> {link.consequent.name}, expected "
                    f"{self.variables[i].name} -> {self.variables[i + 1].name}"
                )
        if self.root_belief.frame != Frame((self.variables[0],)):
            raise FrameMismatchError(f"root belief must be on {self.variables[0].name}")

    def link(self, antecedent: str, consequent: str) -> LinkJoint:
        for link in self.links:
            if link.antecedent.name == antecedent and link.consequent.name == consequent:
                return link
        raise KeyError(f"no link {antecedent} -> {consequent}")

    def link_position(self, link: LinkJoint) -> int:
        return next(i for i, lk in enumerate(self.links) if lk is link)


class LinkPropagation(NamedTuple):
    marginal: MassFunction
    joint: MassFunction
    conflict: float


@dataclass(frozen=True)
class ChainPropagation:
    marginals: dict[str, MassFunction]
    conflicts: tuple[float, ...]


def propagate_link(incoming: MassFunction, link: LinkJoint) -> LinkPropagation:
    """Extend ``incoming`` to the product frame, combine with the link joint, collapse."""
    if incoming.frame != link.table.antecedent_frame:
        raise FrameMismatchError(
            f"incoming belief is on {incoming.frame}, link expects {link.antecedent.name}"
        )
    joint, conflict = combine(vacuous_extend(incoming, link.table.frame), link.joint)
    return LinkPropagation(marginalize(joint, link.table.consequent_frame), joint, conflict)


def propagate_chain(model: ChainModel) -> ChainPropagation:
    current = model.root_belief
    marginals = {model.variables[0].name: current}
    conflicts = []
    for link in model.links:
        try:
            current, _, k = propagate_link(current, link)
        except TotalConflictError as exc:
            label = f"{link.antecedent.name} -> {link.consequent.name}"
            raise TotalConflictError(f"{exc} (at link {label})", link=label) from exc
        marginals[link.consequent.name] = current
        conflicts.append(k)
    return ChainPropagation(marginals, tuple(conflicts))


class ReportRow(NamedTuple):
    subset: ConfigSet
    m: float
    bel: float
    pl: float


@dataclass(frozen=True)
class BeliefReport:
    frame: Frame
    rows: tuple[ReportRow, ...]
    conflict: float = 0.0

    def row(self, subset: ConfigSet) -> ReportRow:
        for r in self.rows:
            if r.subset == subset:
                return r
        raise KeyError(str(subset))


def nonempty_subsets(frame: Frame, max_enum: int = DEFAULT_MAX_ENUM):
    """All nonempty subsets in canonical order: by cardinality, then member indices."""
    if frame.size > max_enum:
        raise EnumerationLimitError(
            f"frame {frame} has {frame.size} configurations; reports are limited to {max_enum} "
            "(raise the limit to override)"
        )
    for k in range(1, frame.size + 1):
        for members in combinations(range(frame.size), k):
            yield ConfigSet.from_indices(frame, members)


def report(m: MassFunction, conflict: float = 0.0, max_enum: int = DEFAULT_MAX_ENUM) -> BeliefReport:
    rows = tuple(
        ReportRow(s, m[s], bel(m, s), pl(m, s)) for s in nonempty_subsets(m.frame, max_enum)
    )
    return BeliefReport(m.frame, rows, conflict)


def compare_reports(reports: Sequence[BeliefReport], tol: float = 1e-9) -> list[bool]:
    """Per row, whether any of m, Bel, Pl differs across the reports beyond ``tol``."""
    flags = []
    for rows in zip(*(r.rows for r in reports)):
        differs = False
        for field in ("m", "bel", "pl"):
            vals = [getattr(r, field) for r in rows]
            if max(vals) - min(vals) > tol:
                differs = True
        flags.append(differs)
    return flags
