"""Mass functions and the Dempster-Shafer operations on them.

Tolerance policy: masses must sum to one within :data:`NORMALIZATION_TOL`;
combination treats ``K >= 1 - CONFLICT_TOL`` as total conflict.
"""

from __future__ import annotations

from math import fsum, isfinite
from typing import Iterable, Mapping, NamedTuple

from .errors import FrameMismatchError, MassError, TotalConflictError
from .frames import ConfigSet, Frame, extend_mask, project_mask

NORMALIZATION_TOL = 1e-9
CONFLICT_TOL = 1e-12
# uncommitted remainders at or below this are summation residue, not belief
RESIDUE_TOL = 1e-15


def _canonical_key(mask):
    return (mask.bit_count(), tuple(i for i in range(mask.bit_length()) if mask >> i & 1))


class MassFunction:
    """A normalized basic probability assignment on a frame.

    Focal elements are kept in canonical order (by cardinality, then by member
    indices) and zero masses are dropped, so two mass functions built from the
    same focal/mass pairs compare equal regardless of input order.
    """

    __slots__ = ("frame", "_masses")

    def __init__(self, frame: Frame, focals: Mapping[ConfigSet, float]):
        pairs = []
        for s, v in focals.items():
            if not isinstance(s, ConfigSet):
                raise MassError(f"focal keys must be ConfigSet, got {type(s).__name__}")
            if s.frame != frame:
                raise FrameMismatchError(f"focal {s} is not on frame {frame}")
            pairs.append((s.mask, v))
        self._init(frame, pairs)

    def _init(self, frame, pairs):
        acc: dict[int, float] = {}
        for mask, v in pairs:
            v = float(v)
            if not isfinite(v):
                raise MassError(f"mass {v} is not finite")
            if v < 0:
                raise MassError(f"negative mass {v}")
            if v == 0:
                continue
            if mask == 0:
                raise MassError("the empty set cannot carry mass")
            acc[mask] = acc.get(mask, 0.0) + v
        total = fsum(acc.values())
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise MassError(f"masses sum to {total!r}, not 1")
        self.frame = frame
        self._masses = {k: acc[k] for k in sorted(acc, key=_canonical_key)}

    @classmethod
    def _from_masks(cls, frame: Frame, pairs: Iterable[tuple[int, float]]) -> MassFunction:
        m = cls.__new__(cls)
        m._init(frame, pairs)
        return m

    @property
    def focals(self) -> dict[ConfigSet, float]:
        return {ConfigSet(self.frame, k): v for k, v in self._masses.items()}

    def items(self):
        return self.focals.items()

    def mask_items(self):
        return self._masses.items()

    def __getitem__(self, s: ConfigSet) -> float:
        if s.frame != self.frame:
            raise FrameMismatchError(f"set on {s.frame} queried against mass on {self.frame}")
        return self._masses.get(s.mask, 0.0)

    def __len__(self):
        return len(self._masses)

    def __eq__(self, other):
        if not isinstance(other, MassFunction):
            return NotImplemented
        return self.frame == other.frame and self._masses == other._masses

    __hash__ = None

    def isclose(self, other: MassFunction, tol: float = 1e-12) -> bool:
        """Same focal sets, masses equal within ``tol``."""
        if self.frame != other.frame or self._masses.keys() != other._masses.keys():
            return False
        return all(abs(v - other._masses[k]) <= tol for k, v in self._masses.items())

    def is_vacuous(self) -> bool:
        return list(self._masses) == [(1 << self.frame.size) - 1]

    def total(self) -> float:
        return fsum(self._masses.values())

    def __repr__(self):
        body = ", ".join(f"{ConfigSet(self.frame, k)}: {v:.6g}" for k, v in self._masses.items())
        return f"MassFunction[{self.frame}]({body})"


class CombinationResult(NamedTuple):
    combined: MassFunction
    conflict: float


def make_mass(frame: Frame, entries: Mapping[ConfigSet, float] | None = None) -> MassFunction:
    """Build a mass function, parking the uncommitted remainder on the full set."""
    full = (1 << frame.size) - 1
    pairs = []
    for s, v in (entries or {}).items():
        if s.frame != frame:
            raise FrameMismatchError(f"focal {s} is not on frame {frame}")
        if s.is_empty():
            raise MassError("the empty set cannot carry mass")
        if v < 0:
            raise MassError(f"negative mass {v} on {s}")
        pairs.append((s.mask, v))
    committed = fsum(v for _, v in pairs)
    if committed > 1.0 + NORMALIZATION_TOL:
        raise MassError(f"masses sum to {committed!r}, which exceeds 1")
    remainder = 1.0 - committed
    if remainder > RESIDUE_TOL:
        pairs.append((full, remainder))
    return MassFunction._from_masks(frame, pairs)


def vacuous(frame: Frame) -> MassFunction:
    return MassFunction._from_masks(frame, [((1 << frame.size) - 1, 1.0)])


def _same_frame(m: MassFunction, x: ConfigSet):
    if x.frame != m.frame:
        raise FrameMismatchError(f"set on {x.frame} queried against mass on {m.frame}")


def bel(m: MassFunction, x: ConfigSet) -> float:
    _same_frame(m, x)
    return fsum(v for b, v in m.mask_items() if b & ~x.mask == 0)


def pl(m: MassFunction, x: ConfigSet) -> float:
    _same_frame(m, x)
    return fsum(v for b, v in m.mask_items() if b & x.mask)


def combine(m1: MassFunction, m2: MassFunction) -> CombinationResult:
    """Dempster's rule with renormalization; the conflict ``K`` is returned alongside."""
    if m1.frame != m2.frame:
        raise FrameMismatchError(f"cannot combine masses on {m1.frame} and {m2.frame}")
    acc: dict[int, float] = {}
    conflict = 0.0
    for b1, v1 in m1.mask_items():
        for b2, v2 in m2.mask_items():
            c = b1 & b2
            if c:
                acc[c] = acc.get(c, 0.0) + v1 * v2
            else:
                conflict += v1 * v2
    if conflict >= 1.0 - CONFLICT_TOL:
        raise TotalConflictError(f"total conflict (K = {conflict!r}) between the combined evidence")
    if conflict > 0:
        scale = 1.0 / (1.0 - conflict)
        acc = {k: v * scale for k, v in acc.items()}
    return CombinationResult(MassFunction._from_masks(m1.frame, acc.items()), conflict)


def marginalize(m: MassFunction, target: Frame) -> MassFunction:
    """Collapse onto the variables of ``target`` by projecting every focal element."""
    return MassFunction._from_masks(
        target, [(project_mask(b, m.frame, target), v) for b, v in m.mask_items()]
    )


def vacuous_extend(m: MassFunction, target: Frame) -> MassFunction:
    """Extend onto a larger frame, adding no information about the new variables."""
    return MassFunction._from_masks(
        target, [(extend_mask(b, m.frame, target), v) for b, v in m.mask_items()]
    )


def condition(m: MassFunction, given: ConfigSet) -> MassFunction:
    """Dempster conditioning: combine with a mass function certain of ``given``."""
    _same_frame(m, given)
    if given.is_empty():
        raise MassError("cannot condition on the empty set")
    if pl(m, given) <= CONFLICT_TOL:
        raise TotalConflictError(f"conditioning event {given} has zero plausibility")
    return combine(m, MassFunction._from_masks(m.frame, [(given.mask, 1.0)])).combined


def is_consonant(m: MassFunction) -> bool:
    masks = sorted(m._masses, key=int.bit_count)
    return all(a & ~b == 0 for a, b in zip(masks, masks[1:]))
