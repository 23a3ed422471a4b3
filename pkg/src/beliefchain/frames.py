"""Variables, product frames and bitmask subsets of their configurations.

Configurations of a frame are numbered in mixed radix with the first listed
variable most significant, so for ``[A(1,0), E(1,0)]`` the order is
``A=1&E=1, A=1&E=0, A=0&E=1, A=0&E=0``.  A :class:`ConfigSet` is a bit vector
over that numbering (bit ``i`` set means configuration ``i`` is a member).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import prod
from typing import Iterable, Mapping

from .errors import FrameError, FrameMismatchError

#: Largest frame on which subsets may be built.
MAX_SET_FRAME_SIZE = 26


@dataclass(frozen=True)
class Variable:
    name: str
    values: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if not isinstance(self.name, str) or not self.name:
            raise FrameError("variable name must be a nonempty string")
        if len(self.values) < 2:
            raise FrameError(f"variable {self.name} needs at least 2 values")
        for v in self.values:
            if not isinstance(v, str) or not v:
                raise FrameError(f"variable {self.name} has an empty value label")
        if len(set(self.values)) != len(self.values):
            raise FrameError(f"variable {self.name} has duplicate values")

    @property
    def arity(self) -> int:
        return len(self.values)

    def index(self, value: str) -> int:
        try:
            return self.values.index(value)
        except ValueError:
            raise FrameError(f"unknown value {value!r} for variable {self.name}") from None


@dataclass(frozen=True)
class Frame:
    variables: tuple[Variable, ...]
    size: int = field(init=False, compare=False)
    _radices: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        variables = tuple(self.variables)
        object.__setattr__(self, "variables", variables)
        if not variables:
            raise FrameError("a frame needs at least one variable")
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise FrameError(f"duplicate variable name {dup!r} in frame")
        object.__setattr__(self, "size", prod(v.arity for v in variables))
        # place value of each variable's digit
        radices = []
        weight = 1
        for v in reversed(variables):
            radices.append(weight)
            weight *= v.arity
        object.__setattr__(self, "_radices", tuple(reversed(radices)))

    def __hash__(self):
        return hash(self.variables)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def variable(self, name: str) -> Variable:
        for v in self.variables:
            if v.name == name:
                return v
        raise FrameError(f"variable {name!r} is not in frame {self}")

    def config_index(self, assignment: Mapping[str, str]) -> int:
        index = 0
        for v, r in zip(self.variables, self._radices):
            if v.name not in assignment:
                raise FrameError(f"assignment is missing variable {v.name}")
            index += v.index(assignment[v.name]) * r
        return index

    def value_indices(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.size:
            raise FrameError(f"configuration index {index} out of range for {self}")
        return tuple((index // r) % v.arity for v, r in zip(self.variables, self._radices))

    def assignment(self, index: int) -> dict[str, str]:
        return {v.name: v.values[i] for v, i in zip(self.variables, self.value_indices(index))}

    def label(self, index: int) -> str:
        return "&".join(f"{k}={val}" for k, val in self.assignment(index).items())

    def full_set(self) -> ConfigSet:
        return ConfigSet(self, (1 << self.size) - 1)

    def empty_set(self) -> ConfigSet:
        return ConfigSet(self, 0)

    def subset(self, assignments: Iterable[Mapping[str, str]]) -> ConfigSet:
        """Set built from full assignments, e.g. ``[{"A": "1", "E": "1"}]``."""
        mask = 0
        for a in assignments:
            mask |= 1 << self.config_index(a)
        return ConfigSet(self, mask)

    def __str__(self):
        return " x ".join(self.names)


def make_frame(variables: Iterable[Variable]) -> Frame:
    return Frame(tuple(variables))


def config_index(frame: Frame, assignment: Mapping[str, str]) -> int:
    return frame.config_index(assignment)


@dataclass(frozen=True)
class ConfigSet:
    frame: Frame
    mask: int

    def __post_init__(self):
        if self.frame.size > MAX_SET_FRAME_SIZE:
            raise FrameError(
                f"frame {self.frame} has {self.frame.size} configurations; "
                f"sets are limited to {MAX_SET_FRAME_SIZE}"
            )
        if not 0 <= self.mask < (1 << self.frame.size):
            raise FrameError(f"mask {self.mask:#x} does not fit frame {self.frame}")

    @classmethod
    def from_indices(cls, frame: Frame, indices: Iterable[int]) -> ConfigSet:
        mask = 0
        for i in indices:
            if not 0 <= i < frame.size:
                raise FrameError(f"configuration index {i} out of range for {frame}")
            mask |= 1 << i
        return cls(frame, mask)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.frame.size) if self.mask >> i & 1)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return self.mask.bit_count()

    def __contains__(self, index):
        return bool(self.mask >> index & 1)

    def is_empty(self) -> bool:
        return self.mask == 0

    def is_full(self) -> bool:
        return self.mask == (1 << self.frame.size) - 1

    def _check(self, other):
        if not isinstance(other, ConfigSet):
            return NotImplemented
        if other.frame != self.frame:
            raise FrameMismatchError(f"sets on {self.frame} and {other.frame}")
        return None

    def __and__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return ConfigSet(self.frame, self.mask & other.mask)

    def __or__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return ConfigSet(self.frame, self.mask | other.mask)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return ConfigSet(self.frame, self.mask & ~other.mask)

    def __invert__(self):
        return ConfigSet(self.frame, ~self.mask & ((1 << self.frame.size) - 1))

    def complement(self) -> ConfigSet:
        return ~self

    def issubset(self, other: ConfigSet) -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __le__(self, other):
        return self.issubset(other)

    def labels(self) -> list[str]:
        return [self.frame.label(i) for i in self.members]

    def __str__(self):
        return "{" + ", ".join(self.labels()) + "}"


@lru_cache(maxsize=256)
def _restriction_map(source: Frame, target: Frame) -> tuple[int, ...]:
    """For each configuration of ``source``, the index of its restriction to ``target``."""
    positions = []
    for tv in target.variables:
        for j, sv in enumerate(source.variables):
            if sv.name == tv.name:
                if sv != tv:
                    raise FrameMismatchError(f"variable {tv.name} has different values in {source} and {target}")
                positions.append(j)
                break
        else:
            raise FrameMismatchError(f"variable {tv.name} of {target} is absent from {source}")
    out = []
    for i in range(source.size):
        digits = source.value_indices(i)
        out.append(sum(digits[p] * r for p, r in zip(positions, target._radices)))
    return tuple(out)


def project_mask(mask: int, source: Frame, target: Frame) -> int:
    rmap = _restriction_map(source, target)
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << rmap[i]
        mask >>= 1
        i += 1
    return out


def extend_mask(mask: int, source: Frame, target: Frame) -> int:
    rmap = _restriction_map(target, source)
    out = 0
    for j, r in enumerate(rmap):
        if mask >> r & 1:
            out |= 1 << j
    return out


def project_set(s: ConfigSet, target: Frame) -> ConfigSet:
    """Restrict every member of ``s`` to the variables of ``target``."""
    return ConfigSet(target, project_mask(s.mask, s.frame, target))


def cyl_extend_set(s: ConfigSet, target: Frame) -> ConfigSet:
    """Cylindrical extension: all configurations of ``target`` whose restriction lies in ``s``."""
    return ConfigSet(target, extend_mask(s.mask, s.frame, target))
