"""Belief-function calculus for rule links and chain propagation."""

from .errors import (
    BeliefError,
    ConstructionError,
    EnumerationLimitError,
    FrameError,
    FrameMismatchError,
    MassError,
    ModelError,
    ModelSemanticError,
    ParseError,
    TotalConflictError,
)
from .frames import ConfigSet, Frame, Variable, config_index, cyl_extend_set, make_frame, project_set
from .mass import (
    CombinationResult,
    MassFunction,
    bel,
    combine,
    condition,
    is_consonant,
    make_mass,
    marginalize,
    pl,
    vacuous,
    vacuous_extend,
)
from .links import (
    METHODS,
    ConditionalBeliefTable,
    LinkJoint,
    build_link,
    conditional_embedding,
    consonant_extension,
    dissonant_extension,
)
from .propagation import (
    BeliefReport,
    ChainModel,
    ChainPropagation,
    LinkPropagation,
    ReportRow,
    compare_reports,
    propagate_chain,
    propagate_link,
    report,
)
from .dsl import parse_model, render_model

__version__ = "0.1.0"
