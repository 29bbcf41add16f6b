"""Stability tests and numerics for scalar linear neutral delay equations."""

from .benchmarks import (
    CLOSED_FORM_THRESHOLDS,
    c01star_interval,
    pantograph_equation,
    reproduce_example1,
    reproduce_example2,
    two_delay_benchmark,
)
from .criteria import CRITERIA, criterion_ids, evaluate_all
from .equation import (
    ExponentialKernel,
    HistorySpec,
    NeutralEquation,
    Term,
    UniformKernel,
    validate,
)
from .expressions import (
    Constant,
    ConstantLag,
    PiecewisePeriodic,
    Proportional,
    Reciprocal,
    Sinusoid,
    SinusoidLag,
)
from .literature import char_root_positive, compute_sigma
from .simulate import (
    DecayEstimate,
    Trajectory,
    bisect_threshold,
    classify,
    default_dt,
    default_t_end,
    estimate_decay,
    fundamental,
    integrate,
    representation_check,
)
from .specio import SpecError, dump_equation, load_equation, parse_equation, save_equation
from .verdicts import Claim, CriterionVerdict, Verdict, Witness

__all__ = [
    "Constant",
    "Sinusoid",
    "PiecewisePeriodic",
    "Reciprocal",
    "ConstantLag",
    "Proportional",
    "SinusoidLag",
    "Term",
    "ExponentialKernel",
    "UniformKernel",
    "HistorySpec",
    "NeutralEquation",
    "validate",
    "SpecError",
    "parse_equation",
    "load_equation",
    "dump_equation",
    "save_equation",
    "Verdict",
    "Claim",
    "Witness",
    "CriterionVerdict",
    "CRITERIA",
    "criterion_ids",
    "evaluate_all",
    "compute_sigma",
    "char_root_positive",
    "Trajectory",
    "DecayEstimate",
    "integrate",
    "fundamental",
    "representation_check",
    "estimate_decay",
    "classify",
    "bisect_threshold",
    "default_dt",
    "default_t_end",
    "two_delay_benchmark",
    "pantograph_equation",
    "CLOSED_FORM_THRESHOLDS",
    "c01star_interval",
    "reproduce_example1",
    "reproduce_example2",
    "__version__",
]

__version__ = "0.1.0"
