"""Construction and certification of slowly-approximable continuous functions.

Given any non-increasing positive target sequence and an approximation-scheme
profile, this package builds a function that is continuous on [a, b] and
smooth away from the left endpoint, yet whose best uniform approximation
error at every level n provably stays above the n-th target.  The proof
artifact is an alternation certificate per level (a de la Vallee-Poussin
premise checked by re-evaluation), cross-validated against an independent
discrete Remez minimax solver.
"""

from .certify import (
    AlternationCertificate,
    CheckVerdict,
    LevelCertification,
    certify_range,
    check,
    search,
)
from .envelope import PolygonalEnvelope, SmoothEnvelope, build_envelope, mollify
from .errors import ConfigError, ContainmentError, DomainError, SearchFailure
from .function import CandidatePoint, LethargyFunction, build_function
from .minimax import MinimaxResult, cheb_eval, dvp_bracket, remez
from .report import ExperimentConfig, ExperimentReport, run
from .schemes import SchemeProfile
from .sequences import ErrorSequence

__version__ = "0.1.0"

__all__ = [
    "AlternationCertificate",
    "CandidatePoint",
    "CheckVerdict",
    "ConfigError",
    "ContainmentError",
    "DomainError",
    "ErrorSequence",
    "ExperimentConfig",
    "ExperimentReport",
    "LethargyFunction",
    "LevelCertification",
    "MinimaxResult",
    "PolygonalEnvelope",
    "SchemeProfile",
    "SearchFailure",
    "SmoothEnvelope",
    "build_envelope",
    "build_function",
    "cheb_eval",
    "certify_range",
    "check",
    "dvp_bracket",
    "mollify",
    "remez",
    "run",
    "search",
]
