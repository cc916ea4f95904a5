"""Exact partition calculus, categories of partitions and Weingarten
integration for the easy orthogonal groups and their free versions."""

from .categories import CategoryId, contains, enumerate_category, parse_category
from .closure import ClosureSpec, closure, identify, verify_classification
from .freeprob import (
    Kind,
    MomentSequence,
    CumulantSequence,
    bercovici_pata,
    cumulants_from_moments,
    law_moments,
    moments_from_cumulants,
    semigroup_verdict,
)
from .partition import (
    Partition,
    compose,
    format_partition,
    enumerate_partitions,
    involution,
    join,
    parse,
    rotate,
    tensor,
)
from .tpoly import TPoly
from .weingarten import char_moment_asymptotic, char_moment_exact, integrate, weingarten

__version__ = "0.1.0"

__all__ = [
    "CategoryId",
    "ClosureSpec",
    "CumulantSequence",
    "Kind",
    "MomentSequence",
    "Partition",
    "TPoly",
    "bercovici_pata",
    "char_moment_asymptotic",
    "char_moment_exact",
    "closure",
    "compose",
    "contains",
    "cumulants_from_moments",
    "enumerate_category",
    "enumerate_partitions",
    "format_partition",
    "identify",
    "integrate",
    "involution",
    "join",
    "law_moments",
    "moments_from_cumulants",
    "parse",
    "parse_category",
    "rotate",
    "semigroup_verdict",
    "tensor",
    "verify_classification",
    "weingarten",
]
