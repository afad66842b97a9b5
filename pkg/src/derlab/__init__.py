"""Superposition with destructive equality resolution and a closure-ordering lab."""

from .orderings import EQ, GT, INC, LT, Comparison, OrderingConfig
from .problem import parse, parse_file
from .rewriting import GroundClosure, RewriteSystem, Variant, closure_compare
from .saturation import Limits, ProverResult, saturate
from .simplify import RegimeConfig
from .terms import App, Clause, Literal, Var, const, neg, pos

__all__ = [
    "App", "Clause", "Comparison", "EQ", "GT", "GroundClosure", "INC", "LT", "Limits",
    "Literal", "OrderingConfig", "ProverResult", "RegimeConfig", "RewriteSystem", "Var",
    "Variant", "closure_compare", "const", "neg", "parse", "parse_file", "pos", "saturate",
]
