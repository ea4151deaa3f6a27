from .rational import Rational, Number
from .shape import Shape, Provenance, Side
from .interval import Interval
from .expression import Expr, Num, Var, Neg, BinOp, Pow, Call, NOT_EXACT
from .func_def import FuncDef
from .k_partition import KField, KPartition
from .bound_strategy import BoundStrategy, StrategyKind
from .integral_estimate import SumReport, BracketRow, IntegralEstimate
from .convexity_report import (Verdict, Witness, ConvexityReport, SupportLine, ViolationWitness,
                               SupportConvexityCheck)
from .hh_report import (HHPairResult, HHScanReport, SandwichRow, SandwichReport, IdentityCheck, DerivativeRow,
                        DerivativeCheck, ReconstructedPoint)
Field = KField

__all__ = [
    'Rational',
    'Number',
    'Shape',
    'Provenance',
    'Side',
    'Interval',
    'Expr',
    'Num',
    'Var',
    'Neg',
    'BinOp',
    'Pow',
    'Call',
    'NOT_EXACT',
    'FuncDef',
    'Field',
    'KField',
    'KPartition',
    'BoundStrategy',
    'StrategyKind',
    'SumReport',
    'BracketRow',
    'IntegralEstimate',
    'Verdict',
    'Witness',
    'ConvexityReport',
    'SupportLine',
    'ViolationWitness',
    'SupportConvexityCheck',
    'HHPairResult',
    'HHScanReport',
    'SandwichRow',
    'SandwichReport',
    'IdentityCheck',
    'DerivativeRow',
    'DerivativeCheck',
    'ReconstructedPoint',
]
