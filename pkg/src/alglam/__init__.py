"""Workbench for the algebraic lambda-calculi: terms, rewriting modulo AC,
continuation-passing translations and confluence experiments."""

__version__ = "0.1.0"

from .ac import Level, NonAlgebraicStep, ac_canonical, ac_equal, ac_length, ac_measure
from .confluence import (JoinResult, build_Y, check_eq_to_red, demonstrate_nonconfluence,
                         demonstrate_trivial_equality, joinable, local_confluence_check)
from .cps import (Direction, KNotBase, NotAValue, NotClosed, SimulationReport, check_colon_lemmas,
                  check_simulation, colon_n, colon_v, cps, phi, psi, wt)
from .engine import Strategy, reduce, reduces_to, search
from .fragments import NONNEG, UNRESTRICTED, Fragment, size_bounded
from .kernels import IMPLEMENTATION
from .rules import (ALG_EQ, ALG_RED, LIN_EQ, LIN_RED, FuelExhausted, Language, ReductionTrace, RuleName,
                    StepRecord, language, replay, step_all)
from .scalars import ScalarDomain, ScalarDomainError
from .syntax import ParseError, parse, pretty
from .terms import (IDENTITY, ZERO, App, Lam, Smul, Sum, Term, Var, alpha_equal, is_base, is_closed, is_value,
                    substitute)

__all__ = [name for name in dir() if not name.startswith("_")]
