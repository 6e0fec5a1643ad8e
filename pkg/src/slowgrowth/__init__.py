"""Sturmian words, Rauzy graphs, circle-rotation codings and monomial algebras of slow growth."""

__version__ = "0.1.0"

from .errors import (ConfigError, HorizonError, OrbitCollisionError, ResourceGuardError,
                     SlowGrowthError)
from .words import (Alphabet, ExplicitWord, SubstitutionWord, TwoSidedWord, WordSource, complexity,
                    factors, fibonacci_word, is_balanced, minimal_forbidden_words, periodic_word,
                    periodicity_scan, recurrence_report, return_words, solve_sw_eq_wt,
                    special_factors, two_sided_periodic)
from .rauzy import (ForkProfile, RauzyGraph, Shape, build_rauzy, classify_shape, evolution_trace,
                    follower, follower_profile, predecessor_profile, strong_components, to_dot)
from .quadratic import ExactNumber, QuadraticIrrational
from .rotation import (Arc, ArcSet, RotationSystem, RotationWord, code, coding_factors,
                       endpoint_lattice, factor_interval, rotate, sturmian_recode, sturmian_system)
from .algebra import (MonomialAlgebra, boundary_verdict, classify, corollary_check, good_word_delta,
                      good_words, growth_profile, normal_words, obstruction_bound_check)
