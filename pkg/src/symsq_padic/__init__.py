"""p-adic tools for the symmetric square of a CM modular form at an inert prime."""
__version__ = "0.1.0"

from .padic import PadicNumber, RamifiedPadic, PrecisionError
from .cyclotomic import CyclotomicNumber, PrimePowerCharacter, characters_mod, gauss_sum
from .series import (CharacterPoint, IwasawaSeries, InsufficientDegreeError, divide_exact,
                     evaluate, growth_check, isotypic_project, series_mul, twist)
from .pollack import LogPair, build_log, split_pm, symmetry_sign, zero_pattern
from .hecke import CMFormData, check_hypotheses, cm_form, get_form, load_catalog
from .sympower import (decompose, euler_poly_factored, euler_poly_sym, trace_via_components,
                       trace_via_matrix, verify_factorization)
from .dieudonne import (FilteredPhiModule, build_dcris_vf, build_v_pm, pairing_property_check,
                        sym_square_split, trivial_zero_factor)
from .kl import (DirichletCharacter, InterpolationDatum, assemble_symsq, gen_bernoulli,
                 interpolation_consistency, kubota_leopoldt, nonvanishing_guard)
