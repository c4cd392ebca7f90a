"""Exact workbench for local testing and self-correction of sparse, low-bias
linear codes over prime fields."""

from .bounds import (BoundsParams, claim5_sum, johnson_count_bound, lemma6_deviation,
                     lemma8_check, lemma9_sum_check, lemma10_check, select_test_weight,
                     verify_prop4)
from .code import (AllZeroProfile, CodeProfile, DualSlice, LinearCode, WeightDistribution,
                   Word, code_from_generators, coset_weight_distribution, distance_to_code,
                   dual_slice, profile, puncture, random_code, repetition_code, span_with,
                   weight_distribution, zero_code)
from .corrector import (CorrectorInstance, correction_error_exact, corrector_run,
                        lemma13_probability, lemma14_bound_check, prop11_check, prop12_check)
from .field import FieldElement, FieldSpec, fe_add, fe_inv, fe_mul, fe_neg, fe_sub, field_make
from .krawtchouk import (KrawtchoukTable, RootInterval, krawtchouk_eval,
                         krawtchouk_eval_rational, krawtchouk_table, macwilliams_transform,
                         root_interval, verify_krawtchouk_properties)
from .report import ReportRow, VerificationReport
from .tester import (RandomSource, TesterInstance, rejection_probability_exact,
                     rejection_probability_mc, soundness_profile, tester_new, tester_run)

__version__ = "0.1.0"
