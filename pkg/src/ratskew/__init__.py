"""Exact toolkit for rational power series, skew extensions and Leavitt algebras."""

from .fields import Field, Fp, FunctionField, MPoly, PrimeField, QQ, RatFunc, RationalField, field_from_name
from .freealg import FreeElem
from .linrep import LinRep, NotInvertible, SeriesMatrix, invert_matrix_series
from .truncated import TruncSeries
from .words import Alphabet
from .skew import (CoeffDomain, SkewRing, SkewElem, Verdict, TWitness, WordSystemReport,
                   skew_mul, ideal_member, t_equal, t_witness, lemma51_word, verify_word_system)
from .leavitt import (UElem, VElem, PairedWitness, u_mul, mono_mul, is_v_reduced,
                      v_normal_form, v_is_zero, v_equal, v_witness, uinf_witness)
from .kzero import (MonoidPresentation, AbGroup, MonoidTable, MonoidShapeReport,
                    UnsupportedPresentation, parse_presentation, smith_normal_form,
                    grothendieck_group, monoid_enumerate, analyze_pisr_shape)
from .realize import (HomSpec, GeneratorMatrices, VerifyReport, SigmaCert, StepPlan, ChainPlan,
                      hom_spec, build_generators, generator_matrices_from_json,
                      verify_generators, spot_check_sigma_prime, plan_chain, verify_chain)
from .expr import ExprSyntaxError, parse_expr, render_expr, eval_series, eval_skew, eval_leavitt

__all__ = [
    "AbGroup",
    "Alphabet",
    "ChainPlan",
    "CoeffDomain",
    "ExprSyntaxError",
    "Field",
    "Fp",
    "FreeElem",
    "FunctionField",
    "GeneratorMatrices",
    "HomSpec",
    "LinRep",
    "MPoly",
    "MonoidPresentation",
    "MonoidShapeReport",
    "MonoidTable",
    "NotInvertible",
    "PairedWitness",
    "PrimeField",
    "QQ",
    "RatFunc",
    "RationalField",
    "SeriesMatrix",
    "SigmaCert",
    "SkewElem",
    "SkewRing",
    "StepPlan",
    "TWitness",
    "TruncSeries",
    "UElem",
    "UnsupportedPresentation",
    "VElem",
    "Verdict",
    "VerifyReport",
    "WordSystemReport",
    "analyze_pisr_shape",
    "build_generators",
    "eval_leavitt",
    "eval_series",
    "eval_skew",
    "field_from_name",
    "generator_matrices_from_json",
    "grothendieck_group",
    "hom_spec",
    "ideal_member",
    "invert_matrix_series",
    "is_v_reduced",
    "lemma51_word",
    "mono_mul",
    "monoid_enumerate",
    "parse_expr",
    "parse_presentation",
    "plan_chain",
    "render_expr",
    "skew_mul",
    "smith_normal_form",
    "spot_check_sigma_prime",
    "t_equal",
    "t_witness",
    "u_mul",
    "uinf_witness",
    "v_equal",
    "v_is_zero",
    "v_normal_form",
    "v_witness",
    "verify_chain",
    "verify_generators",
    "verify_word_system",
]
