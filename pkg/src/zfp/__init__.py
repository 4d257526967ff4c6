"""Finite-stage model checking for ZF with primitive ordered pairs.

Hereditarily finite sets (:mod:`zfp.hf`), the W hierarchy of tagged sets
and pairs (:mod:`zfp.whier`), a first-order language with definite
descriptions (:mod:`zfp.syntax`, :mod:`zfp.logic`, :mod:`zfp.surface`,
:mod:`zfp.abbrev`), the axiom catalogue (:mod:`zfp.axioms`), evaluation over
finite structures (:mod:`zfp.semantics`, :mod:`zfp.batch`) and the checker
(:mod:`zfp.checker`, :mod:`zfp.witness`).
"""
from .abbrev import ZF, ZFP, expand
from .axioms import get_axiom, parse_axiom_id
from .checker import CheckPlan, accidental_suite, check_all, check_axiom, cross_validate
from .hf import HF, hf_set, parse_hf, render
from .logic import eliminate_iota, free_vars, substitute
from .semantics import Evaluator, eval_formula, eval_term, star, v_structure, w_structure
from .surface import parse, parse_formula, print_formula, print_term
from .whier import build_w

__version__ = "0.1.0"

__all__ = [
    "ZF", "ZFP", "expand", "get_axiom", "parse_axiom_id",
    "CheckPlan", "accidental_suite", "check_all", "check_axiom", "cross_validate",
    "HF", "hf_set", "parse_hf", "render", "eliminate_iota", "free_vars", "substitute",
    "Evaluator", "eval_formula", "eval_term", "star", "v_structure", "w_structure",
    "parse", "parse_formula", "print_formula", "print_term", "build_w",
]
