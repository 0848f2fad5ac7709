"""Exact construction and verification of quasi-tight multiframelet filter banks.

Submodules: ``exactnum`` (Gaussian rationals and square-root scales), ``laurent``
(Laurent polynomial matrices), ``moments`` (moment jets, sum rules, vanishing moments),
``normalform`` (normal forms of matrix masks), ``qtconstruct`` (the construction and its
checks), ``transform`` (multi-level transforms), ``bankio`` (files and fixtures) and ``cli``.
"""

from .exactnum import GaussRational, QuadScalar
from .laurent import LaurentMatrix, LaurentPoly, build_E
from .moments import balanced_vm, balancing_order, matching_pair, refinable_jets, sum_rules, vanishing_moments
from .normalform import normal_form_canonical, normal_form_general, orthogonal_normal_form
from .qtconstruct import (
    QtFilterBank,
    check_theta,
    construct_quasitight,
    hermitian_split,
    psd_probe,
    verify_bank,
    verify_oep,
)
from .transform import (
    Signal,
    TransformBank,
    analyze,
    annihilator_witness,
    cascade_render,
    classify_theta_conv,
    synthesize,
    vector_convert,
    vector_convert_inverse,
)
from .bankio import fixture, load_bank, load_mask, load_signal, save_bank, save_mask, save_signal

__version__ = "0.1.0"

__all__ = [
    "GaussRational", "QuadScalar", "LaurentMatrix", "LaurentPoly", "build_E",
    "balanced_vm", "balancing_order", "matching_pair", "refinable_jets", "sum_rules", "vanishing_moments",
    "normal_form_canonical", "normal_form_general", "orthogonal_normal_form",
    "QtFilterBank", "check_theta", "construct_quasitight", "hermitian_split", "psd_probe", "verify_bank", "verify_oep",
    "Signal", "TransformBank", "analyze", "annihilator_witness", "cascade_render", "classify_theta_conv",
    "synthesize", "vector_convert", "vector_convert_inverse",
    "fixture", "load_bank", "load_mask", "load_signal", "save_bank", "save_mask", "save_signal",
]
