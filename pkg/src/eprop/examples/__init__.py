"""The three concrete operators: circle doubling, SVC bump map, translation."""

from .circle import ex1_closed_form, ex1_kernel
from .svc import (
    Interval,
    SvcClassification,
    SvcTree,
    T_eval,
    TValue,
    ex2_kernel,
    gap_below,
    kept_length,
    removed_length,
    svc_build,
    svc_classify,
)
from .translation import bump_field, remark1_gap, translate_U, translation_kernel

__all__ = [
    "Interval",
    "SvcClassification",
    "SvcTree",
    "TValue",
    "T_eval",
    "bump_field",
    "ex1_closed_form",
    "ex1_kernel",
    "ex2_kernel",
    "gap_below",
    "kept_length",
    "remark1_gap",
    "removed_length",
    "svc_build",
    "svc_classify",
    "translate_U",
    "translation_kernel",
]
