"""stonklab: social-media sentiment vs. stock price analysis toolkit."""

from .series import (
    ALL_VARIANTS,
    AlignedPair,
    DailySeries,
    Variant,
    align,
    apply_variant,
    difference,
    shift_target,
)

__all__ = [
    "DailySeries",
    "AlignedPair",
    "Variant",
    "ALL_VARIANTS",
    "align",
    "shift_target",
    "difference",
    "apply_variant",
]

__version__ = "0.1.0"
