"""g2scan: search for genus-2 curves of small discriminant and compute
their invariants, L-data, and analytically resolved conductor 2-part."""

from .model import ModelTransform, WeierstrassModel, discriminant, normalize_h, simplify, transform

__all__ = [
    "WeierstrassModel",
    "ModelTransform",
    "discriminant",
    "normalize_h",
    "simplify",
    "transform",
]
