"""Bielliptic plane quartics attached to genus-two curves in Rosenhain form."""

from .genus2 import DegenerateCurve, RosenhainCurve, make_rosenhain
from .quartic import BiellipticQuartic, SingularOrReducible, build_quartic

__all__ = [
    "BiellipticQuartic",
    "DegenerateCurve",
    "RosenhainCurve",
    "SingularOrReducible",
    "build_quartic",
    "make_rosenhain",
]
