"""Exact symbolic engine for the affine ageing algebra and its modules."""

from .lie_core import E, P, Q, H, Z, K, GenRef, LieElement, bracket, bracket_lin
from .pbw_engine import ModuleSpec, ModuleElement, act, act_word, element, render, parse_element, deg_of

__version__ = "0.1.0"
