"""Equivariant signatures of Witt pseudomanifolds, computed from intersection homology
and cross-checked against a fixed-point formula in characteristic classes."""

from .cyclotomic import Cyclotomic, embed_complex
from .harness import load_fixture, run_corpus, run_crosscheck
from .ih import compute_ih, ih_ranks, witt_check
from .pairing import g_signature_direct, intersection_form, signature

__version__ = "0.1.0"

__all__ = [
    "Cyclotomic",
    "embed_complex",
    "compute_ih",
    "ih_ranks",
    "witt_check",
    "intersection_form",
    "signature",
    "g_signature_direct",
    "load_fixture",
    "run_corpus",
    "run_crosscheck",
]
