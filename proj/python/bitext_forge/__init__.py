"""Bitext revision toolkit.

Selective replacement of mined bitext references with synthetic
translations under a semantic-equivalence condition, plus the analysis
suite around it: lexical-difference scoring, alignment-based corpus
complexity and coverage, and bilingual lexicon induction.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
