"""Contrastive keyword selection.

Thin wrapper around the C++ extension module; see the package README for
the pipeline overview and the `kwsel` CLI for file-based runs.
"""

from ._kwsel import *  # noqa: F401,F403
from ._kwsel import __doc__ as _native_doc  # noqa: F401

__version__ = "0.1.0"
