"""Computational toolkit for finite semigroups arising from action pairs."""

from . import (actionpair, fmonoid, freelrm, indalg, presentations, ptrans,
               registry, wreath)

__version__ = "0.1.0"

__all__ = ["actionpair", "fmonoid", "freelrm", "indalg", "presentations",
           "ptrans", "registry", "wreath", "__version__"]
