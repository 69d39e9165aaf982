"""Hot scanning loops, compiled when available.

The compiled extension ``_ckernels`` is used unless it failed to build or
``ORBITINT_PURE_PYTHON=1`` is set; ``_pykernels`` is the reference
implementation.  Inputs too large for fixed-width arithmetic are routed to
the Python version automatically.
"""

import os

from . import _pykernels

_impl = _pykernels
if os.environ.get("ORBITINT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND


def _dispatch(name):
    fast = getattr(_impl, name)
    slow = getattr(_pykernels, name)

    def call(*args):
        try:
            return fast(*args)
        except OverflowError:
            return slow(*args)

    call.__name__ = name
    call.__doc__ = slow.__doc__
    return call


count_quadratics = _dispatch("count_quadratics")
list_quadratics = _dispatch("list_quadratics")
quadratic_hit_candidates = _dispatch("quadratic_hit_candidates")
small_resultant = _pykernels.small_resultant

__all__ = [
    "BACKEND",
    "count_quadratics",
    "list_quadratics",
    "quadratic_hit_candidates",
    "small_resultant",
]
