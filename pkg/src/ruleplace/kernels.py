"""Hot-loop kernels with a compiled backend and a pure-Python fallback.

The compiled module is used when it was built and ``RULEPLACE_PURE`` is not
set. Both backends produce identical results for identical inputs.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if not os.environ.get("RULEPLACE_PURE"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

sample_groups = _impl.sample_groups
permutation = _impl.permutation
admit = _impl.admit

Xoshiro256 = _pykernels.Xoshiro256
