"""Select the compiled kernels when available, else the pure-Python ones.

Set ``KRANKING_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels as python_kernels

if os.environ.get("KRANKING_PURE_PYTHON", "") not in ("", "0"):
    kernels = python_kernels
    COMPILED = False
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        COMPILED = True
    except ImportError:
        kernels = python_kernels
        COMPILED = False

try:
    from . import _kernels as compiled_kernels  # type: ignore[attr-defined]
except ImportError:
    compiled_kernels = None

MAX_COMPILED_RANKS = 64

STATUS_INFEASIBLE = python_kernels.STATUS_INFEASIBLE
STATUS_FOUND = python_kernels.STATUS_FOUND
STATUS_BUDGET = python_kernels.STATUS_BUDGET


def search(adj, order, t, **kwargs):
    # the compiled core works on 64-bit domains
    impl = kernels if t <= MAX_COMPILED_RANKS else python_kernels
    return impl.search(adj, order, t, **kwargs)


def first_violation_k2(adj, ranks, k):
    return kernels.first_violation_k2(adj, ranks, k)
