"""Select the compiled kernels when available, else the pure-Python ones.

Set ``ALGLAM_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("ALGLAM_PURE_PYTHON", "") not in ("", "0"):
    from ._kernels_py import IMPLEMENTATION, ac_key, measure, nameless_key, size
else:
    try:
        from ._kernels import IMPLEMENTATION, ac_key, measure, nameless_key, size
    except ImportError:
        from ._kernels_py import IMPLEMENTATION, ac_key, measure, nameless_key, size

__all__ = ["IMPLEMENTATION", "ac_key", "measure", "nameless_key", "size"]
